//! Stable string ids for every strategy.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::revs::*;
use crate::spies::*;
use crate::strategy::{RevStrategy, SpyStrategy};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyInfo {
    pub id: &'static str,
    pub side: &'static str,
    pub summary: &'static str,
}

const SPIES: &[(&str, &str)] = &[
    ("spy.trivial-follower", "one spy on each occupied vertex; needs s >= r"),
    ("spy.random", "cover meetings when possible, otherwise wander"),
    ("spy.greedy-cover", "cover meetings with the fewest movers, others stay"),
    ("spy.dominating-vertex", "floor(r/m) spies on a graph with a dominating vertex"),
    ("spy.domination-set", "floor(r/m) spies per vertex of a minimum dominating set"),
    ("spy.webbed-tree", "floor(r/m) spies on a webbed tree"),
    ("spy.bipartite-m2", "greedy migration on K_{a,b}, m = 2"),
    ("spy.bipartite-m3", "greedy migration on K_{a,b}, m = 3"),
    ("spy.bipartite-general", "greedy migration on K_{a,b}, any m"),
    ("spy.k-partite", "balanced free spies on a complete k-partite graph"),
    ("spy.q-common", "cover, then re-stabilise free spies on a q-common graph"),
];

const REVS: &[(&str, &str)] = &[
    ("rev.random", "uniform random placement and steps"),
    ("rev.single-threat", "distinct vertices (one stack when s = 0), strike at any unwatched neighbourhood"),
    ("rev.swarm", "swarm the part with the best margin"),
    ("rev.alternating-swarm", "swarm part round mod k"),
    ("rev.side-shuffle", "random fraction crosses between parts each round"),
    ("rev.kpartite-lower", "equal shares per part, then best swarm"),
    ("rev.bipartite-m2", "two-round attack on K_{a,b}, m = 2"),
    ("rev.bipartite-m3", "two-round attack on K_{a,b}, m = 3"),
    ("rev.cell-grouping-3", "cells of ceil(m/3) play the m = 3 attack"),
    ("rev.cell-grouping-2", "cells of m/2 play the m = 2 attack"),
    ("rev.hypercube-m2", "weight-one placement and depth-two forcing search on Q_d"),
    ("rev.hypercube-general", "walk to an avoiding vertex of weight m on Q_d"),
    ("rev.replicated-hypercube", "m = 2 attack around each centre of a distance-9 code"),
    ("rev.extension", "gather unwatched revolutionaries at a common neighbour"),
    ("rev.split", "meet at the independent vertex of an unwatched m-set"),
    ("rev.domsharp", "disjoint m-sets overload the least watched T vertex"),
    ("rev.retract-pullback", "hypercube-m2 played on a hypercube retract of a grid"),
];

pub fn strategies() -> Vec<StrategyInfo> {
    let side = |list: &'static [(&'static str, &'static str)], side| list.iter().map(move |&(id, summary)| StrategyInfo { id, side, summary });
    side(REVS, "revolutionaries").chain(side(SPIES, "spies")).collect()
}

pub fn spy_strategy(id: &str) -> Result<Box<dyn SpyStrategy>> {
    let s: Box<dyn SpyStrategy> = match id {
        "spy.trivial-follower" => Box::new(TrivialFollower),
        "spy.random" => Box::new(RandomSpy),
        "spy.greedy-cover" => Box::new(GreedyCoverSpy),
        "spy.dominating-vertex" => Box::new(DominatingVertexSpy::auto()),
        "spy.domination-set" => Box::new(DominationSetSpy::new(Vec::new())),
        "spy.webbed-tree" => Box::new(WebbedTreeSpy::auto()),
        "spy.bipartite-m2" => Box::new(BipartiteM2Spy::new()),
        "spy.bipartite-m3" => Box::new(BipartiteM3Spy::new()),
        "spy.bipartite-general" => Box::new(BipartiteGeneralSpy::new()),
        "spy.k-partite" => Box::new(KPartiteSpy::new()),
        "spy.q-common" => Box::new(QCommonSpy::default()),
        _ => return Err(Error::UnknownStrategy(id.into())),
    };
    Ok(s)
}

/// `family` is needed only by `rev.retract-pullback`, which reads the
/// retraction off a grid.
pub fn rev_strategy(id: &str, family: Option<&Family>) -> Result<Box<dyn RevStrategy>> {
    let s: Box<dyn RevStrategy> = match id {
        "rev.random" => Box::new(RandomRev),
        "rev.single-threat" => Box::new(SingleThreatRev),
        "rev.swarm" => Box::new(SwarmRev),
        "rev.alternating-swarm" => Box::new(AlternatingSwarmRev),
        "rev.side-shuffle" => Box::new(SideShuffleRev),
        "rev.kpartite-lower" => Box::new(KPartiteLowerAttack),
        "rev.bipartite-m2" => Box::new(BipartiteAttack::m2()),
        "rev.bipartite-m3" => Box::new(BipartiteAttack::m3()),
        "rev.cell-grouping-3" => Box::new(BipartiteAttack::cells3()),
        "rev.cell-grouping-2" => Box::new(BipartiteAttack::cells2()),
        "rev.hypercube-m2" => Box::new(HypercubeM2Attack),
        "rev.hypercube-general" => Box::new(HypercubeGeneralAttack::default()),
        "rev.replicated-hypercube" => Box::new(ReplicatedHypercubeAttack::default()),
        "rev.extension" => Box::new(ExtensionAttack),
        "rev.split" => Box::new(SplitAttack::default()),
        "rev.domsharp" => Box::new(DomSharpAttack::default()),
        "rev.retract-pullback" => {
            let map = family.and_then(Family::cube_retraction).ok_or_else(|| Error::StrategyMismatch {
                id: id.into(),
                reason: "needs a grid family with every side at least 2".into(),
            })?;
            Box::new(RetractPullback::new(Box::new(HypercubeM2Attack), map))
        }
        _ => return Err(Error::UnknownStrategy(id.into())),
    };
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_match_instances() {
        let grid: Family = "grid:3,3".parse().unwrap();
        for info in strategies() {
            let got = match info.side {
                "spies" => spy_strategy(info.id).unwrap().id(),
                _ => rev_strategy(info.id, Some(&grid)).unwrap().id(),
            };
            assert_eq!(got, info.id);
        }
        assert!(matches!(spy_strategy("spy.nope"), Err(Error::UnknownStrategy(_))));
        assert!(rev_strategy("rev.retract-pullback", None).is_err());
    }
}
