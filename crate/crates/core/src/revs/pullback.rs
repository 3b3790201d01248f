use crate::error::{Error, Result};
use crate::game::{realize_move, GameSpec, MoveSet, Position};
use crate::graph::{Graph, RetractionMap};
use crate::strategy::{GameRng, RevStrategy};
use std::sync::Arc;

/// Plays `inner` on the image H of a retraction. The spies are seen through
/// the map, which turns every legal spy move in G into a legal one in H.
pub struct RetractPullback {
    inner: Box<dyn RevStrategy>,
    map: RetractionMap,
    h: Option<Arc<Graph>>,
    seen: Option<Vec<u32>>,
}

impl Clone for RetractPullback {
    fn clone(&self) -> Self {
        RetractPullback { inner: self.inner.clone_box(), map: self.map.clone(), h: self.h.clone(), seen: self.seen.clone() }
    }
}

impl RetractPullback {
    pub fn new(inner: Box<dyn RevStrategy>, map: RetractionMap) -> Self {
        RetractPullback { inner, map, h: None, seen: None }
    }

    pub fn inner_id(&self) -> &'static str {
        self.inner.id()
    }

    fn inner_spec(&mut self, spec: &GameSpec) -> Result<GameSpec> {
        if self.h.is_none() {
            self.map.verify(&spec.graph)?;
            self.h = Some(Arc::new(self.map.image_graph(&spec.graph)?));
        }
        let h = self.h.clone().expect("built");
        GameSpec::relaxed(h, spec.m, spec.r, spec.s)
    }

    fn project(&self, spies: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.map.image.len()];
        for (v, &c) in spies.iter().enumerate() {
            out[self.map.map[v]] += c;
        }
        out
    }

    fn restrict(&self, revs: &[u32]) -> Result<Vec<u32>> {
        let on_image: u32 = self.map.image.iter().map(|&v| revs[v]).sum();
        if on_image != revs.iter().sum::<u32>() {
            return Err(Error::pre("revolutionary off the retract"));
        }
        Ok(self.map.image.iter().map(|&v| revs[v]).collect())
    }
}

impl RevStrategy for RetractPullback {
    fn id(&self) -> &'static str {
        "rev.retract-pullback"
    }

    fn place(&mut self, spec: &GameSpec, rng: &mut GameRng) -> Result<Vec<u32>> {
        let inner = self.inner_spec(spec)?;
        self.seen = None;
        let local = self.inner.place(&inner, rng)?;
        let mut out = vec![0u32; spec.n()];
        for (i, &c) in local.iter().enumerate() {
            out[self.map.image[i]] += c;
        }
        Ok(out)
    }

    fn respond(&mut self, spec: &GameSpec, pos: &Position, rng: &mut GameRng) -> Result<MoveSet> {
        let inner = self.inner_spec(spec)?;
        let spies = self.project(&pos.spies);
        if let Some(prev) = &self.seen {
            if realize_move(&inner.graph, prev, &spies).is_none() {
                return Err(Error::pre("projected spy move is illegal in the retract"));
            }
        }
        self.seen = Some(spies.clone());
        let local = Position { revs: self.restrict(&pos.revs)?, spies, phase: pos.phase, round: pos.round };
        let mv = self.inner.respond(&inner, &local, rng)?;
        let mut out = MoveSet::new();
        for f in mv.flows() {
            out.add(self.map.image[f.from], self.map.image[f.to], f.count);
        }
        Ok(out)
    }

    fn clone_box(&self) -> Box<dyn RevStrategy> {
        Box::new(self.clone())
    }
}
