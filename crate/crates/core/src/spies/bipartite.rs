//! Spies on complete bipartite graphs: greedy migration driven by per-round
//! targets for the number of spies on each side.

use super::covered_audit;
use crate::error::{Error, Result};
use crate::game::{GameSpec, MoveSet, Position};
use crate::graph::Graph;
use crate::strategy::{Audit, GameRng, SpyStrategy, SpyTurn};
use std::cmp::Reverse;

/// Largest allowed spread between the four expressions for alpha.
pub const CLOSED_FORM_TOL: f64 = 1e-9;

/// The two parts X_1, X_2 (indices 0 and 1) of a complete bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sides {
    pub members: [Vec<usize>; 2],
    pub side: Vec<usize>,
}

impl Sides {
    pub fn of(g: &Graph) -> Result<Self> {
        if !g.is_complete_multipartite() || g.part_count() != 2 {
            return Err(Error::NotMultipartite);
        }
        let mut parts = g.part_members().expect("labelled");
        let b = parts.pop().expect("two parts");
        let a = parts.pop().expect("two parts");
        Ok(Sides { members: [a, b], side: g.parts().expect("labelled").to_vec() })
    }

    pub fn total(&self, counts: &[u32], j: usize) -> u32 {
        self.members[j].iter().map(|&v| counts[v]).sum()
    }

    /// Revolutionaries of side j standing on a vertex with a spy.
    pub fn covered(&self, revs: &[u32], spies: &[u32], j: usize) -> u32 {
        self.members[j].iter().filter(|&&v| spies[v] > 0).map(|&v| revs[v]).sum()
    }

    /// Most revolutionaries together on an uncovered vertex of side j.
    pub fn max_uncovered(&self, revs: &[u32], spies: &[u32], j: usize) -> u32 {
        self.members[j].iter().filter(|&&v| spies[v] == 0).map(|&v| revs[v]).max().unwrap_or(0)
    }

    /// New meetings a swarm into side j can form: everyone outside moves in,
    /// topping up uncovered vertices fewest-missing first.
    pub fn swarm_threat(&self, revs: &[u32], spies: &[u32], m: u32, j: usize) -> u32 {
        crate::game::swarm_threat(&self.members[j], revs, spies, m)
    }

    fn top_vertices(&self, revs: &[u32], j: usize, skip: &[bool], k: usize) -> Result<Vec<usize>> {
        let mut free: Vec<usize> = self.members[j].iter().copied().filter(|&v| !skip[v]).collect();
        if free.len() < k {
            return Err(Error::TargetInfeasible(format!("side {} has {} free vertices, {k} needed", j + 1, free.len())));
        }
        free.sort_by_key(|&v| (Reverse(revs[v]), v));
        free.truncate(k);
        Ok(free)
    }
}

/// Moves spies to `targets` spies per side by the three steps of greedy
/// migration. `revs` is the position after the revolutionaries moved; `spies`
/// must hold at most one spy per vertex, and no side may be smaller than the
/// spy count.
pub fn greedy_migration(sides: &Sides, revs: &[u32], spies: &[u32], targets: [u32; 2]) -> Result<MoveSet> {
    if let Some(v) = spies.iter().position(|&c| c > 1) {
        return Err(Error::pre(format!("vertex {v} holds {} spies", spies[v])));
    }
    let cur = [sides.total(spies, 0), sides.total(spies, 1)];
    if targets[0] + targets[1] != cur[0] + cur[1] {
        return Err(Error::TargetInfeasible(format!("targets {targets:?} do not sum to {}", cur[0] + cur[1])));
    }
    let i = if targets[0] <= cur[1] { 0 } else { 1 };
    let o = 1 - i;
    let mut ms = MoveSet::new();

    // (1) targets[i] spies leave the other side, from its least crowded vertices
    let mut on_o: Vec<usize> = sides.members[o].iter().copied().filter(|&v| spies[v] > 0).collect();
    on_o.sort_by_key(|&v| (revs[v], v));
    let leaving: Vec<usize> = on_o[..targets[i] as usize].to_vec();
    let mut occupied = vec![false; spies.len()];
    for &v in &on_o[targets[i] as usize..] {
        occupied[v] = true;
    }
    // (2) every spy on side i crosses to the most crowded uncovered vertices
    let from_i: Vec<usize> = sides.members[i].iter().copied().filter(|&v| spies[v] > 0).collect();
    let dest = sides.top_vertices(revs, o, &occupied, from_i.len())?;
    for (&a, &b) in from_i.iter().zip(&dest) {
        ms.add(a, b, 1);
    }
    // (3) the leavers land on side i, now empty of spies
    let dest = sides.top_vertices(revs, i, &vec![false; spies.len()], leaving.len())?;
    for (&a, &b) in leaving.iter().zip(&dest) {
        ms.add(a, b, 1);
    }
    Ok(ms)
}

fn one_per_vertex(spies: &[u32]) -> Audit {
    match spies.iter().position(|&c| c > 1) {
        None => Audit::new("one_spy_per_vertex", true, ""),
        Some(v) => Audit::new("one_spy_per_vertex", false, format!("vertex {v}")),
    }
}

fn clamp(x: i64, s: u32) -> u32 {
    x.clamp(0, s as i64) as u32
}

/// Per-round target rule shared by the three bipartite spy strategies.
pub trait SideRule: Clone + Send + 'static {
    const ID: &'static str;
    fn setup(spec: &GameSpec) -> Result<Self>;
    fn spies(&self) -> u32;
    /// Targets (s'_1, s'_2) from the start-of-round spy split and the new revolutionary split.
    fn targets(&mut self, start: [u32; 2], after: [u32; 2]) -> Result<[u32; 2]>;
    /// Invariant checks on a position reached by this rule.
    fn check(&self, sides: &Sides, pos: &Position, m: u32) -> Vec<Audit>;
    /// Notes gathered while computing the last targets.
    fn notes(&mut self) -> Vec<Audit> {
        Vec::new()
    }
}

/// Constants for meeting size 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct M2Params {
    pub r: i64,
    pub s: i64,
    pub alpha: i64,
    pub beta: i64,
}

impl M2Params {
    pub fn theorem_spies(r: u32) -> u32 {
        let num = (7 * r as i64) / 2 - 3;
        num.max(0).div_euclid(5) as u32 + u32::from(num.max(0) % 5 != 0)
    }

    /// Spies beyond the theorem count do not enter alpha; they only pad the
    /// side targets.
    pub fn new(r: u32, s: u32) -> Self {
        let alpha = s.min(Self::theorem_spies(r)) as i64 - r as i64 / 2;
        let (r, s) = (r as i64, s as i64);
        M2Params { r, s, alpha, beta: (r - alpha).div_euclid(2) }
    }

    /// alpha <= beta, alpha + beta <= s, floor((r+beta)/2) <= s.
    pub fn inequalities_hold(&self) -> bool {
        self.alpha <= self.beta && self.alpha + self.beta <= self.s && (self.r + self.beta).div_euclid(2) <= self.s
    }
}

impl SideRule for M2Params {
    const ID: &'static str = "spy.bipartite-m2";

    fn setup(spec: &GameSpec) -> Result<Self> {
        if spec.m != 2 {
            return Err(Error::StrategyMismatch { id: Self::ID.into(), reason: "meeting size must be 2".into() });
        }
        Ok(M2Params::new(spec.r, spec.s))
    }

    fn spies(&self) -> u32 {
        self.s as u32
    }

    fn targets(&mut self, start: [u32; 2], after: [u32; 2]) -> Result<[u32; 2]> {
        let s = self.s as u32;
        let set = |i: usize, v: i64| {
            let mut t = [0u32; 2];
            t[i] = clamp(v, s);
            t[1 - i] = s - t[i];
            t
        };
        for i in 0..2 {
            if (after[i] as i64) <= self.alpha {
                return Ok(set(i, self.alpha));
            }
        }
        for i in 0..2 {
            let want = (after[1 - i] as i64).min(self.beta);
            if start[i] as i64 >= want {
                return Ok(set(1 - i, want));
            }
        }
        Ok([start[1], start[0]])
    }

    fn check(&self, sides: &Sides, pos: &Position, _m: u32) -> Vec<Audit> {
        let mut out = Vec::new();
        for j in 0..2 {
            let sj = sides.total(&pos.spies, j) as i64;
            let rj = sides.total(&pos.revs, j) as i64;
            let c = sides.covered(&pos.revs, &pos.spies, 1 - j) as i64;
            let need = rj.min((self.r - c).div_euclid(2));
            out.push(Audit::new(format!("A{}", j + 1), sj >= need, format!("s={sj} need={need}")));
            out.push(Audit::new(format!("B{}", j + 1), sj >= self.alpha, format!("s={sj} alpha={}", self.alpha)));
        }
        out
    }
}

/// Constants for meeting size 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct M3Params {
    pub r: i64,
    pub s: i64,
    pub alpha: i64,
    pub beta: i64,
    /// Set when the last targets used the r = 3 mod 18 adjustment.
    pub adjusted: bool,
}

impl M3Params {
    pub fn theorem_spies(r: u32) -> u32 {
        r / 2
    }

    pub fn new(r: u32, s: u32) -> Self {
        let (r, s) = (r as i64, s as i64);
        let alpha = r / 2 - r / 3;
        M3Params { r, s, alpha, beta: s - (r - alpha).div_euclid(3), adjusted: false }
    }

    pub fn exceptional(&self) -> bool {
        self.r % 18 == 3
    }

    /// beta <= ceil(floor(r/2)/2), and beta >= floor((r-2 alpha)/3) outside r = 3 mod 18.
    pub fn inequalities_hold(&self) -> bool {
        let half = self.r / 2;
        let upper = self.beta <= (half + 1) / 2;
        let lower = self.beta >= (self.r - 2 * self.alpha).div_euclid(3);
        upper && (lower || self.exceptional())
    }
}

impl SideRule for M3Params {
    const ID: &'static str = "spy.bipartite-m3";

    fn setup(spec: &GameSpec) -> Result<Self> {
        if spec.m != 3 {
            return Err(Error::StrategyMismatch { id: Self::ID.into(), reason: "meeting size must be 3".into() });
        }
        Ok(M3Params::new(spec.r, spec.s))
    }

    fn spies(&self) -> u32 {
        self.s as u32
    }

    fn targets(&mut self, start: [u32; 2], after: [u32; 2]) -> Result<[u32; 2]> {
        let s = self.s as u32;
        let (a, b, half) = (self.alpha, self.beta, self.r / 2);
        self.adjusted = false;
        for case in 1..=4 {
            for i in 0..2 {
                let ri = after[i] as i64;
                let pick = match case {
                    1 if ri <= a => Some(a),
                    2 if a < ri && ri <= b => Some(ri),
                    3 if b < ri && ri <= 2 * b => {
                        self.adjusted = start[i] as i64 == a && self.exceptional();
                        Some(if self.adjusted { b + 1 } else { b })
                    }
                    4 if 2 * b < ri && ri <= half => Some(ri / 2),
                    _ => None,
                };
                if let Some(v) = pick {
                    let mut t = [0u32; 2];
                    t[i] = clamp(v, s);
                    t[1 - i] = s - t[i];
                    return Ok(t);
                }
            }
        }
        Err(Error::CaseSelectionFailed(format!("revolutionary split {after:?}")))
    }

    fn check(&self, sides: &Sides, pos: &Position, _m: u32) -> Vec<Audit> {
        let mut out = Vec::new();
        let u: Vec<u32> = (0..2).map(|j| sides.max_uncovered(&pos.revs, &pos.spies, j)).collect();
        for j in 0..2 {
            if u[j] > 2 {
                out.push(Audit::new(format!("u{}", j + 1), false, format!("{} revolutionaries on an uncovered vertex", u[j])));
            }
        }
        for j in 0..2 {
            let sj = sides.total(&pos.spies, j) as i64;
            let rj = sides.total(&pos.revs, j) as i64;
            let c = sides.covered(&pos.revs, &pos.spies, 1 - j) as i64;
            let uo = u[1 - j].min(2) as i64;
            let f = (self.r - c).div_euclid(3).min(rj / (3 - uo));
            out.push(Audit::new(format!("A{}", j + 1), sj >= f, format!("s={sj} f={f}")));
            out.push(Audit::new(format!("B{}", j + 1), sj >= self.alpha, format!("s={sj} alpha={}", self.alpha)));
        }
        out
    }

    fn notes(&mut self) -> Vec<Audit> {
        match std::mem::take(&mut self.adjusted) {
            true => vec![Audit::new("exception_branch", true, format!("target beta + 1 = {}", self.beta + 1))],
            false => Vec::new(),
        }
    }
}

/// Real-valued quantities of one round for general meeting size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralRound {
    pub x: f64,
    pub u1: f64,
    pub u2: f64,
    /// The four expressions for alpha; None where a denominator vanishes.
    pub alphas: [Option<f64>; 4],
}

impl GeneralRound {
    pub fn compute(m: u32, r: u32, r1: u32) -> Result<Self> {
        let (m, r, r1) = (m as f64, r as f64, r1 as f64);
        let r2 = r - r1;
        let x = (9.0 * r * r + 12.0 * r1 * r - 12.0 * r1 * r1).sqrt() / (6.0 * m);
        let d1 = r * r + 2.0 * r * x * m + x * x * m * m - 4.0 * x * r1 * m;
        let d2 = r * r - 2.0 * r * x * m + x * x * m * m + 4.0 * x * r1 * m;
        if d1 < -CLOSED_FORM_TOL || d2 < -CLOSED_FORM_TOL || x <= 0.0 {
            return Err(Error::InconsistentClosedForms(format!("negative discriminant at r1={r1}")));
        }
        let u1 = (r + m * x - d1.max(0.0).sqrt()) / (2.0 * x);
        let u2 = (r + m * x - d2.max(0.0).sqrt()) / (2.0 * x);
        let ratio = |num: f64, den: f64| if den.abs() < CLOSED_FORM_TOL { None } else { Some(num / den) };
        let alphas = [
            Some(x + r / m - (r - u1 * x) / m),
            ratio(r2, m - u1).map(|q| x + r / m - q),
            ratio(r1, m - u2),
            Some((r - u2 * x) / m),
        ];
        Ok(GeneralRound { x, u1, u2, alphas })
    }

    pub fn alpha(&self) -> f64 {
        self.alphas[0].expect("always defined")
    }

    pub fn spread(&self) -> f64 {
        let vals: Vec<f64> = self.alphas.iter().flatten().copied().collect();
        let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
        let lo = vals.iter().cloned().fold(f64::MAX, f64::min);
        hi - lo
    }
}

fn ceil_tol(x: f64) -> i64 {
    (x - CLOSED_FORM_TOL).ceil() as i64
}

/// Rule for general meeting size.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralParams {
    pub m: u32,
    pub r: u32,
    pub s: u32,
    /// r/m below 1/(1-1/sqrt 3): hold two spies on each side.
    pub small: bool,
    last: Option<GeneralRound>,
    notes: Vec<Audit>,
}

impl GeneralParams {
    pub fn threshold_ratio() -> f64 {
        1.0 / (1.0 - 1.0 / 3f64.sqrt())
    }

    pub fn theorem_spies(m: u32, r: u32) -> u32 {
        let ratio = r as f64 / m as f64;
        if ratio < Self::threshold_ratio() {
            4
        } else {
            ceil_tol((1.0 + 1.0 / 3f64.sqrt()) * ratio) as u32 + 1
        }
    }

    pub fn new(m: u32, r: u32, s: u32) -> Self {
        let small = (r as f64 / m as f64) < Self::threshold_ratio();
        GeneralParams { m, r, s, small, last: None, notes: Vec::new() }
    }
}

impl SideRule for GeneralParams {
    const ID: &'static str = "spy.bipartite-general";

    fn setup(spec: &GameSpec) -> Result<Self> {
        if spec.m < 2 {
            return Err(Error::StrategyMismatch { id: Self::ID.into(), reason: "meeting size must be at least 2".into() });
        }
        Ok(GeneralParams::new(spec.m, spec.r, spec.s))
    }

    fn spies(&self) -> u32 {
        self.s
    }

    fn targets(&mut self, _start: [u32; 2], after: [u32; 2]) -> Result<[u32; 2]> {
        if self.small {
            let a = self.s / 2;
            return Ok([a, self.s - a]);
        }
        let round = GeneralRound::compute(self.m, self.r, after[0])?;
        let spread = round.spread();
        if spread > CLOSED_FORM_TOL {
            return Err(Error::InconsistentClosedForms(format!("alpha spread {spread:e} at r1={}", after[0])));
        }
        let ratio = self.r as f64 / self.m as f64;
        let floor = (self.r / self.m) as i64;
        let bounds = round.x <= floor as f64 + CLOSED_FORM_TOL && round.x + ratio + 1.0 <= self.s as f64 + CLOSED_FORM_TOL;
        self.notes = vec![
            Audit::new("closed_forms", true, format!("spread {spread:.3e}")),
            Audit::new("x_bounds", bounds, format!("x={:.6} r/m={ratio:.6} s={}", round.x, self.s)),
        ];
        let alpha = round.alpha();
        let s1 = if alpha <= round.x + CLOSED_FORM_TOL {
            ceil_tol(round.x)
        } else if alpha > floor as f64 + CLOSED_FORM_TOL {
            floor
        } else {
            ceil_tol(alpha)
        };
        self.last = Some(round);
        let s1 = clamp(s1, self.s);
        Ok([s1, self.s - s1])
    }

    fn check(&self, sides: &Sides, pos: &Position, m: u32) -> Vec<Audit> {
        (0..2)
            .map(|j| {
                let threat = sides.swarm_threat(&pos.revs, &pos.spies, m, j);
                let guard = sides.total(&pos.spies, 1 - j);
                Audit::new(format!("swarm_guard{}", j + 1), guard >= threat, format!("threat={threat} guard={guard}"))
            })
            .collect()
    }

    fn notes(&mut self) -> Vec<Audit> {
        std::mem::take(&mut self.notes)
    }
}

/// Greedy-migration spy on a complete bipartite graph under rule `R`.
#[derive(Debug, Clone)]
pub struct BipartiteSpy<R> {
    sides: Option<Sides>,
    rule: Option<R>,
    pending: Vec<Audit>,
}

impl<R> Default for BipartiteSpy<R> {
    fn default() -> Self {
        BipartiteSpy { sides: None, rule: None, pending: Vec::new() }
    }
}

impl<R: SideRule> BipartiteSpy<R> {
    pub fn new() -> Self {
        Self::default()
    }

    fn setup(&mut self, spec: &GameSpec) -> Result<(&Sides, &mut R)> {
        if self.sides.is_none() {
            self.sides = Some(Sides::of(&spec.graph).map_err(|e| Error::StrategyMismatch { id: R::ID.into(), reason: e.to_string() })?);
        }
        if self.rule.is_none() {
            self.rule = Some(R::setup(spec)?);
        }
        Ok((self.sides.as_ref().expect("set"), self.rule.as_mut().expect("set")))
    }
}

pub type BipartiteM2Spy = BipartiteSpy<M2Params>;
pub type BipartiteM3Spy = BipartiteSpy<M3Params>;
pub type BipartiteGeneralSpy = BipartiteSpy<GeneralParams>;

impl<R: SideRule> SpyStrategy for BipartiteSpy<R> {
    fn id(&self) -> &'static str {
        R::ID
    }

    /// Tries side splits from the most even outward; the first whose greedy
    /// placement passes the rule's invariants wins.
    fn place(&mut self, spec: &GameSpec, revs: &[u32], _rng: &mut GameRng) -> Result<Vec<u32>> {
        let m = spec.m;
        let (sides, rule) = self.setup(spec)?;
        let s = rule.spies();
        let mut splits: Vec<u32> = (0..=s).collect();
        splits.sort_by_key(|&a| ((2 * a as i64 - s as i64).abs(), a));
        let none = vec![false; spec.n()];
        let mut first = None;
        for a in splits {
            let (Ok(p), Ok(q)) = (sides.top_vertices(revs, 0, &none, a as usize), sides.top_vertices(revs, 1, &none, (s - a) as usize)) else {
                continue;
            };
            let mut spies = vec![0u32; spec.n()];
            for v in p.into_iter().chain(q) {
                spies[v] = 1;
            }
            let pos = Position::placed(revs.to_vec(), spies.clone());
            let ok = covered_audit(revs, &spies, m).ok && rule.check(sides, &pos, m).iter().all(|a| a.ok);
            if ok {
                return Ok(spies);
            }
            first.get_or_insert(spies);
        }
        first.ok_or_else(|| Error::TargetInfeasible("no side split fits".into()))
    }

    fn respond(&mut self, spec: &GameSpec, turn: &SpyTurn<'_>, _rng: &mut GameRng) -> Result<MoveSet> {
        let (sides, rule) = self.setup(spec)?;
        let start = [sides.total(&turn.start.spies, 0), sides.total(&turn.start.spies, 1)];
        if start[0] + start[1] != rule.spies() {
            return Err(Error::pre(format!("rule expects {} spies, position has {}", rule.spies(), start[0] + start[1])));
        }
        let after = [sides.total(&turn.current.revs, 0), sides.total(&turn.current.revs, 1)];
        let targets = rule.targets(start, after)?;
        let ms = greedy_migration(sides, &turn.current.revs, &turn.start.spies, targets)?;
        self.pending = rule.notes();
        self.pending.push(Audit::new("targets", true, format!("{targets:?}")));
        Ok(ms)
    }

    fn audit(&mut self, spec: &GameSpec, pos: &Position) -> Vec<Audit> {
        let Some(sides) = &self.sides else { return Vec::new() };
        let Some(rule) = &self.rule else { return Vec::new() };
        let mut out = std::mem::take(&mut self.pending);
        out.extend(rule.check(sides, pos, spec.m));
        out.push(one_per_vertex(&pos.spies));
        out.push(covered_audit(&pos.revs, &pos.spies, spec.m));
        out
    }

    fn clone_box(&self) -> Box<dyn SpyStrategy> {
        Box::new(self.clone())
    }
}
