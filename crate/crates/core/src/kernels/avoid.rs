use crate::error::{Error, Result};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Inclusion probability for the random index set.
pub const AVOID_P: f64 = 0.079532;
/// Random attempts before the exhaustive fallback.
pub const AVOID_SAMPLES: usize = 200;
const EXHAUSTIVE_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AvoidPhase {
    First,
    Random { attempt: usize },
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoidResult {
    pub w: u128,
    pub phase: AvoidPhase,
}

/// True when I meets v in fewer than (|v| + 1) / 2 coordinates.
pub fn avoids(i: u128, v: u128) -> bool {
    2 * (i & v).count_ones() < v.count_ones() + 1
}

/// A weight-m vertex of Q_t at distance at least m from every spy (all of weight >= 2).
pub fn avoiding_vertex(t: usize, m: usize, spies: &[u128], seed: u64) -> Result<u128> {
    avoiding_vertex_excluding(t, m, spies, 0, seed).map(|r| r.w)
}

/// As `avoiding_vertex`, also keeping the coordinates in `excluded` out of w.
pub fn avoiding_vertex_excluding(t: usize, m: usize, spies: &[u128], excluded: u128, seed: u64) -> Result<AvoidResult> {
    if t > 128 || m == 0 || m > t {
        return Err(Error::pre(format!("need 1 <= m <= t <= 128, got m = {m}, t = {t}")));
    }
    let universe: u128 = if t == 128 { u128::MAX } else { (1u128 << t) - 1 };
    if spies.iter().any(|&v| v & !universe != 0 || v.count_ones() < 2) {
        return Err(Error::pre("spy vertices must lie in Q_t and have weight >= 2"));
    }
    let allowed: Vec<usize> = (0..t).filter(|&i| excluded >> i & 1 == 0).collect();
    if allowed.len() < m {
        return Err(Error::AvoidingVertexNotFound);
    }
    let ok = |w: u128| spies.iter().all(|&v| avoids(w, v));
    let first: u128 = allowed[..m].iter().map(|&i| 1u128 << i).sum();
    if ok(first) {
        return Ok(AvoidResult { w: first, phase: AvoidPhase::First });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..AVOID_SAMPLES {
        let mut chosen = 0u128;
        for &i in &allowed {
            if rng.gen::<f64>() < AVOID_P {
                chosen |= 1 << i;
            }
        }
        if chosen.count_ones() as usize >= m && ok(chosen) {
            // avoidance is inherited by subsets
            let w = lowest_bits(chosen, m);
            return Ok(AvoidResult { w, phase: AvoidPhase::Random { attempt } });
        }
    }
    let total = crate::util::binomial(allowed.len() as u64, m as u64);
    if total > EXHAUSTIVE_CAP {
        return Err(Error::CapExceeded { what: "avoiding vertex search".into(), size: total, cap: EXHAUSTIVE_CAP });
    }
    allowed
        .iter()
        .copied()
        .combinations(m)
        .map(|c| c.iter().map(|&i| 1u128 << i).sum::<u128>())
        .find(|&w| ok(w))
        .map(|w| AvoidResult { w, phase: AvoidPhase::Exhaustive })
        .ok_or(Error::AvoidingVertexNotFound)
}

fn lowest_bits(mut x: u128, k: usize) -> u128 {
    let mut out = 0;
    for _ in 0..k {
        let low = x & x.wrapping_neg();
        out |= low;
        x ^= low;
    }
    out
}
