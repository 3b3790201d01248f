//! Matching, cover and avoidance kernels used by the strategies.

mod avoid;
mod cover;
mod matching;

pub use avoid::{avoiding_vertex, avoiding_vertex_excluding, avoids, AvoidPhase, AvoidResult, AVOID_P, AVOID_SAMPLES};
pub use cover::{min_movers_cover, partial_cover, CoverPlan};
pub use matching::{hall_violator, max_matching, BipartiteInstance, Matching};
