//! Revolutionaries and spies on graphs.

pub mod error;
pub mod family;
pub mod game;
pub mod graph;
pub mod kernels;
pub mod registry;
pub mod solver;
pub mod revs;
pub mod spies;
pub mod strategy;
pub mod util;

pub use error::{Error, Result};
pub use game::{GameSpec, MoveSet, Outcome, Position, Transcript};
pub use graph::Graph;
pub use strategy::{Audit, GameRng, RevStrategy, SpyStrategy, SpyTurn};
