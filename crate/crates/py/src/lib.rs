//! Python bindings: exact solver, duels, graph families.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use revspy::family::Family;
use revspy::game::play;
use revspy::registry;
use revspy::solver::Solver;
use revspy::{Error, GameSpec, Graph};
use std::sync::Arc;

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

fn build(graph: &str) -> Result<(Family, Arc<Graph>), Error> {
    let family: Family = graph.parse()?;
    let g = Arc::new(family.build()?);
    Ok((family, g))
}

/// Vertex count and edge list of a family graph.
#[pyfunction]
fn generate(graph: &str) -> PyResult<(usize, Vec<(usize, usize)>)> {
    let (_, g) = build(graph).map_err(py_err)?;
    Ok((g.n(), g.edges()))
}

#[pyfunction]
fn sigma(graph: &str, m: u32, r: u32) -> PyResult<u32> {
    let (_, g) = build(graph).map_err(py_err)?;
    Solver::new(g, m, r).and_then(|s| s.sigma()).map_err(py_err)
}

/// "revolutionaries" or "spies" under optimal play.
#[pyfunction]
fn winner(graph: &str, m: u32, r: u32, s: u32) -> PyResult<String> {
    let (_, g) = build(graph).map_err(py_err)?;
    let rep = Solver::new(g, m, r).and_then(|solver| solver.solve(s)).map_err(py_err)?;
    Ok(rep.winner.to_string())
}

/// Plays one game and returns the transcript as JSON.
#[pyfunction]
#[pyo3(signature = (graph, m, r, s, rev, spy, seed=0, horizon=None))]
#[allow(clippy::too_many_arguments)]
fn duel(graph: &str, m: u32, r: u32, s: u32, rev: &str, spy: &str, seed: u64, horizon: Option<u32>) -> PyResult<String> {
    let run = || -> Result<String, Error> {
        let (family, g) = build(graph)?;
        let spec = GameSpec::new(g, m, r, s)?;
        let mut rev = registry::rev_strategy(rev, Some(&family))?;
        let mut spy = registry::spy_strategy(spy)?;
        let horizon = horizon.unwrap_or_else(|| spec.default_horizon());
        Ok(play(&spec, rev.as_mut(), spy.as_mut(), horizon, seed).to_json())
    };
    run().map_err(py_err)
}

/// (id, side, summary) for every registered strategy.
#[pyfunction]
fn strategies() -> Vec<(String, String, String)> {
    registry::strategies().into_iter().map(|i| (i.id.into(), i.side.into(), i.summary.into())).collect()
}

#[pymodule]
fn revspy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(winner, m)?)?;
    m.add_function(wrap_pyfunction!(duel, m)?)?;
    m.add_function(wrap_pyfunction!(strategies, m)?)?;
    Ok(())
}
