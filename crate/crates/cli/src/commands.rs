//! Command bodies. Each returns what it printed and the exit code, so the
//! binary and the tests share one path.

use rand::SeedableRng;
use revspy::family::Family;
use revspy::game::{play, Outcome, Side, Transcript};
use revspy::registry::{self, rev_strategy, spy_strategy};
use revspy::solver::{SolveReport, Solver, SOLVE_SCHEMA};
use revspy::{Error, GameRng, GameSpec};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Default)]
pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Run {
    pub(crate) fn out(&mut self, line: impl AsRef<str>) {
        self.stdout.push_str(line.as_ref());
        self.stdout.push('\n');
    }

    pub(crate) fn err(&mut self, line: impl AsRef<str>) {
        self.stderr.push_str(line.as_ref());
        self.stderr.push('\n');
    }

    pub(crate) fn fail(e: &Error) -> Run {
        let code = match e {
            Error::Parse { .. } | Error::InvalidParameter(_) | Error::UnknownStrategy(_) => EXIT_PARSE,
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::StrategyMismatch { .. } => EXIT_MISMATCH,
            _ => EXIT_FAIL,
        };
        Run { stderr: format!("error[{}]: {e}\n", e.code()), code, ..Run::default() }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn spec_of(graph: &str, m: u32, r: u32, s: u32) -> Result<(Family, GameSpec), Error> {
    let family: Family = graph.parse()?;
    let spec = GameSpec::new(Arc::new(family.build()?), m, r, s)?;
    Ok((family, spec))
}

pub fn generate(graph: &str) -> Run {
    let built = graph.parse::<Family>().and_then(|f| f.build());
    match built {
        Ok(g) => Run { stdout: g.to_text(), ..Run::default() },
        Err(e) => Run::fail(&e),
    }
}

pub fn strategies() -> Run {
    let mut run = Run::default();
    for info in registry::strategies() {
        run.out(format!("{:<28} {:<16} {}", info.id, info.side, info.summary));
    }
    run
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub s: u32,
    pub winner: Side,
    pub states: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds_to_win: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CliSolveReport {
    pub schema_version: u32,
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub m: u32,
    pub r: u32,
    /// Set when a single spy count was asked for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<u32>,
    pub table: Vec<TableRow>,
    pub states: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rev_placement: Option<Vec<usize>>,
}

fn row(rep: &SolveReport) -> TableRow {
    TableRow { s: rep.s, winner: rep.winner, states: rep.states, rounds_to_win: rep.rounds_to_win }
}

/// Winner for one spy count, or the full table over floor(r/m) ..= r-m+1 and sigma.
pub fn solve(graph: &str, m: u32, r: u32, s: Option<u32>, out: Option<&Path>) -> Run {
    let report = (|| -> Result<CliSolveReport, Error> {
        let (family, spec) = spec_of(graph, m, r, s.unwrap_or(0))?;
        let solver = Solver::new(spec.graph.clone(), m, r)?;
        let mut report = CliSolveReport {
            schema_version: SOLVE_SCHEMA,
            graph: family.to_string(),
            vertices: spec.n(),
            edges: spec.graph.edge_count(),
            m,
            r,
            s,
            sigma: None,
            table: Vec::new(),
            states: 0,
            rev_placement: None,
        };
        match s {
            Some(s) => {
                let rep = solver.solve(s)?;
                report.rev_placement = rep.rev_placement.clone();
                report.table.push(row(&rep));
            }
            None => {
                for s in spec.trivial_lower()..=spec.trivial_upper() {
                    let rep = solver.solve(s)?;
                    report.table.push(row(&rep));
                    if rep.winner == Side::Spies {
                        report.sigma = Some(s);
                        break;
                    }
                    report.rev_placement = rep.rev_placement.clone();
                }
                report.sigma = report.sigma.or(Some(spec.trivial_upper()));
            }
        }
        report.states = report.table.iter().map(|t| t.states).sum();
        Ok(report)
    })();
    let report = match report {
        Ok(rep) => rep,
        Err(e) => return Run::fail(&e),
    };
    let mut run = Run::default();
    run.out(format!("graph {} |V|={} |E|={} m={} r={}", report.graph, report.vertices, report.edges, m, r));
    for t in &report.table {
        let rounds = t.rounds_to_win.map(|k| format!(" in {k} rounds")).unwrap_or_default();
        run.out(format!("s={} winner={}{} states={}", t.s, t.winner, rounds, t.states));
    }
    if let Some(sigma) = report.sigma {
        run.out(format!("sigma={sigma}"));
    }
    if let Some(path) = out {
        if let Err(e) = write_json(path, &report) {
            return Run::fail(&e);
        }
    }
    run
}

pub struct DuelArgs<'a> {
    pub graph: &'a str,
    pub m: u32,
    pub r: u32,
    pub s: u32,
    pub rev: &'a str,
    pub spy: &'a str,
    pub horizon: Option<u32>,
    pub seed: u64,
}

fn mismatch(e: &Error) -> bool {
    matches!(e, Error::StrategyMismatch { .. })
}

/// Placement dry run on throwaway copies, so a strategy that does not fit
/// the graph is reported before any transcript is written.
fn precheck(spec: &GameSpec, rev: &dyn revspy::RevStrategy, spy: &dyn revspy::SpyStrategy, seed: u64) -> Result<(), Error> {
    let mut rng = GameRng::seed_from_u64(seed);
    let revs = match rev.clone_box().place(spec, &mut rng) {
        Err(e) if mismatch(&e) => return Err(e),
        Err(_) => return Ok(()),
        Ok(c) => c,
    };
    match spy.clone_box().place(spec, &revs, &mut rng) {
        Err(e) if mismatch(&e) => Err(e),
        _ => Ok(()),
    }
}

pub fn duel_transcript(a: &DuelArgs) -> Result<Transcript, Error> {
    let (family, spec) = spec_of(a.graph, a.m, a.r, a.s)?;
    let mut rev = rev_strategy(a.rev, Some(&family))?;
    let mut spy = spy_strategy(a.spy)?;
    precheck(&spec, rev.as_ref(), spy.as_ref(), a.seed)?;
    let horizon = a.horizon.unwrap_or_else(|| spec.default_horizon());
    Ok(play(&spec, rev.as_mut(), spy.as_mut(), horizon, a.seed))
}

pub fn describe(outcome: &Outcome) -> String {
    match outcome {
        Outcome::RevolutionariesWin { round, vertex } => format!("revolutionaries win in round {round} at vertex {vertex}"),
        Outcome::SpiesSurvive { rounds } => format!("spies survive {rounds} rounds"),
        Outcome::Fault { round, side, code, message } => format!("fault by {side} in round {round}: {code}: {message}"),
    }
}

pub fn duel(a: &DuelArgs, out: Option<&Path>) -> Run {
    let t = match duel_transcript(a) {
        Ok(t) => t,
        Err(e) => return Run::fail(&e),
    };
    let mut run = Run::default();
    run.out(format!("{} vs {} on {} m={} r={} s={} seed={}", a.rev, a.spy, a.graph, a.m, a.r, a.s, a.seed));
    run.out(describe(&t.outcome));
    let failures = t.audit_failures();
    run.out(format!("audits: {} checks, {} failed", t.audit_count(), failures.len()));
    for (round, audit) in failures.iter().take(10) {
        run.out(format!("  round {round}: {} {}", audit.check, audit.detail));
    }
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, t.to_json() + "\n") {
            return Run::fail(&Error::Io(format!("{}: {e}", path.display())));
        }
    }
    if matches!(t.outcome, Outcome::Fault { .. }) {
        run.code = EXIT_FAIL;
    }
    run
}
