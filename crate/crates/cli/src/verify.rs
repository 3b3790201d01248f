//! `verify`: built-in suites and duel sweeps read from a suite file.

use crate::commands::{describe, Run, EXIT_FAIL};
use revspy::family::Family;
use revspy::game::{play, Outcome, Side};
use revspy::registry::{self, rev_strategy, spy_strategy};
use revspy::solver::{sigma_exact, winner};
use revspy::{Error, GameSpec};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;

pub const VERIFY_SCHEMA: u32 = 1;
pub const BUILTIN_SUITES: &[&str] = &["table1", "solver-oracle"];

/// Fault codes by which a strategy declares its hypotheses unmet.
const REFUSALS: &[&str] = &["strategy_mismatch", "precondition", "stabilization_failed"];

/// One sweep: every (m, r, s) combination, pairing and seed is dueled.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    pub graph: String,
    pub m: Vec<u32>,
    pub r: Vec<u32>,
    pub s: Vec<u32>,
    /// `[rev id, spy id]`; `*` stands for every registered strategy of that side.
    pub pairings: Vec<[String; 2]>,
    pub horizon: u32,
    pub seeds: Vec<u64>,
    /// Side that must come out on top in every duel.
    #[serde(default)]
    pub expect: Option<Side>,
    /// Treat a wildcard strategy that reports its hypotheses unmet as not applicable.
    #[serde(default)]
    pub skip_not_applicable: bool,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    #[serde(default)]
    pub experiments: Vec<ExperimentSpec>,
    /// Where results go when `--out` is not given.
    #[serde(default)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub suite: String,
    pub pass: bool,
    pub entries: Vec<EntryResult>,
}

fn expand(id: &str, side: &str) -> Vec<String> {
    if id != "*" {
        return vec![id.to_string()];
    }
    registry::strategies().into_iter().filter(|i| i.side == side).map(|i| i.id.to_string()).collect()
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<(), Error> {
        let empty = [("m", self.m.is_empty()), ("r", self.r.is_empty()), ("s", self.s.is_empty()), ("seeds", self.seeds.is_empty())];
        if let Some((what, _)) = empty.iter().find(|x| x.1) {
            return Err(Error::param(format!("experiment {}: empty {what} list", self.name)));
        }
        if self.pairings.is_empty() {
            return Err(Error::param(format!("experiment {}: no pairings", self.name)));
        }
        let family: Family = self.graph.parse()?;
        for [rev, spy] in &self.pairings {
            for id in expand(rev, "revolutionaries") {
                if let Err(e @ Error::UnknownStrategy(_)) = rev_strategy(&id, Some(&family)) {
                    return Err(e);
                }
            }
            for id in expand(spy, "spies") {
                spy_strategy(&id)?;
            }
        }
        Ok(())
    }

    pub fn run(&self) -> Vec<EntryResult> {
        let mut out = Vec::new();
        let family: Family = match self.graph.parse() {
            Ok(f) => f,
            Err(e) => return vec![EntryResult { name: self.name.clone(), pass: false, detail: e.to_string() }],
        };
        let graph = match family.build() {
            Ok(g) => Arc::new(g),
            Err(e) => return vec![EntryResult { name: self.name.clone(), pass: false, detail: e.to_string() }],
        };
        for &m in &self.m {
            for &r in &self.r {
                for &s in &self.s {
                    let name = format!("{} m={m} r={r} s={s}", self.name);
                    let spec = match GameSpec::new(graph.clone(), m, r, s) {
                        Ok(spec) => spec,
                        Err(e) => {
                            out.push(EntryResult { name, pass: false, detail: e.to_string() });
                            continue;
                        }
                    };
                    out.push(self.sweep(name, &family, &spec));
                }
            }
        }
        out
    }

    fn sweep(&self, name: String, family: &Family, spec: &GameSpec) -> EntryResult {
        let mut games = 0;
        let mut skipped = Vec::new();
        for [rev_id, spy_id] in &self.pairings {
            let wild = rev_id == "*" || spy_id == "*";
            for rev_id in expand(rev_id, "revolutionaries") {
                for spy_id in expand(spy_id, "spies") {
                    let pair = format!("{rev_id} vs {spy_id}");
                    let made = rev_strategy(&rev_id, Some(family)).and_then(|r| Ok((r, spy_strategy(&spy_id)?)));
                    let (rev, spy) = match made {
                        Ok(x) => x,
                        Err(Error::StrategyMismatch { .. }) if wild && self.skip_not_applicable => {
                            skipped.push(format!("{pair} (strategy_mismatch)"));
                            continue;
                        }
                        Err(e) => return EntryResult { name, pass: false, detail: format!("{pair}: {e}") },
                    };
                    for &seed in &self.seeds {
                        let t = play(spec, rev.clone().as_mut(), spy.clone().as_mut(), self.horizon, seed);
                        if let Outcome::Fault { code, .. } = &t.outcome {
                            if REFUSALS.contains(&code.as_str()) && wild && self.skip_not_applicable {
                                skipped.push(format!("{pair} ({code})"));
                                break;
                            }
                        }
                        games += 1;
                        let bad = match (&t.outcome, self.expect) {
                            (Outcome::Fault { .. }, _) => true,
                            (Outcome::RevolutionariesWin { .. }, Some(Side::Spies)) => true,
                            (Outcome::SpiesSurvive { .. }, Some(Side::Revolutionaries)) => true,
                            _ => false,
                        };
                        // a beaten spy strategy's audits only restate the loss
                        let fails = if self.expect == Some(Side::Revolutionaries) { Vec::new() } else { t.audit_failures() };
                        if bad || !fails.is_empty() {
                            let audit = fails.first().map(|(k, a)| format!("; audit {} failed in round {k}", a.check)).unwrap_or_default();
                            let detail = format!("{pair} seed {seed}: {}{audit}", describe(&t.outcome));
                            return EntryResult { name, pass: false, detail };
                        }
                    }
                }
            }
        }
        let mut detail = format!("{games} games");
        if !skipped.is_empty() {
            detail += &format!("; not applicable: {}", skipped.join(", "));
        }
        EntryResult { name, pass: true, detail }
    }
}

fn bipartite(r: u32) -> String {
    format!("bipartite:{},{}", 2 * r, 2 * r)
}

fn duel(name: &str, graph: String, m: u32, r: u32, s: u32, pairings: &[(&str, &str)], horizon: u32, expect: Side) -> ExperimentSpec {
    ExperimentSpec {
        name: name.into(),
        graph,
        m: vec![m],
        r: vec![r],
        s: vec![s],
        pairings: pairings.iter().map(|&(a, b)| [a.to_string(), b.to_string()]).collect(),
        horizon,
        seeds: vec![0, 1, 2],
        expect: Some(expect),
        skip_not_applicable: true,
    }
}

const PRESSURE: [&str; 4] = ["rev.random", "rev.swarm", "rev.alternating-swarm", "rev.side-shuffle"];

fn pressured<'a>(attack: &'a str, spy: &'a str) -> Vec<(&'a str, &'a str)> {
    std::iter::once(attack).chain(PRESSURE).map(|a| (a, spy)).collect()
}

/// Both bounds of each row of the bipartite bounds table, at one desk-scale r.
pub fn table1() -> Vec<ExperimentSpec> {
    let m2 = |r: u32| (7 * r / 2 - 3).div_ceil(5);
    let general_upper = |m: u32, r: u32| ((1.0 + 1.0 / 3f64.sqrt()) * r as f64 / m as f64).ceil() as u32 + 1;
    let even_lower = |m: u32, r: u32| {
        let x = ((14 * r) as i64 - 13 * m as i64).div_euclid(2 * m as i64);
        (x.max(0) as u32).div_ceil(5)
    };
    let general_lower = |m: u32, r: u32| (r / m.div_ceil(3)) / 2;
    vec![
        duel("upper bound", bipartite(6), 2, 6, m2(6), &pressured("rev.bipartite-m2", "spy.bipartite-m2"), 200, Side::Spies),
        duel("lower bound", bipartite(6), 2, 6, m2(6) - 1, &[("rev.bipartite-m2", "*")], 2, Side::Revolutionaries),
        duel("upper bound", bipartite(6), 3, 6, 3, &pressured("rev.bipartite-m3", "spy.bipartite-m3"), 200, Side::Spies),
        duel("lower bound", bipartite(6), 3, 6, 2, &[("rev.bipartite-m3", "*")], 2, Side::Revolutionaries),
        duel("even-m lower bound", bipartite(12), 4, 12, even_lower(4, 12) - 1, &[("rev.cell-grouping-2", "*")], 20, Side::Revolutionaries),
        duel("general upper bound", bipartite(15), 5, 15, general_upper(5, 15), &pressured("rev.cell-grouping-3", "spy.bipartite-general"), 200, Side::Spies),
        duel("general lower bound", bipartite(15), 5, 15, general_lower(5, 15) - 1, &[("rev.cell-grouping-3", "*")], 20, Side::Revolutionaries),
    ]
}

/// Exact values against closed forms on instances the solver finishes quickly.
pub fn solver_oracle() -> Vec<EntryResult> {
    let grid = [(2u32, 2u32), (2, 3), (2, 4), (3, 3)];
    let mut cases: Vec<(String, u32, u32, u32)> = Vec::new();
    let mut graphs: Vec<String> = (2..=5).map(|n| format!("path:{n}")).collect();
    graphs.extend((2..=4).map(|k| format!("star:{k}")));
    graphs.extend((0..6).map(|seed| format!("tree:5,{seed}")));
    graphs.extend((0..4).map(|seed| format!("webbed:6,{seed}")));
    graphs.extend((3..=5).map(|n| format!("complete:{n}")));
    for g in &graphs {
        for &(m, r) in &grid {
            cases.push((g.clone(), m, r, r / m));
        }
    }
    cases.push(("cycle:4".into(), 2, 3, 2));
    let mut out = Vec::new();
    for (graph, m, r, want) in cases {
        let name = format!("sigma({graph}, {m}, {r}) = {want}");
        let got = graph.parse::<Family>().and_then(|f| f.build()).and_then(|g| sigma_exact(Arc::new(g), m, r));
        match got {
            Ok(v) => out.push(EntryResult { name, pass: v == want, detail: format!("solver says {v}") }),
            // outside the standing assumptions
            Err(Error::Precondition(_)) => {}
            Err(e) => out.push(EntryResult { name, pass: false, detail: e.to_string() }),
        }
    }
    let q2 = "hypercube:2".parse::<Family>().and_then(|f| f.build()).and_then(|g| winner(&GameSpec::new(Arc::new(g), 2, 3, 1)?));
    out.push(EntryResult {
        name: "winner(Q2, 2, 3, 1) = revolutionaries".into(),
        pass: q2 == Ok(Side::Revolutionaries),
        detail: format!("{q2:?}"),
    });
    out
}

fn load(suite: &str) -> Result<(Vec<EntryResult>, Option<String>), Error> {
    match suite {
        "table1" => Ok((table1().iter().flat_map(ExperimentSpec::run).collect(), None)),
        "solver-oracle" => Ok((solver_oracle(), None)),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::param(format!("{path}: {e}; built-in suites are {}", BUILTIN_SUITES.join(", ")))
            })?;
            let file: SuiteFile =
                serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
            for x in &file.experiments {
                x.validate()?;
            }
            Ok((file.experiments.iter().flat_map(ExperimentSpec::run).collect(), file.output))
        }
    }
}

pub fn verify(suite: &str, out: Option<&Path>) -> Run {
    let (entries, output) = match load(suite) {
        Ok(x) => x,
        Err(e) => return Run::fail(&e),
    };
    let mut run = Run::default();
    if entries.is_empty() {
        run.err(format!("warning: suite {suite} has no entries; passing vacuously"));
    }
    for e in &entries {
        run.out(format!("{} {}: {}", if e.pass { "PASS" } else { "FAIL" }, e.name, e.detail));
    }
    let pass = entries.iter().all(|e| e.pass);
    run.out(format!("{}/{} passed", entries.iter().filter(|e| e.pass).count(), entries.len()));
    let report = VerifyReport { schema_version: VERIFY_SCHEMA, suite: suite.into(), pass, entries };
    let target = out.map(Path::to_path_buf).or(output.map(Into::into));
    if let Some(path) = target {
        let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        if let Err(e) = std::fs::write(&path, text) {
            return Run::fail(&Error::Io(format!("{}: {e}", path.display())));
        }
    }
    if !pass {
        run.code = EXIT_FAIL;
    }
    run
}
