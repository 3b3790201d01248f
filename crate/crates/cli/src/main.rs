use clap::{Parser, Subcommand};
use revspy::solver::STATE_CAP_ENV;
use revspy_cli::commands::{self, DuelArgs, Run};
use revspy_cli::{api, verify};
use std::path::PathBuf;
use std::process::ExitCode;

/// Revolutionaries and spies on graphs: exact solving, strategy duels,
/// verification sweeps and a session server.
///
/// Graphs are written `family:params`, e.g. `cycle:5`, `star:4` (4 leaves),
/// `hypercube:3`, `bipartite:8,8`, `multipartite:6,6,6`, `random:40,0.5,7`,
/// `tree:9,1`, `webbed:10,3`, `paley:13`, `split:2,4`, `domsharp:2,2,6`,
/// `grid:3x3x3`, `file:graph.txt`.
///
/// Exit codes: 0 success, 1 failure, 2 parse error, 3 state cap exceeded,
/// 4 strategy does not fit the graph.
#[derive(Parser)]
#[command(name = "revspy", version)]
struct Cli {
    /// Solver state cap; overrides the REVSPY_STATE_CAP environment variable.
    #[arg(long, global = true)]
    state_cap: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact winner for one spy count, or sigma with the winner table.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        /// Omit to compute sigma.
        #[arg(long)]
        s: Option<u32>,
        /// JSON report file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plays two registered strategies against each other.
    Duel {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        /// Revolutionary strategy id (see `strategies`).
        #[arg(long)]
        rev: String,
        /// Spy strategy id.
        #[arg(long)]
        spy: String,
        /// Rounds to play; defaults to 4|V|r.
        #[arg(long)]
        horizon: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Transcript file (JSON).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a built-in suite (table1, solver-oracle) or a JSON suite file.
    Verify {
        #[arg(long)]
        suite: String,
        /// JSON results file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Serves the HTTP session protocol.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
    /// Prints a graph in text form.
    Generate {
        #[arg(long)]
        graph: String,
    },
    /// Lists strategy ids.
    Strategies,
}

fn emit(run: Run) -> ExitCode {
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    ExitCode::from(run.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.state_cap {
        std::env::set_var(STATE_CAP_ENV, cap.to_string());
    }
    match cli.cmd {
        Cmd::Solve { graph, m, r, s, out } => emit(commands::solve(&graph, m, r, s, out.as_deref())),
        Cmd::Duel { graph, m, r, s, rev, spy, horizon, seed, out } => {
            let args = DuelArgs { graph: &graph, m, r, s, rev: &rev, spy: &spy, horizon, seed };
            emit(commands::duel(&args, out.as_deref()))
        }
        Cmd::Verify { suite, out } => emit(verify::verify(&suite, out.as_deref())),
        Cmd::Generate { graph } => emit(commands::generate(&graph)),
        Cmd::Strategies => emit(commands::strategies()),
        Cmd::Serve { host, port } => {
            let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
            match rt.block_on(api::serve(&format!("{host}:{port}"))) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error[io]: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
