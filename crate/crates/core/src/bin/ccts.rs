// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use ccts_core::commands::{self, exit, CommandOutput, GenRequest};
use ccts_core::server::{self, AppState, MAX_STATES_CAP};
use ccts_core::DEFAULT_MAX_STATES;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ccts", version, about = "Constrained colored token swapping toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file for structural problems.
    Validate { instance: PathBuf },
    /// Exhaustive breadth-first search; prints the outcome and a shortest witness.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Decide an instance whose swap graph is a star.
    DecideStar {
        instance: PathBuf,
        /// Budget for the brute-force branch.
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Compile an NCL document into a CCTS instance.
    ReduceNcl {
        ncl: PathBuf,
        #[arg(long)]
        cubic: bool,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Layout sidecar; defaults to `<o>.layout.json` when -o is given.
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Exhaustive search over NCL orientations.
    NclSolve {
        ncl: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Replay a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(short = 'o', global = true)]
        output: Option<PathBuf>,
    },
    /// Graphviz rendering of an instance.
    ExportDot {
        instance: PathBuf,
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Serve the HTTP API and, optionally, the web UI bundle.
    Serve {
        #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        #[arg(long)]
        instances: PathBuf,
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        #[arg(long, default_value_t = MAX_STATES_CAP)]
        max_states: usize,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Sliding puzzle on a grid; color 1 is the blank.
    Grid {
        #[arg(long, default_value_t = 2)]
        rows: usize,
        #[arg(long, default_value_t = 3)]
        cols: usize,
        #[arg(long, default_value_t = 1)]
        blanks: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cycle with a star swap graph.
    Cycle {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        blanks: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The exceptional 7-vertex graph, one blank, distinct tokens.
    T0 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random connected graph with a star swap graph.
    StarRandom {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fox, caterpillar, farmer and chicken on a 3x3 board.
    Teaser,
    /// NCL document: or-or, k4-or, and-and, and-or-square or prism.
    NclFixture { name: String },
}

fn emit(out: CommandOutput) -> ExitCode {
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Validate { instance } => commands::cmd_validate(&instance),
        Command::Solve { instance, max_states } => commands::cmd_solve(&instance, max_states),
        Command::DecideStar { instance, max_states } => commands::cmd_decide_star(&instance, max_states),
        Command::ReduceNcl {
            ncl,
            cubic,
            output,
            layout,
        } => commands::cmd_reduce_ncl(&ncl, cubic, output.as_deref(), layout.as_deref()),
        Command::NclSolve { ncl, max_states } => commands::cmd_ncl_solve(&ncl, max_states),
        Command::Verify { instance, solution } => commands::cmd_verify(&instance, &solution),
        Command::Gen { kind, output } => {
            let request = match kind {
                GenKind::Grid {
                    rows,
                    cols,
                    blanks,
                    seed,
                } => GenRequest::Grid {
                    rows,
                    cols,
                    blanks,
                    seed,
                },
                GenKind::Cycle { n, blanks, k, seed } => GenRequest::Cycle { n, blanks, k, seed },
                GenKind::T0 { seed } => GenRequest::T0 { seed },
                GenKind::StarRandom { n, k, seed } => GenRequest::StarRandom { n, k, seed },
                GenKind::Teaser => GenRequest::Teaser,
                GenKind::NclFixture { name } => GenRequest::NclFixture { name },
            };
            commands::cmd_gen(&request, output.as_deref())
        }
        Command::ExportDot { instance, layout } => commands::cmd_export_dot(&instance, layout.as_deref()),
        Command::Serve {
            port,
            instances,
            static_dir,
            max_states,
        } => return serve(port, instances, static_dir, max_states),
    };
    emit(out)
}

fn serve(port: u16, instances: PathBuf, static_dir: Option<PathBuf>, max_states: usize) -> ExitCode {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let mut state = AppState::new(max_states);
    match state.load_dir(&instances) {
        Ok(skipped) => {
            for (path, err) in skipped {
                tracing::warn!("skipping {}: {err}", path.display());
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", instances.display());
            return ExitCode::from(exit::USAGE as u8);
        }
    }
    tracing::info!("{} instances loaded", state.len());
    let runtime = tokio::runtime::Runtime::new().expect("tokio runtime");
    match runtime.block_on(server::serve(state, static_dir, port)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("serve: {e}");
            ExitCode::from(exit::USAGE as u8)
        }
    }
}
