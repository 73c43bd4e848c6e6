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

//! File-driven commands behind the `ccts` binary. Each returns what the
//! binary prints and its exit status, so the commands are testable
//! without spawning a process.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

use crate::dot::export_dot;
use crate::error::Error;
use crate::generate;
use crate::instance::Instance;
use crate::json::{parse_instance, parse_solution, serialize_instance};
use crate::ncl::{self, parse_ncl, serialize_ncl, solve_ncl_bfs};
use crate::oracle::{solve_bfs, SearchOutcome};
use crate::reduction::{self, GadgetLayout};
use crate::star;
use crate::validate::validate;

pub mod exit {
    pub const SOLVABLE: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const UNSOLVABLE: i32 = 3;
    pub const NOT_STAR: i32 = 4;
    pub const INVALID: i32 = 5;
    pub const LIMIT: i32 = 6;
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(stdout: String, code: i32) -> Self {
        CommandOutput {
            stdout: with_newline(stdout),
            stderr: String::new(),
            code,
        }
    }

    fn fail(message: impl Into<String>, code: i32) -> Self {
        CommandOutput {
            stdout: String::new(),
            stderr: with_newline(message.into()),
            code,
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.is_empty() && !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn read(path: &Path) -> Result<String, CommandOutput> {
    fs::read_to_string(path).map_err(|e| CommandOutput::fail(format!("{}: {e}", path.display()), exit::USAGE))
}

fn load(path: &Path) -> Result<Instance, CommandOutput> {
    parse_instance(&read(path)?).map_err(|e| CommandOutput::fail(format!("{}: {e}", path.display()), exit::USAGE))
}

fn write(path: &Path, text: &str) -> Result<(), CommandOutput> {
    fs::write(path, with_newline(text.to_string()))
        .map_err(|e| CommandOutput::fail(format!("{}: {e}", path.display()), exit::USAGE))
}

fn outcome_code<W>(out: &SearchOutcome<W>) -> i32 {
    match out.is_solvable() {
        Some(true) => exit::SOLVABLE,
        Some(false) => exit::UNSOLVABLE,
        None => exit::LIMIT,
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(out) => return out,
        }
    };
}

/// Exit 0 when the instance is well formed with matching color counts,
/// 3 when only the counts differ, 5 otherwise.
pub fn cmd_validate(path: &Path) -> CommandOutput {
    let inst = tri!(load(path));
    let report = validate(&inst);
    let code = if !report.is_well_formed() {
        exit::INVALID
    } else if !report.counts_match {
        exit::UNSOLVABLE
    } else {
        exit::SOLVABLE
    };
    CommandOutput::ok(serde_json::to_string_pretty(&report).expect("report serializes"), code)
}

pub fn cmd_solve(path: &Path, max_states: usize) -> CommandOutput {
    let inst = tri!(load(path));
    let out = solve_bfs(&inst, max_states);
    CommandOutput::ok(out.to_json(), outcome_code(&out))
}

pub fn cmd_decide_star(path: &Path, oracle_budget: usize) -> CommandOutput {
    let inst = tri!(load(path));
    let report = validate(&inst);
    if !report.is_well_formed() {
        let mut out = CommandOutput::ok(
            serde_json::to_string_pretty(&report).expect("report serializes"),
            exit::INVALID,
        );
        out.stderr = "instance failed validation\n".into();
        return out;
    }
    match star::decide(&inst, oracle_budget) {
        Ok(v) => {
            let code = if v.solvable { exit::SOLVABLE } else { exit::UNSOLVABLE };
            CommandOutput::ok(v.to_json(), code)
        }
        Err(Error::NotStar) => CommandOutput::fail("swap graph is not a star on the colors in use", exit::NOT_STAR),
        Err(e @ Error::LimitExceeded { .. }) => CommandOutput::fail(e.to_string(), exit::LIMIT),
        Err(e) => CommandOutput::fail(e.to_string(), exit::INVALID),
    }
}

/// Writes the reduced instance to `output` (stdout when `None`) and the
/// gadget layout to `layout`, defaulting to `<output>.layout.json`.
pub fn cmd_reduce_ncl(path: &Path, cubic: bool, output: Option<&Path>, layout: Option<&Path>) -> CommandOutput {
    let text = tri!(read(path));
    let inst = match parse_ncl(&text) {
        Ok(i) => i,
        Err(e) => return CommandOutput::fail(format!("{}: {e}", path.display()), exit::USAGE),
    };
    let out = match reduction::reduce(&inst, cubic) {
        Ok(o) => o,
        Err(e) => return CommandOutput::fail(e.to_string(), exit::INVALID),
    };
    let instance_json = serialize_instance(&out.instance);
    let layout_path: Option<PathBuf> = layout
        .map(Path::to_path_buf)
        .or_else(|| output.map(|o| PathBuf::from(format!("{}.layout.json", o.display()))));
    if let Some(lp) = &layout_path {
        tri!(write(lp, &out.layout.to_json()));
    }
    let mut result = match output {
        Some(o) => {
            tri!(write(o, &instance_json));
            CommandOutput::ok(String::new(), exit::SOLVABLE)
        }
        None => CommandOutput::ok(instance_json, exit::SOLVABLE),
    };
    if out.forced_unsolvable {
        result.stderr = "note: color counts differ; the reduced instance is unsolvable\n".into();
    }
    result
}

pub fn cmd_ncl_solve(path: &Path, max_states: usize) -> CommandOutput {
    let text = tri!(read(path));
    let inst = match parse_ncl(&text) {
        Ok(i) => i,
        Err(e) => return CommandOutput::fail(format!("{}: {e}", path.display()), exit::USAGE),
    };
    for (field, o) in [("initial", &inst.initial), ("final", &inst.target)] {
        if !ncl::is_valid_config(&inst.graph, o) {
            return CommandOutput::fail(format!("{field}: orientation is not valid"), exit::INVALID);
        }
    }
    let out = solve_ncl_bfs(&inst, max_states);
    CommandOutput::ok(out.to_json(), outcome_code(&out))
}

/// Replays a solution file against an instance. Exit 0 when it is legal
/// and ends on the final configuration, 3 otherwise.
pub fn cmd_verify(instance: &Path, solution: &Path) -> CommandOutput {
    let inst = tri!(load(instance));
    let (_, seq) = match parse_solution(&tri!(read(solution))) {
        Ok(s) => s,
        Err(e) => return CommandOutput::fail(format!("{}: {e}", solution.display()), exit::USAGE),
    };
    let mut config = inst.initial.clone();
    for (i, &edge) in seq.swaps().iter().enumerate() {
        match inst.apply_swap(&config, edge) {
            Ok(next) => config = next,
            Err(e) => {
                let doc = json!({"valid": false, "failed_at": i, "reason": e.to_string()});
                return CommandOutput::ok(serde_json::to_string_pretty(&doc).unwrap(), exit::UNSOLVABLE);
            }
        }
    }
    if config != inst.target {
        let doc = json!({"valid": false, "failed_at": seq.len(), "reason": "final configuration not reached"});
        return CommandOutput::ok(serde_json::to_string_pretty(&doc).unwrap(), exit::UNSOLVABLE);
    }
    let doc = json!({"valid": true, "swaps": seq.len()});
    CommandOutput::ok(serde_json::to_string_pretty(&doc).unwrap(), exit::SOLVABLE)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenRequest {
    Grid {
        rows: usize,
        cols: usize,
        blanks: usize,
        seed: u64,
    },
    Cycle {
        n: usize,
        blanks: usize,
        k: usize,
        seed: u64,
    },
    T0 {
        seed: u64,
    },
    StarRandom {
        n: usize,
        k: usize,
        seed: u64,
    },
    Teaser,
    /// Emits an NCL document rather than a CCTS instance.
    NclFixture {
        name: String,
    },
}

pub fn cmd_gen(request: &GenRequest, output: Option<&Path>) -> CommandOutput {
    let text = match request {
        GenRequest::NclFixture { name } => match ncl::fixtures::instance(name) {
            Some(inst) => serialize_ncl(&inst),
            None => {
                let names: Vec<&str> = ncl::fixtures::all().iter().map(|(n, _)| *n).collect();
                return CommandOutput::fail(
                    format!("unknown fixture {name:?}; known: {}", names.join(", ")),
                    exit::USAGE,
                );
            }
        },
        other => {
            let inst = match other {
                GenRequest::Grid {
                    rows,
                    cols,
                    blanks,
                    seed,
                } => generate::grid(*rows, *cols, *blanks, *seed),
                GenRequest::Cycle { n, blanks, k, seed } => generate::cycle(*n, *blanks, *k, *seed),
                GenRequest::T0 { seed } => generate::t0(*seed),
                GenRequest::StarRandom { n, k, seed } => generate::star_random(*n, *k, *seed),
                GenRequest::Teaser => Ok(generate::teaser()),
                GenRequest::NclFixture { .. } => unreachable!(),
            };
            match inst {
                Ok(i) => serialize_instance(&i),
                Err(e) => return CommandOutput::fail(e.to_string(), exit::USAGE),
            }
        }
    };
    match output {
        Some(o) => {
            tri!(write(o, &text));
            CommandOutput::ok(String::new(), exit::SOLVABLE)
        }
        None => CommandOutput::ok(text, exit::SOLVABLE),
    }
}

pub fn cmd_export_dot(path: &Path, layout: Option<&Path>) -> CommandOutput {
    let inst = tri!(load(path));
    let layout: Option<GadgetLayout> = match layout {
        Some(p) => match serde_json::from_str::<serde_json::Value>(&tri!(read(p))) {
            Ok(v) => match GadgetLayout::from_value(&v) {
                Some(l) => Some(l),
                None => return CommandOutput::fail(format!("{}: not a gadget layout", p.display()), exit::USAGE),
            },
            Err(e) => return CommandOutput::fail(format!("{}: {e}", p.display()), exit::USAGE),
        },
        None => None,
    };
    CommandOutput::ok(export_dot(&inst, layout.as_ref()), exit::SOLVABLE)
}
