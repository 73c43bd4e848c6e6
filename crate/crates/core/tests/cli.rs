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

#![cfg(feature = "cli")]

use std::path::{Path, PathBuf};
use std::process::Command;

use ccts_core::commands::{self, exit, GenRequest};
use ccts_core::ncl::{fixtures, parse_ncl, serialize_ncl};
use ccts_core::reduction::{self, GadgetLayout};
use ccts_core::star::decide;
use ccts_core::{generate, parse_instance, serialize_instance, serialize_solution, solve_bfs};
use tempfile::TempDir;

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn ccts(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ccts")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K2: &str = r#"{"name": "k2",
    "base_graph": {"n": 2, "edges": [[0, 1]]},
    "swap_graph": {"k": 2, "edges": [[1, 2]]},
    "initial": [1, 2], "final": [2, 1]}"#;

// 2x2 grid, one blank at 0, a three-cycle of tokens is fine but a
// transposition is not
const GRID_ODD: &str = r#"{"name": "odd",
    "base_graph": {"n": 4, "edges": [[0, 1], [0, 2], [1, 3], [2, 3]]},
    "swap_graph": {"k": 4, "edges": [[1, 2], [1, 3], [1, 4]]},
    "initial": [1, 2, 3, 4], "final": [1, 3, 2, 4]}"#;

#[test]
fn solve_matches_library_serialization() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "k2.json", K2);
    let out = commands::cmd_solve(&path, 1000);
    let expected = solve_bfs(&parse_instance(K2).unwrap(), 1000).to_json();
    assert_eq!(out.stdout, format!("{expected}\n"));
    assert_eq!(out.code, exit::SOLVABLE);
}

#[test]
fn decide_star_matches_library_serialization() {
    let dir = TempDir::new().unwrap();
    let path = put(&dir, "odd.json", GRID_ODD);
    let out = commands::cmd_decide_star(&path, 1000);
    let verdict = decide(&parse_instance(GRID_ODD).unwrap(), 1000).unwrap();
    assert!(!verdict.solvable);
    assert_eq!(out.stdout, format!("{}\n", verdict.to_json()));
    assert_eq!(out.code, exit::UNSOLVABLE);
}

#[test]
fn gen_matches_generators() {
    let out = commands::cmd_gen(
        &GenRequest::Grid {
            rows: 3,
            cols: 3,
            blanks: 2,
            seed: 5,
        },
        None,
    );
    assert_eq!(
        out.stdout,
        format!("{}\n", serialize_instance(&generate::grid(3, 3, 2, 5).unwrap()))
    );
    let out = commands::cmd_gen(&GenRequest::NclFixture { name: "or-or".into() }, None);
    assert_eq!(
        out.stdout,
        format!("{}\n", serialize_ncl(&fixtures::instance("or-or").unwrap()))
    );
    let out = commands::cmd_gen(&GenRequest::NclFixture { name: "nope".into() }, None);
    assert_eq!(out.code, exit::USAGE);
}

#[test]
fn reduce_writes_instance_and_layout() {
    let dir = TempDir::new().unwrap();
    let ncl = put(&dir, "k4.json", &serialize_ncl(&fixtures::instance("k4-or").unwrap()));
    let target = dir.path().join("red.json");
    let out = commands::cmd_reduce_ncl(&ncl, true, Some(&target), None);
    assert_eq!(out.code, exit::SOLVABLE, "{}", out.stderr);
    let expected = reduction::reduce(&parse_ncl(&std::fs::read_to_string(&ncl).unwrap()).unwrap(), true).unwrap();
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(written, format!("{}\n", serialize_instance(&expected.instance)));
    let layout_text = std::fs::read_to_string(dir.path().join("red.json.layout.json")).unwrap();
    let layout = GadgetLayout::from_value(&serde_json::from_str(&layout_text).unwrap()).unwrap();
    assert_eq!(layout.gadgets.len(), expected.layout.gadgets.len());
    assert_eq!(layout.dummies, expected.layout.dummies);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let k2 = put(&dir, "k2.json", K2);
    let odd = put(&dir, "odd.json", GRID_ODD);
    let garbage = put(&dir, "bad.json", "{not json");
    let mismatch = put(&dir, "mm.json", &K2.replace("[2, 1]}", "[2, 2]}"));
    let self_loop = put(&dir, "loop.json", &K2.replace("[[0, 1]]}", "[[0, 0]]}"));

    assert_eq!(ccts(&["solve", s(&k2)]).0, exit::SOLVABLE);
    assert_eq!(ccts(&["solve", s(&odd)]).0, exit::UNSOLVABLE);
    assert_eq!(ccts(&["decide-star", s(&odd)]).0, exit::UNSOLVABLE);
    assert_eq!(ccts(&["solve", s(&garbage)]).0, exit::USAGE);
    assert_eq!(ccts(&["solve", "/nonexistent/x.json"]).0, exit::USAGE);
    assert_eq!(ccts(&["validate", s(&k2)]).0, exit::SOLVABLE);
    assert_eq!(ccts(&["validate", s(&mismatch)]).0, exit::UNSOLVABLE);
    assert_ne!(ccts(&["validate", s(&self_loop)]).0, exit::SOLVABLE);
    assert_eq!(ccts(&["frobnicate"]).0, exit::USAGE);

    let (code, _, _) = ccts(&["gen", "-o", s(&dir.path().join("teaser.json")), "teaser"]);
    assert_eq!(code, exit::SOLVABLE);
    assert_eq!(
        ccts(&["decide-star", s(&dir.path().join("teaser.json"))]).0,
        exit::NOT_STAR
    );
}

#[test]
fn binary_limit_exit() {
    let dir = TempDir::new().unwrap();
    let grid = put(
        &dir,
        "g.json",
        &serialize_instance(&generate::grid(3, 3, 1, 1).unwrap()),
    );
    let (code, stdout, _) = ccts(&["solve", "--max-states", "10", s(&grid)]);
    assert_eq!(code, exit::LIMIT);
    assert!(stdout.contains("limit"), "{stdout}");
}

#[test]
fn verify_accepts_witness_and_rejects_tampering() {
    let dir = TempDir::new().unwrap();
    let inst = generate::teaser();
    let path = put(&dir, "t.json", &serialize_instance(&inst));
    let witness = solve_bfs(&inst, 1_000_000).witness().unwrap().clone();
    let good = put(&dir, "good.json", &serialize_solution(&inst.name, &witness));
    let (code, stdout, _) = ccts(&["verify", s(&path), s(&good)]);
    assert_eq!(code, exit::SOLVABLE);
    assert!(stdout.contains("\"valid\": true"), "{stdout}");

    let mut swaps = witness.swaps().to_vec();
    swaps.pop();
    let short = put(
        &dir,
        "short.json",
        &serialize_solution(&inst.name, &ccts_core::SwapSequence::new(swaps)),
    );
    let (code, stdout, _) = ccts(&["verify", s(&path), s(&short)]);
    assert_eq!(code, exit::UNSOLVABLE);
    assert!(stdout.contains("\"valid\": false"), "{stdout}");

    let mut swaps = witness.swaps().to_vec();
    swaps[0] = (0, 8);
    let broken = put(
        &dir,
        "broken.json",
        &serialize_solution(&inst.name, &ccts_core::SwapSequence::new(swaps)),
    );
    let (code, stdout, _) = ccts(&["verify", s(&path), s(&broken)]);
    assert_eq!(code, exit::UNSOLVABLE);
    assert!(stdout.contains("\"failed_at\": 0"), "{stdout}");
}

#[test]
fn ncl_solve_and_export_dot() {
    let dir = TempDir::new().unwrap();
    let ncl = put(
        &dir,
        "sq.json",
        &serialize_ncl(&fixtures::instance("and-or-square").unwrap()),
    );
    let (code, stdout, _) = ccts(&["ncl-solve", s(&ncl)]);
    assert_eq!(code, exit::SOLVABLE);
    assert!(stdout.contains("solvable"), "{stdout}");

    let red = dir.path().join("r.json");
    let layout = dir.path().join("r.layout.json");
    assert_eq!(
        ccts(&["reduce-ncl", s(&ncl), "-o", s(&red), "--layout", s(&layout)]).0,
        exit::SOLVABLE
    );
    let (code, dot, _) = ccts(&["export-dot", s(&red), "--layout", s(&layout)]);
    assert_eq!(code, exit::SOLVABLE);
    assert!(dot.starts_with("graph \"ncl-reduction\" {"), "{dot}");
    assert!(dot.contains("subgraph cluster_0"), "{dot}");
    assert!(
        dot.contains("label=\"AND 0\"") || dot.contains("label=\"OR 0\""),
        "{dot}"
    );
}
