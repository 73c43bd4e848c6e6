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

//! Constrained colored token swapping (CCTS).
//!
//! Tokens of colors `1..=k` sit on the vertices of a base graph; two
//! neighboring tokens may swap only when their colors are adjacent in a
//! swap graph. This crate provides
//!
//! * the domain model, validation and JSON formats ([`instance`], [`json`], [`validate`]),
//! * an exact breadth-first oracle ([`oracle`]),
//! * a decision procedure for star swap graphs ([`star`]),
//! * nondeterministic constraint logic ([`ncl`]) and a gadget reduction
//!   from it to CCTS with a path swap graph ([`reduction`]),
//! * instance generators, DOT export and file-driven commands.

pub mod commands;
pub mod decompose;
pub mod dot;
pub mod error;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod json;
pub mod ncl;
pub mod oracle;
pub mod reduction;
#[cfg(feature = "cli")]
pub mod server;
pub mod star;
pub mod validate;

pub use decompose::{decompose_by_swap_components, Decomposition, Part};
pub use error::{Error, Result};
pub use instance::{BaseGraph, Color, Configuration, Edge, Instance, SwapGraph, SwapSequence, Vertex};
pub use json::{parse_instance, serialize_instance, serialize_solution};
pub use oracle::{
    reachable_configs, solvable_symmetric_check, solve_bfs, verify_sequence, CanonicalKey, SearchOutcome,
    DEFAULT_MAX_STATES,
};
pub use validate::{validate, ValidationReport};
