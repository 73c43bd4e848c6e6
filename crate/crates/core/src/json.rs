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

//! JSON documents for instances and solutions.
//!
//! ```json
//! {"name": "k2",
//!  "base_graph": {"n": 2, "edges": [[0, 1]]},
//!  "swap_graph": {"k": 2, "edges": [[1, 2]]},
//!  "initial": [1, 2], "final": [2, 1]}
//! ```
//!
//! Unknown fields (for instance a UI `layout`) are accepted and dropped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{BaseGraph, Color, Configuration, Instance, SwapGraph, SwapSequence, Vertex};

#[derive(Debug, Serialize, Deserialize)]
struct InstanceDoc {
    name: String,
    base_graph: BaseGraphDoc,
    swap_graph: SwapGraphDoc,
    initial: Vec<i64>,
    #[serde(rename = "final")]
    target: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct BaseGraphDoc {
    n: i64,
    edges: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SwapGraphDoc {
    k: i64,
    edges: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SolutionDoc {
    instance: String,
    swaps: Vec<[i64; 2]>,
}

fn non_negative(field: &str, x: i64) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::invalid(field, format!("expected a non-negative integer, got {x}")))
}

fn pairs(field: &str, raw: &[[i64; 2]]) -> Result<Vec<(usize, usize)>> {
    raw.iter()
        .enumerate()
        .map(|(i, &[a, b])| {
            let f = format!("{field}[{i}]");
            Ok((non_negative(&f, a)?, non_negative(&f, b)?))
        })
        .collect()
}

fn colors(field: &str, raw: &[i64]) -> Result<Configuration> {
    raw.iter()
        .enumerate()
        .map(|(i, &c)| {
            Color::try_from(c).map_err(|_| Error::invalid(format!("{field}[{i}]"), format!("color {c} out of range")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Configuration::new)
}

pub fn parse_instance(document: &str) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_str(document)?;
    from_doc(doc)
}

pub fn instance_from_value(value: serde_json::Value) -> Result<Instance> {
    from_doc(serde_json::from_value(value)?)
}

fn from_doc(doc: InstanceDoc) -> Result<Instance> {
    let n = non_negative("base_graph.n", doc.base_graph.n)?;
    let mut base = BaseGraph::new(n, pairs("base_graph.edges", &doc.base_graph.edges)?)?;
    if let Some(labels) = doc.base_graph.labels {
        base = base.with_labels(labels)?;
    }
    let k = non_negative("swap_graph.k", doc.swap_graph.k)?;
    let mut swap = SwapGraph::new(k, pairs("swap_graph.edges", &doc.swap_graph.edges)?)?;
    if let Some(labels) = doc.swap_graph.labels {
        swap = swap.with_labels(labels)?;
    }
    let initial = colors("initial", &doc.initial)?;
    let target = colors("final", &doc.target)?;
    Instance::new(doc.name, base, swap, initial, target)
}

fn to_doc(inst: &Instance) -> InstanceDoc {
    let wide = |c: &Configuration| c.colors().iter().map(|&c| c as i64).collect();
    InstanceDoc {
        name: inst.name.clone(),
        base_graph: BaseGraphDoc {
            n: inst.n() as i64,
            edges: inst.base.edges().iter().map(|&(u, v)| [u as i64, v as i64]).collect(),
            labels: inst.base.labels().map(<[String]>::to_vec),
        },
        swap_graph: SwapGraphDoc {
            k: inst.k() as i64,
            edges: inst.swap.edges().iter().map(|&(a, b)| [a as i64, b as i64]).collect(),
            labels: inst.swap.labels().map(<[String]>::to_vec),
        },
        initial: wide(&inst.initial),
        target: wide(&inst.target),
    }
}

/// Pretty-printed, fields in schema order, edges sorted.
pub fn serialize_instance(inst: &Instance) -> String {
    serde_json::to_string_pretty(&to_doc(inst)).expect("instance serializes")
}

pub fn instance_to_value(inst: &Instance) -> serde_json::Value {
    serde_json::to_value(to_doc(inst)).expect("instance serializes")
}

pub fn serialize_solution(instance_name: &str, seq: &SwapSequence) -> String {
    let doc = SolutionDoc {
        instance: instance_name.to_string(),
        swaps: seq.swaps().iter().map(|&(u, v)| [u as i64, v as i64]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("solution serializes")
}

/// Returns the instance name recorded in the solution and its swaps.
pub fn parse_solution(document: &str) -> Result<(String, SwapSequence)> {
    let doc: SolutionDoc = serde_json::from_str(document)?;
    let swaps: Vec<(Vertex, Vertex)> = pairs("swaps", &doc.swaps)?;
    Ok((doc.instance, SwapSequence::new(swaps)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"name": "k2",
        "base_graph": {"n": 2, "edges": [[0, 1]]},
        "swap_graph": {"k": 2, "edges": [[1, 2]]},
        "initial": [1, 2], "final": [2, 1]}"#;

    #[test]
    fn minimal_document() {
        let inst = parse_instance(MINIMAL).unwrap();
        assert_eq!(inst.name, "k2");
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.base.edges(), &[(0, 1)]);
        assert_eq!(inst.k(), 2);
        assert_eq!(inst.swap.edges(), &[(1, 2)]);
        assert_eq!(inst.initial.colors(), &[1, 2]);
        assert_eq!(inst.target.colors(), &[2, 1]);
    }

    #[test]
    fn out_of_range_vertex() {
        let doc = MINIMAL.replace("[[0, 1]]}", "[[0, 5]]}");
        let err = parse_instance(&doc).unwrap_err();
        assert!(err.to_string().contains("vertex out of range"), "{err}");
        assert!(err.to_string().contains("base_graph.edges[0]"), "{err}");
    }

    #[test]
    fn errors_name_the_field() {
        let err = parse_instance(&MINIMAL.replace(r#""initial": [1, 2], "#, "")).unwrap_err();
        assert!(err.to_string().contains("initial"), "{err}");
        let err = parse_instance(&MINIMAL.replace("[2, 1]}", "[2, 3]}")).unwrap_err();
        assert!(err.to_string().contains("final[1]"), "{err}");
        let err = parse_instance(&MINIMAL.replace(r#""n": 2"#, r#""n": -1"#)).unwrap_err();
        assert!(err.to_string().contains("base_graph.n"), "{err}");
        let err = parse_instance(&MINIMAL.replace("[[1, 2]]", "[[1, 2], [2, 1]]")).unwrap_err();
        assert!(err.to_string().contains("duplicate"), "{err}");
    }

    #[test]
    fn layout_extension_is_ignored() {
        let doc = MINIMAL.replace(r#""name": "k2","#, r#""name": "k2", "layout": [[0, 0], [1, 0]],"#);
        assert_eq!(parse_instance(&doc).unwrap(), parse_instance(MINIMAL).unwrap());
    }

    #[test]
    fn round_trip_is_stable() {
        let inst = parse_instance(MINIMAL).unwrap();
        let text = serialize_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
    }

    #[test]
    fn solution_round_trip() {
        let seq = SwapSequence::new(vec![(1, 0), (2, 3)]);
        let text = serialize_solution("x", &seq);
        let (name, back) = parse_solution(&text).unwrap();
        assert_eq!(name, "x");
        assert_eq!(back.swaps(), &[(0, 1), (2, 3)]);
    }
}
