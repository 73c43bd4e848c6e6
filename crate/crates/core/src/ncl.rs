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

//! Nondeterministic constraint logic on AND/OR constraint graphs.
//!
//! Edges carry weight 1 (light) or 2 (heavy) and an orientation. An
//! orientation is valid when every node receives in-weight at least 2; a
//! flip reverses one edge and must keep the orientation valid.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::oracle::{SearchOutcome, StateStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    #[serde(rename = "AND")]
    And,
    #[serde(rename = "OR")]
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NclEdge {
    pub u: usize,
    pub v: usize,
    pub weight: u8,
}

impl NclEdge {
    pub fn is_heavy(&self) -> bool {
        self.weight == 2
    }
}

/// Constraint graph. Parallel edges are allowed and told apart by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NclGraph {
    nodes: Vec<NodeKind>,
    edges: Vec<NclEdge>,
    incident: Vec<Vec<usize>>,
}

impl NclGraph {
    pub fn new(nodes: Vec<NodeKind>, edges: Vec<NclEdge>) -> Result<Self> {
        let mut incident = vec![Vec::new(); nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            let field = || format!("edges[{i}]");
            if e.u >= nodes.len() || e.v >= nodes.len() {
                return Err(Error::invalid(
                    field(),
                    format!("node out of range with {} nodes", nodes.len()),
                ));
            }
            if e.u == e.v {
                return Err(Error::invalid(field(), "self-loop"));
            }
            if e.weight != 1 && e.weight != 2 {
                return Err(Error::invalid(field(), "weight must be 1 or 2"));
            }
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        Ok(NclGraph { nodes, edges, incident })
    }

    pub fn nodes(&self) -> &[NodeKind] {
        &self.nodes
    }

    pub fn edges(&self) -> &[NclEdge] {
        &self.edges
    }

    /// Incident edge indices of `node`, ascending.
    pub fn incident(&self, node: usize) -> &[usize] {
        &self.incident[node]
    }

    /// Light incident edges of an AND node, ascending.
    pub fn lights(&self, node: usize) -> Vec<usize> {
        self.incident[node]
            .iter()
            .copied()
            .filter(|&e| !self.edges[e].is_heavy())
            .collect()
    }

    /// The heavy incident edge of an AND node.
    pub fn heavy(&self, node: usize) -> Option<usize> {
        self.incident[node].iter().copied().find(|&e| self.edges[e].is_heavy())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    TowardU,
    TowardV,
}

impl Direction {
    fn flipped(self) -> Self {
        match self {
            Direction::TowardU => Direction::TowardV,
            Direction::TowardV => Direction::TowardU,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NclOrientation(Vec<Direction>);

impl NclOrientation {
    pub fn new(dirs: Vec<Direction>) -> Self {
        NclOrientation(dirs)
    }

    pub fn directions(&self) -> &[Direction] {
        &self.0
    }

    pub fn direction(&self, e: usize) -> Direction {
        self.0[e]
    }

    pub fn head(&self, g: &NclGraph, e: usize) -> usize {
        match self.0[e] {
            Direction::TowardU => g.edges[e].u,
            Direction::TowardV => g.edges[e].v,
        }
    }

    pub fn tail(&self, g: &NclGraph, e: usize) -> usize {
        match self.0[e] {
            Direction::TowardU => g.edges[e].v,
            Direction::TowardV => g.edges[e].u,
        }
    }

    pub fn flipped(&self, e: usize) -> Self {
        let mut o = self.clone();
        o.0[e] = o.0[e].flipped();
        o
    }

    fn to_bytes(&self) -> Vec<u8> {
        self.0.iter().map(|&d| (d == Direction::TowardV) as u8).collect()
    }

    fn from_bytes(b: &[u8]) -> Self {
        NclOrientation(
            b.iter()
                .map(|&x| if x == 1 { Direction::TowardV } else { Direction::TowardU })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NclInstance {
    pub graph: NclGraph,
    pub initial: NclOrientation,
    pub target: NclOrientation,
}

impl NclInstance {
    pub fn new(graph: NclGraph, initial: NclOrientation, target: NclOrientation) -> Result<Self> {
        for (field, o) in [("initial", &initial), ("final", &target)] {
            if o.0.len() != graph.edges.len() {
                return Err(Error::invalid(field, "one direction per edge required"));
            }
        }
        Ok(NclInstance { graph, initial, target })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NclReport {
    pub valid: bool,
    pub findings: Vec<String>,
}

/// Degree and weight-pattern checks. Planarity is not checked.
pub fn validate_ncl(g: &NclGraph) -> NclReport {
    let mut findings = Vec::new();
    for (n, kind) in g.nodes.iter().enumerate() {
        let inc = &g.incident[n];
        if inc.len() != 3 {
            findings.push(format!("node {n} has {} incident edges, expected 3", inc.len()));
            continue;
        }
        let heavy = inc.iter().filter(|&&e| g.edges[e].is_heavy()).count();
        match kind {
            NodeKind::And if heavy != 1 => findings.push(format!(
                "AND node {n} needs one heavy and two light edges, has {heavy} heavy"
            )),
            NodeKind::Or if heavy != 3 => findings.push(format!("OR node {n} needs three heavy edges, has {heavy}")),
            _ => {}
        }
    }
    NclReport {
        valid: findings.is_empty(),
        findings,
    }
}

pub fn in_weight(g: &NclGraph, o: &NclOrientation, node: usize) -> u32 {
    g.incident[node]
        .iter()
        .filter(|&&e| o.head(g, e) == node)
        .map(|&e| g.edges[e].weight as u32)
        .sum()
}

pub fn is_valid_config(g: &NclGraph, o: &NclOrientation) -> bool {
    o.0.len() == g.edges.len() && (0..g.nodes.len()).all(|n| in_weight(g, o, n) >= 2)
}

/// Edges whose reversal keeps `o` valid, ascending.
pub fn legal_flips(g: &NclGraph, o: &NclOrientation) -> Vec<usize> {
    (0..g.edges.len())
        .filter(|&e| {
            let head = o.head(g, e);
            in_weight(g, o, head) >= 2 + g.edges[e].weight as u32
        })
        .collect()
}

/// Every valid orientation, in lexicographic order of directions
/// (`TowardU` before `TowardV`, edge 0 most significant). Exponential in
/// the edge count; meant for fixtures.
pub fn valid_orientations(g: &NclGraph) -> Vec<NclOrientation> {
    let m = g.edges.len();
    assert!(m < 32, "too many edges to enumerate");
    (0u32..1 << m)
        .map(|bits| {
            NclOrientation(
                (0..m)
                    .map(|e| {
                        if bits >> (m - 1 - e) & 1 == 1 {
                            Direction::TowardV
                        } else {
                            Direction::TowardU
                        }
                    })
                    .collect(),
            )
        })
        .filter(|o| is_valid_config(g, o))
        .collect()
}

/// Per-node resource count that no legal flip changes. The reduction
/// encodes it as the number of color-2 tokens.
pub fn conservation_quantity(g: &NclGraph, o: &NclOrientation) -> usize {
    (0..g.nodes.len())
        .map(|n| {
            let ins = g.incident[n].iter().filter(|&&e| o.head(g, e) == n);
            match g.nodes[n] {
                NodeKind::And => {
                    let heavy_in = g.heavy(n).is_some_and(|h| o.head(g, h) == n);
                    let lights_in = ins.filter(|&&e| !g.edges[e].is_heavy()).count();
                    if heavy_in {
                        1 + lights_in
                    } else {
                        2
                    }
                }
                NodeKind::Or => ins.count().saturating_sub(1),
            }
        })
        .sum()
}

/// Breadth-first search over valid orientations; the witness lists flipped
/// edge indices and is shortest.
pub fn solve_ncl_bfs(inst: &NclInstance, max_states: usize) -> SearchOutcome<Vec<usize>> {
    let g = &inst.graph;
    let target = inst.target.to_bytes();
    let start = inst.initial.to_bytes();
    if start == target {
        return SearchOutcome::Solvable {
            witness: Vec::new(),
            states_explored: 1,
        };
    }
    if max_states == 0 {
        return SearchOutcome::LimitExceeded { states_explored: 0 };
    }
    let mut store = StateStore::new(start.len());
    let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX)];
    store.insert(&start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(at) = queue.pop_front() {
        let o = NclOrientation::from_bytes(store.get(at));
        for e in legal_flips(g, &o) {
            let mut next = store.get(at).to_vec();
            next[e] ^= 1;
            if store.find(&next).is_some() {
                continue;
            }
            if store.len() >= max_states {
                return SearchOutcome::LimitExceeded {
                    states_explored: store.len(),
                };
            }
            let (idx, _) = store.insert(&next);
            parent.push((at as u32, e as u32));
            if next == target {
                let mut flips = Vec::new();
                let mut cur = idx;
                while parent[cur].0 != u32::MAX {
                    flips.push(parent[cur].1 as usize);
                    cur = parent[cur].0 as usize;
                }
                flips.reverse();
                return SearchOutcome::Solvable {
                    witness: flips,
                    states_explored: store.len(),
                };
            }
            queue.push_back(idx);
        }
    }
    SearchOutcome::Unsolvable {
        states_explored: store.len(),
    }
}

/// Replay `flips` from the initial orientation, checking validity at each step.
pub fn verify_flips(inst: &NclInstance, flips: &[usize]) -> bool {
    let g = &inst.graph;
    if !is_valid_config(g, &inst.initial) {
        return false;
    }
    let mut o = inst.initial.clone();
    for &e in flips {
        if e >= g.edges.len() || !legal_flips(g, &o).contains(&e) {
            return false;
        }
        o = o.flipped(e);
    }
    o == inst.target
}

impl SearchOutcome<Vec<usize>> {
    pub fn to_json(&self) -> String {
        let mut doc = serde_json::json!({ "status": self.status() });
        if let Some(w) = self.witness() {
            doc["witness"] = serde_json::json!(w);
        }
        doc["states_explored"] = serde_json::json!(self.states_explored());
        serde_json::to_string_pretty(&doc).expect("outcome serializes")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NclDoc {
    nodes: Vec<NodeDoc>,
    edges: Vec<NclEdgeDoc>,
    initial: Vec<Value>,
    #[serde(rename = "final")]
    target: Vec<Value>,
}

#[derive(Deserialize, Serialize)]
struct NodeDoc {
    kind: NodeKind,
}

#[derive(Deserialize)]
struct NclEdgeDoc {
    u: i64,
    v: i64,
    weight: i64,
}

fn direction_from(value: &Value, edge: &NclEdge, field: &str) -> Result<Direction> {
    match value {
        Value::String(s) => match s.as_str() {
            "u->v" => Ok(Direction::TowardV),
            "v->u" => Ok(Direction::TowardU),
            _ => Err(Error::invalid(
                field,
                format!("expected \"u->v\" or \"v->u\", got {s:?}"),
            )),
        },
        Value::Number(n) => match n.as_u64() {
            Some(h) if h as usize == edge.u => Ok(Direction::TowardU),
            Some(h) if h as usize == edge.v => Ok(Direction::TowardV),
            _ => Err(Error::invalid(
                field,
                format!("head {n} is not an endpoint of the edge"),
            )),
        },
        _ => Err(Error::invalid(field, "direction must be a string or a node index")),
    }
}

pub fn parse_ncl(document: &str) -> Result<NclInstance> {
    let doc: NclDoc = serde_json::from_str(document)?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (i, e) in doc.edges.iter().enumerate() {
        let idx = |x: i64, name: &str| {
            usize::try_from(x).map_err(|_| Error::invalid(format!("edges[{i}].{name}"), "must be non-negative"))
        };
        let weight =
            u8::try_from(e.weight).map_err(|_| Error::invalid(format!("edges[{i}].weight"), "must be 1 or 2"))?;
        edges.push(NclEdge {
            u: idx(e.u, "u")?,
            v: idx(e.v, "v")?,
            weight,
        });
    }
    let graph = NclGraph::new(doc.nodes.iter().map(|n| n.kind).collect(), edges)?;
    let orient = |vals: &[Value], name: &str| -> Result<NclOrientation> {
        if vals.len() != graph.edges.len() {
            return Err(Error::invalid(name, "one direction per edge required"));
        }
        vals.iter()
            .enumerate()
            .map(|(i, v)| direction_from(v, &graph.edges[i], &format!("{name}[{i}]")))
            .collect::<Result<Vec<_>>>()
            .map(NclOrientation)
    };
    let initial = orient(&doc.initial, "initial")?;
    let target = orient(&doc.target, "final")?;
    NclInstance::new(graph, initial, target)
}

pub fn serialize_ncl(inst: &NclInstance) -> String {
    let dirs = |o: &NclOrientation| -> Vec<&'static str> {
        o.0.iter()
            .map(|d| match d {
                Direction::TowardV => "u->v",
                Direction::TowardU => "v->u",
            })
            .collect()
    };
    let doc = serde_json::json!({
        "nodes": inst.graph.nodes.iter().map(|&kind| NodeDoc { kind }).collect::<Vec<_>>(),
        "edges": inst.graph.edges,
        "initial": dirs(&inst.initial),
        "final": dirs(&inst.target),
    });
    serde_json::to_string_pretty(&doc).expect("ncl serializes")
}

/// Small hand-built constraint graphs.
pub mod fixtures {
    use super::*;

    fn e(u: usize, v: usize, weight: u8) -> NclEdge {
        NclEdge { u, v, weight }
    }

    /// Two OR nodes joined by three heavy edges.
    pub fn or_or_triple() -> NclGraph {
        NclGraph::new(vec![NodeKind::Or; 2], vec![e(0, 1, 2); 3]).unwrap()
    }

    /// `K4` with every node OR.
    pub fn k4_or() -> NclGraph {
        let edges = vec![e(0, 1, 2), e(0, 2, 2), e(0, 3, 2), e(1, 2, 2), e(1, 3, 2), e(2, 3, 2)];
        NclGraph::new(vec![NodeKind::Or; 4], edges).unwrap()
    }

    /// Two AND nodes joined by one heavy and two light edges. Every valid
    /// orientation is frozen.
    pub fn and_and() -> NclGraph {
        NclGraph::new(vec![NodeKind::And; 2], vec![e(0, 1, 2), e(0, 1, 1), e(0, 1, 1)]).unwrap()
    }

    /// AND nodes 0, 1 sharing two light edges; each has a heavy edge to
    /// OR nodes 2 and 3, which share two more heavy edges.
    pub fn and_or_square() -> NclGraph {
        let nodes = vec![NodeKind::And, NodeKind::And, NodeKind::Or, NodeKind::Or];
        let edges = vec![e(0, 1, 1), e(0, 1, 1), e(0, 2, 2), e(1, 3, 2), e(2, 3, 2), e(2, 3, 2)];
        NclGraph::new(nodes, edges).unwrap()
    }

    /// Triangular prism: AND triangle on light edges, heavy spokes, OR
    /// triangle on heavy edges.
    pub fn prism() -> NclGraph {
        let mut nodes = vec![NodeKind::And; 3];
        nodes.extend([NodeKind::Or; 3]);
        let edges = vec![
            e(0, 1, 1),
            e(1, 2, 1),
            e(0, 2, 1),
            e(0, 3, 2),
            e(1, 4, 2),
            e(2, 5, 2),
            e(3, 4, 2),
            e(4, 5, 2),
            e(3, 5, 2),
        ];
        NclGraph::new(nodes, edges).unwrap()
    }

    pub fn all() -> Vec<(&'static str, NclGraph)> {
        vec![
            ("or-or", or_or_triple()),
            ("k4-or", k4_or()),
            ("and-and", and_and()),
            ("and-or-square", and_or_square()),
            ("prism", prism()),
        ]
    }

    /// The named fixture, from its first to its last valid orientation.
    pub fn instance(name: &str) -> Option<NclInstance> {
        let (_, g) = all().into_iter().find(|(n, _)| *n == name)?;
        let valid = valid_orientations(&g);
        let initial = valid.first()?.clone();
        let target = valid.last()?.clone();
        Some(NclInstance::new(g, initial, target).expect("orientations cover the graph"))
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use Direction::{TowardU as U, TowardV as V};

    #[test]
    fn fixtures_are_well_formed() {
        for (name, g) in all() {
            assert!(validate_ncl(&g).valid, "{name}");
            assert!(!valid_orientations(&g).is_empty(), "{name}");
        }
    }

    #[test]
    fn validate_catches_bad_patterns() {
        let g = NclGraph::new(vec![NodeKind::And; 2], vec![e2(0, 1, 2), e2(0, 1, 2), e2(0, 1, 1)]).unwrap();
        assert!(!validate_ncl(&g).valid);
        let g = NclGraph::new(vec![NodeKind::Or; 2], vec![e2(0, 1, 2), e2(0, 1, 2)]).unwrap();
        assert!(!validate_ncl(&g).valid);
        assert!(NclGraph::new(vec![NodeKind::Or], vec![e2(0, 0, 2)]).is_err());
    }

    fn e2(u: usize, v: usize, weight: u8) -> NclEdge {
        NclEdge { u, v, weight }
    }

    #[test]
    fn and_validity() {
        let g = and_and();
        // heavy toward 1, both lights toward 0
        assert!(is_valid_config(&g, &NclOrientation::new(vec![V, U, U])));
        assert!(!is_valid_config(&g, &NclOrientation::new(vec![V, U, V])));
    }

    #[test]
    fn or_needs_an_in_edge() {
        let g = or_or_triple();
        assert!(!is_valid_config(&g, &NclOrientation::new(vec![U, U, U])));
        let o = NclOrientation::new(vec![U, U, V]);
        assert!(is_valid_config(&g, &o));
        // the edge into node 1 is its only one; the others may go
        assert_eq!(legal_flips(&g, &o), vec![0, 1]);
    }

    #[test]
    fn or_or_round_trip() {
        let inst = NclInstance::new(
            or_or_triple(),
            NclOrientation::new(vec![U, U, V]),
            NclOrientation::new(vec![U, V, V]),
        )
        .unwrap();
        let out = solve_ncl_bfs(&inst, 100);
        assert_eq!(out.witness(), Some(&vec![1]));
        assert!(verify_flips(&inst, &[1]));
        assert_eq!(valid_orientations(&inst.graph).len(), 6);
    }

    #[test]
    fn and_and_is_frozen() {
        let inst = instance("and-and").unwrap();
        assert!(legal_flips(&inst.graph, &inst.initial).is_empty());
        assert_eq!(solve_ncl_bfs(&inst, 100).is_solvable(), Some(false));
    }

    #[test]
    fn conservation_under_flips() {
        for (name, g) in all() {
            for o in valid_orientations(&g) {
                let q = conservation_quantity(&g, &o);
                for f in legal_flips(&g, &o) {
                    assert_eq!(conservation_quantity(&g, &o.flipped(f)), q, "{name}");
                }
            }
        }
    }

    #[test]
    fn json_round_trip_and_integer_heads() {
        let inst = instance("prism").unwrap();
        assert_eq!(parse_ncl(&serialize_ncl(&inst)).unwrap(), inst);
        let doc = r#"{"nodes":[{"kind":"OR"},{"kind":"OR"}],
            "edges":[{"u":0,"v":1,"weight":2},{"u":0,"v":1,"weight":2},{"u":0,"v":1,"weight":2}],
            "initial":[0,0,1],"final":["v->u","u->v","u->v"]}"#;
        let p = parse_ncl(doc).unwrap();
        assert_eq!(p.initial, NclOrientation::new(vec![U, U, V]));
        assert_eq!(p.target, NclOrientation::new(vec![U, V, V]));
        let bad = doc.replace("[0,0,1]", "[0,0,5]");
        assert!(matches!(parse_ncl(&bad), Err(Error::Invalid { field, .. }) if field == "initial[2]"));
    }
}
