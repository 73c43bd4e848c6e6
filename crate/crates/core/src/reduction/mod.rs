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

//! Compile an NCL instance into a CCTS instance over the path swap graph
//! `1 - 2 - 3 - 4`.
//!
//! Each NCL node and edge becomes a small gadget; gadgets are linked at
//! connection points. Color-2 tokens carry the constraint resource between
//! gadgets while the 3 and 4 tokens stay inside the gadget they start in.
//!
//! Vertex numbering: node gadgets in node order, then edge gadgets in edge
//! order, then padding dummies.

pub mod harness;
mod padding;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use padding::pad_to_cubic;

use crate::error::{Error, Result};
use crate::instance::{BaseGraph, Color, Configuration, Edge, Instance, SwapGraph, SwapSequence, Vertex};
use crate::ncl::{is_valid_config, validate_ncl, Direction, NclGraph, NclInstance, NclOrientation, NodeKind};

/// Edge gadget colors `x1..x6` when the edge points at its `u` endpoint.
pub const EDGE_TOWARD_U: [Color; 6] = [1, 1, 3, 1, 4, 1];
/// Edge gadget colors `x1..x6` when the edge points at its `v` endpoint.
pub const EDGE_TOWARD_V: [Color; 6] = [1, 4, 1, 3, 1, 1];
/// AND gadget with its heavy edge pointing away.
pub const AND_UP: [Color; 6] = [2, 4, 2, 4, 1, 3];

/// Path plus the chord `x2 - x5`, in local indices.
pub const EDGE_GADGET_EDGES: [Edge; 6] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 4)];
pub const AND_GADGET_EDGES: [Edge; 5] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)];
pub const OR_GADGET_EDGES: [Edge; 3] = [(0, 1), (0, 2), (1, 2)];

/// Local vertex of the AND gadget serving the lower-indexed light edge,
/// the other light edge, and the heavy edge.
pub const AND_LIGHT_POINTS: [usize; 2] = [1, 3];
pub const AND_HEAVY_POINT: usize = 4;

/// A gadget in local coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub edges: Vec<Edge>,
    pub tokens: Vec<Color>,
}

pub fn build_edge_gadget(toward_u: bool) -> Gadget {
    Gadget {
        edges: EDGE_GADGET_EDGES.to_vec(),
        tokens: if toward_u { EDGE_TOWARD_U } else { EDGE_TOWARD_V }.to_vec(),
    }
}

/// Triangle holding `incoming - 1` color-2 tokens on its first vertices.
pub fn build_or_gadget(incoming: usize) -> Result<Gadget> {
    if !(1..=3).contains(&incoming) {
        return Err(Error::Precondition(format!("OR node with {incoming} incoming edges")));
    }
    let eta = incoming - 1;
    Ok(Gadget {
        edges: OR_GADGET_EDGES.to_vec(),
        tokens: (0..3).map(|i| if i < eta { 2 } else { 1 }).collect(),
    })
}

pub fn build_and_gadget(heavy_in: bool, light1_in: bool, light2_in: bool) -> Result<Gadget> {
    let tokens = if heavy_in {
        let mark = |inward: bool| if inward { 2 } else { 1 };
        vec![3, mark(light1_in), 4, mark(light2_in), 4, 2]
    } else if light1_in && light2_in {
        AND_UP.to_vec()
    } else {
        return Err(Error::Precondition("AND node with too little incoming weight".into()));
    };
    Ok(Gadget {
        edges: AND_GADGET_EDGES.to_vec(),
        tokens,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetKind {
    Edge,
    And,
    Or,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetPlacement {
    pub kind: GadgetKind,
    /// NCL node index, or NCL edge index for edge gadgets.
    pub ncl_ref: usize,
    pub vertices: Vec<Vertex>,
    /// Node gadgets: NCL edge index to vertex. Edge gadgets: "u" and "v".
    pub connection_points: BTreeMap<String, Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetLayout {
    pub gadgets: Vec<GadgetPlacement>,
    pub dummies: Vec<Vertex>,
    #[serde(skip)]
    node_count: usize,
}

impl GadgetLayout {
    /// Read a layout written by [`GadgetLayout::to_json`].
    pub fn from_value(value: &serde_json::Value) -> Option<Self> {
        let mut layout: GadgetLayout = serde_json::from_value(value.clone()).ok()?;
        layout.node_count = layout.gadgets.iter().filter(|g| g.kind != GadgetKind::Edge).count();
        Some(layout)
    }

    pub fn node_gadget(&self, node: usize) -> &GadgetPlacement {
        &self.gadgets[node]
    }

    pub fn edge_gadget(&self, edge: usize) -> &GadgetPlacement {
        &self.gadgets[self.node_count + edge]
    }

    /// Where `node`'s gadget meets edge `edge`.
    pub fn connection_point(&self, node: usize, edge: usize) -> Vertex {
        self.gadgets[node].connection_points[&edge.to_string()]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layout serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub layout: GadgetLayout,
    pub cubic: bool,
    /// The two configurations differ in some color count, so no swap
    /// sequence can connect them.
    pub forced_unsolvable: bool,
}

/// Assign vertex ids to every gadget.
pub fn build_layout(g: &NclGraph) -> GadgetLayout {
    let mut gadgets = Vec::new();
    let mut next = 0;
    let mut take = |count: usize| {
        let vs: Vec<Vertex> = (next..next + count).collect();
        next += count;
        vs
    };
    for (n, &kind) in g.nodes().iter().enumerate() {
        let (kind, vertices, points): (_, _, Vec<(usize, usize)>) = match kind {
            NodeKind::And => {
                let mut points: Vec<(usize, usize)> = g.lights(n).into_iter().zip(AND_LIGHT_POINTS).collect();
                points.extend(g.heavy(n).map(|h| (h, AND_HEAVY_POINT)));
                (GadgetKind::And, take(6), points)
            }
            NodeKind::Or => (
                GadgetKind::Or,
                take(3),
                g.incident(n).iter().copied().zip(0..3).collect(),
            ),
        };
        let connection_points = points
            .into_iter()
            .map(|(e, local)| (e.to_string(), vertices[local]))
            .collect();
        gadgets.push(GadgetPlacement {
            kind,
            ncl_ref: n,
            vertices,
            connection_points,
        });
    }
    for e in 0..g.edges().len() {
        let vertices = take(6);
        let connection_points = BTreeMap::from([("u".to_string(), vertices[0]), ("v".to_string(), vertices[5])]);
        gadgets.push(GadgetPlacement {
            kind: GadgetKind::Edge,
            ncl_ref: e,
            vertices,
            connection_points,
        });
    }
    GadgetLayout {
        gadgets,
        dummies: Vec::new(),
        node_count: g.nodes().len(),
    }
}

fn base_edges(g: &NclGraph, layout: &GadgetLayout) -> Vec<Edge> {
    let mut edges = Vec::new();
    for p in &layout.gadgets {
        let local: &[Edge] = match p.kind {
            GadgetKind::Edge => &EDGE_GADGET_EDGES,
            GadgetKind::And => &AND_GADGET_EDGES,
            GadgetKind::Or => &OR_GADGET_EDGES,
        };
        edges.extend(local.iter().map(|&(a, b)| (p.vertices[a], p.vertices[b])));
    }
    for (e, edge) in g.edges().iter().enumerate() {
        let x = &layout.edge_gadget(e).vertices;
        edges.push((layout.connection_point(edge.u, e), x[0]));
        edges.push((x[5], layout.connection_point(edge.v, e)));
    }
    edges
}

/// Token layout for a valid orientation.
pub fn encode(g: &NclGraph, layout: &GadgetLayout, o: &NclOrientation) -> Result<Configuration> {
    let n = layout.gadgets.iter().map(|p| p.vertices.len()).sum::<usize>() + layout.dummies.len();
    let mut colors = vec![1 as Color; n];
    let inward = |node: usize, e: usize| o.head(g, e) == node;
    for (node, &kind) in g.nodes().iter().enumerate() {
        let gadget = match kind {
            NodeKind::And => {
                let lights = g.lights(node);
                let heavy_in = g.heavy(node).is_some_and(|h| inward(node, h));
                let light_in = |i: usize| lights.get(i).is_some_and(|&e| inward(node, e));
                build_and_gadget(heavy_in, light_in(0), light_in(1))?
            }
            NodeKind::Or => build_or_gadget(g.incident(node).iter().filter(|&&e| inward(node, e)).count())?,
        };
        for (&v, &c) in layout.node_gadget(node).vertices.iter().zip(&gadget.tokens) {
            colors[v] = c;
        }
    }
    for e in 0..g.edges().len() {
        let gadget = build_edge_gadget(o.direction(e) == Direction::TowardU);
        for (&v, &c) in layout.edge_gadget(e).vertices.iter().zip(&gadget.tokens) {
            colors[v] = c;
        }
    }
    Ok(Configuration::new(colors))
}

/// Orientation read off the color-4 token of each edge gadget
/// (`x2` means toward `v`, `x5` toward `u`). `None` if some gadget has its
/// 4 elsewhere.
pub fn decode(g: &NclGraph, layout: &GadgetLayout, config: &Configuration) -> Option<NclOrientation> {
    (0..g.edges().len())
        .map(|e| {
            let x = &layout.edge_gadget(e).vertices;
            match (config.color(x[1]), config.color(x[4])) {
                (4, _) => Some(Direction::TowardV),
                (_, 4) => Some(Direction::TowardU),
                _ => None,
            }
        })
        .collect::<Option<Vec<_>>>()
        .map(NclOrientation::new)
}

pub fn reduce(inst: &NclInstance, cubic: bool) -> Result<ReductionOutput> {
    let g = &inst.graph;
    let report = validate_ncl(g);
    if !report.valid {
        return Err(Error::invalid("ncl", report.findings.join("; ")));
    }
    for (field, o) in [("initial", &inst.initial), ("final", &inst.target)] {
        if !is_valid_config(g, o) {
            return Err(Error::invalid(
                field,
                "orientation leaves some node with in-weight below 2",
            ));
        }
    }
    let layout = build_layout(g);
    let n = layout.gadgets.iter().map(|p| p.vertices.len()).sum();
    let base = BaseGraph::new(n, base_edges(g, &layout))?;
    let instance = Instance::new(
        "ncl-reduction",
        base,
        SwapGraph::path(4)?,
        encode(g, &layout, &inst.initial)?,
        encode(g, &layout, &inst.target)?,
    )?;
    let out = ReductionOutput {
        forced_unsolvable: !instance.counts_match(),
        instance,
        layout,
        cubic: false,
    };
    Ok(if cubic { pad_to_cubic(out) } else { out })
}

/// Swaps that take `encode(o)` to `encode(o.flipped(e))`, mirroring the NCL
/// flip of edge `e`. Requires `e` to be a legal flip of `o`.
pub fn simulate_flip(g: &NclGraph, layout: &GadgetLayout, o: &NclOrientation, e: usize) -> Result<SwapSequence> {
    if !crate::ncl::legal_flips(g, o).contains(&e) {
        return Err(Error::Precondition(format!("edge {e} cannot flip")));
    }
    let mut config = encode(g, layout, o)?;
    let mut seq = SwapSequence::default();
    let mut swap = |config: &mut Configuration, a: Vertex, b: Vertex| {
        config.swap_in_place(a, b);
        seq.push(a, b);
    };
    let head = o.head(g, e);
    let tail = o.tail(g, e);
    let heavy = g.edges()[e].is_heavy();
    let head_point = layout.connection_point(head, e);
    let tail_point = layout.connection_point(tail, e);

    // A color-2 token leaves the head gadget from its connection point.
    match g.nodes()[head] {
        NodeKind::Or => {
            if config.color(head_point) != 2 {
                let donor = *layout
                    .node_gadget(head)
                    .vertices
                    .iter()
                    .find(|&&v| config.color(v) == 2)
                    .expect("legal flip leaves a spare token");
                swap(&mut config, donor, head_point);
            }
        }
        NodeKind::And if heavy => {
            let v = layout.node_gadget(head).vertices.clone();
            for i in 0..5 {
                swap(&mut config, v[i], v[i + 1]);
            }
        }
        NodeKind::And => {}
    }
    // The tail's connection point must be free to receive it.
    if g.nodes()[tail] == NodeKind::Or && config.color(tail_point) == 2 {
        let free = *layout
            .node_gadget(tail)
            .vertices
            .iter()
            .find(|&&v| config.color(v) == 1)
            .expect("tail has spare room");
        swap(&mut config, tail_point, free);
    }

    // Walk the token through the edge gadget.
    let x = &layout.edge_gadget(e).vertices;
    let toward_u = o.direction(e) == Direction::TowardU;
    let (start, end, xs): (Vertex, Vertex, Vec<Vertex>) = if toward_u {
        (head_point, tail_point, x.clone())
    } else {
        (head_point, tail_point, x.iter().rev().copied().collect())
    };
    let script = [
        (start, xs[0]),
        (xs[0], xs[1]),
        (xs[1], xs[2]),
        (xs[1], xs[4]),
        (xs[2], xs[3]),
        (xs[3], xs[4]),
        (xs[4], xs[5]),
        (xs[5], end),
    ];
    for (a, b) in script {
        swap(&mut config, a, b);
    }

    if g.nodes()[tail] == NodeKind::And && heavy {
        let v = layout.node_gadget(tail).vertices.clone();
        for i in (0..5).rev() {
            swap(&mut config, v[i + 1], v[i]);
        }
    }

    // Canonical OR placement: color-2 tokens on the first vertices.
    for node in [head, tail] {
        if g.nodes()[node] != NodeKind::Or {
            continue;
        }
        let v = layout.node_gadget(node).vertices.clone();
        loop {
            let hole = v.iter().position(|&w| config.color(w) == 1);
            let late = v.iter().rposition(|&w| config.color(w) == 2);
            match (hole, late) {
                (Some(h), Some(l)) if h < l => swap(&mut config, v[h], v[l]),
                _ => break,
            }
        }
    }
    Ok(seq)
}
