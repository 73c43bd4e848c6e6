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

//! Single gadgets with terminal vertices standing in for their neighbors,
//! small enough for exhaustive search.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::instance::{BaseGraph, Color, Configuration, Instance, SwapGraph, Vertex};
use crate::oracle::ReachableSet;

use super::padding::{pad_vertices, PaddingBlock};
use super::{
    build_and_gadget, build_edge_gadget, AND_GADGET_EDGES, AND_HEAVY_POINT, AND_LIGHT_POINTS, EDGE_GADGET_EDGES,
};

#[derive(Debug, Clone)]
pub struct Harness {
    pub instance: Instance,
    /// Gadget vertices in local order.
    pub gadget: Vec<Vertex>,
    pub terminals: Vec<Vertex>,
    pub blocks: Vec<PaddingBlock>,
}

impl Harness {
    fn assemble(
        gadget_edges: &[(usize, usize)],
        tokens: Vec<Color>,
        attach: &[usize],
        terminal_colors: &[Color],
        padded: bool,
        target: Option<(Vec<Color>, Vec<Color>)>,
    ) -> Result<Harness> {
        let g = tokens.len();
        let terminals: Vec<Vertex> = (g..g + attach.len()).collect();
        let mut edges = gadget_edges.to_vec();
        edges.extend(attach.iter().zip(&terminals).map(|(&x, &t)| (x, t)));
        let mut base = BaseGraph::new(g + attach.len(), edges)?;
        let mut blocks = Vec::new();
        if padded {
            (base, blocks) = pad_vertices(&base, 0..g);
        }
        let fill = |gadget: &[Color], term: &[Color]| {
            let mut c = gadget.to_vec();
            c.extend_from_slice(term);
            c.resize(base.n(), 1);
            Configuration::new(c)
        };
        let initial = fill(&tokens, terminal_colors);
        let target = match &target {
            Some((gt, tt)) => fill(gt, tt),
            None => initial.clone(),
        };
        let instance = Instance::new("harness", base, SwapGraph::path(4)?, initial, target)?;
        Ok(Harness {
            instance,
            gadget: (0..g).collect(),
            terminals,
            blocks,
        })
    }

    /// Vertices outside every padding block.
    pub fn core_vertices(&self) -> Vec<Vertex> {
        self.gadget.iter().chain(&self.terminals).copied().collect()
    }
}

/// Edge gadget between terminals `a` (at `x1`) and `b` (at `x6`). The
/// initial state points toward `a` and holds a color-2 token on `a`; the
/// target points toward `b` with the token moved to `b`.
pub fn edge_harness(padded: bool) -> Result<Harness> {
    Harness::assemble(
        &EDGE_GADGET_EDGES,
        build_edge_gadget(true).tokens,
        &[0, 5],
        &[2, 1],
        padded,
        Some((build_edge_gadget(false).tokens, vec![1, 2])),
    )
}

/// Edge gadget pointing toward `a` with a color-2 token waiting on `b`.
pub fn edge_harness_blocked(padded: bool) -> Result<Harness> {
    Harness::assemble(
        &EDGE_GADGET_EDGES,
        build_edge_gadget(true).tokens,
        &[0, 5],
        &[1, 2],
        padded,
        None,
    )
}

/// AND gadget with terminals at the two light points and the heavy point,
/// in that order, all holding color 1.
pub fn and_harness(heavy_in: bool, light1_in: bool, light2_in: bool, padded: bool) -> Result<Harness> {
    let gadget = build_and_gadget(heavy_in, light1_in, light2_in)?;
    Harness::assemble(
        &AND_GADGET_EDGES,
        gadget.tokens,
        &[AND_LIGHT_POINTS[0], AND_LIGHT_POINTS[1], AND_HEAVY_POINT],
        &[1, 1, 1],
        padded,
        None,
    )
}

/// What a neighbor can observe: exact terminal colors, plus where the 3
/// and 4 tokens sit inside the gadget (1 and 2 are not told apart there).
pub fn boundary_projection(h: &Harness, reach: &ReachableSet) -> BTreeSet<Vec<Color>> {
    reach
        .iter()
        .map(|s| {
            let inner = h.gadget.iter().map(|&v| if s[v] >= 3 { s[v] } else { 0 });
            h.terminals.iter().map(|&v| s[v]).chain(inner).collect()
        })
        .collect()
}
