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

//! Raise every vertex to degree 3 with blocks of dummy vertices.
//!
//! Two block shapes, both `K4` minus one edge `cd`:
//!
//! * pair block: `c` and `d` both attach to the host (+2 degree);
//! * tail block: an extra vertex `e` adjacent to `c` and `d` attaches to
//!   the host (+1 degree).
//!
//! Every dummy ends at degree 3 and a block touches nothing but its host.
//! Dummies hold color 1 in both configurations.

use crate::instance::{BaseGraph, Configuration, Edge, Vertex};

use super::ReductionOutput;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddingBlock {
    pub host: Vertex,
    pub vertices: Vec<Vertex>,
}

/// Block edges for `host`, numbering new vertices from `next`.
fn block(host: Vertex, next: Vertex, pair: bool) -> (Vec<Edge>, PaddingBlock) {
    let [a, b, c, d] = [next, next + 1, next + 2, next + 3];
    let mut edges = vec![(a, b), (a, c), (a, d), (b, c), (b, d)];
    let mut vertices = vec![a, b, c, d];
    if pair {
        edges.extend([(host, c), (host, d)]);
    } else {
        let e = next + 4;
        edges.extend([(c, e), (d, e), (host, e)]);
        vertices.push(e);
    }
    (edges, PaddingBlock { host, vertices })
}

/// Pad the vertices in `hosts` (and only those) up to degree 3.
pub fn pad_vertices(base: &BaseGraph, hosts: impl IntoIterator<Item = Vertex>) -> (BaseGraph, Vec<PaddingBlock>) {
    let mut edges = base.edges().to_vec();
    let mut blocks = Vec::new();
    let mut next = base.n();
    for host in hosts {
        let mut need = 3usize.saturating_sub(base.degree(host));
        while need > 0 {
            let (more, blk) = block(host, next, need >= 2);
            next += blk.vertices.len();
            need -= if need >= 2 { 2 } else { 1 };
            edges.extend(more);
            blocks.push(blk);
        }
    }
    let mut padded = BaseGraph::new(next, edges).expect("padding keeps the graph simple");
    if let Some(labels) = base.labels() {
        let mut l = labels.to_vec();
        l.extend((base.n()..next).map(|v| format!("d{v}")));
        padded = padded.with_labels(l).expect("one label per vertex");
    }
    (padded, blocks)
}

pub fn pad_to_cubic(out: ReductionOutput) -> ReductionOutput {
    if out.cubic {
        return out;
    }
    let inst = out.instance;
    let (base, blocks) = pad_vertices(&inst.base, 0..inst.n());
    let extra = base.n() - inst.n();
    let extend = |c: &Configuration| {
        let mut colors = c.colors().to_vec();
        colors.extend(std::iter::repeat_n(1, extra));
        Configuration::new(colors)
    };
    let mut layout = out.layout;
    layout.dummies = blocks.iter().flat_map(|b| b.vertices.iter().copied()).collect();
    let instance =
        crate::instance::Instance::new(inst.name, base, inst.swap, extend(&inst.initial), extend(&inst.target))
            .expect("padding preserves validity");
    ReductionOutput {
        instance,
        layout,
        cubic: true,
        forced_unsolvable: out.forced_unsolvable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_make_everything_cubic() {
        let p = BaseGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let (g, blocks) = pad_vertices(&p, 0..3);
        assert!((0..g.n()).all(|v| g.degree(v) == 3));
        assert_eq!(blocks.len(), 3);
        assert_eq!(blocks[1].vertices.len(), 5);
        for b in &blocks {
            for &d in &b.vertices {
                assert!(g.neighbors(d).iter().all(|w| *w == b.host || b.vertices.contains(w)));
            }
        }
    }

    #[test]
    fn isolated_vertex_gets_two_blocks() {
        let g = BaseGraph::new(1, []).unwrap();
        let (p, blocks) = pad_vertices(&g, [0]);
        assert_eq!(blocks.len(), 2);
        assert!((0..p.n()).all(|v| p.degree(v) == 3));
    }
}
