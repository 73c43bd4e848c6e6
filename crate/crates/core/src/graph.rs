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

//! Structural queries on base graphs.

use std::collections::VecDeque;

use crate::instance::{BaseGraph, Vertex};

/// Edges of the 7-vertex exceptional graph: a hexagon `0..6` whose
/// antipodal vertices 0 and 3 are both joined to a center vertex 6.
pub const T0_EDGES: [(Vertex, Vertex); 8] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 6), (3, 6)];

pub fn t0() -> BaseGraph {
    BaseGraph::new(7, T0_EDGES).expect("T0 is simple")
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &BaseGraph) -> Vec<Vec<Vertex>> {
    components_where(g, |_| true)
}

/// Components of the subgraph induced by the vertices satisfying `keep`.
pub fn components_where(g: &BaseGraph, keep: impl Fn(Vertex) -> bool) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] || !keep(s) {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] && keep(w) {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &BaseGraph) -> bool {
    g.n() <= 1 || components(g).len() == 1
}

/// Shortest path from `from` to the first vertex (in BFS order, neighbors
/// ascending) satisfying `goal`. The path starts at `from`.
pub fn bfs_path_to(g: &BaseGraph, from: Vertex, goal: impl Fn(Vertex) -> bool) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if goal(u) {
            let mut path = vec![u];
            let mut cur = u;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Connected, at least three vertices, every degree exactly two.
pub fn is_cycle(g: &BaseGraph) -> bool {
    g.n() >= 3 && (0..g.n()).all(|v| g.degree(v) == 2) && is_connected(g)
}

/// At least three vertices, connected, and no cut vertex.
pub fn is_biconnected(g: &BaseGraph) -> bool {
    if g.n() < 3 || !is_connected(g) {
        return false;
    }
    (0..g.n()).all(|cut| components_where(g, |v| v != cut).len() == 1)
}

pub fn is_bipartite(g: &BaseGraph) -> bool {
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = side[u] ^ 1;
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Isomorphism test against [`T0_EDGES`], brute force over all 7! maps.
pub fn is_t0(g: &BaseGraph) -> bool {
    if g.n() != 7 || g.edges().len() != T0_EDGES.len() {
        return false;
    }
    let mut degrees: Vec<usize> = (0..7).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    if degrees != [2, 2, 2, 2, 2, 3, 3] {
        return false;
    }
    let mut perm: Vec<Vertex> = (0..7).collect();
    loop {
        if T0_EDGES.iter().all(|&(a, b)| g.has_edge(perm[a], perm[b])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

/// Lexicographic successor; returns false after the last permutation.
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
