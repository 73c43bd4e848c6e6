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

//! Equivalence classes of token-occupied vertices under blank-preserving
//! relocation, and the region each class can reach.
//!
//! Two tiers. When a connected component of the base graph holds at least
//! one blank and one token and is a cycle, or is biconnected and not the
//! exceptional graph T0, all of its tokens form one class whose region is
//! the whole component. Everywhere else an exact search over
//! (tracked position, blank set) pairs decides both relations; its cost is
//! exponential only in the number of blanks.

use std::collections::VecDeque;

use hashbrown::HashSet;

use crate::graph::{self, components};
use crate::instance::{BaseGraph, Configuration, Vertex};

/// Vertices holding center-colored (color 1) tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlankSet {
    mask: Vec<bool>,
}

impl BlankSet {
    pub fn from_configuration(config: &Configuration) -> Self {
        BlankSet {
            mask: config.colors().iter().map(|&c| c == 1).collect(),
        }
    }

    pub fn from_vertices(n: usize, vertices: &[Vertex]) -> Self {
        let mut mask = vec![false; n];
        for &v in vertices {
            mask[v] = true;
        }
        BlankSet { mask }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.mask[v]
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        (0..self.mask.len()).filter(|&v| self.mask[v]).collect()
    }
}

/// A class `C` of occupied vertices together with its region `R(C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Sorted.
    pub members: Vec<Vertex>,
    /// Sorted; always a superset of `members`.
    pub region: Vec<Vertex>,
}

/// Whether the single-class shortcut applies to `component` (sorted vertex list).
pub fn fast_path_applies(base: &BaseGraph, component: &[Vertex], blanks: &BlankSet) -> bool {
    let blank_count = component.iter().filter(|&&v| blanks.contains(v)).count();
    if blank_count == 0 || blank_count == component.len() {
        return false;
    }
    let g = base.induced(component);
    graph::is_cycle(&g) || (graph::is_biconnected(&g) && !graph::is_t0(&g))
}

/// Partition of the occupied vertices into classes, ordered by smallest member.
pub fn equivalence_classes(base: &BaseGraph, blanks: &BlankSet) -> Vec<EquivalenceClass> {
    let mut out = Vec::new();
    for comp in components(base) {
        if fast_path_applies(base, &comp, blanks) {
            out.push(EquivalenceClass {
                members: comp.iter().copied().filter(|&v| !blanks.contains(v)).collect(),
                region: comp,
            });
        } else {
            out.extend(exact_component(base, &comp, blanks));
        }
    }
    out.sort_by_key(|c| c.members[0]);
    out
}

/// Same partition computed by exact search alone, never by the shortcut.
pub fn exact_equivalence_classes(base: &BaseGraph, blanks: &BlankSet) -> Vec<EquivalenceClass> {
    let mut out: Vec<EquivalenceClass> = components(base)
        .iter()
        .flat_map(|comp| exact_component(base, comp, blanks))
        .collect();
    out.sort_by_key(|c| c.members[0]);
    out
}

/// Blank sets as bit words; the tracked position rides in the last word.
struct Packed {
    words: usize,
}

impl Packed {
    fn key(&self, blanks: &[u64], pos: usize) -> Box<[u64]> {
        let mut k = Vec::with_capacity(self.words + 1);
        k.extend_from_slice(blanks);
        k.push(pos as u64);
        k.into_boxed_slice()
    }
}

fn exact_component(base: &BaseGraph, comp: &[Vertex], blanks: &BlankSet) -> Vec<EquivalenceClass> {
    let g = base.induced(comp);
    let n = g.n();
    let packed = Packed { words: n.div_ceil(64) };
    let mut start = vec![0u64; packed.words];
    for (i, &v) in comp.iter().enumerate() {
        if blanks.contains(v) {
            start[i / 64] |= 1 << (i % 64);
        }
    }
    let is_blank = |b: &[u64], v: usize| b[v / 64] >> (v % 64) & 1 == 1;

    let mut class_of = vec![usize::MAX; n];
    let mut out = Vec::new();
    for u in 0..n {
        if is_blank(&start, u) || class_of[u] != usize::MAX {
            continue;
        }
        let mut seen: HashSet<Box<[u64]>> = HashSet::new();
        let mut queue = VecDeque::new();
        let first = packed.key(&start, u);
        seen.insert(first.clone());
        queue.push_back(first);
        let mut region = vec![false; n];
        let mut members = vec![false; n];
        while let Some(state) = queue.pop_front() {
            let (b, pos) = state.split_at(packed.words);
            let pos = pos[0] as usize;
            region[pos] = true;
            if b == start.as_slice() {
                members[pos] = true;
            }
            // slide a token from `w` into blank `x`
            for x in (0..n).filter(|&x| is_blank(b, x)) {
                for &w in g.neighbors(x) {
                    if is_blank(b, w) {
                        continue;
                    }
                    let mut next = b.to_vec();
                    next[x / 64] &= !(1 << (x % 64));
                    next[w / 64] |= 1 << (w % 64);
                    let p = if w == pos { x } else { pos };
                    let key = packed.key(&next, p);
                    if seen.insert(key.clone()) {
                        queue.push_back(key);
                    }
                }
            }
        }
        let id = out.len();
        for v in (0..n).filter(|&v| members[v]) {
            class_of[v] = id;
        }
        out.push(EquivalenceClass {
            members: (0..n).filter(|&v| members[v]).map(|v| comp[v]).collect(),
            region: (0..n).filter(|&v| region[v]).map(|v| comp[v]).collect(),
        });
    }
    out
}
