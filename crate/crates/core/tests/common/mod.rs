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

#![allow(clippy::needless_range_loop)]
//! Test-side machinery shared by the integration suites. Nothing here calls
//! into the star decider.

#![allow(dead_code)]

use std::collections::HashMap;

use ccts_core::{BaseGraph, Configuration, Instance, SwapGraph};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Adjacency as a bitmask over vertex pairs `(i, j)`, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Code(pub u32);

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // row-major index into the strict upper triangle
    (i * (2 * n - i - 1) / 2 + (j - i - 1)) as u32
}

fn adjacency(n: usize, code: Code) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if code.0 >> pair_bit(n, i, j) & 1 == 1 {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    adj
}

fn encode(n: usize, adj: &[Vec<bool>], perm: &[usize]) -> Code {
    let mut c = 0u32;
    for i in 0..n {
        for j in i + 1..n {
            if adj[i][j] {
                c |= 1 << pair_bit(n, perm[i], perm[j]);
            }
        }
    }
    Code(c)
}

fn next_perm(xs: &mut [usize]) -> bool {
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

/// Smallest code over all relabelings that list vertices by ascending
/// degree. Isomorphic graphs get the same code.
fn canonical(n: usize, code: Code) -> Code {
    let adj = adjacency(n, code);
    let deg: Vec<usize> = (0..n).map(|v| adj[v].iter().filter(|&&b| b).count()).collect();
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| deg[v]);
    // blocks of equal degree, permuted independently
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &by_deg {
        match blocks.last_mut() {
            Some(b) if deg[b[0]] == deg[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best = Code(u32::MAX);
    let mut current: Vec<Vec<usize>> = blocks;
    for b in current.iter_mut() {
        b.sort_unstable();
    }
    loop {
        let mut perm = vec![0; n];
        for (pos, &v) in current.iter().flatten().enumerate() {
            perm[v] = pos;
        }
        best = best.min(encode(n, &adj, &perm));
        // odometer over block permutations
        let mut i = 0;
        loop {
            if i == current.len() {
                return best;
            }
            if next_perm(&mut current[i]) {
                break;
            }
            current[i].sort_unstable();
            i += 1;
        }
    }
}

/// All graphs on `n >= 1` vertices up to isomorphism, as edge lists.
pub fn graphs_up_to_iso(n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut level: Vec<Code> = vec![Code(0)];
    for m in 2..=n {
        let mut seen = std::collections::BTreeSet::new();
        for &g in &level {
            let adj = adjacency(m - 1, g);
            for mask in 0u32..1 << (m - 1) {
                let mut c = 0u32;
                for i in 0..m - 1 {
                    for j in i + 1..m - 1 {
                        if adj[i][j] {
                            c |= 1 << pair_bit(m, i, j);
                        }
                    }
                    if mask >> i & 1 == 1 {
                        c |= 1 << pair_bit(m, i, m - 1);
                    }
                }
                seen.insert(canonical(m, Code(c)));
            }
        }
        level = seen.into_iter().collect();
    }
    level
        .into_iter()
        .map(|c| {
            let adj = adjacency(n, c);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if adj[i][j] {
                        edges.push((i, j));
                    }
                }
            }
            edges
        })
        .collect()
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Arrangements of `n - b` labeled tokens `1..` and `b` blanks (`0`).
pub struct Arrangements {
    pub n: usize,
    pub states: Vec<Vec<u8>>,
    pub index: HashMap<Vec<u8>, u32>,
}

impl Arrangements {
    pub fn new(n: usize, blanks: usize) -> Self {
        let mut cur: Vec<u8> = vec![0; blanks];
        cur.extend(1..=(n - blanks) as u8);
        let mut states = Vec::new();
        loop {
            states.push(cur.clone());
            let mut idx: Vec<usize> = cur.iter().map(|&x| x as usize).collect();
            if !next_perm(&mut idx) {
                break;
            }
            cur = idx.into_iter().map(|x| x as u8).collect();
        }
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        Arrangements { n, states, index }
    }
}

/// Component labels of the token-blank move graph for `edges` over `arr`.
pub fn move_components(arr: &Arrangements, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut comp = vec![u32::MAX; arr.states.len()];
    let mut next = 0;
    let mut stack = Vec::new();
    for s in 0..arr.states.len() {
        if comp[s] != u32::MAX {
            continue;
        }
        comp[s] = next;
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &(u, v) in edges {
                let st = &arr.states[x];
                if (st[u] == 0) == (st[v] == 0) {
                    continue;
                }
                let mut t = st.clone();
                t.swap(u, v);
                let y = arr.index[&t] as usize;
                if comp[y] == u32::MAX {
                    comp[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Members of each component, by label.
pub fn group(comp: &[u32]) -> Vec<Vec<u32>> {
    let count = comp.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut out = vec![Vec::new(); count];
    for (s, &c) in comp.iter().enumerate() {
        out[c as usize].push(s as u32);
    }
    out
}

/// Ground truth for one blank set: where each starting token can go.
pub struct ClassTruth {
    /// `same[u][v]`: the token starting on `u` can sit on `v` with the
    /// blank set restored.
    pub same: Vec<Vec<bool>>,
    /// `region[u][v]`: the token starting on `u` can sit on `v`.
    pub region: Vec<Vec<bool>>,
}

pub fn class_truth(arr: &Arrangements, comp: &[u32], members: &[Vec<u32>], blanks: &[bool]) -> ClassTruth {
    let n = arr.n;
    // token labels follow vertex order
    let mut start = vec![0u8; n];
    let mut home = vec![usize::MAX; n + 1];
    let mut next = 1u8;
    for v in 0..n {
        if !blanks[v] {
            start[v] = next;
            home[next as usize] = v;
            next += 1;
        }
    }
    let s0 = arr.index[&start] as usize;
    let mut same = vec![vec![false; n]; n];
    let mut region = vec![vec![false; n]; n];
    for &s in &members[comp[s0] as usize] {
        let st = &arr.states[s as usize];
        let restored = (0..n).all(|v| (st[v] == 0) == blanks[v]);
        for (v, &t) in st.iter().enumerate() {
            if t == 0 {
                continue;
            }
            let h = home[t as usize];
            region[h][v] = true;
            if restored {
                same[h][v] = true;
            }
        }
    }
    ClassTruth { same, region }
}

/// The configuration after a random sequence of legal swaps.
pub fn random_walk(inst: &Instance, steps: usize, rng: &mut ChaCha8Rng) -> Configuration {
    let mut c = inst.initial.clone();
    for _ in 0..steps {
        let moves = inst.legal_swaps(&c);
        let Some(&m) = moves.choose(rng) else { break };
        c = inst.apply_swap(&c, m).unwrap();
    }
    c
}

/// Random connected graph on `n` vertices: a random tree plus extra edges.
pub fn random_connected(n: usize, density: f64, rng: &mut ChaCha8Rng) -> BaseGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let p = order[rng.random_range(0..i)];
        edges.insert((p.min(order[i]), p.max(order[i])));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.insert((u, v));
            }
        }
    }
    BaseGraph::new(n, edges).unwrap()
}

pub fn star(k: usize, center: usize) -> SwapGraph {
    SwapGraph::star(k, center).unwrap()
}

/// Every word with the same color multiset as `c`, in lexicographic order.
pub fn rearrangements(c: &[u8]) -> Vec<Vec<u8>> {
    let mut cur = c.to_vec();
    cur.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        let mut idx: Vec<usize> = cur.iter().map(|&x| x as usize).collect();
        if !next_perm(&mut idx) {
            return out;
        }
        cur = idx.into_iter().map(|x| x as u8).collect();
    }
}

/// All words of length `n` over colors `1..=k`.
pub fn all_words(n: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                (1..=k as u8).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}
