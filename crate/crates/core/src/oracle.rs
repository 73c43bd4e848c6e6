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

//! Exact breadth-first search over the configuration space.
//!
//! States are stored back to back in a byte arena (one byte per vertex) and
//! indexed by a hash table of arena offsets, so a visited state costs `n`
//! bytes plus three `u32`s. Arena order is BFS order, which doubles as the
//! queue. Successors are generated by scanning base edges in lexicographic
//! order, so outcomes and witnesses are reproducible.

use std::hash::BuildHasher;

use hashbrown::{DefaultHashBuilder, HashTable};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Configuration, Edge, Instance, SwapSequence};

pub const DEFAULT_MAX_STATES: usize = 10_000_000;

/// Result of an exhaustive search. `W` is the witness type (swap or flip sequence).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<W> {
    Solvable { witness: W, states_explored: usize },
    Unsolvable { states_explored: usize },
    LimitExceeded { states_explored: usize },
}

impl<W> SearchOutcome<W> {
    /// `None` when the budget ran out before a decision.
    pub fn is_solvable(&self) -> Option<bool> {
        match self {
            SearchOutcome::Solvable { .. } => Some(true),
            SearchOutcome::Unsolvable { .. } => Some(false),
            SearchOutcome::LimitExceeded { .. } => None,
        }
    }

    pub fn states_explored(&self) -> usize {
        match *self {
            SearchOutcome::Solvable { states_explored, .. }
            | SearchOutcome::Unsolvable { states_explored }
            | SearchOutcome::LimitExceeded { states_explored } => states_explored,
        }
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            SearchOutcome::Solvable { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            SearchOutcome::Solvable { .. } => "solvable",
            SearchOutcome::Unsolvable { .. } => "unsolvable",
            SearchOutcome::LimitExceeded { .. } => "limit_exceeded",
        }
    }
}

#[derive(Serialize)]
struct OutcomeDoc<'a> {
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<[usize; 2]>>,
    states_explored: usize,
}

impl SearchOutcome<SwapSequence> {
    pub fn to_json(&self) -> String {
        let doc = OutcomeDoc {
            status: self.status(),
            witness: self.witness().map(|w| w.swaps().iter().map(|&(u, v)| [u, v]).collect()),
            states_explored: self.states_explored(),
        };
        serde_json::to_string_pretty(&doc).expect("outcome serializes")
    }
}

/// Fixed-width byte encoding of a configuration: byte `i` is the color of vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn encode(config: &Configuration) -> Self {
        CanonicalKey(config.colors().into())
    }

    pub fn decode(&self) -> Configuration {
        Configuration::new(self.0.to_vec())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// Append-only set of equal-width byte strings with stable indices.
pub(crate) struct StateStore {
    width: usize,
    arena: Vec<u8>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl StateStore {
    pub(crate) fn new(width: usize) -> Self {
        StateStore {
            width,
            arena: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub(crate) fn get(&self, idx: usize) -> &[u8] {
        &self.arena[idx * self.width..(idx + 1) * self.width]
    }

    pub(crate) fn find(&self, key: &[u8]) -> Option<usize> {
        let hash = self.hasher.hash_one(key);
        let (arena, width) = (&self.arena, self.width);
        self.table
            .find(hash, |&i| &arena[i as usize * width..(i as usize + 1) * width] == key)
            .map(|&i| i as usize)
    }

    /// Insert if absent. Returns the index and whether it was new.
    pub(crate) fn insert(&mut self, key: &[u8]) -> (usize, bool) {
        debug_assert_eq!(key.len(), self.width);
        let hash = self.hasher.hash_one(key);
        let StateStore {
            width,
            arena,
            table,
            hasher,
        } = self;
        let width = *width;
        let slot = |i: u32| &arena[i as usize * width..(i as usize + 1) * width];
        if let Some(&i) = table.find(hash, |&i| slot(i) == key) {
            return (i as usize, false);
        }
        let idx = table.len() as u32;
        table.insert_unique(hash, idx, |&i| {
            hasher.hash_one(&arena[i as usize * width..(i as usize + 1) * width])
        });
        arena.extend_from_slice(key);
        (idx as usize, true)
    }
}

/// Precomputed move table shared by the searches.
struct MoveGen<'a> {
    edges: &'a [Edge],
    allowed: &'a [bool],
    stride: usize,
}

impl<'a> MoveGen<'a> {
    fn new(inst: &'a Instance) -> Self {
        MoveGen {
            edges: inst.base.edges(),
            allowed: inst.swap.table(),
            stride: inst.k() + 1,
        }
    }

    #[inline]
    fn legal(&self, state: &[u8], (u, v): Edge) -> bool {
        self.allowed[state[u] as usize * self.stride + state[v] as usize]
    }
}

/// Breadth-first search from `inst.initial`; the witness is a shortest one.
pub fn solve_bfs(inst: &Instance, max_states: usize) -> SearchOutcome<SwapSequence> {
    let target = inst.target.colors();
    if inst.initial.colors() == target {
        return SearchOutcome::Solvable {
            witness: SwapSequence::default(),
            states_explored: 1,
        };
    }
    if !inst.counts_match() {
        return SearchOutcome::Unsolvable { states_explored: 1 };
    }
    let moves = MoveGen::new(inst);
    let mut store = StateStore::new(inst.n());
    // parent state index and edge index, per state
    let mut parent: Vec<(u32, u32)> = Vec::new();
    store.insert(inst.initial.colors());
    parent.push((u32::MAX, u32::MAX));
    if max_states == 0 {
        return SearchOutcome::LimitExceeded { states_explored: 0 };
    }

    let mut cur = vec![0u8; inst.n()];
    let mut head = 0;
    while head < store.len() {
        cur.copy_from_slice(store.get(head));
        for (ei, &(u, v)) in moves.edges.iter().enumerate() {
            if !moves.legal(&cur, (u, v)) {
                continue;
            }
            cur.swap(u, v);
            if store.find(&cur).is_none() {
                if store.len() >= max_states {
                    return SearchOutcome::LimitExceeded {
                        states_explored: store.len(),
                    };
                }
                store.insert(&cur);
                parent.push((head as u32, ei as u32));
                if cur == target {
                    let witness = trace(&parent, moves.edges, parent.len() - 1);
                    return SearchOutcome::Solvable {
                        witness,
                        states_explored: store.len(),
                    };
                }
            }
            cur.swap(u, v);
        }
        head += 1;
    }
    SearchOutcome::Unsolvable {
        states_explored: store.len(),
    }
}

fn trace(parent: &[(u32, u32)], edges: &[Edge], mut at: usize) -> SwapSequence {
    let mut swaps = Vec::new();
    while parent[at].0 != u32::MAX {
        let (p, e) = parent[at];
        swaps.push(edges[e as usize]);
        at = p as usize;
    }
    swaps.reverse();
    SwapSequence::new(swaps)
}

/// Every configuration reachable from `inst.initial`.
pub struct ReachableSet {
    store: StateStore,
}

impl ReachableSet {
    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        self.store.len() == 0
    }

    pub fn contains(&self, config: &Configuration) -> bool {
        self.store.find(config.colors()).is_some()
    }

    pub fn contains_key(&self, key: &CanonicalKey) -> bool {
        self.store.find(key.as_bytes()).is_some()
    }

    /// Raw keys in BFS discovery order.
    pub fn iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.store.len()).map(move |i| self.store.get(i))
    }

    pub fn keys(&self) -> impl Iterator<Item = CanonicalKey> + '_ {
        self.iter().map(|b| CanonicalKey(b.into()))
    }

    pub fn configurations(&self) -> impl Iterator<Item = Configuration> + '_ {
        self.iter().map(|b| Configuration::new(b.to_vec()))
    }
}

/// Fails with [`Error::LimitExceeded`] when more than `max_states` states are reachable.
pub fn reachable_configs(inst: &Instance, max_states: usize) -> Result<ReachableSet> {
    let moves = MoveGen::new(inst);
    let mut store = StateStore::new(inst.n());
    if max_states == 0 {
        return Err(Error::LimitExceeded { explored: 0 });
    }
    store.insert(inst.initial.colors());
    let mut cur = vec![0u8; inst.n()];
    let mut head = 0;
    while head < store.len() {
        cur.copy_from_slice(store.get(head));
        for &(u, v) in moves.edges {
            if !moves.legal(&cur, (u, v)) {
                continue;
            }
            cur.swap(u, v);
            if store.find(&cur).is_none() {
                if store.len() >= max_states {
                    return Err(Error::LimitExceeded { explored: store.len() });
                }
                store.insert(&cur);
            }
            cur.swap(u, v);
        }
        head += 1;
    }
    Ok(ReachableSet { store })
}

/// True iff every swap is legal in turn and the walk ends on `inst.target`.
pub fn verify_sequence(inst: &Instance, seq: &SwapSequence) -> bool {
    matches!(inst.replay(&inst.initial, seq), Ok(end) if end == inst.target)
}

/// Whether the instance and its reversal receive the same verdict.
pub fn solvable_symmetric_check(inst: &Instance, max_states: usize) -> Result<bool> {
    let forward = solve_bfs(inst, max_states);
    let backward = solve_bfs(&inst.reversed(), max_states);
    match (forward.is_solvable(), backward.is_solvable()) {
        (Some(a), Some(b)) => Ok(a == b),
        _ => Err(Error::LimitExceeded {
            explored: forward.states_explored().max(backward.states_explored()),
        }),
    }
}
