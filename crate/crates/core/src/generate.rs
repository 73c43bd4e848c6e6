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

//! Instance generators. Randomized ones take a seed and are reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph;
use crate::instance::{BaseGraph, Color, Configuration, Instance, SwapGraph, MAX_COLORS};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check(ok: bool, field: &str, reason: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(field, reason))
    }
}

/// `blanks` color-1 tokens on the first vertices, then colors `2..=k` in
/// turn.
fn cyclic_tokens(n: usize, blanks: usize, k: usize) -> Configuration {
    Configuration::new(
        (0..n)
            .map(|v| {
                if v < blanks {
                    1
                } else {
                    (2 + (v - blanks) % (k - 1)) as Color
                }
            })
            .collect(),
    )
}

/// Final configuration: the initial tokens shuffled, blanks kept in place.
fn shuffled_tokens(initial: &Configuration, rng: &mut ChaCha8Rng) -> Configuration {
    let mut colors = initial.colors().to_vec();
    let slots: Vec<usize> = (0..colors.len()).filter(|&v| colors[v] != 1).collect();
    let mut tokens: Vec<Color> = slots.iter().map(|&v| colors[v]).collect();
    tokens.shuffle(rng);
    for (&v, c) in slots.iter().zip(tokens) {
        colors[v] = c;
    }
    Configuration::new(colors)
}

pub fn grid_graph(rows: usize, cols: usize) -> BaseGraph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    BaseGraph::new(rows * cols, edges).expect("grid is simple")
}

pub fn cycle_graph(n: usize) -> BaseGraph {
    BaseGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
}

/// Sliding puzzle on a grid: star swap graph, distinct non-blank colors.
pub fn grid(rows: usize, cols: usize, blanks: usize, seed: u64) -> Result<Instance> {
    let n = rows * cols;
    check(rows >= 1 && cols >= 1, "rows", "grid needs at least one row and column")?;
    check(
        blanks >= 1 && blanks < n,
        "blanks",
        "need at least one blank and one token",
    )?;
    let k = n - blanks + 1;
    check(k <= MAX_COLORS, "rows", "too many distinct colors")?;
    let initial = cyclic_tokens(n, blanks, k);
    let target = shuffled_tokens(&initial, &mut rng(seed));
    Instance::new(
        format!("grid-{rows}x{cols}"),
        grid_graph(rows, cols),
        SwapGraph::star(k, 1)?,
        initial,
        target,
    )
}

/// Cycle with a star swap graph on `k` colors.
pub fn cycle(n: usize, blanks: usize, k: usize, seed: u64) -> Result<Instance> {
    check(n >= 3, "n", "a cycle needs at least 3 vertices")?;
    check(
        blanks >= 1 && blanks < n,
        "blanks",
        "need at least one blank and one token",
    )?;
    check((2..=MAX_COLORS).contains(&k), "k", "need 2 to 255 colors")?;
    let initial = cyclic_tokens(n, blanks, k);
    let target = shuffled_tokens(&initial, &mut rng(seed));
    Instance::new(
        format!("cycle-{n}"),
        cycle_graph(n),
        SwapGraph::star(k, 1)?,
        initial,
        target,
    )
}

/// The exceptional 7-vertex graph with one blank and distinct colors.
pub fn t0(seed: u64) -> Result<Instance> {
    let initial = cyclic_tokens(7, 1, 7);
    let target = shuffled_tokens(&initial, &mut rng(seed));
    Instance::new("t0", graph::t0(), SwapGraph::star(7, 1)?, initial, target)
}

/// Random connected graph: a random spanning tree plus each other pair
/// with probability `density`.
pub fn random_connected_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> BaseGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push((parent, order[i]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
    edges.sort_unstable();
    edges.dedup();
    BaseGraph::new(n, edges).expect("deduplicated edges")
}

/// Random connected base graph and star swap graph centered at 1; the
/// final configuration is a random rearrangement of the initial tokens.
pub fn star_random(n: usize, k: usize, seed: u64) -> Result<Instance> {
    check(n >= 1, "n", "need at least one vertex")?;
    check((2..=MAX_COLORS).contains(&k), "k", "need 2 to 255 colors")?;
    let mut rng = rng(seed);
    let base = random_connected_graph(n, 0.3, &mut rng);
    let initial: Vec<Color> = (0..n).map(|_| rng.random_range(1..=k) as Color).collect();
    let mut target = initial.clone();
    target.shuffle(&mut rng);
    Instance::new(
        format!("star-random-{n}-{k}-{seed}"),
        base,
        SwapGraph::star(k, 1)?,
        initial.into(),
        target.into(),
    )
}

pub const TEASER_CREATURES: [&str; 4] = ["fox", "caterpillar", "farmer", "chicken"];

/// Farmland brain teaser on a 3x3 grid of fields. A creature pair may meet
/// unless it is fox/farmer, chicken/fox or caterpillar/chicken, which
/// leaves the path fox - caterpillar - farmer - chicken.
pub fn teaser() -> Instance {
    let fields = ["nw", "n", "ne", "w", "c", "e", "sw", "s", "se"];
    let base = grid_graph(3, 3)
        .with_labels(fields.iter().map(|s| s.to_string()).collect())
        .expect("nine labels");
    let swap = SwapGraph::path(4)
        .and_then(|s| s.with_labels(TEASER_CREATURES.iter().map(|s| s.to_string()).collect()))
        .expect("four creatures");
    let initial = vec![1, 2, 3, 2, 4, 2, 3, 2, 1];
    let target = TEASER_FINAL.to_vec();
    Instance::new("teaser", base, swap, initial.into(), target.into()).expect("teaser is well formed")
}

const TEASER_FINAL: [Color; 9] = [4, 1, 2, 1, 2, 2, 2, 3, 3];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate;

    #[test]
    fn generators_are_deterministic_and_valid() {
        for inst in [
            grid(2, 3, 1, 7).unwrap(),
            cycle(6, 2, 3, 7).unwrap(),
            t0(7).unwrap(),
            star_random(6, 3, 7).unwrap(),
            teaser(),
        ] {
            assert!(validate(&inst).passes(), "{}", inst.name);
        }
        assert_eq!(star_random(7, 3, 11).unwrap(), star_random(7, 3, 11).unwrap());
        assert_eq!(grid(2, 3, 1, 5).unwrap(), grid(2, 3, 1, 5).unwrap());
    }

    #[test]
    fn cycle_four_one_blank() {
        let inst = cycle(4, 1, 4, 0).unwrap();
        assert!(graph::is_cycle(&inst.base));
        assert_eq!(inst.initial.colors(), &[1, 2, 3, 4]);
        assert_eq!(inst.target.color(0), 1);
    }

    #[test]
    fn teaser_is_solvable() {
        let out = crate::oracle::solve_bfs(&teaser(), 100_000);
        assert_eq!(out.witness().map(|w| w.len()), Some(15));
    }

    #[test]
    fn bad_parameters() {
        assert!(grid(1, 1, 1, 0).is_err());
        assert!(cycle(2, 1, 2, 0).is_err());
        assert!(star_random(4, 1, 0).is_err());
    }
}
