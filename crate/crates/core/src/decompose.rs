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

//! Splitting an instance along the connected components of its swap graph.
//!
//! Tokens whose colors lie in different swap components never swap with
//! each other, so each component is an independent instance on the vertices
//! that carry its colors. Colors that no token uses are dropped first.

use crate::error::{Error, Result};
use crate::instance::{BaseGraph, Color, Configuration, Instance, SwapGraph, SwapSequence, Vertex};

/// One independent sub-instance, renumbered locally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub instance: Instance,
    /// `vertices[i]` is the parent vertex of local vertex `i`.
    pub vertices: Vec<Vertex>,
    /// `colors[c - 1]` is the parent color of local color `c`.
    pub colors: Vec<Color>,
}

impl Part {
    /// Map a local swap sequence back to parent vertex ids.
    pub fn lift(&self, seq: &SwapSequence) -> SwapSequence {
        seq.swaps()
            .iter()
            .map(|&(u, v)| (self.vertices[u], self.vertices[v]))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Part>,
    /// Swap components (as parent color lists) whose token-carrying vertex
    /// sets differ between the two configurations.
    pub mismatched: Vec<Vec<Color>>,
}

impl Decomposition {
    /// Some component cannot reach its final vertex set.
    pub fn forced_unsolvable(&self) -> bool {
        !self.mismatched.is_empty()
    }
}

/// Colors carried by some token in either configuration, ascending.
pub fn used_colors(inst: &Instance) -> Vec<Color> {
    let mut used = vec![false; inst.k() + 1];
    for &c in inst.initial.colors().iter().chain(inst.target.colors()) {
        used[c as usize] = true;
    }
    (1..=inst.k() as Color).filter(|&c| used[c as usize]).collect()
}

/// Components of the swap graph restricted to `colors`, ordered by smallest color.
pub(crate) fn swap_components(swap: &SwapGraph, colors: &[Color]) -> Vec<Vec<Color>> {
    let mut keep = vec![false; swap.k() + 1];
    for &c in colors {
        keep[c as usize] = true;
    }
    let mut seen = vec![false; swap.k() + 1];
    let mut out = Vec::new();
    for &s in colors {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(c) = stack.pop() {
            for d in swap.neighbors(c) {
                if keep[d as usize] && !seen[d as usize] {
                    seen[d as usize] = true;
                    comp.push(d);
                    stack.push(d);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Restrict `inst` to the vertices carrying colors of `component`,
/// renumbering vertices and colors.
fn restrict(inst: &Instance, component: &[Color], vertices: Vec<Vertex>, name: String) -> Part {
    let mut local = vec![0 as Color; inst.k() + 1];
    for (i, &c) in component.iter().enumerate() {
        local[c as usize] = (i + 1) as Color;
    }
    let edges: Vec<(usize, usize)> = inst
        .swap
        .edges()
        .iter()
        .filter(|&&(a, b)| local[a as usize] != 0 && local[b as usize] != 0)
        .map(|&(a, b)| (local[a as usize] as usize, local[b as usize] as usize))
        .collect();
    let mut swap = SwapGraph::new(component.len(), edges).expect("restriction of a simple swap graph");
    if let Some(labels) = inst.swap.labels() {
        swap = swap
            .with_labels(component.iter().map(|&c| labels[c as usize - 1].clone()).collect())
            .expect("one label per color");
    }
    let base: BaseGraph = inst.base.induced(&vertices);
    let recolor = |config: &Configuration| {
        Configuration::new(vertices.iter().map(|&v| local[config.color(v) as usize]).collect())
    };
    let instance = Instance::new(name, base, swap, recolor(&inst.initial), recolor(&inst.target))
        .expect("restricted configurations are in range");
    Part {
        instance,
        vertices,
        colors: component.to_vec(),
    }
}

/// The same instance with unused colors deleted from the swap graph.
/// Returns the pruned instance and the parent color of each new color.
pub fn prune_unused_colors(inst: &Instance) -> (Instance, Vec<Color>) {
    let used = used_colors(inst);
    let part = restrict(inst, &used, (0..inst.n()).collect(), inst.name.clone());
    (part.instance, part.colors)
}

/// Requires matching per-color counts (see [`crate::validate`]).
pub fn decompose_by_swap_components(inst: &Instance) -> Result<Decomposition> {
    if !inst.counts_match() {
        return Err(Error::Precondition(
            "per-color token counts differ between initial and final".into(),
        ));
    }
    let used = used_colors(inst);
    let components = swap_components(&inst.swap, &used);
    let mut of_color = vec![usize::MAX; inst.k() + 1];
    for (i, comp) in components.iter().enumerate() {
        for &c in comp {
            of_color[c as usize] = i;
        }
    }

    let mut parts = Vec::new();
    let mut mismatched = Vec::new();
    for (i, comp) in components.iter().enumerate() {
        let holds = |config: &Configuration, v: Vertex| of_color[config.color(v) as usize] == i;
        let from: Vec<Vertex> = (0..inst.n()).filter(|&v| holds(&inst.initial, v)).collect();
        let to: Vec<Vertex> = (0..inst.n()).filter(|&v| holds(&inst.target, v)).collect();
        if from != to {
            mismatched.push(comp.clone());
            continue;
        }
        let name = if components.len() == 1 {
            inst.name.clone()
        } else {
            format!("{}#{}", inst.name, i)
        };
        parts.push(restrict(inst, comp, from, name));
    }
    Ok(Decomposition { parts, mismatched })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3(swap: SwapGraph, initial: Vec<u8>, target: Vec<u8>) -> Instance {
        Instance::new(
            "p",
            BaseGraph::new(3, [(0, 1), (1, 2)]).unwrap(),
            swap,
            initial.into(),
            target.into(),
        )
        .unwrap()
    }

    #[test]
    fn connected_swap_graph_gives_single_pruned_part() {
        // color 2 unused; 1 - 3 remain connected
        let inst = path3(SwapGraph::star(3, 1).unwrap(), vec![1, 3, 1], vec![3, 1, 1]);
        let d = decompose_by_swap_components(&inst).unwrap();
        assert!(!d.forced_unsolvable());
        assert_eq!(d.parts.len(), 1);
        let part = &d.parts[0];
        assert_eq!(part.colors, vec![1, 3]);
        assert_eq!(part.instance.k(), 2);
        assert_eq!(part.instance.initial.colors(), &[1, 2, 1]);
        assert_eq!(part.instance.swap.edges(), &[(1, 2)]);
        assert_eq!(part.vertices, vec![0, 1, 2]);
    }

    #[test]
    fn isolated_color_is_frozen() {
        let swap = SwapGraph::new(3, [(1, 2)]).unwrap();
        let inst = path3(swap, vec![1, 3, 2], vec![2, 3, 1]);
        let d = decompose_by_swap_components(&inst).unwrap();
        assert!(!d.forced_unsolvable());
        assert_eq!(d.parts.len(), 2);
        assert_eq!(d.parts[0].colors, vec![1, 2]);
        assert_eq!(d.parts[0].vertices, vec![0, 2]);
        // vertices 0 and 2 are not adjacent once vertex 1 is removed
        assert!(d.parts[0].instance.base.edges().is_empty());
        assert_eq!(d.parts[1].colors, vec![3]);
        assert_eq!(d.parts[1].vertices, vec![1]);
    }

    #[test]
    fn moved_isolated_color_forces_no() {
        let swap = SwapGraph::new(3, [(1, 2)]).unwrap();
        let inst = path3(swap, vec![3, 1, 2], vec![1, 3, 2]);
        let d = decompose_by_swap_components(&inst).unwrap();
        assert!(d.forced_unsolvable());
        // the {1, 2} tokens are displaced too
        assert_eq!(d.mismatched, vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn lift_maps_back() {
        let swap = SwapGraph::new(3, [(1, 2)]).unwrap();
        let inst = Instance::new(
            "p",
            BaseGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap(),
            swap,
            vec![3, 1, 2, 3].into(),
            vec![3, 2, 1, 3].into(),
        )
        .unwrap();
        let d = decompose_by_swap_components(&inst).unwrap();
        let part = &d.parts[0];
        assert_eq!(part.vertices, vec![1, 2]);
        let lifted = part.lift(&SwapSequence::new(vec![(0, 1)]));
        assert_eq!(lifted.swaps(), &[(1, 2)]);
        assert_eq!(inst.replay(&inst.initial, &lifted).unwrap(), inst.target);
    }

    #[test]
    fn requires_matching_counts() {
        let inst = path3(SwapGraph::star(2, 1).unwrap(), vec![1, 1, 2], vec![1, 2, 2]);
        assert!(decompose_by_swap_components(&inst).is_err());
    }
}
