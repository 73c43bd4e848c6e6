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

//! Per-class sub-instances and the decision rule for a single one.

use crate::error::{Error, Result};
use crate::graph;
use crate::instance::{Configuration, Instance, Vertex};
use crate::oracle::{solve_bfs, SearchOutcome};

use super::classes::{equivalence_classes, BlankSet, EquivalenceClass};
use super::Reason;

/// The instance induced on `C ∪ R(C)`, with color 1 on `R(C) \ C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubInstance {
    pub class: EquivalenceClass,
    /// `vertices[i]` is the parent vertex of local vertex `i`; sorted.
    pub vertices: Vec<Vertex>,
    pub instance: Instance,
    pub counts_match: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Requires identical blank sets in both configurations.
pub fn build_sub_instances(inst: &Instance) -> Result<Vec<SubInstance>> {
    let blanks = BlankSet::from_configuration(&inst.initial);
    if blanks != BlankSet::from_configuration(&inst.target) {
        return Err(Error::BlankSetsDiffer);
    }
    let mut out = Vec::new();
    for class in equivalence_classes(&inst.base, &blanks) {
        let vertices = class.region.clone();
        let mut in_class = vec![false; inst.n()];
        for &v in &class.members {
            in_class[v] = true;
        }
        let local = |config: &Configuration| {
            Configuration::new(
                vertices
                    .iter()
                    .map(|&v| if in_class[v] { config.color(v) } else { 1 })
                    .collect(),
            )
        };
        let name = format!("{}@{}", inst.name, class.members[0]);
        let instance = Instance::new(
            name,
            inst.base.induced(&vertices),
            inst.swap.clone(),
            local(&inst.initial),
            local(&inst.target),
        )?;
        out.push(SubInstance {
            counts_match: instance.counts_match(),
            class,
            vertices,
            instance,
        });
    }
    Ok(out)
}

/// Cyclic order of vertices starting at 0, heading to its smaller neighbor.
fn cycle_order(inst: &Instance) -> Vec<Vertex> {
    let n = inst.n();
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < n {
        let next = *inst
            .base
            .neighbors(cur)
            .iter()
            .find(|&&w| w != prev)
            .expect("cycle vertex has two neighbors");
        prev = cur;
        cur = next;
        order.push(cur);
    }
    order
}

/// Requires a cycle base graph and identical blank sets.
pub fn decide_cycle(sub: &SubInstance) -> bool {
    let inst = &sub.instance;
    if !inst.counts_match() {
        return false;
    }
    let order = cycle_order(inst);
    let tokens =
        |config: &Configuration| -> Vec<u8> { order.iter().map(|&v| config.color(v)).filter(|&c| c != 1).collect() };
    let a = tokens(&inst.initial);
    let b = tokens(&inst.target);
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}

/// Parity of the vertex permutation carrying each token to its final vertex.
pub fn permutation_parity(initial: &Configuration, target: &Configuration) -> Result<Parity> {
    let n = initial.len();
    if target.len() != n {
        return Err(Error::Precondition("configurations differ in length".into()));
    }
    if (0..n).any(|v| (initial.color(v) == 1) != (target.color(v) == 1)) {
        return Err(Error::BlankSetsDiffer);
    }
    let mut at = vec![usize::MAX; 256];
    for v in 0..n {
        let c = target.color(v);
        if c == 1 {
            continue;
        }
        if at[c as usize] != usize::MAX {
            return Err(Error::RepeatedColor(c));
        }
        at[c as usize] = v;
    }
    let mut seen = vec![false; n];
    let mut moved = 0;
    let mut cycles = 0;
    for v in 0..n {
        let c = initial.color(v);
        if c == 1 || seen[v] {
            continue;
        }
        if at[c as usize] == usize::MAX {
            return Err(Error::Precondition(format!("color {c} missing from final")));
        }
        cycles += 1;
        let mut w = v;
        while !seen[w] {
            seen[w] = true;
            moved += 1;
            let d = initial.color(w);
            if at[d as usize] == usize::MAX {
                return Err(Error::RepeatedColor(d));
            }
            w = at[d as usize];
        }
    }
    Ok(if (moved - cycles) % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    })
}

fn all_colors_distinct(inst: &Instance) -> bool {
    let mut seen = [false; 256];
    inst.initial
        .colors()
        .iter()
        .all(|&c| !std::mem::replace(&mut seen[c as usize], true))
}

/// Decide one transitive sub-instance. Only the T0 branch can fail, when
/// `oracle_budget` runs out.
pub fn decide_transitive(sub: &SubInstance, oracle_budget: usize) -> Result<(bool, Reason)> {
    let inst = &sub.instance;
    if !sub.counts_match {
        return Ok((false, Reason::CountsMismatch));
    }
    let g = &inst.base;
    if graph::is_cycle(g) {
        return Ok(if decide_cycle(sub) {
            (true, Reason::NoObstruction)
        } else {
            (false, Reason::CycleOrderViolated)
        });
    }
    if graph::is_t0(g) {
        return match solve_bfs(inst, oracle_budget) {
            SearchOutcome::Solvable { .. } => Ok((true, Reason::T0BruteForce)),
            SearchOutcome::Unsolvable { .. } => Ok((false, Reason::T0BruteForce)),
            SearchOutcome::LimitExceeded { states_explored } => Err(Error::LimitExceeded {
                explored: states_explored,
            }),
        };
    }
    let obstructed = all_colors_distinct(inst)
        && graph::is_biconnected(g)
        && graph::is_bipartite(g)
        && permutation_parity(&inst.initial, &inst.target)? == Parity::Odd;
    Ok(if obstructed {
        (false, Reason::ParityObstruction)
    } else {
        (true, Reason::NoObstruction)
    })
}
