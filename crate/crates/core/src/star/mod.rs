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

//! Decision procedure for instances whose swap graph is a star.
//!
//! The center color is renamed to 1 and its tokens are treated as blanks.
//! Blanks are first routed onto their final vertices; the occupied vertices
//! then split into classes of mutually exchangeable positions, and each
//! class is decided on its own.

mod classes;
mod transitive;

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

pub use classes::{equivalence_classes, exact_equivalence_classes, fast_path_applies, BlankSet, EquivalenceClass};
pub use transitive::{build_sub_instances, decide_cycle, decide_transitive, permutation_parity, Parity, SubInstance};

use crate::decompose::{decompose_by_swap_components, swap_components, used_colors};
use crate::error::{Error, Result};
use crate::graph::{bfs_path_to, components};
use crate::instance::{Color, Configuration, Instance, SwapGraph, SwapSequence, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    CountsMismatch,
    /// A single-color swap component occupies different vertex sets.
    FrozenMismatch,
    CycleOrderViolated,
    T0BruteForce,
    ParityObstruction,
    NoObstruction,
    /// Indices into [`Verdict::classes`] of the classes that failed.
    ClassFailure(Vec<usize>),
}

impl Reason {
    pub fn name(&self) -> &'static str {
        match self {
            Reason::CountsMismatch => "CountsMismatch",
            Reason::FrozenMismatch => "FrozenMismatch",
            Reason::CycleOrderViolated => "CycleOrderViolated",
            Reason::T0BruteForce => "T0BruteForce",
            Reason::ParityObstruction => "ParityObstruction",
            Reason::NoObstruction => "NoObstruction",
            Reason::ClassFailure(_) => "ClassFailure",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::ClassFailure(ids) => write!(f, "ClassFailure{ids:?}"),
            other => f.write_str(other.name()),
        }
    }
}

/// Outcome for one class, in parent vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    #[serde(rename = "C")]
    pub members: Vec<Vertex>,
    #[serde(rename = "R")]
    pub region: Vec<Vertex>,
    #[serde(rename = "verdict", serialize_with = "reason_name")]
    pub reason: Reason,
    pub solvable: bool,
}

fn reason_name<S: Serializer>(r: &Reason, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(r.name())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub solvable: bool,
    pub reason: Reason,
    pub classes: Vec<ClassVerdict>,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("solvable", &self.solvable)?;
        m.serialize_entry("reason", self.reason.name())?;
        if let Reason::ClassFailure(ids) = &self.reason {
            m.serialize_entry("failing_classes", ids)?;
        }
        m.serialize_entry("classes", &self.classes)?;
        m.end()
    }
}

impl Verdict {
    fn short(solvable: bool, reason: Reason) -> Self {
        Verdict {
            solvable,
            reason,
            classes: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }
}

/// Center of a star swap graph; the smaller endpoint for `K2`.
pub fn star_center(swap: &SwapGraph) -> Option<Color> {
    let k = swap.k();
    if k < 2 || swap.edges().len() != k - 1 {
        return None;
    }
    (1..=k as Color).find(|&c| swap.degree(c) == k - 1)
}

/// Rename colors so the star center becomes 1.
pub fn recenter(inst: &Instance) -> Result<Instance> {
    let center = star_center(&inst.swap).ok_or(Error::NotStar)?;
    if center == 1 {
        return Ok(inst.clone());
    }
    let map = |c: Color| match c {
        1 => center,
        c if c == center => 1,
        c => c,
    };
    let edges: Vec<(usize, usize)> = inst
        .swap
        .edges()
        .iter()
        .map(|&(a, b)| (map(a) as usize, map(b) as usize))
        .collect();
    let mut swap = SwapGraph::new(inst.k(), edges)?;
    if let Some(labels) = inst.swap.labels() {
        let mut l = labels.to_vec();
        l.swap(0, center as usize - 1);
        swap = swap.with_labels(l)?;
    }
    let recolor = |config: &Configuration| Configuration::new(config.colors().iter().map(|&c| map(c)).collect());
    Instance::new(
        inst.name.clone(),
        inst.base.clone(),
        swap,
        recolor(&inst.initial),
        recolor(&inst.target),
    )
}

/// Every base component holds as many blanks initially as finally.
pub fn blank_counts_align(inst: &Instance) -> bool {
    components(&inst.base).iter().all(|comp| {
        let count = |config: &Configuration| comp.iter().filter(|&&v| config.color(v) == 1).count();
        count(&inst.initial) == count(&inst.target)
    })
}

/// Move blanks onto their final vertices. Returns the instance started from
/// the moved configuration, and the swaps that produced it.
///
/// Requires a star centered at 1 and [`blank_counts_align`].
pub fn normalize_blanks(inst: &Instance) -> Result<(Instance, SwapSequence)> {
    if inst.k() >= 2 && star_center(&inst.swap) != Some(1) {
        return Err(Error::Precondition("swap graph must be a star centered at 1".into()));
    }
    if !blank_counts_align(inst) {
        return Err(Error::Precondition(
            "blank counts differ within a base component".into(),
        ));
    }
    let n = inst.n();
    let want: Vec<bool> = (0..n).map(|v| inst.target.color(v) == 1).collect();
    let mut config = inst.initial.clone();
    let mut prefix = SwapSequence::default();
    while let Some(t) = (0..n).find(|&v| want[v] && config.color(v) != 1) {
        let mut path = bfs_path_to(&inst.base, t, |v| config.color(v) == 1 && !want[v])
            .expect("a surplus blank shares the component");
        path.reverse();
        // Shift each run between consecutive blanks, nearest the target first,
        // so blanks already on the path end where they started.
        let blanks: Vec<usize> = (0..path.len()).filter(|&i| config.color(path[i]) == 1).collect();
        for j in (0..blanks.len()).rev() {
            let end = blanks.get(j + 1).copied().unwrap_or(path.len() - 1);
            for i in blanks[j]..end {
                config.swap_in_place(path[i], path[i + 1]);
                prefix.push(path[i], path[i + 1]);
            }
        }
    }
    Ok((inst.with_initial(config)?, prefix))
}

fn check_star_components(inst: &Instance) -> Result<()> {
    for comp in swap_components(&inst.swap, &used_colors(inst)) {
        if comp.len() < 2 {
            continue;
        }
        let inner = |c: Color| inst.swap.neighbors(c).filter(|d| comp.contains(d)).count();
        let edges: usize = comp.iter().map(|&c| inner(c)).sum::<usize>() / 2;
        if edges != comp.len() - 1 || !comp.iter().any(|&c| inner(c) == comp.len() - 1) {
            return Err(Error::NotStar);
        }
    }
    Ok(())
}

/// Decide solvability. Colors no token uses are ignored, so the swap graph
/// only needs to be a star (or a disjoint union of stars and isolated
/// colors) on the colors in play.
pub fn decide(inst: &Instance, oracle_budget: usize) -> Result<Verdict> {
    check_star_components(inst)?;
    if !inst.counts_match() {
        return Ok(Verdict::short(false, Reason::CountsMismatch));
    }
    let decomposition = decompose_by_swap_components(inst)?;
    if decomposition.forced_unsolvable() {
        return Ok(Verdict::short(false, Reason::FrozenMismatch));
    }
    let mut classes = Vec::new();
    for part in &decomposition.parts {
        if part.instance.k() < 2 {
            continue;
        }
        let centered = recenter(&part.instance)?;
        if !blank_counts_align(&centered) {
            return Ok(Verdict::short(false, Reason::CountsMismatch));
        }
        let (normalized, _) = normalize_blanks(&centered)?;
        for sub in build_sub_instances(&normalized)? {
            let (solvable, reason) = decide_transitive(&sub, oracle_budget)?;
            let lift = |vs: &[Vertex]| vs.iter().map(|&v| part.vertices[v]).collect::<Vec<_>>();
            classes.push(ClassVerdict {
                members: lift(&sub.class.members),
                region: lift(&sub.class.region),
                reason,
                solvable,
            });
        }
    }
    classes.sort_by_key(|c| c.members[0]);
    let failing: Vec<usize> = (0..classes.len()).filter(|&i| !classes[i].solvable).collect();
    Ok(if failing.is_empty() {
        Verdict {
            solvable: true,
            reason: Reason::NoObstruction,
            classes,
        }
    } else {
        Verdict {
            solvable: false,
            reason: Reason::ClassFailure(failing),
            classes,
        }
    })
}
