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

//! Domain model: base graphs, swap graphs, configurations and instances.
//!
//! Vertices are 0-based, colors are 1-based. Every type validates its
//! invariants on construction and is immutable afterwards.

use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u8;

/// Largest supported color; one byte per vertex in canonical keys.
pub const MAX_COLORS: usize = u8::MAX as usize;

/// Unordered vertex pair, always stored as `(min, max)`.
pub type Edge = (Vertex, Vertex);

pub(crate) fn ordered(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Undirected simple graph hosting the tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
}

impl BaseGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            let field = format!("base_graph.edges[{i}]");
            if u >= n || v >= n {
                return Err(Error::invalid(
                    field,
                    format!("vertex out of range ({u}, {v}) with n = {n}"),
                ));
            }
            if u == v {
                return Err(Error::invalid(field, format!("self-loop on vertex {u}")));
            }
            list.push(ordered(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(
                "base_graph.edges",
                format!("duplicate edge ({}, {})", w[0].0, w[0].1),
            ));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        Ok(BaseGraph {
            n,
            edges: list,
            adj,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::invalid(
                "base_graph.labels",
                format!("expected {} labels, found {}", self.n, labels.len()),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges sorted lexicographically, each as `(min, max)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Subgraph induced by `vertices` (which must be sorted and distinct),
    /// renumbered so that `vertices[i]` becomes vertex `i`.
    pub fn induced(&self, vertices: &[Vertex]) -> BaseGraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        let mut g = BaseGraph::new(vertices.len(), edges).expect("induced subgraph of a simple graph");
        if let Some(labels) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        g
    }
}

/// Graph on colors `1..=k`; an edge means the two colors may swap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapGraph {
    k: usize,
    edges: Vec<(Color, Color)>,
    allowed: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl SwapGraph {
    pub fn new<I>(k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if k > MAX_COLORS {
            return Err(Error::invalid(
                "swap_graph.k",
                format!("at most {MAX_COLORS} colors are supported, got {k}"),
            ));
        }
        let mut list = Vec::new();
        for (i, (a, b)) in edges.into_iter().enumerate() {
            let field = format!("swap_graph.edges[{i}]");
            if a == 0 || b == 0 || a > k || b > k {
                return Err(Error::invalid(
                    field,
                    format!("color out of range ({a}, {b}) with k = {k}"),
                ));
            }
            if a == b {
                return Err(Error::invalid(field, format!("self-loop on color {a}")));
            }
            let (a, b) = ordered(a, b);
            list.push((a as Color, b as Color));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(
                "swap_graph.edges",
                format!("duplicate edge ({}, {})", w[0].0, w[0].1),
            ));
        }
        let mut allowed = vec![false; (k + 1) * (k + 1)];
        for &(a, b) in &list {
            allowed[a as usize * (k + 1) + b as usize] = true;
            allowed[b as usize * (k + 1) + a as usize] = true;
        }
        Ok(SwapGraph {
            k,
            edges: list,
            allowed,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.k {
            return Err(Error::invalid(
                "swap_graph.labels",
                format!("expected {} labels, found {}", self.k, labels.len()),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Path `1 - 2 - ... - k`.
    pub fn path(k: usize) -> Result<Self> {
        SwapGraph::new(k, (1..k).map(|c| (c, c + 1)))
    }

    /// Star on `1..=k` centered at `center`.
    pub fn star(k: usize, center: usize) -> Result<Self> {
        SwapGraph::new(k, (1..=k).filter(|&c| c != center).map(|c| (center, c)))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[(Color, Color)] {
        &self.edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn allows(&self, a: Color, b: Color) -> bool {
        self.allowed[a as usize * (self.k + 1) + b as usize]
    }

    pub fn neighbors(&self, c: Color) -> impl Iterator<Item = Color> + '_ {
        (1..=self.k as Color).filter(move |&d| self.allows(c, d))
    }

    pub fn degree(&self, c: Color) -> usize {
        self.neighbors(c).count()
    }

    /// Row-major `(k + 1) x (k + 1)` adjacency table, indexed by color.
    pub(crate) fn table(&self) -> &[bool] {
        &self.allowed
    }
}

/// One color per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration(Vec<Color>);

impl Configuration {
    pub fn new(colors: Vec<Color>) -> Self {
        Configuration(colors)
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn color(&self, v: Vertex) -> Color {
        self.0[v]
    }

    /// Multiplicity of every color, indexed `0..=k` (index 0 unused).
    pub fn counts(&self, k: usize) -> Vec<usize> {
        let mut counts = vec![0; k + 1];
        for &c in &self.0 {
            counts[c as usize] += 1;
        }
        counts
    }

    /// Vertices carrying `color`, ascending.
    pub fn vertices_with(&self, color: Color) -> Vec<Vertex> {
        (0..self.0.len()).filter(|&v| self.0[v] == color).collect()
    }

    pub(crate) fn swap_in_place(&mut self, u: Vertex, v: Vertex) {
        self.0.swap(u, v);
    }

    pub fn into_inner(self) -> Vec<Color> {
        self.0
    }
}

impl From<Vec<Color>> for Configuration {
    fn from(colors: Vec<Color>) -> Self {
        Configuration(colors)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Ordered list of swaps; each entry is a base-graph edge.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwapSequence(Vec<Edge>);

impl SwapSequence {
    pub fn new(swaps: Vec<Edge>) -> Self {
        SwapSequence(swaps.into_iter().map(|(u, v)| ordered(u, v)).collect())
    }

    pub fn swaps(&self) -> &[Edge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, u: Vertex, v: Vertex) {
        self.0.push(ordered(u, v));
    }

    pub fn extend(&mut self, other: &SwapSequence) {
        self.0.extend_from_slice(&other.0);
    }

    /// The same swaps in reverse order; undoes `self`.
    pub fn reversed(&self) -> SwapSequence {
        SwapSequence(self.0.iter().rev().copied().collect())
    }
}

impl FromIterator<Edge> for SwapSequence {
    fn from_iter<T: IntoIterator<Item = Edge>>(iter: T) -> Self {
        SwapSequence::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub base: BaseGraph,
    pub swap: SwapGraph,
    pub initial: Configuration,
    pub target: Configuration,
}

impl Instance {
    pub fn new(
        name: impl Into<String>,
        base: BaseGraph,
        swap: SwapGraph,
        initial: Configuration,
        target: Configuration,
    ) -> Result<Self> {
        for (field, config) in [("initial", &initial), ("final", &target)] {
            if config.len() != base.n() {
                return Err(Error::invalid(
                    field,
                    format!("expected {} colors, found {}", base.n(), config.len()),
                ));
            }
            if let Some(v) = (0..config.len()).find(|&v| config.color(v) == 0 || config.color(v) as usize > swap.k()) {
                return Err(Error::invalid(
                    format!("{field}[{v}]"),
                    format!("color {} out of range 1..={}", config.color(v), swap.k()),
                ));
            }
        }
        Ok(Instance {
            name: name.into(),
            base,
            swap,
            initial,
            target,
        })
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn k(&self) -> usize {
        self.swap.k()
    }

    /// The instance with initial and final exchanged.
    pub fn reversed(&self) -> Instance {
        Instance {
            name: self.name.clone(),
            base: self.base.clone(),
            swap: self.swap.clone(),
            initial: self.target.clone(),
            target: self.initial.clone(),
        }
    }

    /// Same graphs and target, different starting configuration.
    pub fn with_initial(&self, initial: Configuration) -> Result<Instance> {
        Instance::new(
            self.name.clone(),
            self.base.clone(),
            self.swap.clone(),
            initial,
            self.target.clone(),
        )
    }

    pub fn counts_match(&self) -> bool {
        self.initial.counts(self.k()) == self.target.counts(self.k())
    }

    /// Base edges whose endpoint colors are adjacent in the swap graph,
    /// in lexicographic order.
    pub fn legal_swaps(&self, config: &Configuration) -> Vec<Edge> {
        self.base
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.swap.allows(config.color(u), config.color(v)))
            .collect()
    }

    pub fn is_legal(&self, config: &Configuration, u: Vertex, v: Vertex) -> bool {
        self.base.has_edge(u, v) && self.swap.allows(config.color(u), config.color(v))
    }

    pub fn apply_swap(&self, config: &Configuration, (u, v): Edge) -> Result<Configuration> {
        if !self.base.has_edge(u, v) {
            return Err(Error::NotAnEdge { u, v });
        }
        let (cu, cv) = (config.color(u), config.color(v));
        if !self.swap.allows(cu, cv) {
            return Err(Error::IllegalSwap { u, v, cu, cv });
        }
        let mut next = config.clone();
        next.swap_in_place(u, v);
        Ok(next)
    }

    /// Apply every swap of `seq` in order starting from `from`.
    pub fn replay(&self, from: &Configuration, seq: &SwapSequence) -> Result<Configuration> {
        let mut config = from.clone();
        for &(u, v) in seq.swaps() {
            if !self.is_legal(&config, u, v) {
                if !self.base.has_edge(u, v) {
                    return Err(Error::NotAnEdge { u, v });
                }
                return Err(Error::IllegalSwap {
                    u,
                    v,
                    cu: config.color(u),
                    cv: config.color(v),
                });
            }
            config.swap_in_place(u, v);
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Instance {
        Instance::new(
            "k2",
            BaseGraph::new(2, [(0, 1)]).unwrap(),
            SwapGraph::new(2, [(1, 2)]).unwrap(),
            vec![1, 2].into(),
            vec![2, 1].into(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_out_of_range_and_duplicates() {
        let err = BaseGraph::new(2, [(0, 5)]).unwrap_err();
        assert!(err.to_string().contains("vertex out of range"), "{err}");
        assert!(BaseGraph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(BaseGraph::new(3, [(1, 1)]).is_err());
        assert!(SwapGraph::new(3, [(1, 4)]).is_err());
        assert!(SwapGraph::new(3, [(0, 1)]).is_err());
    }

    #[test]
    fn legal_swaps_follow_swap_graph() {
        let inst = k2();
        assert_eq!(inst.legal_swaps(&inst.initial), vec![(0, 1)]);

        let p4 = Instance::new(
            "p4",
            BaseGraph::new(2, [(0, 1)]).unwrap(),
            SwapGraph::path(4).unwrap(),
            vec![2, 4].into(),
            vec![2, 4].into(),
        )
        .unwrap();
        assert!(p4.legal_swaps(&p4.initial).is_empty());
        let err = p4.apply_swap(&p4.initial, (0, 1)).unwrap_err();
        assert_eq!(
            err,
            Error::IllegalSwap {
                u: 0,
                v: 1,
                cu: 2,
                cv: 4
            }
        );

        let path = Instance::new(
            "path",
            BaseGraph::new(3, [(0, 1), (1, 2)]).unwrap(),
            SwapGraph::star(2, 1).unwrap(),
            vec![2, 1, 2].into(),
            vec![2, 1, 2].into(),
        )
        .unwrap();
        assert_eq!(path.legal_swaps(&path.initial), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn same_color_neighbors_never_swap() {
        let inst = Instance::new(
            "same",
            BaseGraph::new(2, [(0, 1)]).unwrap(),
            SwapGraph::new(2, [(1, 2)]).unwrap(),
            vec![2, 2].into(),
            vec![2, 2].into(),
        )
        .unwrap();
        assert!(inst.legal_swaps(&inst.initial).is_empty());
    }

    #[test]
    fn apply_swap_is_an_involution() {
        let inst = k2();
        let once = inst.apply_swap(&inst.initial, (0, 1)).unwrap();
        assert_eq!(once, inst.target);
        assert_eq!(inst.apply_swap(&once, (1, 0)).unwrap(), inst.initial);
    }

    #[test]
    fn configuration_length_is_checked() {
        let err = Instance::new(
            "bad",
            BaseGraph::new(2, [(0, 1)]).unwrap(),
            SwapGraph::new(2, [(1, 2)]).unwrap(),
            vec![1].into(),
            vec![1, 2].into(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Invalid { ref field, .. } if field == "initial"));
    }
}
