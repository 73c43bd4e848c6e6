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

//! Graphviz export. Vertices are labeled `v/color` with the initial colors.

use std::fmt::Write;

use crate::instance::Instance;
use crate::reduction::{GadgetKind, GadgetLayout};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One undirected DOT graph. With a layout, each gadget becomes a cluster.
pub fn export_dot(inst: &Instance, layout: Option<&GadgetLayout>) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(&inst.name)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    let node = |out: &mut String, v: usize, indent: &str| {
        writeln!(out, "{indent}{v} [label=\"{v}/{}\"];", inst.initial.color(v)).unwrap();
    };
    let mut placed = vec![false; inst.n()];
    if let Some(layout) = layout {
        for (i, g) in layout.gadgets.iter().enumerate() {
            let kind = match g.kind {
                GadgetKind::Edge => "edge",
                GadgetKind::And => "AND",
                GadgetKind::Or => "OR",
            };
            writeln!(out, "  subgraph cluster_{i} {{").unwrap();
            writeln!(out, "    label=\"{kind} {}\";", g.ncl_ref).unwrap();
            for &v in &g.vertices {
                node(&mut out, v, "    ");
                placed[v] = true;
            }
            writeln!(out, "  }}").unwrap();
        }
    }
    for v in (0..inst.n()).filter(|&v| !placed[v]) {
        node(&mut out, v, "  ");
    }
    for &(u, v) in inst.base.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{BaseGraph, SwapGraph};

    #[test]
    fn k2() {
        let inst = Instance::new(
            "k2",
            BaseGraph::new(2, [(0, 1)]).unwrap(),
            SwapGraph::path(2).unwrap(),
            vec![1, 2].into(),
            vec![2, 1].into(),
        )
        .unwrap();
        let dot = export_dot(&inst, None);
        assert_eq!(
            dot,
            "graph \"k2\" {\n  node [shape=circle];\n  0 [label=\"0/1\"];\n  1 [label=\"1/2\"];\n  0 -- 1;\n}\n"
        );
    }

    #[test]
    fn reduction_clusters() {
        let ncl = crate::ncl::fixtures::instance("or-or").unwrap();
        let out = crate::reduction::reduce(&ncl, false).unwrap();
        let dot = export_dot(&out.instance, Some(&out.layout));
        assert_eq!(dot.matches("subgraph cluster_").count(), 5);
        assert_eq!(dot, export_dot(&out.instance, Some(&out.layout)));
    }
}
