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

use serde::Serialize;

use crate::graph;
use crate::instance::Instance;

/// Findings about an instance; never an error, always a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub base_connected: bool,
    pub swap_simple: bool,
    pub counts_match: bool,
    pub colors_in_range: bool,
    /// Every swap-graph color is carried by at least one token. Informational:
    /// unused colors are pruned before solving.
    pub colors_present: bool,
    pub findings: Vec<String>,
}

impl ValidationReport {
    /// Structural checks that make the decision problem well posed.
    /// A counts mismatch is not a failure here: it is a plain no-instance.
    pub fn is_well_formed(&self) -> bool {
        self.base_connected && self.swap_simple && self.colors_in_range
    }

    pub fn passes(&self) -> bool {
        self.is_well_formed() && self.counts_match
    }
}

pub fn validate(inst: &Instance) -> ValidationReport {
    let mut findings = Vec::new();
    let k = inst.k();

    let components = graph::components(&inst.base);
    let base_connected = components.len() <= 1;
    if !base_connected {
        findings.push(format!("base graph has {} connected components", components.len()));
    }

    // Swap graphs are simple by construction; kept so reports stay uniform.
    let swap_simple =
        inst.swap.edges().iter().all(|&(a, b)| a < b) && inst.swap.edges().windows(2).all(|w| w[0] < w[1]);

    let in_range = |c: u8| c >= 1 && c as usize <= k;
    let colors_in_range = inst
        .initial
        .colors()
        .iter()
        .chain(inst.target.colors())
        .all(|&c| in_range(c));
    if !colors_in_range {
        findings.push(format!("some color lies outside 1..={k}"));
    }

    let (a, b) = (inst.initial.counts(k), inst.target.counts(k));
    let counts_match = a == b;
    for c in 1..=k {
        if a[c] != b[c] {
            findings.push(format!("color {c}: {} tokens initially, {} finally", a[c], b[c]));
        }
    }

    let unused: Vec<usize> = (1..=k).filter(|&c| a[c] == 0 && b[c] == 0).collect();
    let colors_present = unused.is_empty();
    if !colors_present {
        findings.push(format!("unused colors {unused:?}"));
    }

    ValidationReport {
        base_connected,
        swap_simple,
        counts_match,
        colors_in_range,
        colors_present,
        findings,
    }
}
