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

use thiserror::Error;

use crate::instance::{Color, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A document or constructor argument broke a structural invariant.
    /// `field` is the JSON path of the offending value.
    #[error("{field}: {reason}")]
    Invalid { field: String, reason: String },

    #[error("malformed document: {0}")]
    Json(String),

    #[error("({u}, {v}) is not an edge of the base graph")]
    NotAnEdge { u: Vertex, v: Vertex },

    #[error("illegal swap on ({u}, {v}): colors {cu} and {cv} are not adjacent in the swap graph")]
    IllegalSwap { u: Vertex, v: Vertex, cu: Color, cv: Color },

    #[error("swap graph is not a star")]
    NotStar,

    #[error("color {0} is carried by more than one token")]
    RepeatedColor(Color),

    #[error("blank sets of the two configurations differ")]
    BlankSetsDiffer,

    #[error("state budget exhausted after {explored} states")]
    LimitExceeded { explored: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
