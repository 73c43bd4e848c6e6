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

//! HTTP service for the browser playground.
//!
//! Instances are read once at startup from a directory of `*.json` files;
//! the id of an instance is its file stem. Requests never touch the files
//! again.

use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use axum::extract::{Path as UrlPath, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use crate::error::Error;
use crate::instance::Instance;
use crate::json::{instance_from_value, parse_instance};
use crate::oracle::{solve_bfs, SearchOutcome};
use crate::star;

/// Hard ceiling on the per-request state budget.
pub const MAX_STATES_CAP: usize = 2_000_000;

#[derive(Debug)]
struct Stored {
    instance: Instance,
    raw: String,
}

#[derive(Debug)]
pub struct AppState {
    instances: BTreeMap<String, Stored>,
    max_states: usize,
}

impl AppState {
    /// `max_states` is clamped to [`MAX_STATES_CAP`].
    pub fn new(max_states: usize) -> Self {
        AppState {
            instances: BTreeMap::new(),
            max_states: max_states.clamp(1, MAX_STATES_CAP),
        }
    }

    pub fn insert(&mut self, id: impl Into<String>, raw: String) -> crate::Result<()> {
        let instance = parse_instance(&raw)?;
        self.instances.insert(id.into(), Stored { instance, raw });
        Ok(())
    }

    /// Load every `*.json` file in `dir`. Files that fail to parse are
    /// skipped and reported.
    pub fn load_dir(&mut self, dir: &Path) -> std::io::Result<Vec<(PathBuf, Error)>> {
        let mut skipped = Vec::new();
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let Some(id) = path.file_stem().and_then(|s| s.to_str()).map(str::to_string) else {
                continue;
            };
            let raw = std::fs::read_to_string(&path)?;
            if let Err(e) = self.insert(id, raw) {
                skipped.push((path, e));
            }
        }
        Ok(skipped)
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn max_states(&self) -> usize {
        self.max_states
    }
}

fn error(status: StatusCode, message: impl Into<String>) -> Response {
    (status, Json(json!({ "error": message.into() }))).into_response()
}

fn raw_json(text: String) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], text).into_response()
}

async fn list(State(state): State<Arc<AppState>>) -> Json<Value> {
    let items: Vec<Value> = state
        .instances
        .iter()
        .map(|(id, s)| {
            json!({
                "id": id,
                "name": s.instance.name,
                "n": s.instance.n(),
                "k": s.instance.k(),
            })
        })
        .collect();
    Json(Value::Array(items))
}

async fn fetch(State(state): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> Response {
    match state.instances.get(&id) {
        Some(s) => raw_json(s.raw.clone()),
        None => error(StatusCode::NOT_FOUND, format!("no instance {id:?}")),
    }
}

#[derive(Deserialize)]
struct SolveRequest {
    id: Option<String>,
    instance: Option<Value>,
    max_states: Option<usize>,
}

fn resolve(state: &AppState, id: Option<String>, inline: Option<Value>) -> Result<Instance, Box<Response>> {
    match (id, inline) {
        (_, Some(v)) => {
            instance_from_value(v).map_err(|e| Box::new(error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string())))
        }
        (Some(id), None) => state
            .instances
            .get(&id)
            .map(|s| s.instance.clone())
            .ok_or_else(|| Box::new(error(StatusCode::NOT_FOUND, format!("no instance {id:?}")))),
        (None, None) => Err(Box::new(error(
            StatusCode::UNPROCESSABLE_ENTITY,
            "give an id or an inline instance",
        ))),
    }
}

async fn solve(State(state): State<Arc<AppState>>, Json(req): Json<SolveRequest>) -> Response {
    let budget = req.max_states.unwrap_or(state.max_states);
    if budget > state.max_states {
        return error(
            StatusCode::TOO_MANY_REQUESTS,
            format!("max_states {budget} exceeds the server cap {}", state.max_states),
        );
    }
    let inst = match resolve(&state, req.id, req.instance) {
        Ok(i) => i,
        Err(r) => return *r,
    };
    let out = tokio::task::spawn_blocking(move || solve_bfs(&inst, budget))
        .await
        .expect("solver task does not panic");
    let status = match out {
        SearchOutcome::LimitExceeded { .. } => StatusCode::TOO_MANY_REQUESTS,
        _ => StatusCode::OK,
    };
    (status, raw_json(out.to_json())).into_response()
}

#[derive(Deserialize)]
struct DecideRequest {
    id: Option<String>,
    instance: Option<Value>,
}

async fn decide(State(state): State<Arc<AppState>>, Json(req): Json<DecideRequest>) -> Response {
    let inst = match resolve(&state, req.id, req.instance) {
        Ok(i) => i,
        Err(r) => return *r,
    };
    let budget = state.max_states;
    let verdict = tokio::task::spawn_blocking(move || star::decide(&inst, budget))
        .await
        .expect("decider task does not panic");
    match verdict {
        Ok(v) => raw_json(v.to_json()),
        Err(e @ Error::LimitExceeded { .. }) => error(StatusCode::TOO_MANY_REQUESTS, e.to_string()),
        Err(e) => error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()),
    }
}

/// API routes, plus static files from `static_dir` for everything else.
pub fn router(state: Arc<AppState>, static_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/instances", get(list))
        .route("/api/instances/{id}", get(fetch))
        .route("/api/solve", post(solve))
        .route("/api/decide", post(decide))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(state: AppState, static_dir: Option<PathBuf>, port: u16) -> std::io::Result<()> {
    let app = router(Arc::new(state), static_dir.as_deref());
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{addr}");
    axum::serve(listener, app).await
}
