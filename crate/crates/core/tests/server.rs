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

#![cfg(feature = "cli")]

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use ccts_core::server::{router, AppState, MAX_STATES_CAP};
use ccts_core::{generate, serialize_instance};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

const K2: &str = r#"{"name": "k2",
    "base_graph": {"n": 2, "edges": [[0, 1]]},
    "swap_graph": {"k": 2, "edges": [[1, 2]]},
    "initial": [1, 2], "final": [2, 1]}"#;

fn app(max_states: usize) -> Router {
    let mut state = AppState::new(max_states);
    state.insert("k2", K2.to_string()).unwrap();
    state.insert("teaser", serialize_instance(&generate::teaser())).unwrap();
    state
        .insert("grid", serialize_instance(&generate::grid(3, 3, 1, 4).unwrap()))
        .unwrap();
    router(Arc::new(state), None)
}

async fn call(app: Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap())
}

#[tokio::test]
async fn lists_instances() {
    let (status, body) = call(app(1000), "GET", "/api/instances", None).await;
    assert_eq!(status, StatusCode::OK);
    let ids: Vec<&str> = body
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["grid", "k2", "teaser"]);
    assert_eq!(body[1]["n"], 2);
    assert_eq!(body[1]["k"], 2);
}

#[tokio::test]
async fn fetches_raw_document() {
    let (status, body) = call(app(1000), "GET", "/api/instances/k2", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, serde_json::from_str::<Value>(K2).unwrap());
    let (status, body) = call(app(1000), "GET", "/api/instances/missing", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body["error"].is_string());
}

#[tokio::test]
async fn solves_by_id_and_inline() {
    let (status, body) = call(app(1000), "POST", "/api/solve", Some(json!({"id": "k2"}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "solvable");
    assert_eq!(body["witness"], json!([[0, 1]]));

    let mut doc: Value = serde_json::from_str(K2).unwrap();
    doc["final"] = json!([1, 2]);
    let (status, body) = call(app(1000), "POST", "/api/solve", Some(json!({"instance": doc}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "solvable");
    assert_eq!(body["witness"], json!([]));
}

#[tokio::test]
async fn solve_errors() {
    let (status, _) = call(app(1000), "POST", "/api/solve", Some(json!({"id": "nope"}))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(
        app(1000),
        "POST",
        "/api/solve",
        Some(json!({"instance": {"name": "x"}})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = call(app(1000), "POST", "/api/solve", Some(json!({}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = call(
        app(1000),
        "POST",
        "/api/solve",
        Some(json!({"id": "k2", "max_states": 1001})),
    )
    .await;
    assert_eq!(status, StatusCode::TOO_MANY_REQUESTS);
    let (status, body) = call(
        app(1000),
        "POST",
        "/api/solve",
        Some(json!({"id": "grid", "max_states": 5})),
    )
    .await;
    assert_eq!(status, StatusCode::TOO_MANY_REQUESTS);
    assert_eq!(body["status"], "limit_exceeded");
}

#[tokio::test]
async fn decides_star_instances() {
    let (status, body) = call(app(1000), "POST", "/api/decide", Some(json!({"id": "k2"}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["solvable"], true);
    assert!(body["classes"].is_array());
    // the teaser swap graph is a path on four colors
    let (status, body) = call(app(1000), "POST", "/api/decide", Some(json!({"id": "teaser"}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].as_str().unwrap().contains("star"), "{body}");
}

#[test]
fn cap_is_clamped() {
    assert_eq!(AppState::new(usize::MAX).max_states(), MAX_STATES_CAP);
    assert_eq!(AppState::new(10).max_states(), 10);
}

#[tokio::test]
async fn serves_static_files() {
    let dir = tempfile::TempDir::new().unwrap();
    std::fs::write(dir.path().join("index.json"), "{\"ui\": true}").unwrap();
    let app = router(Arc::new(AppState::new(10)), Some(dir.path()));
    let (status, body) = call(app, "GET", "/index.json", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({"ui": true}));
}

#[test]
fn load_dir_skips_bad_documents() {
    let dir = tempfile::TempDir::new().unwrap();
    std::fs::write(dir.path().join("k2.json"), K2).unwrap();
    std::fs::write(dir.path().join("broken.json"), "{}").unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let mut state = AppState::new(100);
    let skipped = state.load_dir(dir.path()).unwrap();
    assert_eq!(state.len(), 1);
    assert_eq!(skipped.len(), 1);
    assert!(skipped[0].0.ends_with("broken.json"));
}
