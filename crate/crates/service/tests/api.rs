use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use futures::StreamExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use ramsey_core::engine::{Status, Transcript};
use ramsey_core::solver::audit_blocking_painter;
use ramsey_service::{router, Config, Store};

fn app_with(config: Config) -> (Router, Arc<Store>) {
    let store = Arc::new(Store::new(config));
    (router(Arc::clone(&store)), store)
}

fn app() -> Router {
    app_with(Config::default()).0
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX)
        .await
        .unwrap();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, l: usize, role: &str, opponent: &str) -> (StatusCode, Value) {
    call(
        app,
        "POST",
        "/sessions",
        Some(json!({"l": l, "role": role, "opponent": opponent})),
    )
    .await
}

fn id(v: &Value) -> String {
    v["id"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn machine_builder_proposes_first() {
    let app = app();
    let (status, d) = create(&app, 7, "painter", "constructive").await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(d["budget"], 10);
    assert_eq!(d["status"], "ongoing");
    assert_eq!(d["awaiting"], "painter");
    assert_eq!(d["proposal"], json!({"u": 0, "v": 1}));
    let mut keys: Vec<_> = d.as_object().unwrap().keys().cloned().collect();
    keys.sort();
    assert_eq!(
        keys,
        [
            "awaiting", "board", "budget", "closed", "id", "l", "moves", "opponent", "proposal",
            "role", "rounds", "status"
        ]
    );
}

#[tokio::test]
async fn human_builder_waits() {
    let app = app();
    let (status, d) = create(&app, 2, "builder", "blocking").await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(d["budget"], 3);
    assert_eq!(d["proposal"], Value::Null);
    assert_eq!(d["awaiting"], "builder");
}

#[tokio::test]
async fn bad_parameters() {
    let app = app();
    let (status, body) = create(&app, 1, "painter", "constructive").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "bad_params");
    let (status, _) = create(&app, 7, "painter", "blocking").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = create(&app, 7, "builder", "constructive").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = create(&app, 7, "builder", "nobody").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = create(&app, 1000, "builder", "blocking").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn all_blue_painter_loses_within_budget() {
    let app = app();
    let (_, d) = create(&app, 7, "painter", "constructive").await;
    let sid = id(&d);
    let mut last = d;
    while !last["closed"].as_bool().unwrap() {
        let (status, d) = call(
            &app,
            "POST",
            &format!("/sessions/{sid}/move"),
            Some(json!({"color": "B"})),
        )
        .await;
        assert_eq!(status, StatusCode::OK, "{d}");
        last = d;
    }
    assert_eq!(last["status"], "blue_hit");
    assert!(last["rounds"].as_u64().unwrap() <= 10);
    assert_eq!(last["awaiting"], Value::Null);

    let (status, t) = call(&app, "GET", &format!("/sessions/{sid}/transcript"), None).await;
    assert_eq!(status, StatusCode::OK);
    let t: Transcript = serde_json::from_value(t).unwrap();
    assert_eq!(t.status, Status::BlueHit);
    t.replay().unwrap();

    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{sid}/move"),
        Some(json!({"color": "B"})),
    )
    .await;
    assert_eq!(status, StatusCode::GONE);
    assert_eq!(body["error"], "session_closed");
}

#[tokio::test]
async fn red_star_ends_order_four() {
    let app = app();
    let (_, d) = create(&app, 4, "painter", "constructive").await;
    let sid = id(&d);
    let mut last = d;
    for _ in 0..3 {
        last = call(
            &app,
            "POST",
            &format!("/sessions/{sid}/move"),
            Some(json!({"color": "R"})),
        )
        .await
        .1;
    }
    assert_eq!(last["status"], "red_hit");
    assert_eq!(last["rounds"], 3);
}

#[tokio::test]
async fn duplicate_edge_is_rejected() {
    let app = app();
    let (_, d) = create(&app, 5, "builder", "blocking").await;
    let sid = id(&d);
    let uri = format!("/sessions/{sid}/move");
    let (status, first) = call(&app, "POST", &uri, Some(json!({"u": "new", "v": "new"}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(first["moves"][0], json!({"r": 1, "u": 0, "v": 1, "c": "R"}));
    let (status, body) = call(&app, "POST", &uri, Some(json!({"u": 1, "v": 0}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "illegal_edge");
    let (_, now) = call(&app, "GET", &format!("/sessions/{sid}"), None).await;
    assert_eq!(now, first);
    // skipping ids is illegal too
    let (status, _) = call(&app, "POST", &uri, Some(json!({"u": 0, "v": 5}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn wrong_action_for_role() {
    let app = app();
    let (_, d) = create(&app, 5, "builder", "random(3)").await;
    assert_eq!(d["opponent"], "random(3)");
    let (status, body) = call(
        &app,
        "POST",
        &format!("/sessions/{}/move", id(&d)),
        Some(json!({"color": "R"})),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"], "not_your_turn");
    let (status, _) = call(
        &app,
        "POST",
        &format!("/sessions/{}/move", id(&d)),
        Some(json!({"x": 1})),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn unknown_session() {
    let app = app();
    let (status, body) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"], "not_found");
}

#[tokio::test]
async fn blocking_games_audit_cleanly() {
    let app = app();
    let l = 6;
    let (_, d) = create(&app, l, "builder", "blocking").await;
    let sid = id(&d);
    let uri = format!("/sessions/{sid}/move");
    // a star, then a path through fresh vertices, until the budget runs out
    let script = [
        json!({"u": "new", "v": "new"}),
        json!({"u": 0, "v": "new"}),
        json!({"u": 0, "v": "new"}),
        json!({"u": 1, "v": 2}),
        json!({"u": 3, "v": "new"}),
        json!({"u": 4, "v": "new"}),
        json!({"u": 5, "v": "new"}),
        json!({"u": 6, "v": "new"}),
        json!({"u": 7, "v": "new"}),
    ];
    let mut last = d;
    for step in script {
        if last["closed"].as_bool().unwrap() {
            break;
        }
        let (status, d) = call(&app, "POST", &uri, Some(step)).await;
        assert_eq!(status, StatusCode::OK, "{d}");
        last = d;
    }
    assert!(last["closed"].as_bool().unwrap());
    let (_, t) = call(&app, "GET", &format!("/sessions/{sid}/transcript"), None).await;
    let t: Transcript = serde_json::from_value(t).unwrap();
    t.replay().unwrap();
    audit_blocking_painter(&t.moves, l).unwrap();
}

#[tokio::test]
async fn closed_sessions_survive_eviction_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let (app, store) = app_with(Config {
        data_dir: Some(dir.path().to_path_buf()),
        idle_timeout: Duration::from_secs(5),
        ..Config::default()
    });
    let (_, d) = create(&app, 2, "painter", "constructive").await;
    let sid = id(&d);
    let (_, d) = call(
        &app,
        "POST",
        &format!("/sessions/{sid}/move"),
        Some(json!({"color": "B"})),
    )
    .await;
    assert_eq!(d["status"], "blue_hit");
    assert!(dir.path().join(format!("{sid}.json")).exists());

    let (_, other) = create(&app, 9, "builder", "blocking").await;
    assert_eq!(store.len(), 2);
    assert_eq!(store.evict_idle(Instant::now()), 0);
    assert_eq!(store.evict_idle(Instant::now() + Duration::from_secs(6)), 2);
    assert!(store.is_empty());

    let (status, _) = call(&app, "GET", &format!("/sessions/{sid}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, t) = call(&app, "GET", &format!("/sessions/{sid}/transcript"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(t["status"], "blue_hit");
    // an evicted game in progress is kept as well
    let (status, t) = call(
        &app,
        "GET",
        &format!("/sessions/{}/transcript", id(&other)),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(t["rounds"], 0);
}

#[tokio::test]
async fn events_stream_starts_with_snapshot() {
    let (app, store) = app_with(Config::default());
    let (_, d) = create(&app, 7, "painter", "constructive").await;
    let sid = id(&d);
    let resp = app
        .clone()
        .oneshot(
            Request::builder()
                .uri(format!("/sessions/{sid}/events"))
                .body(Body::empty())
                .unwrap(),
        )
        .await
        .unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    assert!(resp.headers()["content-type"]
        .to_str()
        .unwrap()
        .starts_with("text/event-stream"));
    let mut body = resp.into_body().into_data_stream();
    let first = String::from_utf8(body.next().await.unwrap().unwrap().to_vec()).unwrap();
    assert!(first.starts_with("event: state\n"), "{first}");
    assert!(first.contains(&sid));

    store
        .submit(
            &sid,
            &serde_json::from_value(json!({"color": "R"})).unwrap(),
        )
        .unwrap();
    let next = String::from_utf8(body.next().await.unwrap().unwrap().to_vec()).unwrap();
    assert!(next.contains("\"rounds\":1"), "{next}");
}
