use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use capcheck_core::Checker;
use capcheck_service::{router, AppState, Session, SessionStore};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(Arc::new(AppState::new(Checker::default())), None).unwrap()
}

async fn send(app: &Router, method: &str, uri: &str, body: impl Into<Body>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri).body(body.into()).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

async fn send_json(app: &Router, method: &str, uri: &str, body: impl Into<Body>) -> (StatusCode, Value) {
    let (status, bytes) = send(app, method, uri, body).await;
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

/// Annual series rising to a 1981 peak, falling to 1987, then drifting.
fn csv() -> String {
    let ys = [
        5.0, 6.0, 7.0, 8.0, 9.0, 12.0, 18.0, 15.0, 13.0, 11.0, 10.0, 9.5, 8.0, 9.0, 10.0, 9.8, 10.0,
    ];
    let mut s = String::from("date,value\n");
    for (i, y) in ys.iter().enumerate() {
        s.push_str(&format!("{}-01-01,{y}\n", 1975 + i));
    }
    s
}

async fn upload(app: &Router, body: String) -> String {
    let (status, v) = send_json(app, "POST", "/api/series", body).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    v["sessionId"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn upload_reports_granularity_and_default_spec() {
    let app = app();
    let (status, v) = send_json(&app, "POST", "/api/series", csv()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["pointCount"], 17);
    assert_eq!(v["granularity"], "year");
    assert_eq!(v["defaultSpec"]["plotWidth"], 640.0);
    assert_eq!(v["defaultSpec"]["plotHeight"], 480.0);
    assert_eq!(v["defaultSpec"]["xRange"], json!(["1975-01-01", "1991-01-01"]));
    assert_eq!(v["defaultSpec"]["yRange"], json!([5.0, 18.0]));
}

#[tokio::test]
async fn upload_accepts_json() {
    let app = app();
    let body = json!({"name": "x", "points": [{"t": "2020-01-01", "y": 1.0}, {"t": "2020-02-01", "y": 2.0}]});
    let (status, v) = send_json(&app, "POST", "/api/series", body.to_string()).await;
    assert_eq!(status, StatusCode::OK, "{v}");
    assert_eq!(v["pointCount"], 2);
}

#[tokio::test]
async fn upload_errors() {
    let app = app();
    let (status, v) = send_json(&app, "POST", "/api/series", "date,value\n2020-01-01,1\n2020-13-01,2\n").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["row"], 3);
    assert_eq!(v["column"], 1);
    let (status, _) = send_json(&app, "POST", "/api/series", "").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = send_json(&app, "POST", "/api/series", vec![0xffu8, 0xfe]).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn upload_over_point_limit() {
    let app = app();
    let d0 = chrono::NaiveDate::from_ymd_opt(1000, 1, 1).unwrap();
    let mut body = String::with_capacity(20 * 1_000_001);
    for i in 0..1_000_001u64 {
        body.push_str(&format!("{},1\n", d0 + chrono::Days::new(i)));
    }
    let (status, _) = send_json(&app, "POST", "/api/series", body).await;
    assert_eq!(status, StatusCode::PAYLOAD_TOO_LARGE);
}

#[tokio::test]
async fn check_flow() {
    let app = app();
    let id = upload(&app, csv()).await;
    let uri = format!("/api/sessions/{id}/check");

    let basic = json!({"caption": "The chart shows interest rates between 1975 and 1991."});
    let (status, v) = send_json(&app, "POST", &uri, basic.to_string()).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(v["diagnostics"], json!([]));
    assert!(v["features"].as_array().unwrap().iter().all(|f| f["matched"] == false));

    let wrong = json!({"caption": "Rates peaked in 1981. Rates soared from 1980 to 1989."});
    let (status, v) = send_json(&app, "POST", &uri, wrong.to_string()).await;
    assert_eq!(status, StatusCode::OK);
    let kinds: Vec<&str> = v["diagnostics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["factual"]);
    assert_eq!(v["references"][0]["target"], json!({"kind": "point", "index": 6}));

    // Identical inputs give identical bytes.
    let (_, a) = send(&app, "POST", &uri, wrong.to_string()).await;
    let (_, b) = send(&app, "POST", &uri, wrong.to_string()).await;
    assert_eq!(a, b);
}

#[tokio::test]
async fn check_errors() {
    let app = app();
    let (status, _) = send_json(
        &app,
        "POST",
        "/api/sessions/nope/check",
        json!({"caption": ""}).to_string(),
    )
    .await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let id = upload(&app, csv()).await;
    let uri = format!("/api/sessions/{id}/check");
    let (status, _) = send_json(&app, "POST", &uri, "{not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = send_json(&app, "POST", &uri, json!({"spec": null}).to_string()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let bad_spec = json!({"caption": "", "spec": {"plotWidth": -1, "plotHeight": 480, "xRange": ["1975-01-01", "1991-01-01"], "yRange": [0, 1]}});
    let (status, _) = send_json(&app, "POST", &uri, bad_spec.to_string()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let outside = json!({"caption": "x", "spec": {"plotWidth": 640, "plotHeight": 480, "xRange": ["2001-01-01", "2005-01-01"], "yRange": [0, 20]}});
    let (status, v) = send_json(&app, "POST", &uri, outside.to_string()).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY, "{v}");
}

#[tokio::test]
async fn features_follow_the_spec() {
    let app = app();
    let (status, _) = send_json(&app, "GET", "/api/sessions/nope/features", Body::empty()).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let id = upload(&app, csv()).await;
    let uri = format!("/api/sessions/{id}/features");
    let (status, before) = send_json(&app, "GET", &uri, Body::empty()).await;
    assert_eq!(status, StatusCode::OK);
    let n = before["features"].as_array().unwrap().len();
    assert!((1..=5).contains(&n));

    let narrow = json!({"caption": "", "spec": {"plotWidth": 640, "plotHeight": 480, "xRange": ["1983-01-01", "1991-01-01"], "yRange": [8, 13]}});
    let (status, _) = send_json(&app, "POST", &format!("/api/sessions/{id}/check"), narrow.to_string()).await;
    assert_eq!(status, StatusCode::OK);
    let (_, after) = send_json(&app, "GET", &uri, Body::empty()).await;
    assert_ne!(before, after);

    let two = upload(&app, "2020-01-01,1\n2020-01-02,3\n".to_string()).await;
    let (_, v) = send_json(&app, "GET", &format!("/api/sessions/{two}/features"), Body::empty()).await;
    let f = v["features"].as_array().unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0]["kind"], "trend");
}

#[tokio::test]
async fn cors_header_when_configured() {
    let app = router(
        Arc::new(AppState::new(Checker::default())),
        Some("http://localhost:5173"),
    )
    .unwrap();
    let req = Request::builder()
        .method("GET")
        .uri("/api/sessions/x/features")
        .header("origin", "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(
        resp.headers().get("access-control-allow-origin").unwrap(),
        "http://localhost:5173"
    );
    assert!(router(Arc::new(AppState::new(Checker::default())), Some("bad\norigin")).is_err());
}

#[test]
fn lru_eviction() {
    let series = Arc::new(
        capcheck_core::TimeSeries::from_pairs([
            (chrono::NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(), 1.0),
            (chrono::NaiveDate::from_ymd_opt(2020, 1, 2).unwrap(), 2.0),
        ])
        .unwrap(),
    );
    let session = Session {
        spec: capcheck_core::ChartSpec::fit(&series, 640.0, 480.0).unwrap(),
        series,
        caption: String::new(),
        last_result: None,
    };
    let mut store = SessionStore::new(3);
    for id in ["a", "b", "c"] {
        store.insert(id.into(), session.clone());
    }
    assert!(store.get("a").is_some());
    store.insert("d".into(), session.clone());
    assert_eq!(store.len(), 3);
    assert!(!store.contains("b"));
    assert!(store.contains("a") && store.contains("c") && store.contains("d"));
}
