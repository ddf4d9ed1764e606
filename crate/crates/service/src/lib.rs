//! HTTP JSON front end: series upload, caption checks and feature listing
//! over in-memory sessions.

use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use capcheck_core::chart::detect_granularity;
use capcheck_core::ingest::{parse_series, MAX_POINTS};
use capcheck_core::prominence::prominent_features;
use capcheck_core::{ChartSpec, CheckResult, Checker, Error, Granularity, TimeSeries};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::{Any, CorsLayer};

/// Sessions kept before the least recently used one is dropped.
pub const SESSION_CAPACITY: usize = 256;

/// Upper bound on request bodies; a million CSV rows fit comfortably.
pub const BODY_LIMIT: usize = 128 * 1024 * 1024;

#[derive(Debug, Clone)]
pub struct Session {
    pub series: Arc<TimeSeries>,
    pub spec: ChartSpec,
    pub caption: String,
    pub last_result: Option<Arc<CheckResult>>,
}

/// Least-recently-used session map. Lookups move the entry to the back;
/// inserts evict from the front.
#[derive(Debug)]
pub struct SessionStore {
    sessions: IndexMap<String, Session>,
    capacity: usize,
}

impl SessionStore {
    pub fn new(capacity: usize) -> Self {
        SessionStore {
            sessions: IndexMap::new(),
            capacity: capacity.max(1),
        }
    }

    pub fn len(&self) -> usize {
        self.sessions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sessions.is_empty()
    }

    pub fn insert(&mut self, id: String, session: Session) {
        self.sessions.shift_remove(&id);
        while self.sessions.len() >= self.capacity {
            self.sessions.shift_remove_index(0);
        }
        self.sessions.insert(id, session);
    }

    pub fn get(&mut self, id: &str) -> Option<&mut Session> {
        let index = self.sessions.get_index_of(id)?;
        let last = self.sessions.len() - 1;
        self.sessions.move_index(index, last);
        self.sessions.get_index_mut(last).map(|(_, s)| s)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.sessions.contains_key(id)
    }
}

pub struct AppState {
    pub checker: Checker,
    pub sessions: Mutex<SessionStore>,
}

impl AppState {
    pub fn new(checker: Checker) -> Self {
        AppState {
            checker,
            sessions: Mutex::new(SessionStore::new(SESSION_CAPACITY)),
        }
    }

    fn sessions(&self) -> std::sync::MutexGuard<'_, SessionStore> {
        // A panic while holding the lock cannot leave the map half-updated.
        self.sessions.lock().unwrap_or_else(|e| e.into_inner())
    }

    fn snapshot(&self, id: &str) -> Result<Session, ApiError> {
        self.sessions()
            .get(id)
            .map(|s| s.clone())
            .ok_or_else(|| ApiError::not_found(id))
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: serde_json::Value,
}

impl ApiError {
    fn not_found(id: &str) -> Self {
        ApiError {
            status: StatusCode::NOT_FOUND,
            body: json!({ "error": format!("unknown session {id}") }),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            body: json!({ "error": message.into() }),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::TooLarge { .. } => StatusCode::PAYLOAD_TOO_LARGE,
            Error::EmptyChart(_) => StatusCode::UNPROCESSABLE_ENTITY,
            Error::Io { .. } => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::BAD_REQUEST,
        };
        let mut body = json!({ "error": e.to_string() });
        if let Error::Parse { row, column, .. } = e {
            body["row"] = json!(row);
            body["column"] = json!(column);
        }
        ApiError { status, body }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesCreated {
    pub session_id: String,
    pub point_count: usize,
    pub granularity: Granularity,
    pub default_spec: ChartSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRequest {
    #[serde(default)]
    pub spec: Option<ChartSpec>,
    pub caption: String,
}

async fn create_series(State(state): State<Arc<AppState>>, body: Bytes) -> Result<Json<SeriesCreated>, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|e| ApiError::bad_request(format!("body is not UTF-8: {e}")))?;
    let series = parse_series(text, MAX_POINTS)?;
    let spec = ChartSpec::fit(&series, ChartSpec::DEFAULT_WIDTH, ChartSpec::DEFAULT_HEIGHT)?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let created = SeriesCreated {
        session_id: id.clone(),
        point_count: series.len(),
        granularity: detect_granularity(&series),
        default_spec: spec,
    };
    state.sessions().insert(
        id,
        Session {
            series: Arc::new(series),
            spec,
            caption: String::new(),
            last_result: None,
        },
    );
    tracing::debug!(session = %created.session_id, points = created.point_count, "series uploaded");
    Ok(Json(created))
}

async fn check(State(state): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> Result<Response, ApiError> {
    let mut session = state.snapshot(&id)?;
    let request: CheckRequest =
        serde_json::from_slice(&body).map_err(|e| ApiError::bad_request(format!("invalid check request: {e}")))?;
    if let Some(spec) = request.spec {
        session.spec = spec;
    }
    let series = Arc::clone(&session.series);
    let spec = session.spec;
    let caption = request.caption;
    let checker_state = Arc::clone(&state);
    let (result, caption) = tokio::task::spawn_blocking(move || {
        let r = checker_state.checker.check(&series, &spec, &caption);
        (r, caption)
    })
    .await
    .map_err(|e| ApiError::bad_request(format!("check aborted: {e}")))?;
    let result = Arc::new(result?);
    let body = serde_json::to_vec(result.as_ref()).expect("check results serialize");

    if let Some(stored) = state.sessions().get(&id) {
        stored.spec = session.spec;
        stored.caption = caption;
        stored.last_result = Some(result);
    }
    Ok(([(axum::http::header::CONTENT_TYPE, "application/json")], body).into_response())
}

async fn features(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let session = state.snapshot(&id)?;
    let features = prominent_features(&session.series, &session.spec)?;
    Ok(Json(json!({ "features": features })).into_response())
}

/// The API router. `cors_origin` of `*` allows any origin.
pub fn router(state: Arc<AppState>, cors_origin: Option<&str>) -> Result<Router, String> {
    let mut app = Router::new()
        .route("/api/series", post(create_series))
        .route("/api/sessions/{id}/check", post(check))
        .route("/api/sessions/{id}/features", get(features))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(state);
    if let Some(origin) = cors_origin {
        let cors = CorsLayer::new()
            .allow_methods([Method::GET, Method::POST])
            .allow_headers(Any);
        let cors = if origin == "*" {
            cors.allow_origin(Any)
        } else {
            let value = HeaderValue::from_str(origin).map_err(|e| format!("invalid CORS origin {origin:?}: {e}"))?;
            cors.allow_origin(value)
        };
        app = app.layer(cors);
    }
    Ok(app)
}
