//! HTTP session service.

use crate::session::{HumanAction, NewSession, Session, SessionView, StepResponse, SESSION_SCHEMA};
use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use revspy::family::FAMILY_NAMES;
use revspy::registry::{self, StrategyInfo};
use revspy::Error;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    pub detail: Value,
}

impl ApiError {
    pub fn new(status: u16, code: &str, message: impl Into<String>) -> Self {
        ApiError { status, code: code.into(), message: message.into(), detail: Value::Null }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } | Error::InvalidParameter(_) | Error::UnknownStrategy(_) => 400,
            Error::WrongPhase { .. } => 409,
            _ => 422,
        };
        let detail = match &e {
            Error::IllegalMove { from, to, count, reason } => json!({ "from": from, "to": to, "count": count, "reason": reason }),
            Error::WrongPhase { expected, found } => json!({ "expected": expected, "found": found }),
            Error::CapExceeded { size, cap, .. } => json!({ "size": size, "cap": cap }),
            _ => Value::Null,
        };
        ApiError { status, code: e.code().into(), message: e.to_string(), detail }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        let body = json!({ "schema_version": SESSION_SCHEMA, "code": self.code, "message": self.message, "detail": self.detail });
        (status, Json(body)).into_response()
    }
}

type Shared = Arc<Mutex<Session>>;

#[derive(Default)]
pub struct AppState {
    sessions: Mutex<HashMap<String, Shared>>,
    next: AtomicU64,
}

impl AppState {
    fn get(&self, id: &str) -> Result<Shared, ApiError> {
        let sessions = self.sessions.lock().expect("session table");
        sessions.get(id).cloned().ok_or_else(|| ApiError::new(404, "not_found", format!("no session {id}")))
    }
}

fn parse<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| {
        let mut err = ApiError::new(400, "parse_error", format!("bad request body: {e}"));
        err.detail = json!({ "line": e.line(), "column": e.column() });
        err
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StrategyList {
    pub schema_version: u32,
    pub strategies: Vec<StrategyInfo>,
    pub families: Vec<String>,
}

async fn strategies() -> Json<StrategyList> {
    Json(StrategyList {
        schema_version: SESSION_SCHEMA,
        strategies: registry::strategies(),
        families: FAMILY_NAMES.iter().map(|s| s.to_string()).collect(),
    })
}

async fn create(State(app): State<Arc<AppState>>, body: Bytes) -> Result<(StatusCode, Json<StepResponse>), ApiError> {
    let req: NewSession = parse(&body)?;
    let id = format!("s{}", app.next.fetch_add(1, Ordering::Relaxed) + 1);
    let (session, ai_reply) = Session::new(id.clone(), &req)?;
    let state = session.view();
    app.sessions.lock().expect("session table").insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(StepResponse { schema_version: SESSION_SCHEMA, state, ai_reply })))
}

async fn show(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let session = app.get(&id)?;
    let view = session.lock().expect("session").view();
    Ok(Json(view))
}

async fn moves(State(app): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> Result<Json<StepResponse>, ApiError> {
    let session = app.get(&id)?;
    let action: HumanAction = parse(&body)?;
    let mut session = session.lock().expect("session");
    let ai_reply = session.act(&action)?;
    Ok(Json(StepResponse { schema_version: SESSION_SCHEMA, state: session.view(), ai_reply }))
}

async fn resign(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    let session = app.get(&id)?;
    let mut session = session.lock().expect("session");
    session.resign()?;
    Ok(Json(session.view()))
}

pub fn router() -> Router {
    Router::new()
        .route("/strategies", get(strategies))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/moves", post(moves))
        .route("/sessions/{id}/resign", post(resign))
        .with_state(Arc::new(AppState::default()))
}

pub async fn serve(addr: &str) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
