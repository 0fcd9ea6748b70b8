//! HTTP service for playing the quantum-house game.
//!
//! Alice is the human player, Charlie is simulated, and the Bob and Charlie
//! tokens give read-only views. Requests carry a role token as
//! `Authorization: Bearer <token>`.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | POST | `/sessions` | `{"flavor", "seed"?}` | 201 `{"id", "tokens"}` |
//! | GET | `/sessions/{id}/view` | | view |
//! | POST | `/sessions/{id}/actions` | `{"action"}` | view |
//! | GET | `/sessions/{id}/transcripts` | | JSON lines |

mod action;
mod store;
mod view;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::{header, HeaderMap, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use qhouse_core::game::FlavorKind;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use action::ClientAction;
pub use store::{SessionRecord, SessionStore, Tokens};
pub use view::{TallyView, ViewModel, VisibleEvent};

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("unknown session")]
    UnknownSession,
    #[error("missing or invalid role token")]
    Forbidden,
    #[error("illegal action: {0}")]
    IllegalAction(String),
    #[error("bad request: {0}")]
    BadRequest(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::UnknownSession => StatusCode::NOT_FOUND,
            ApiError::Forbidden => StatusCode::FORBIDDEN,
            ApiError::IllegalAction(_) => StatusCode::CONFLICT,
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status(), Json(json!({ "error": self.to_string() }))).into_response()
    }
}

#[derive(Debug, Deserialize)]
struct CreateRequest {
    flavor: String,
    seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CreateResponse {
    pub id: String,
    pub tokens: Tokens,
}

fn bearer(headers: &HeaderMap) -> Result<&str, ApiError> {
    headers
        .get(header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "))
        .map(str::trim)
        .ok_or(ApiError::Forbidden)
}

fn json_body(body: &[u8]) -> Result<Value, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::BadRequest(e.to_string()))
}

async fn create_session(State(store): State<Arc<SessionStore>>, body: axum::body::Bytes) -> Result<Response, ApiError> {
    let req: CreateRequest = serde_json::from_value(json_body(&body)?).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let flavor: FlavorKind = req.flavor.parse().map_err(ApiError::BadRequest)?;
    let (id, tokens) = store.create(flavor, req.seed)?;
    Ok((StatusCode::CREATED, Json(CreateResponse { id, tokens })).into_response())
}

async fn get_view(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Json<ViewModel>, ApiError> {
    store.get(&id)?;
    Ok(Json(store.view(&id, bearer(&headers)?)?))
}

async fn post_action(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: axum::body::Bytes,
) -> Result<Json<ViewModel>, ApiError> {
    store.get(&id)?;
    let token = bearer(&headers)?;
    let body = json_body(&body)?;
    let raw = body.get("action").ok_or_else(|| ApiError::BadRequest("missing `action`".into()))?;
    let action = ClientAction::from_json(raw).map_err(ApiError::BadRequest)?;
    Ok(Json(store.act(&id, token, action)?))
}

async fn get_transcripts(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    store.get(&id)?;
    let body = store.transcripts(&id, bearer(&headers)?)?;
    Ok(([(header::CONTENT_TYPE, "application/x-ndjson")], body).into_response())
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/view", get(get_view))
        .route("/sessions/{id}/actions", post(post_action))
        .route("/sessions/{id}/transcripts", get(get_transcripts))
        .with_state(store)
}

/// Router with CORS for the given browser origins.
pub fn router_with_cors(store: Arc<SessionStore>, origins: &[String]) -> Result<Router, ApiError> {
    let app = router(store);
    if origins.is_empty() {
        return Ok(app);
    }
    let values = origins
        .iter()
        .map(|o| HeaderValue::from_str(o).map_err(|e| ApiError::BadRequest(format!("origin `{o}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let cors = CorsLayer::new()
        .allow_origin(AllowOrigin::list(values))
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::AUTHORIZATION, header::CONTENT_TYPE]);
    Ok(app.layer(cors))
}

#[derive(Clone, Debug)]
pub struct ServerConfig {
    pub addr: String,
    pub port: u16,
    pub allow_origin: Vec<String>,
    pub journal: Option<PathBuf>,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig { addr: "127.0.0.1".into(), port: 8080, allow_origin: Vec::new(), journal: None }
    }
}

pub async fn serve(config: ServerConfig) -> std::io::Result<()> {
    let store = match &config.journal {
        Some(p) => SessionStore::with_journal(p)?,
        None => SessionStore::new(),
    };
    let app = router_with_cors(Arc::new(store), &config.allow_origin)
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, e.to_string()))?;
    let addr: SocketAddr = format!("{}:{}", config.addr, config.port)
        .parse()
        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidInput, format!("bad address: {e}")))?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app).await
}
