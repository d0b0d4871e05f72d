//! HTTP JSON API over a shared [`Pipeline`].
//!
//! Loaded resources are immutable and shared by every request. Each session
//! token owns a [`SessionContext`] behind an async mutex, so concurrent
//! requests on one session queue up while other sessions proceed. Idle
//! sessions are dropped lazily on the next request that touches the table.

use std::collections::HashMap;
use std::path::{Component, Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{DefaultBodyLimit, Path as UrlPath, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Redirect, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use tower_http::cors::CorsLayer;

use pictopipe_core::pipeline::PipelineError;
use pictopipe_core::tpa::{self, CaseMatrix, MatchMode, TpaError, DEFAULT_EPSILON};
use pictopipe_core::{Execution, Pipeline, PipelineConfig, SessionContext, TranslationResult};

const MAX_BODY_BYTES: usize = 32 * 1024 * 1024;

#[derive(Debug, Error)]
pub enum ApiError {
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error(transparent)]
    Tpa(#[from] TpaError),
    #[error("request needs exactly one of \"corpus\" or \"path\"")]
    CorpusSource,
    #[error("reading corpora by path is only allowed in local mode")]
    PathForbidden,
    #[error("no pictogram {0:?}")]
    UnknownPictogram(String),
    #[error("worker failed: {0}")]
    Worker(String),
}

impl ApiError {
    fn status(&self) -> StatusCode {
        match self {
            ApiError::Pipeline(PipelineError::EmptyInput) => StatusCode::BAD_REQUEST,
            ApiError::Tpa(TpaError::Io(_)) => StatusCode::NOT_FOUND,
            ApiError::Tpa(_) | ApiError::CorpusSource => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::PathForbidden => StatusCode::FORBIDDEN,
            ApiError::UnknownPictogram(_) => StatusCode::NOT_FOUND,
            ApiError::Pipeline(_) | ApiError::Worker(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = serde_json::json!({ "error": self.to_string() });
        (self.status(), Json(body)).into_response()
    }
}

struct Slot {
    context: Arc<tokio::sync::Mutex<SessionContext>>,
    last_used: Instant,
}

/// Shared state behind every handler.
pub struct AppState {
    pipeline: Arc<Pipeline>,
    sessions: Mutex<HashMap<String, Slot>>,
    idle: Duration,
    session_capacity: usize,
    asset_root: Option<PathBuf>,
    local_mode: bool,
}

impl AppState {
    pub fn new(pipeline: Pipeline, cfg: &PipelineConfig) -> Self {
        AppState {
            pipeline: Arc::new(pipeline),
            sessions: Mutex::new(HashMap::new()),
            idle: Duration::from_secs(cfg.session_idle_secs),
            session_capacity: cfg.session_capacity,
            asset_root: cfg.asset_root.clone(),
            local_mode: cfg.local_mode,
        }
    }

    /// Returns the context for `token`, issuing a fresh token when none was
    /// given or the old one expired.
    fn session(&self, token: Option<String>) -> (String, Arc<tokio::sync::Mutex<SessionContext>>) {
        let now = Instant::now();
        let mut table = self.sessions.lock().expect("session table poisoned");
        table.retain(|_, s| now.duration_since(s.last_used) < self.idle);
        if let Some(slot) = token.as_ref().and_then(|t| table.get_mut(t)) {
            slot.last_used = now;
            return (token.unwrap(), slot.context.clone());
        }
        let token = uuid::Uuid::new_v4().to_string();
        let context = Arc::new(tokio::sync::Mutex::new(SessionContext::new(self.session_capacity)));
        table.insert(
            token.clone(),
            Slot {
                context: context.clone(),
                last_used: now,
            },
        );
        (token, context)
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().expect("session table poisoned").len()
    }
}

#[derive(Debug, Deserialize)]
pub struct TranslateRequest {
    pub text: String,
    #[serde(default)]
    pub session: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TranslateResponse {
    #[serde(flatten)]
    pub result: TranslationResult,
    pub session: String,
}

#[derive(Debug, Deserialize)]
pub struct EvalTpaRequest {
    /// Inline JSONL corpus.
    #[serde(default)]
    pub corpus: Option<String>,
    /// Server-side corpus file; local mode only.
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub match_mode: MatchMode,
    #[serde(default)]
    pub epsilon: Option<f64>,
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/translate", post(translate))
        .route("/api/pictograms/{id}", get(pictogram))
        .route("/api/health", get(health))
        .route("/api/eval/tpa", post(eval_tpa))
        .layer(DefaultBodyLimit::max(MAX_BODY_BYTES))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Worker(e.to_string()))?
}

async fn translate(
    State(state): State<Arc<AppState>>,
    Json(req): Json<TranslateRequest>,
) -> Result<Json<TranslateResponse>, ApiError> {
    if req.text.trim().is_empty() {
        return Err(PipelineError::EmptyInput.into());
    }
    let (session, context) = state.session(req.session);
    let mut guard = context.lock_owned().await;
    let pipeline = state.pipeline.clone();
    let result = blocking(move || Ok(pipeline.process(&req.text, &mut guard)?)).await?;
    Ok(Json(TranslateResponse { result, session }))
}

async fn health(State(state): State<Arc<AppState>>) -> Json<serde_json::Value> {
    Json(serde_json::json!({
        "status": "ok",
        "lexicon_entries": state.pipeline.lexicon().len(),
    }))
}

fn content_type(image_ref: &str) -> &'static str {
    let ext = Path::new(image_ref)
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("svg") => "image/svg+xml",
        Some("png") => "image/png",
        Some("jpg" | "jpeg") => "image/jpeg",
        Some("gif") => "image/gif",
        Some("webp") => "image/webp",
        _ => "application/octet-stream",
    }
}

/// Relative paths without `..` or roots only.
fn safe_join(root: &Path, rel: &str) -> Option<PathBuf> {
    let rel = Path::new(rel);
    rel.components()
        .all(|c| matches!(c, Component::Normal(_) | Component::CurDir))
        .then(|| root.join(rel))
}

async fn pictogram(
    State(state): State<Arc<AppState>>,
    UrlPath(id): UrlPath<String>,
) -> Result<Response, ApiError> {
    let missing = || ApiError::UnknownPictogram(id.clone());
    let entry = state.pipeline.lexicon().get(&id).ok_or_else(missing)?;
    let image_ref = entry.image_ref.as_str();
    if image_ref.starts_with("http://") || image_ref.starts_with("https://") {
        return Ok(Redirect::temporary(image_ref).into_response());
    }
    let ctype = content_type(image_ref);
    if let Some(bytes) = state.pipeline.bundled_asset(image_ref) {
        return Ok(([(header::CONTENT_TYPE, ctype)], bytes).into_response());
    }
    let path = state
        .asset_root
        .as_deref()
        .and_then(|root| safe_join(root, image_ref))
        .ok_or_else(missing)?;
    match tokio::fs::read(&path).await {
        Ok(bytes) => Ok(([(header::CONTENT_TYPE, ctype)], bytes).into_response()),
        Err(_) => Err(missing()),
    }
}

async fn eval_tpa(
    State(state): State<Arc<AppState>>,
    Json(req): Json<EvalTpaRequest>,
) -> Result<Json<CaseMatrix>, ApiError> {
    let epsilon = req.epsilon.unwrap_or(DEFAULT_EPSILON);
    let (inline, path) = match (req.corpus, req.path) {
        (Some(c), None) => (Some(c), None),
        (None, Some(p)) if state.local_mode => (None, Some(p)),
        (None, Some(_)) => return Err(ApiError::PathForbidden),
        _ => return Err(ApiError::CorpusSource),
    };
    let pipeline = state.pipeline.clone();
    let matrix = blocking(move || {
        let corpus = match (inline, path) {
            (Some(text), _) => tpa::load_corpus(text.as_bytes())?,
            (_, Some(p)) => tpa::load_corpus_path(&p)?,
            _ => unreachable!("source checked above"),
        };
        Ok(tpa::run_case_matrix(
            &corpus,
            pipeline.as_ref(),
            epsilon,
            req.match_mode,
            Execution::Parallel,
        )?)
    })
    .await?;
    Ok(Json(matrix))
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
    tracing::info!("shutting down");
}

/// Binds `cfg.bind` and serves until SIGINT or SIGTERM.
pub async fn serve(pipeline: Pipeline, cfg: &PipelineConfig) -> std::io::Result<()> {
    let entries = pipeline.lexicon().len();
    let state = Arc::new(AppState::new(pipeline, cfg));
    let listener = tokio::net::TcpListener::bind(&cfg.bind).await?;
    tracing::info!(addr = %listener.local_addr()?, entries, "listening");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown_signal())
        .await
}
