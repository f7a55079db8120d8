//! HTTP play service: humans play the star-versus-path game against the
//! constructive Builder or a machine Painter.
//!
//! Endpoints:
//!
//! - `POST /sessions` with `{"l": 7, "role": "painter", "opponent": "constructive"}`
//! - `POST /sessions/{id}/move` with `{"color": "B"}` or `{"u": 0, "v": "new"}`
//! - `GET /sessions/{id}` returns the current [`SessionDescriptor`]
//! - `GET /sessions/{id}/transcript` returns the transcript JSON
//! - `GET /sessions/{id}/events` streams descriptors as server-sent events
//!
//! Sessions live in memory and are dropped after an idle timeout. Closed
//! sessions are written to `<data_dir>/<id>.json` and their transcripts stay
//! downloadable after eviction.

mod session;

use std::collections::HashMap;
use std::convert::Infallible;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::sse::{Event, KeepAlive, Sse};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures::stream::{self, Stream};
use tokio::sync::broadcast;

use ramsey_core::engine::Transcript;

pub use session::{
    Action, CreateRequest, EdgeView, Opponent, Role, Session, SessionDescriptor, SessionError,
    VertexChoice,
};

#[derive(Debug, Clone)]
pub struct Config {
    pub max_l: usize,
    pub idle_timeout: Duration,
    /// where closed sessions are written; `None` keeps everything in memory
    pub data_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_l: 40,
            idle_timeout: Duration::from_secs(30 * 60),
            data_dir: None,
        }
    }
}

type Shared = Arc<Mutex<Session>>;

/// Concurrent session table. Each session has its own lock, so actions on
/// one session are serialized while different sessions proceed in parallel.
pub struct Store {
    config: Config,
    sessions: Mutex<HashMap<String, Shared>>,
}

impl Store {
    pub fn new(config: Config) -> Self {
        Store {
            config,
            sessions: Mutex::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lookup(&self, id: &str) -> Result<Shared, SessionError> {
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.to_string()))
    }

    pub fn create(&self, req: &CreateRequest) -> Result<SessionDescriptor, SessionError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::new(id.clone(), req, self.config.max_l)?;
        let d = session.descriptor();
        self.sessions
            .lock()
            .unwrap()
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(d)
    }

    pub fn get(&self, id: &str) -> Result<SessionDescriptor, SessionError> {
        let shared = self.lookup(id)?;
        let mut s = shared.lock().unwrap();
        s.last_active = Instant::now();
        Ok(s.descriptor())
    }

    pub fn submit(&self, id: &str, action: &Action) -> Result<SessionDescriptor, SessionError> {
        let shared = self.lookup(id)?;
        let mut s = shared.lock().unwrap();
        let d = s.submit(action)?;
        if d.closed {
            self.persist(&s)?;
        }
        Ok(d)
    }

    pub fn transcript(&self, id: &str) -> Result<Transcript, SessionError> {
        match self.lookup(id) {
            Ok(shared) => Ok(shared.lock().unwrap().transcript()),
            Err(missing) => {
                let path = self.file_for(id).ok_or(missing.clone())?;
                let text = std::fs::read_to_string(path).map_err(|_| missing)?;
                Transcript::from_json(&text).map_err(|e| SessionError::Internal(e.to_string()))
            }
        }
    }

    /// Current snapshot plus a receiver for later ones.
    pub fn subscribe(
        &self,
        id: &str,
    ) -> Result<(SessionDescriptor, broadcast::Receiver<SessionDescriptor>), SessionError> {
        let shared = self.lookup(id)?;
        let s = shared.lock().unwrap();
        Ok((s.descriptor(), s.events.subscribe()))
    }

    /// Drops sessions idle for longer than the timeout, writing each to the
    /// data directory first. Returns how many were dropped.
    pub fn evict_idle(&self, now: Instant) -> usize {
        let mut sessions = self.sessions.lock().unwrap();
        let stale: Vec<String> = sessions
            .iter()
            .filter(|(_, s)| {
                let s = s.lock().unwrap();
                now.saturating_duration_since(s.last_active) > self.config.idle_timeout
            })
            .map(|(id, _)| id.clone())
            .collect();
        for id in &stale {
            if let Some(s) = sessions.remove(id) {
                let _ = self.persist(&s.lock().unwrap());
            }
        }
        stale.len()
    }

    fn file_for(&self, id: &str) -> Option<PathBuf> {
        let dir = self.config.data_dir.as_ref()?;
        let safe = !id.is_empty() && id.chars().all(|c| c.is_ascii_alphanumeric());
        safe.then(|| dir.join(format!("{id}.json")))
    }

    fn persist(&self, s: &Session) -> Result<(), SessionError> {
        let Some(path) = self.file_for(s.id()) else {
            return Ok(());
        };
        let io = |e: std::io::Error| SessionError::Internal(e.to_string());
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        std::fs::write(path, s.transcript().to_json()).map_err(io)
    }
}

impl IntoResponse for SessionError {
    fn into_response(self) -> Response {
        let status = match self {
            SessionError::BadParams(_) => StatusCode::BAD_REQUEST,
            SessionError::NotYourTurn(_) => StatusCode::CONFLICT,
            SessionError::IllegalEdge(_) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::SessionClosed => StatusCode::GONE,
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let body = serde_json::json!({"error": self.code(), "message": self.to_string()});
        (status, Json(body)).into_response()
    }
}

async fn create(
    State(store): State<Arc<Store>>,
    body: Result<Json<CreateRequest>, axum::extract::rejection::JsonRejection>,
) -> Result<(StatusCode, Json<SessionDescriptor>), SessionError> {
    let Json(req) = body.map_err(|e| SessionError::BadParams(e.body_text()))?;
    Ok((StatusCode::CREATED, Json(store.create(&req)?)))
}

async fn submit(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    body: Result<Json<Action>, axum::extract::rejection::JsonRejection>,
) -> Result<Json<SessionDescriptor>, SessionError> {
    let Json(action) = body.map_err(|e| SessionError::BadParams(e.body_text()))?;
    Ok(Json(store.submit(&id, &action)?))
}

async fn fetch(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
) -> Result<Json<SessionDescriptor>, SessionError> {
    Ok(Json(store.get(&id)?))
}

async fn transcript(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
) -> Result<Json<Transcript>, SessionError> {
    Ok(Json(store.transcript(&id)?))
}

async fn events(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
) -> Result<Sse<impl Stream<Item = Result<Event, Infallible>>>, SessionError> {
    let (first, rx) = store.subscribe(&id)?;
    let to_event = |d: &SessionDescriptor| {
        Event::default()
            .event("state")
            .json_data(d)
            .expect("descriptor serializes")
    };
    let head = stream::once(std::future::ready(Ok(to_event(&first))));
    let tail = stream::unfold(rx, move |mut rx| async move {
        loop {
            match rx.recv().await {
                Ok(d) => return Some((Ok(to_event(&d)), rx)),
                Err(broadcast::error::RecvError::Lagged(_)) => continue,
                Err(broadcast::error::RecvError::Closed) => return None,
            }
        }
    });
    Ok(Sse::new(futures::StreamExt::chain(head, tail)).keep_alive(KeepAlive::default()))
}

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/:id", get(fetch))
        .route("/sessions/:id/move", post(submit))
        .route("/sessions/:id/transcript", get(transcript))
        .route("/sessions/:id/events", get(events))
        .with_state(store)
}

/// Serves until the process is stopped, evicting idle sessions once a
/// minute.
pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let store = Arc::new(Store::new(config));
    let sweeper = Arc::clone(&store);
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(Duration::from_secs(60));
        loop {
            tick.tick().await;
            sweeper.evict_idle(Instant::now());
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(store)).await
}
