//! Live sessions: one human against one machine strategy.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use tokio::sync::broadcast;

use ramsey_core::builder::{budget, ConstructiveBuilder};
use ramsey_core::engine::{
    BuilderSession, Endpoint, GameState, MoveRecord, PainterSession, Proposal, Status, Transcript,
};
use ramsey_core::graph::{Color, GraphJson, TargetPair, Vertex};
use ramsey_core::painter::{BlockingPainter, RandomPainter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SessionError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("not your turn: {0}")]
    NotYourTurn(String),
    #[error("illegal edge: {0}")]
    IllegalEdge(String),
    #[error("session is closed")]
    SessionClosed,
    #[error("no session {0}")]
    NotFound(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::BadParams(_) => "bad_params",
            SessionError::NotYourTurn(_) => "not_your_turn",
            SessionError::IllegalEdge(_) => "illegal_edge",
            SessionError::SessionClosed => "session_closed",
            SessionError::NotFound(_) => "not_found",
            SessionError::Internal(_) => "internal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Painter,
    Builder,
}

/// Machine side. Written `constructive`, `blocking` or `random(<seed>)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Opponent {
    Constructive,
    Blocking,
    Random(u64),
}

impl fmt::Display for Opponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Opponent::Constructive => write!(f, "constructive"),
            Opponent::Blocking => write!(f, "blocking"),
            Opponent::Random(seed) => write!(f, "random({seed})"),
        }
    }
}

impl FromStr for Opponent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "constructive" => return Ok(Opponent::Constructive),
            "blocking" => return Ok(Opponent::Blocking),
            "random" => return Ok(Opponent::Random(0)),
            _ => {}
        }
        s.strip_prefix("random(")
            .and_then(|rest| rest.strip_suffix(')'))
            .and_then(|seed| seed.trim().parse().ok())
            .map(Opponent::Random)
            .ok_or_else(|| format!("unknown opponent {s:?}"))
    }
}

impl Serialize for Opponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Opponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct CreateRequest {
    pub l: usize,
    pub role: Role,
    pub opponent: Opponent,
}

/// A vertex id, or `"new"` for the next fresh vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexChoice {
    Id(Vertex),
    New,
}

impl<'de> Deserialize<'de> for VertexChoice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Id(Vertex),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Id(v) => Ok(VertexChoice::Id(v)),
            Raw::Word(w) if w == "new" => Ok(VertexChoice::New),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "expected a vertex id or \"new\", got {w:?}"
            ))),
        }
    }
}

/// Body of a move: a color from a human painter, an edge from a human
/// builder.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Action {
    Color { color: Color },
    Edge { u: VertexChoice, v: VertexChoice },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeView {
    pub u: Vertex,
    pub v: Vertex,
}

/// Everything a client sees about a session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionDescriptor {
    pub id: String,
    pub l: usize,
    pub role: Role,
    pub opponent: Opponent,
    pub budget: usize,
    pub status: Status,
    pub rounds: usize,
    /// no more moves: a target appeared or the budget ran out
    pub closed: bool,
    /// the side expected to act next, if any
    pub awaiting: Option<Role>,
    /// edge the machine builder wants colored
    pub proposal: Option<EdgeView>,
    pub board: GraphJson,
    pub moves: Vec<MoveRecord>,
}

enum Machine {
    Builder(Box<ConstructiveBuilder>),
    Blocking(BlockingPainter),
    Random(RandomPainter),
}

pub struct Session {
    id: String,
    l: usize,
    role: Role,
    opponent: Opponent,
    state: GameState,
    machine: Machine,
    proposal: Option<(Vertex, Vertex)>,
    pub(crate) last_active: Instant,
    pub(crate) events: broadcast::Sender<SessionDescriptor>,
}

impl Session {
    pub fn new(id: String, req: &CreateRequest, max_l: usize) -> Result<Self, SessionError> {
        let l = req.l;
        if l < 2 || l > max_l {
            return Err(SessionError::BadParams(format!(
                "l must be in 2..={max_l}, got {l}"
            )));
        }
        let machine = match (req.role, req.opponent) {
            (Role::Painter, Opponent::Constructive) => {
                Machine::Builder(Box::new(ConstructiveBuilder::new(l)))
            }
            (Role::Builder, Opponent::Blocking) => Machine::Blocking(BlockingPainter::new(l)),
            (Role::Builder, Opponent::Random(seed)) => {
                Machine::Random(ramsey_core::painter::random_painter(seed))
            }
            (role, opp) => {
                return Err(SessionError::BadParams(format!(
                    "a human {role:?} cannot face the {opp} strategy"
                )))
            }
        };
        let state = GameState::new(TargetPair::star_path(l))
            .map_err(|e| SessionError::Internal(e.to_string()))?;
        let (events, _) = broadcast::channel(64);
        let mut session = Session {
            id,
            l,
            role: req.role,
            opponent: req.opponent,
            state,
            machine,
            proposal: None,
            last_active: Instant::now(),
            events,
        };
        session.prepare_proposal()?;
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn budget(&self) -> usize {
        budget(self.l)
    }

    pub fn is_closed(&self) -> bool {
        self.state.status().is_over() || self.state.rounds() >= self.budget()
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn transcript(&self) -> Transcript {
        Transcript::from_state(&self.state, self.budget())
    }

    pub fn descriptor(&self) -> SessionDescriptor {
        let closed = self.is_closed();
        SessionDescriptor {
            id: self.id.clone(),
            l: self.l,
            role: self.role,
            opponent: self.opponent,
            budget: self.budget(),
            status: self.state.status(),
            rounds: self.state.rounds(),
            closed,
            awaiting: (!closed).then_some(self.role),
            proposal: self.proposal.map(|(u, v)| EdgeView { u, v }),
            board: self.state.board().to_json(),
            moves: self.state.transcript().to_vec(),
        }
    }

    /// Applies a human action and the machine's reply.
    pub fn submit(&mut self, action: &Action) -> Result<SessionDescriptor, SessionError> {
        self.last_active = Instant::now();
        if self.is_closed() {
            return Err(SessionError::SessionClosed);
        }
        match (self.role, action) {
            (Role::Painter, Action::Color { color }) => {
                let (u, v) = self
                    .proposal
                    .ok_or_else(|| SessionError::Internal("no pending proposal".into()))?;
                self.play(u, v, *color)?;
                if !self.state.status().is_over() {
                    let last = *self.state.transcript().last().unwrap();
                    if let Machine::Builder(b) = &mut self.machine {
                        b.observe(&self.state, &last);
                    }
                }
                self.proposal = None;
                self.prepare_proposal()?;
            }
            (Role::Builder, Action::Edge { u, v }) => {
                let (u, v) = self.resolve(*u, *v);
                self.state
                    .check_legal(u, v)
                    .map_err(|e| SessionError::IllegalEdge(e.to_string()))?;
                let color = match &mut self.machine {
                    Machine::Blocking(p) => p.choose_color(&self.state, u, v),
                    Machine::Random(p) => p.choose_color(&self.state, u, v),
                    Machine::Builder(_) => unreachable!("a human builder faces a painter"),
                };
                self.play(u, v, color)?;
            }
            (Role::Painter, Action::Edge { .. }) => {
                return Err(SessionError::NotYourTurn(
                    "the painter answers with a color".into(),
                ))
            }
            (Role::Builder, Action::Color { .. }) => {
                return Err(SessionError::NotYourTurn(
                    "the builder answers with an edge".into(),
                ))
            }
        }
        let d = self.descriptor();
        let _ = self.events.send(d.clone());
        Ok(d)
    }

    fn resolve(&self, u: VertexChoice, v: VertexChoice) -> (Vertex, Vertex) {
        let side = |c| match c {
            VertexChoice::Id(x) => Endpoint::At(x),
            VertexChoice::New => Endpoint::Fresh,
        };
        self.state.resolve(Proposal(side(u), side(v)))
    }

    fn play(&mut self, u: Vertex, v: Vertex, c: Color) -> Result<(), SessionError> {
        self.state
            .apply_move(u, v, c)
            .map_err(|e| SessionError::IllegalEdge(e.to_string()))
    }

    fn prepare_proposal(&mut self) -> Result<(), SessionError> {
        if self.is_closed() {
            return Ok(());
        }
        if let Machine::Builder(b) = &mut self.machine {
            let p = b
                .next_move(&self.state)
                .map_err(|f| SessionError::Internal(format!("builder fault: {}", f.0)))?;
            let (u, v) = self.state.resolve(p);
            self.state
                .check_legal(u, v)
                .map_err(|e| SessionError::Internal(format!("builder proposed {u}-{v}: {e}")))?;
            self.proposal = Some((u, v));
        }
        Ok(())
    }
}
