//! Referee for the online Ramsey game.
//!
//! Builder proposes an edge, Painter colors it, the referee applies the move
//! and checks both targets. Vertices materialize when first touched: a
//! Builder asks for a fresh vertex with [`Endpoint::Fresh`] and the referee
//! hands out the next consecutive id.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{contains_target, Color, ColoredGraph, GraphError, TargetPair, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    RedHit,
    BlueHit,
}

impl Status {
    pub fn is_over(self) -> bool {
        self != Status::Ongoing
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MoveRecord {
    #[serde(rename = "r")]
    pub round: usize,
    pub u: Vertex,
    pub v: Vertex,
    #[serde(rename = "c")]
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("the game is already over")]
    GameOver,
    #[error("illegal edge: {0}")]
    IllegalEdge(#[from] GraphError),
    #[error("strategy fault: {0}")]
    StrategyFault(String),
    #[error("transcript does not replay: {0}")]
    ReplayMismatch(String),
}

/// One end of a proposed edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Endpoint {
    At(Vertex),
    Fresh,
}

/// An edge proposed by Builder. Two `Fresh` ends get two distinct new ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Proposal(pub Endpoint, pub Endpoint);

impl Proposal {
    pub fn between(u: Vertex, v: Vertex) -> Self {
        Proposal(Endpoint::At(u), Endpoint::At(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    board: ColoredGraph,
    transcript: Vec<MoveRecord>,
    targets: TargetPair,
    status: Status,
}

impl GameState {
    pub fn new(targets: TargetPair) -> Result<Self, GameError> {
        targets.validate()?;
        let mut state = GameState {
            board: ColoredGraph::new(),
            transcript: Vec::new(),
            targets,
            status: Status::Ongoing,
        };
        state.status = state.evaluate(None)?;
        Ok(state)
    }

    pub fn board(&self) -> &ColoredGraph {
        &self.board
    }

    pub fn transcript(&self) -> &[MoveRecord] {
        &self.transcript
    }

    pub fn targets(&self) -> &TargetPair {
        &self.targets
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn rounds(&self) -> usize {
        self.transcript.len()
    }

    /// Concrete ids for a proposal, allocating fresh vertices consecutively.
    pub fn resolve(&self, p: Proposal) -> (Vertex, Vertex) {
        let mut next = self.board.vertex_count();
        let mut pick = |e: Endpoint| match e {
            Endpoint::At(v) => v,
            Endpoint::Fresh => {
                next += 1;
                next - 1
            }
        };
        let u = pick(p.0);
        let v = pick(p.1);
        (u, v)
    }

    /// Applies a colored edge and re-evaluates both targets.
    ///
    /// Existing vertex ids must be in range; new ids must be exactly the next
    /// consecutive ones.
    pub fn apply_move(&mut self, u: Vertex, v: Vertex, c: Color) -> Result<(), GameError> {
        if self.status.is_over() {
            return Err(GameError::GameOver);
        }
        self.check_ids(u, v)?;
        self.board.add_edge(u, v, c)?;
        self.transcript.push(MoveRecord {
            round: self.transcript.len() + 1,
            u,
            v,
            color: c,
        });
        self.status = self.evaluate(Some(c))?;
        Ok(())
    }

    /// Whether `{u, v}` may be played next.
    pub fn check_legal(&self, u: Vertex, v: Vertex) -> Result<(), GameError> {
        self.check_ids(u, v)?;
        self.board.check_new_edge(u, v)?;
        Ok(())
    }

    fn check_ids(&self, u: Vertex, v: Vertex) -> Result<(), GameError> {
        let n = self.board.vertex_count();
        let (lo, hi) = (u.min(v), u.max(v));
        let ok = hi < n || (hi == n && lo != hi) || (lo == n && hi == n + 1);
        if ok || u == v {
            Ok(())
        } else {
            Err(GameError::IllegalEdge(GraphError::Malformed(format!(
                "edge {{{u},{v}}} skips vertex ids (next fresh id is {n})"
            ))))
        }
    }

    /// Red is checked first so a move that completes both targets counts as
    /// a red hit. Only the target of the color just played can change,
    /// except for edgeless targets, which appear with the first vertex.
    fn evaluate(&self, played: Option<Color>) -> Result<Status, GameError> {
        for (c, hit) in [(Color::Red, Status::RedHit), (Color::Blue, Status::BlueHit)] {
            let target = self.targets.for_color(c);
            let may_change = played.is_none_or(|p| p == c) || target.order() <= 1;
            if may_change && contains_target(&self.board, c, target)? {
                return Ok(hit);
            }
        }
        Ok(Status::Ongoing)
    }

    /// Folds a move list through [`GameState::apply_move`].
    pub fn replay(targets: TargetPair, moves: &[MoveRecord]) -> Result<Self, GameError> {
        let mut state = GameState::new(targets)?;
        for (i, m) in moves.iter().enumerate() {
            if m.round != i + 1 {
                return Err(GameError::ReplayMismatch(format!(
                    "move {} carries round {}",
                    i + 1,
                    m.round
                )));
            }
            state.apply_move(m.u, m.v, m.color)?;
        }
        Ok(state)
    }
}

/// Stateful Builder strategy queried by the referee.
pub trait BuilderSession {
    fn next_move(&mut self, state: &GameState) -> Result<Proposal, StrategyFault>;

    /// Called after Painter colored the last proposal, while the game is
    /// still running.
    fn observe(&mut self, _state: &GameState, _record: &MoveRecord) {}

    /// Debug label for the most recent proposal.
    fn annotation(&self) -> Option<Annotation> {
        None
    }
}

/// Stateful Painter strategy queried by the referee.
pub trait PainterSession {
    fn choose_color(&mut self, state: &GameState, u: Vertex, v: Vertex) -> Color;
}

impl<B: BuilderSession + ?Sized> BuilderSession for Box<B> {
    fn next_move(&mut self, state: &GameState) -> Result<Proposal, StrategyFault> {
        (**self).next_move(state)
    }

    fn observe(&mut self, state: &GameState, record: &MoveRecord) {
        (**self).observe(state, record)
    }

    fn annotation(&self) -> Option<Annotation> {
        (**self).annotation()
    }
}

impl<P: PainterSession + ?Sized> PainterSession for Box<P> {
    fn choose_color(&mut self, state: &GameState, u: Vertex, v: Vertex) -> Color {
        (**self).choose_color(state, u, v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct StrategyFault(pub String);

impl From<StrategyFault> for GameError {
    fn from(f: StrategyFault) -> Self {
        GameError::StrategyFault(f.0)
    }
}

/// Per-move debug label emitted by strategies that support tracing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub frame: String,
    pub label: String,
}

/// Serialized record of one finished (or capped) match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub targets: TargetPair,
    pub cap: usize,
    pub moves: Vec<MoveRecord>,
    pub status: Status,
    pub rounds: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<Annotation>>,
}

impl Transcript {
    pub fn from_state(state: &GameState, cap: usize) -> Self {
        Transcript {
            targets: state.targets.clone(),
            cap,
            moves: state.transcript.clone(),
            status: state.status,
            rounds: state.rounds(),
            trace: None,
        }
    }

    /// Replays the moves and checks the recorded status and round count.
    pub fn replay(&self) -> Result<GameState, GameError> {
        let state = GameState::replay(self.targets.clone(), &self.moves)?;
        if state.status != self.status || state.rounds() != self.rounds {
            return Err(GameError::ReplayMismatch(format!(
                "recorded {:?} after {} rounds, replay gives {:?} after {}",
                self.status,
                self.rounds,
                state.status,
                state.rounds()
            )));
        }
        Ok(state)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Result of [`run_match`]; `status` stays `Ongoing` when the cap ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub rounds: usize,
    pub transcript: Transcript,
    pub final_state: GameState,
}

/// Plays Builder against Painter until a target appears or `cap` rounds
/// have been played.
pub fn run_match<B, P>(
    builder: &mut B,
    painter: &mut P,
    targets: TargetPair,
    cap: usize,
) -> Result<Outcome, GameError>
where
    B: BuilderSession + ?Sized,
    P: PainterSession + ?Sized,
{
    run_match_traced(builder, painter, targets, cap, false)
}

/// [`run_match`] that optionally records the Builder's per-move annotations.
pub fn run_match_traced<B, P>(
    builder: &mut B,
    painter: &mut P,
    targets: TargetPair,
    cap: usize,
    trace: bool,
) -> Result<Outcome, GameError>
where
    B: BuilderSession + ?Sized,
    P: PainterSession + ?Sized,
{
    let mut state = GameState::new(targets)?;
    let mut notes = Vec::new();
    while !state.status.is_over() && state.rounds() < cap {
        let proposal = builder.next_move(&state)?;
        if trace {
            notes.push(builder.annotation().unwrap_or_else(|| Annotation {
                frame: String::new(),
                label: String::new(),
            }));
        }
        let (u, v) = state.resolve(proposal);
        state.check_legal(u, v).map_err(|e| {
            GameError::StrategyFault(format!("builder proposed {{{u},{v}}}: {e}"))
        })?;
        let color = painter.choose_color(&state, u, v);
        state.apply_move(u, v, color)?;
        if !state.status.is_over() {
            let last = *state.transcript.last().unwrap();
            builder.observe(&state, &last);
        }
    }
    let mut transcript = Transcript::from_state(&state, cap);
    if trace {
        transcript.trace = Some(notes);
    }
    Ok(Outcome {
        status: state.status,
        rounds: state.rounds(),
        transcript,
        final_state: state,
    })
}
