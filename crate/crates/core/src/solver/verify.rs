//! Exhaustive checks of the constructive Builder and the blocking painter.

use std::collections::HashMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::builder::{budget, ConstructiveBuilder};
use crate::engine::{BuilderSession, GameState, Transcript};
use crate::graph::{canonical_key, CanonicalKey, GraphError, TargetPair};
use crate::painter::BlockingPainter;

use super::audit::audit_blocking_painter;
use super::minimax::candidate_moves;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Counterexample,
}

/// Outcome of a sweep. A counterexample carries the offending transcript
/// and, for faults or audit failures, a short explanation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub l: usize,
    pub budget: usize,
    pub result: Verdict,
    pub nodes: u64,
    pub max_rounds: usize,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<Transcript>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.result == Verdict::Verified
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Default)]
struct Tally {
    nodes: u64,
    max_rounds: usize,
    bad: Option<(Transcript, Option<String>)>,
}

impl Tally {
    fn leaf(rounds: usize) -> Self {
        Tally {
            nodes: 1,
            max_rounds: rounds,
            bad: None,
        }
    }

    fn failure(state: &GameState, cap: usize, detail: Option<String>) -> Self {
        Tally {
            nodes: 1,
            max_rounds: state.rounds(),
            bad: Some((Transcript::from_state(state, cap), detail)),
        }
    }

    /// Keeps the earlier (left) counterexample.
    fn merge(mut self, other: Tally) -> Self {
        self.nodes += other.nodes;
        self.max_rounds = self.max_rounds.max(other.max_rounds);
        if self.bad.is_none() {
            self.bad = other.bad;
        }
        self
    }

    fn report(self, l: usize, budget: usize, started: Instant) -> VerificationReport {
        let (result, transcript, detail) = match self.bad {
            None => (Verdict::Verified, None, None),
            Some((t, d)) => (Verdict::Counterexample, Some(t), d),
        };
        VerificationReport {
            l,
            budget,
            result,
            nodes: self.nodes,
            max_rounds: self.max_rounds,
            seconds: started.elapsed().as_secs_f64(),
            transcript,
            detail,
        }
    }
}

/// Branches below this depth run on the rayon pool.
const PARALLEL_DEPTH: usize = 14;

/// Plays the constructive Builder against both replies at every move and
/// checks that every line ends within `floor(3l/2)` rounds.
pub fn verify_upper(l: usize) -> VerificationReport {
    verify_upper_with_cap(l, budget(l))
}

/// [`verify_upper`] with an explicit round cap.
///
/// At each move the blocking painter's color is explored first, so when
/// some line fails to finish the reported transcript is the first failing
/// line in that order; with caps below the true value it is the line played
/// by the blocking painter itself.
pub fn verify_upper_with_cap(l: usize, cap: usize) -> VerificationReport {
    let started = Instant::now();
    let state = GameState::new(TargetPair::star_path(l)).expect("star/path targets are valid");
    let painter = BlockingPainter::new(l);
    explore(state, ConstructiveBuilder::new(l), &painter, cap, 0).report(l, cap, started)
}

fn explore(
    state: GameState,
    mut builder: ConstructiveBuilder,
    painter: &BlockingPainter,
    cap: usize,
    depth: usize,
) -> Tally {
    if state.status().is_over() {
        return Tally::leaf(state.rounds());
    }
    if state.rounds() >= cap {
        return Tally::failure(&state, cap, None);
    }
    let proposal = match builder.next_move(&state) {
        Ok(p) => p,
        Err(fault) => return Tally::failure(&state, cap, Some(format!("strategy fault: {}", fault.0))),
    };
    let (u, v) = state.resolve(proposal);
    if let Err(e) = state.check_legal(u, v) {
        return Tally::failure(&state, cap, Some(format!("illegal proposal {{{u},{v}}}: {e}")));
    }
    let first = painter.color_for(state.board(), u, v);
    let play = |c, mut s: GameState, mut b: ConstructiveBuilder| {
        if let Err(e) = s.apply_move(u, v, c) {
            return Tally::failure(&s, cap, Some(e.to_string()));
        }
        if !s.status().is_over() {
            let last = *s.transcript().last().unwrap();
            b.observe(&s, &last);
        }
        explore(s, b, painter, cap, depth + 1)
    };
    let (a, b) = if depth < PARALLEL_DEPTH {
        let (s2, b2) = (state.clone(), builder.clone());
        rayon::join(|| play(first, state, builder), || play(first.other(), s2, b2))
    } else {
        let a = play(first, state.clone(), builder.clone());
        (a, play(first.other(), state, builder))
    };
    let mut t = a.merge(b);
    t.nodes += 1;
    t
}

/// Searches every Builder line of `floor(3l/2) - 1` moves (one per class of
/// equivalent moves) against the blocking painter and checks that none
/// reaches a target. Every finished line is also audited.
pub fn verify_lower_exhaustive(l: usize) -> Result<VerificationReport, GraphError> {
    verify_lower_with_budget(l, budget(l) - 1)
}

/// [`verify_lower_exhaustive`] with an explicit number of Builder moves.
pub fn verify_lower_with_budget(l: usize, rounds: usize) -> Result<VerificationReport, GraphError> {
    let started = Instant::now();
    let painter = BlockingPainter::new(l);
    let state = GameState::new(TargetPair::star_path(l)).expect("star/path targets are valid");
    let mut search = LowerSearch {
        l,
        rounds,
        painter,
        seen: HashMap::new(),
        tally: Tally::default(),
    };
    search.dfs(&state)?;
    Ok(search.tally.report(l, rounds, started))
}

struct LowerSearch {
    l: usize,
    rounds: usize,
    painter: BlockingPainter,
    /// most remaining moves each position was searched with
    seen: HashMap<CanonicalKey, usize>,
    tally: Tally,
}

impl LowerSearch {
    fn dfs(&mut self, state: &GameState) -> Result<(), GraphError> {
        if self.tally.bad.is_some() {
            return Ok(());
        }
        self.tally.nodes += 1;
        self.tally.max_rounds = self.tally.max_rounds.max(state.rounds());
        if state.status().is_over() {
            self.tally.bad = Some((Transcript::from_state(state, self.rounds), None));
            return Ok(());
        }
        let remaining = self.rounds - state.rounds();
        if remaining == 0 {
            if let Err(v) = audit_blocking_painter(state.transcript(), self.l) {
                self.tally.bad = Some((
                    Transcript::from_state(state, self.rounds),
                    Some(v.to_string()),
                ));
            }
            return Ok(());
        }
        let key = canonical_key(state.board())?;
        match self.seen.get(&key) {
            Some(&r) if r >= remaining => return Ok(()),
            _ => {
                self.seen.insert(key, remaining);
            }
        }
        for (u, v) in candidate_moves(state.board())? {
            let mut child = state.clone();
            let c = self.painter.color_for(state.board(), u, v);
            child
                .apply_move(u, v, c)
                .expect("candidate moves are legal");
            self.dfs(&child)?;
            if self.tally.bad.is_some() {
                break;
            }
        }
        Ok(())
    }
}
