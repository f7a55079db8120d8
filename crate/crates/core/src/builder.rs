//! Constructive Builder strategy for the `(K_{1,3}, P_l)` game.
//!
//! The strategy is an explicit stack of frames driven by the referee. The
//! bottom frame plays for the real target `P_l`; a frame may push a subgame
//! frame that forces a shorter blue path on fresh vertices, and when that
//! path appears the subgame is popped and its end vertices are bound to the
//! parent's `x` and `y` labels.
//!
//! Every edge the strategy needs is named by a [`Label`]. An unbound label
//! stands for a fresh vertex and is bound when the referee reports the ids.
//! Decisions read the colors of labeled edges straight from the board.
//!
//! Edges that are forced blue (a red reply would complete a red `K_{1,3}`)
//! are simply played: a red reply ends the game at the referee and the
//! session is never asked again, so no branch handles it.

use std::collections::VecDeque;
use std::fmt;

use crate::engine::{
    Annotation, BuilderSession, Endpoint, GameState, MoveRecord, Proposal, StrategyFault,
};
use crate::graph::{bits, longest_path_within, Color, ColoredGraph, Vertex};

use Color::{Blue, Red};

/// Round budget `floor(3l/2)`.
pub fn budget(l: usize) -> usize {
    3 * l / 2
}

/// Names a vertex inside one frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    V(u8),
    U(u8),
    X,
    Y,
    /// scratch vertices: probes and unnamed fresh vertices
    W(u16),
    /// a vertex already known by id
    At(Vertex),
}

use Label::{At, U, V, W, X, Y};

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            V(i) => write!(f, "v{i}"),
            U(i) => write!(f, "u{i}"),
            X => write!(f, "x"),
            Y => write!(f, "y"),
            W(i) => write!(f, "w{i}"),
            At(v) => write!(f, "#{v}"),
        }
    }
}

type Edge = (Label, Label);

/// Where a frame is in its case analysis.
#[derive(Debug, Clone)]
enum Stage {
    Start,
    /// play the queued edges, then continue with the boxed stage
    Queue(Vec<Edge>, Box<Stage>),
    /// force a blue path of the given order on fresh vertices, then
    /// continue with the boxed stage (its ends are bound to `x`, `y`)
    Sub(usize, Box<Stage>),
    /// extend a longest blue path of the frame at one end
    Extend,
    /// join `end` to up to three fresh vertices, stopping at a blue reply
    Lemma {
        end: Label,
        probes: u8,
        last: Option<Label>,
    },

    // orders 2..=4
    Probe,
    // orders 5 and 6: the four-vertex opening path
    P4Third,
    P4Pattern,
    Brb,
    Bbr,
    BbrSplit,
    Brr,

    // order 7 and up
    OpenTwo,
    OpenThree,
    Case1,
    Case11RedRed,
    Case12,
    Case12BothBlue,
    Case13,
    Case13Blue,
    Case2,
    Case3Step(u8),
    Case3Stop(u8),
    Case3Close(u8),
}

fn queue(edges: Vec<Edge>, then: Stage) -> Stage {
    Stage::Queue(edges, Box::new(then))
}

fn sub(order: usize, then: Stage) -> Stage {
    Stage::Sub(order, Box::new(then))
}

fn finish(edges: Vec<Edge>) -> Stage {
    queue(edges, Stage::Extend)
}

enum Step {
    Continue,
    Push(usize),
}

#[derive(Debug, Clone)]
struct Frame {
    target: usize,
    kind: &'static str,
    stage: Stage,
    labels: Vec<(Label, Vertex)>,
    pending: VecDeque<Edge>,
    /// vertices touched by this frame and its finished subgames
    verts: u64,
    /// moves issued by this frame and its finished subgames
    moves: usize,
    next_scratch: u16,
}

impl Frame {
    fn new(target: usize) -> Self {
        Frame {
            target,
            kind: "Start",
            stage: Stage::Start,
            labels: Vec::new(),
            pending: VecDeque::new(),
            verts: 0,
            moves: 0,
            next_scratch: 1000,
        }
    }

    fn get(&self, l: Label) -> Option<Vertex> {
        match l {
            At(v) => Some(v),
            _ => self
                .labels
                .iter()
                .find(|(k, _)| *k == l)
                .map(|&(_, v)| v),
        }
    }

    fn vertex(&self, l: Label) -> Result<Vertex, StrategyFault> {
        self.get(l)
            .ok_or_else(|| StrategyFault(format!("{}: label {l} is unbound", self.kind)))
    }

    fn bind(&mut self, l: Label, v: Vertex) {
        if let At(_) = l {
            return;
        }
        match self.labels.iter_mut().find(|(k, _)| *k == l) {
            Some(slot) => slot.1 = v,
            None => self.labels.push((l, v)),
        }
    }

    fn swap(&mut self, a: Label, b: Label) -> Result<(), StrategyFault> {
        let (va, vb) = (self.vertex(a)?, self.vertex(b)?);
        self.bind(a, vb);
        self.bind(b, va);
        Ok(())
    }

    fn scratch(&mut self) -> Label {
        self.next_scratch += 1;
        W(self.next_scratch)
    }

    fn color(&self, board: &ColoredGraph, a: Label, b: Label) -> Result<Color, StrategyFault> {
        let (u, v) = (self.vertex(a)?, self.vertex(b)?);
        board
            .edge_color(u, v)
            .ok_or_else(|| StrategyFault(format!("{}: edge {a}{b} was never played", self.kind)))
    }

    fn colors(
        &self,
        board: &ColoredGraph,
        e1: Edge,
        e2: Edge,
    ) -> Result<(Color, Color), StrategyFault> {
        Ok((self.color(board, e1.0, e1.1)?, self.color(board, e2.0, e2.1)?))
    }

    fn fault(&self, what: &str) -> StrategyFault {
        StrategyFault(format!(
            "{} (target P{}): {what}",
            self.kind, self.target
        ))
    }

    /// Decides what to do once the pending queue is empty.
    fn advance(&mut self, board: &ColoredGraph) -> Result<Step, StrategyFault> {
        let l = self.target;
        let half = l / 2;
        let stage = std::mem::replace(&mut self.stage, Stage::Extend);
        self.stage = match stage {
            Stage::Start => match l {
                0..=1 => return Err(self.fault("path target below 2")),
                2..=4 => {
                    self.kind = "Base";
                    Stage::Probe
                }
                5 | 6 => {
                    self.kind = "Base";
                    queue(vec![(V(1), V(2)), (V(2), V(3))], Stage::P4Third)
                }
                _ => {
                    self.kind = "Opening";
                    queue(vec![(V(2), W(1)), (V(2), W(2))], Stage::OpenTwo)
                }
            },
            Stage::Queue(edges, then) => {
                self.pending.extend(edges);
                *then
            }
            Stage::Sub(order, then) => {
                self.stage = *then;
                return Ok(Step::Push(order));
            }
            Stage::Extend => {
                let path = longest_path_within(board, Blue, self.verts);
                let end = *path.last().ok_or_else(|| self.fault("nothing to extend"))?;
                Stage::Lemma {
                    end: At(end),
                    probes: 0,
                    last: None,
                }
            }
            Stage::Lemma { end, probes, last } => {
                if let Some(p) = last {
                    if self.color(board, end, p)? == Blue {
                        self.stage = Stage::Extend;
                        return Ok(Step::Continue);
                    }
                }
                if probes >= 3 {
                    return Err(self.fault("three red probes without a red star"));
                }
                let p = self.scratch();
                self.pending.push_back((end, p));
                Stage::Lemma {
                    end,
                    probes: probes + 1,
                    last: Some(p),
                }
            }

            Stage::Probe => self.probe(board)?,
            Stage::P4Third => {
                let (c12, c23) = self.colors(board, (V(1), V(2)), (V(2), V(3)))?;
                let third = if (c12, c23) == (Red, Blue) {
                    (V(1), V(4))
                } else {
                    (V(3), V(4))
                };
                queue(vec![third], Stage::P4Pattern)
            }
            Stage::P4Pattern => self.four_path_pattern(board)?,
            Stage::Brb => {
                let (c25, c35) = self.colors(board, (V(2), V(5)), (V(3), V(5)))?;
                match (c25, c35) {
                    (Blue, Blue) => Stage::Extend,
                    (Red, Red) if l == 5 => finish(vec![(V(1), V(5)), (V(4), V(5))]),
                    (Red, Red) => finish(vec![(V(2), V(6)), (V(5), V(6)), (V(4), V(5))]),
                    (Red, Blue) => finish(vec![(V(2), V(4))]),
                    (Blue, Red) => {
                        // mirror the path so v2v5 is the red one
                        self.swap(V(1), V(4))?;
                        self.swap(V(2), V(3))?;
                        finish(vec![(V(2), V(4))])
                    }
                }
            }
            Stage::Bbr => match self.color(board, V(3), V(5))? {
                Blue => finish(vec![(V(1), V(4)), (V(4), V(5))]),
                Red => queue(vec![(V(4), V(6)), (V(4), V(7))], Stage::BbrSplit),
            },
            Stage::BbrSplit => {
                let (c46, c47) = self.colors(board, (V(4), V(6)), (V(4), V(7)))?;
                if (c46, c47) == (Red, Blue) {
                    self.swap(V(6), V(7))?;
                }
                finish(vec![(V(3), V(6)), (V(4), V(8))])
            }
            Stage::Brr => {
                let x = self.scratch();
                match self.color(board, V(2), V(4))? {
                    Blue => finish(vec![(V(1), V(3)), (V(3), x)]),
                    Red => {
                        let w = self.scratch();
                        finish(vec![(V(1), V(3)), (V(3), x), (V(2), w), (w, V(4))])
                    }
                }
            }

            Stage::OpenTwo => {
                let (a, b) = self.colors(board, (V(2), W(1)), (V(2), W(2)))?;
                if (a, b) == (Blue, Blue) {
                    self.kind = "Case1";
                    self.bind(V(1), self.vertex(W(1))?);
                    self.bind(V(3), self.vertex(W(2))?);
                    queue(vec![(V(3), V(4)), (V(4), V(5))], Stage::Case1)
                } else {
                    queue(vec![(V(2), W(3))], Stage::OpenThree)
                }
            }
            Stage::OpenThree => self.open_three(board)?,
            Stage::Case1 => {
                let (c34, c45) = self.colors(board, (V(3), V(4)), (V(4), V(5)))?;
                match (c34, c45) {
                    (Red, Red) => {
                        self.kind = "Case1.1";
                        queue(vec![(V(3), V(5))], Stage::Case11RedRed)
                    }
                    (Blue, Red) => {
                        self.kind = "Case1.1";
                        sub(l - 4, finish(vec![(X, V(4)), (Y, V(4))]))
                    }
                    (Red, Blue) => {
                        self.kind = "Case1.2";
                        queue(vec![(V(3), V(6)), (V(4), V(6))], Stage::Case12)
                    }
                    (Blue, Blue) => {
                        self.kind = "Case1.3";
                        queue(vec![(V(5), V(6))], Stage::Case13)
                    }
                }
            }
            Stage::Case11RedRed => match self.color(board, V(3), V(5))? {
                Blue => sub(l - 5, finish(vec![(Y, V(4)), (V(4), V(1))])),
                Red => {
                    let splice = vec![(Y, V(5)), (V(5), V(6)), (V(6), V(4)), (V(4), V(1))];
                    if l == 7 {
                        finish(splice)
                    } else {
                        sub(l - 6, finish(splice))
                    }
                }
            },
            Stage::Case12 => {
                let (c36, c46) = self.colors(board, (V(3), V(6)), (V(4), V(6)))?;
                match (c36, c46) {
                    (Red, Red) => {
                        let mut splice = vec![(V(3), V(7)), (V(7), V(4)), (V(5), V(6))];
                        if l >= 8 {
                            splice.push((V(6), Y));
                        }
                        if l <= 8 {
                            finish(splice)
                        } else {
                            sub(l - 7, finish(splice))
                        }
                    }
                    (Red, Blue) | (Blue, Red) => {
                        // v3v5 is forced at v3 in the first shape; v4v1 at v4
                        // in the mirrored one. Both leave a blue P6 ending at v6.
                        let bridge = if c36 == Red {
                            (V(3), V(5))
                        } else {
                            (V(4), V(1))
                        };
                        let splice = vec![bridge, (X, V(6)), (Y, V(6))];
                        if l == 7 {
                            finish(splice)
                        } else {
                            sub(l - 6, finish(splice))
                        }
                    }
                    (Blue, Blue) if l == 7 => Stage::Extend,
                    (Blue, Blue) => sub(l - 6, queue(vec![(V(1), V(5))], Stage::Case12BothBlue)),
                }
            }
            Stage::Case12BothBlue => match self.color(board, V(1), V(5))? {
                Blue => finish(vec![(V(4), X), (V(4), Y)]),
                Red => finish(vec![(V(5), X), (V(5), Y)]),
            },
            Stage::Case13 => match self.color(board, V(5), V(6))? {
                Blue if l == 7 => Stage::Lemma {
                    end: V(6),
                    probes: 0,
                    last: None,
                },
                Blue => sub(l - 6, queue(vec![(V(1), V(6))], Stage::Case13Blue)),
                Red => sub(l - 5, finish(vec![(V(5), X), (V(5), Y)])),
            },
            Stage::Case13Blue => match self.color(board, V(1), V(6))? {
                Blue => finish(vec![(X, V(1)), (X, V(2)), (X, V(3))]),
                Red => finish(vec![(V(6), X), (V(6), Y)]),
            },
            Stage::Case2 => match self.color(board, V(3), V(4))? {
                Red => finish(vec![(V(1), V(4)), (V(4), X)]),
                Blue => finish(vec![(V(4), X), (V(4), Y)]),
            },
            Stage::Case3Step(i) => self.red_spine_step(board, i, half)?,
            Stage::Case3Stop(t) => {
                let joins: Vec<Edge> = (2..t).map(|i| (V(i), U(i + 1))).collect();
                let t_us = t as usize;
                if t_us == half + 1 {
                    finish(joins)
                } else if t_us == half {
                    let mut edges = joins;
                    edges.push((V(1), V(t + 1)));
                    queue(edges, Stage::Case3Close(t))
                } else {
                    queue(
                        joins,
                        sub(
                            l - 2 * t_us,
                            queue(vec![(V(1), V(t + 1))], Stage::Case3Close(t)),
                        ),
                    )
                }
            }
            Stage::Case3Close(t) => {
                let closing = self.color(board, V(1), V(t + 1))?;
                if t as usize == half && l.is_multiple_of(2) {
                    match closing {
                        Blue => Stage::Extend,
                        Red => finish(vec![(V(1), U(2))]),
                    }
                } else {
                    // with a subgame x, y are its ends; otherwise fresh
                    match closing {
                        Blue => finish(vec![(V(1), X), (V(1), Y)]),
                        Red => finish(vec![(X, V(1)), (V(1), U(2))]),
                    }
                }
            }
        };
        Ok(Step::Continue)
    }

    /// Orders 2..=4: probe edges out of one center.
    fn probe(&mut self, board: &ColoredGraph) -> Result<Stage, StrategyFault> {
        let l = self.target;
        let mut blues = Vec::new();
        let mut reds = Vec::new();
        let mut probes = 0u16;
        while let Some(leaf) = self.get(W(probes + 1)) {
            probes += 1;
            match self.color(board, V(0), At(leaf))? {
                Blue => blues.push(leaf),
                Red => reds.push(leaf),
            }
        }
        if l <= 3 {
            // a star with l + 1 edges
            return Ok(if (probes as usize) < l + 1 {
                queue(vec![(V(0), W(probes + 1))], Stage::Probe)
            } else {
                Stage::Extend
            });
        }
        if blues.len() < 2 {
            return if probes < 4 {
                Ok(queue(vec![(V(0), W(probes + 1))], Stage::Probe))
            } else {
                Err(self.fault("four probes with fewer than two blue"))
            };
        }
        if probes < 4 {
            // blue K_{1,2} is a blue P3: extend it at a leaf
            return Ok(Stage::Lemma {
                end: At(blues[0]),
                probes: 0,
                last: None,
            });
        }
        self.bind(V(1), reds[0]);
        self.bind(V(2), reds[1]);
        self.bind(V(3), blues[0]);
        self.bind(V(4), blues[1]);
        Ok(finish(vec![(V(1), V(3)), (V(1), V(4))]))
    }

    /// Orders 5 and 6: relabel the opening path to one of the patterns
    /// bbb, bbr, brb, brr, rrr and dispatch.
    fn four_path_pattern(&mut self, board: &ColoredGraph) -> Result<Stage, StrategyFault> {
        let (c12, c23) = self.colors(board, (V(1), V(2)), (V(2), V(3)))?;
        let (mut path, mut colors) = if (c12, c23) == (Red, Blue) {
            let c14 = self.color(board, V(1), V(4))?;
            ([V(3), V(2), V(1), V(4)], [Blue, Red, c14])
        } else {
            let c34 = self.color(board, V(3), V(4))?;
            ([V(1), V(2), V(3), V(4)], [c12, c23, c34])
        };
        if matches!(colors, [Red, Blue, Blue] | [Red, Red, Blue]) {
            path.reverse();
            colors.reverse();
        }
        let ids = path
            .iter()
            .map(|&p| self.vertex(p))
            .collect::<Result<Vec<_>, _>>()?;
        for (i, &v) in ids.iter().enumerate() {
            self.bind(V(i as u8 + 1), v);
        }
        Ok(match colors {
            [Blue, Blue, Blue] => Stage::Extend,
            [Blue, Red, Blue] => queue(vec![(V(2), V(5)), (V(3), V(5))], Stage::Brb),
            [Blue, Blue, Red] => queue(vec![(V(3), V(5))], Stage::Bbr),
            [Blue, Red, Red] => queue(vec![(V(2), V(4))], Stage::Brr),
            [Red, Red, Red] => {
                let (a, b, c) = (self.scratch(), self.scratch(), self.scratch());
                finish(vec![
                    (V(2), a),
                    (V(2), b),
                    (V(3), b),
                    (V(3), c),
                    (a, V(4)),
                    (c, V(4)),
                ])
            }
            _ => return Err(self.fault("opening path ended in pattern rbr")),
        })
    }

    /// Third opening edge at the center: two blue and one red gives the
    /// blue-path case, one blue and two red starts the red spine.
    fn open_three(&mut self, board: &ColoredGraph) -> Result<Stage, StrategyFault> {
        let l = self.target;
        let mut blues = Vec::new();
        let mut reds = Vec::new();
        for leaf in [W(1), W(2), W(3)] {
            let v = self.vertex(leaf)?;
            match self.color(board, V(2), leaf)? {
                Blue => blues.push(v),
                Red => reds.push(v),
            }
        }
        match (blues.len(), reds.len()) {
            (2, 1) => {
                self.kind = "Case2";
                self.bind(V(1), blues[0]);
                self.bind(V(3), blues[1]);
                self.bind(V(4), reds[0]);
                Ok(sub(l - 4, queue(vec![(V(3), V(4))], Stage::Case2)))
            }
            (1, 2) => {
                self.kind = "Case3";
                self.bind(V(1), reds[0]);
                self.bind(V(3), reds[1]);
                self.bind(U(2), blues[0]);
                Ok(self.spine_probes(3))
            }
            _ => Err(self.fault("opening star without the expected colors")),
        }
    }

    fn spine_probes(&mut self, i: u8) -> Stage {
        let (a, b) = spine_scratch(i);
        queue(vec![(V(i), a), (V(i), b)], Stage::Case3Step(i))
    }

    /// Red-spine extension: `v_i` was joined to two fresh vertices.
    fn red_spine_step(
        &mut self,
        board: &ColoredGraph,
        i: u8,
        half: usize,
    ) -> Result<Stage, StrategyFault> {
        let (a, b) = spine_scratch(i);
        let (ca, cb) = self.colors(board, (V(i), a), (V(i), b))?;
        let (va, vb) = (self.vertex(a)?, self.vertex(b)?);
        let (blue, red) = match (ca, cb) {
            (Blue, Blue) => {
                self.bind(U(i), va);
                self.bind(V(i + 1), vb);
                return Ok(Stage::Case3Stop(i));
            }
            (Blue, Red) => (va, vb),
            (Red, Blue) => (vb, va),
            (Red, Red) => return Err(self.fault("two red spine probes")),
        };
        self.bind(U(i), blue);
        self.bind(V(i + 1), red);
        if i as usize == half + 1 {
            // red spine v1 .. v_{half+2} has half + 1 edges
            let mut splice: Vec<Edge> = (2..=half as u8).map(|j| (U(j), V(j + 1))).collect();
            if self.target % 2 == 1 {
                splice.push((U(1), V(2)));
            }
            Ok(finish(splice))
        } else {
            Ok(self.spine_probes(i + 1))
        }
    }
}

fn spine_scratch(i: u8) -> (Label, Label) {
    (W(100 + 2 * i as u16), W(101 + 2 * i as u16))
}

/// Builder session forcing a red `K_{1,3}` or a blue `P_l` within
/// [`budget`]`(l)` rounds.
#[derive(Debug, Clone)]
pub struct ConstructiveBuilder {
    l: usize,
    stack: Vec<Frame>,
    fault: Option<StrategyFault>,
    note: Option<Annotation>,
}

impl ConstructiveBuilder {
    pub fn new(l: usize) -> Self {
        assert!(l >= 2, "constructive builder needs a path target of order >= 2");
        ConstructiveBuilder {
            l,
            stack: vec![Frame::new(l)],
            fault: None,
            note: None,
        }
    }

    pub fn target_order(&self) -> usize {
        self.l
    }

    /// Current nesting depth (1 when no subgame is active).
    pub fn depth(&self) -> usize {
        self.stack.len()
    }

    fn endpoint(frame: &Frame, l: Label) -> Endpoint {
        match frame.get(l) {
            Some(v) => Endpoint::At(v),
            None => Endpoint::Fresh,
        }
    }

    /// Pops every finished subgame and splices its ends into the parent.
    fn pop_finished(&mut self, board: &ColoredGraph) -> Result<(), StrategyFault> {
        while self.stack.len() > 1 {
            let top = self.stack.last().unwrap();
            let path = longest_path_within(board, Blue, top.verts);
            if path.len() < top.target {
                break;
            }
            let child = self.stack.pop().unwrap();
            if child.moves > budget(child.target) {
                return Err(StrategyFault(format!(
                    "subgame for P{} used {} moves, budget {}",
                    child.target,
                    child.moves,
                    budget(child.target)
                )));
            }
            let parent = self.stack.last_mut().unwrap();
            if parent.verts & child.verts != 0 {
                return Err(StrategyFault(format!(
                    "subgame for P{} touched vertices of its parent",
                    child.target
                )));
            }
            parent.bind(X, path[0]);
            parent.bind(Y, path[child.target - 1]);
            parent.verts |= child.verts;
            parent.moves += child.moves;
        }
        Ok(())
    }
}

impl BuilderSession for ConstructiveBuilder {
    fn next_move(&mut self, state: &GameState) -> Result<Proposal, StrategyFault> {
        if let Some(f) = self.fault.take() {
            return Err(f);
        }
        if state.rounds() >= budget(self.l) {
            return Err(StrategyFault(format!(
                "round budget {} for P{} exhausted",
                budget(self.l),
                self.l
            )));
        }
        // every branch reaches a move within a handful of decisions
        for _ in 0..64 {
            let depth = self.stack.len();
            let top = self.stack.last_mut().unwrap();
            if let Some(&(a, b)) = top.pending.front() {
                let p = Proposal(Self::endpoint(top, a), Self::endpoint(top, b));
                let path: Vec<&str> = self.stack.iter().map(|f| f.kind).collect();
                self.note = Some(Annotation {
                    frame: path.join("/"),
                    label: format!("{a}-{b}"),
                });
                return Ok(p);
            }
            match top.advance(state.board())? {
                Step::Continue => {}
                Step::Push(order) => {
                    if depth > 64 {
                        return Err(StrategyFault("subgame nesting too deep".into()));
                    }
                    self.stack.push(Frame::new(order));
                }
            }
        }
        Err(StrategyFault(
            "no move after 64 decision steps".to_string(),
        ))
    }

    fn observe(&mut self, state: &GameState, record: &MoveRecord) {
        let top = self.stack.last_mut().unwrap();
        let Some((a, b)) = top.pending.pop_front() else {
            self.fault = Some(StrategyFault("reply to a move that was never proposed".into()));
            return;
        };
        if top.get(a).is_none() {
            top.bind(a, record.u);
        }
        if top.get(b).is_none() {
            top.bind(b, record.v);
        }
        top.verts |= (1u64 << record.u) | (1u64 << record.v);
        top.moves += 1;
        if record.color == Blue {
            if let Err(f) = self.pop_finished(state.board()) {
                self.fault = Some(f);
            }
        }
    }

    fn annotation(&self) -> Option<Annotation> {
        self.note.clone()
    }
}

/// Builder for any `l >= 2`.
pub fn constructive_builder(l: usize) -> ConstructiveBuilder {
    ConstructiveBuilder::new(l)
}

/// Builder restricted to the small orders 2..=6.
pub fn base_case_builder(l: usize) -> ConstructiveBuilder {
    assert!((2..=6).contains(&l), "base cases cover orders 2..=6");
    ConstructiveBuilder::new(l)
}

/// Lemma-1 style extension on its own: joins `end` to fresh vertices until
/// one reply is blue (at most three moves).
#[derive(Debug, Clone)]
pub struct PathExtension {
    end: Vertex,
    probes: Vec<Vertex>,
    done: bool,
}

impl PathExtension {
    pub fn new(end: Vertex) -> Self {
        PathExtension {
            end,
            probes: Vec::new(),
            done: false,
        }
    }

    pub fn moves_used(&self) -> usize {
        self.probes.len()
    }

    /// The new path end once a blue reply arrived.
    pub fn extended_to(&self) -> Option<Vertex> {
        if self.done {
            self.probes.last().copied()
        } else {
            None
        }
    }
}

impl BuilderSession for PathExtension {
    fn next_move(&mut self, _state: &GameState) -> Result<Proposal, StrategyFault> {
        if self.done {
            return Err(StrategyFault("path already extended".into()));
        }
        if self.probes.len() >= 3 {
            return Err(StrategyFault("three probes used".into()));
        }
        Ok(Proposal(Endpoint::At(self.end), Endpoint::Fresh))
    }

    fn observe(&mut self, _state: &GameState, record: &MoveRecord) {
        let other = if record.u == self.end {
            record.v
        } else {
            record.u
        };
        self.probes.push(other);
        self.done = record.color == Blue;
    }
}

pub fn lemma1_extend(end: Vertex) -> PathExtension {
    PathExtension::new(end)
}

/// Vertices of a mask, for diagnostics.
pub fn vertex_list(mask: u64) -> Vec<Vertex> {
    bits(mask).collect()
}
