//! Minimax search for exact online Ramsey numbers.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::{
    canonical_form_labeled, canonical_key, contains_target, CanonicalKey, Color, ColoredGraph,
    GraphError, TargetPair, Vertex,
};

/// Known bounds for one canonical position.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MemoEntry {
    /// least budget known to be enough
    pub win_within: Option<usize>,
    /// greatest budget known to be too small
    pub loss_at: Option<usize>,
}

impl MemoEntry {
    fn lookup(&self, b: usize) -> Option<bool> {
        if self.win_within.is_some_and(|w| w <= b) {
            Some(true)
        } else if self.loss_at.is_some_and(|l| l >= b) {
            Some(false)
        } else {
            None
        }
    }

    fn record(&mut self, b: usize, win: bool) {
        if win {
            self.win_within = Some(self.win_within.map_or(b, |w| w.min(b)));
        } else {
            self.loss_at = Some(self.loss_at.map_or(b, |l| l.max(b)));
        }
    }
}

/// Result of [`online_ramsey_number`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RamseyValue {
    Exact(usize),
    UnknownAbove(usize),
}

/// Memoized minimax search for one target pair.
#[derive(Debug, Clone)]
pub struct Solver {
    targets: TargetPair,
    memo: HashMap<CanonicalKey, MemoEntry>,
    use_memo: bool,
    nodes: u64,
}

impl Solver {
    pub fn new(targets: TargetPair) -> Result<Self, GraphError> {
        targets.validate()?;
        Ok(Solver {
            targets,
            memo: HashMap::new(),
            use_memo: true,
            nodes: 0,
        })
    }

    /// Same search without the transposition table.
    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self.memo.clear();
        self
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn memo_entry(&self, g: &ColoredGraph) -> Result<Option<MemoEntry>, GraphError> {
        Ok(self.memo.get(&canonical_key(g)?).copied())
    }

    /// Whether Builder can force a target from `g` within `b` more rounds.
    pub fn wins_within(&mut self, g: &ColoredGraph, b: usize) -> Result<bool, GraphError> {
        if target_hit(g, &self.targets)? {
            return Ok(true);
        }
        self.search(g, b)
    }

    /// Least winning budget from the empty board, up to `max_budget`.
    pub fn ramsey_number(&mut self, max_budget: usize) -> Result<RamseyValue, GraphError> {
        let empty = ColoredGraph::new();
        for b in 0..=max_budget {
            if self.wins_within(&empty, b)? {
                return Ok(RamseyValue::Exact(b));
            }
        }
        Ok(RamseyValue::UnknownAbove(max_budget))
    }

    /// `g` holds no target here.
    fn search(&mut self, g: &ColoredGraph, b: usize) -> Result<bool, GraphError> {
        self.nodes += 1;
        if b == 0 {
            return Ok(false);
        }
        let key = if self.use_memo {
            let key = canonical_key(g)?;
            if let Some(known) = self.memo.get(&key).and_then(|e| e.lookup(b)) {
                return Ok(known);
            }
            Some(key)
        } else {
            None
        };
        let win = self.some_move_wins(g, b)?;
        if let Some(key) = key {
            self.memo.entry(key).or_default().record(b, win);
        }
        Ok(win)
    }

    fn some_move_wins(&mut self, g: &ColoredGraph, b: usize) -> Result<bool, GraphError> {
        'moves: for (u, v) in candidate_moves(g)? {
            for c in Color::BOTH {
                let child = g.with_edge(u, v, c)?;
                if target_hit_by(&child, &self.targets, c)? {
                    continue;
                }
                if b == 1 || !self.search(&child, b - 1)? {
                    continue 'moves;
                }
            }
            return Ok(true);
        }
        Ok(false)
    }
}

fn target_hit(g: &ColoredGraph, targets: &TargetPair) -> Result<bool, GraphError> {
    Ok(contains_target(g, Color::Red, &targets.red)? || contains_target(g, Color::Blue, &targets.blue)?)
}

/// Target check after an edge of color `c`; the other color's target can
/// only appear if it has no edges.
fn target_hit_by(g: &ColoredGraph, targets: &TargetPair, c: Color) -> Result<bool, GraphError> {
    let other = targets.for_color(c.other());
    Ok(contains_target(g, c, targets.for_color(c))?
        || (other.order() <= 1 && contains_target(g, c.other(), other)?))
}

/// One Builder move per class of equivalent moves.
///
/// Candidates are every non-adjacent pair of existing vertices, every
/// existing vertex joined to the next fresh id, and the pair of the next two
/// fresh ids. Two candidates are equivalent when the board with the new edge
/// marked by a third label has the same canonical form; the fresh vertices
/// take part as isolated vertices.
pub fn candidate_moves(g: &ColoredGraph) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
    let n = g.vertex_count();
    let m = n + 2;
    if m > crate::graph::MAX_VERTICES {
        return Err(GraphError::SizeExceeded(m));
    }
    let mut lab = vec![0u8; m * m];
    for (u, v, c) in g.edges() {
        lab[u * m + v] = c.code();
        lab[v * m + u] = c.code();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (u, v) in all_moves(g) {
        lab[u * m + v] = 3;
        lab[v * m + u] = 3;
        let (form, _) = canonical_form_labeled(m, &lab);
        lab[u * m + v] = 0;
        lab[v * m + u] = 0;
        if seen.insert(form) {
            out.push((u, v));
        }
    }
    Ok(out)
}

/// Every legal next move, with fresh vertices numbered from the current
/// vertex count.
pub fn all_moves(g: &ColoredGraph) -> Vec<(Vertex, Vertex)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                out.push((u, v));
            }
        }
    }
    out.extend((0..n).map(|u| (u, n)));
    out.push((n, n + 1));
    out
}

/// Whether Builder can force a target from `g` within `b` more rounds.
pub fn builder_wins_within(
    g: &ColoredGraph,
    targets: &TargetPair,
    b: usize,
) -> Result<bool, GraphError> {
    Solver::new(targets.clone())?.wins_within(g, b)
}

/// Least number of rounds in which Builder forces a target from the empty
/// board, or `UnknownAbove(max_budget)`.
pub fn online_ramsey_number(
    targets: &TargetPair,
    max_budget: usize,
) -> Result<RamseyValue, GraphError> {
    Solver::new(targets.clone())?.ramsey_number(max_budget)
}

/// Plain minimax over [`all_moves`] with no memo and no move merging.
/// Exponential; meant as an oracle at tiny budgets.
pub fn reference_wins_within(
    g: &ColoredGraph,
    targets: &TargetPair,
    b: usize,
) -> Result<bool, GraphError> {
    if target_hit(g, targets)? {
        return Ok(true);
    }
    if b == 0 {
        return Ok(false);
    }
    for (u, v) in all_moves(g) {
        let mut forced = true;
        for c in Color::BOTH {
            if !reference_wins_within(&g.with_edge(u, v, c)?, targets, b - 1)? {
                forced = false;
                break;
            }
        }
        if forced {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TargetSpec;
    use Color::{Blue, Red};

    fn pair(red: &str, blue: &str) -> TargetPair {
        TargetPair::new(red.parse().unwrap(), blue.parse().unwrap())
    }

    #[test]
    fn existing_red_star_wins_at_zero() {
        let g = ColoredGraph::from_edges([(0, 1, Red), (0, 2, Red), (0, 3, Red)]).unwrap();
        assert!(builder_wins_within(&g, &TargetPair::star_path(5), 0).unwrap());
    }

    #[test]
    fn star_vs_p2() {
        let t = TargetPair::star_path(2);
        let empty = ColoredGraph::new();
        assert!(!builder_wins_within(&empty, &t, 2).unwrap());
        assert!(builder_wins_within(&empty, &t, 3).unwrap());
    }

    #[test]
    fn p3_vs_p3_in_three() {
        let t = TargetPair::new(TargetSpec::Path(3), TargetSpec::Path(3));
        assert!(builder_wins_within(&ColoredGraph::new(), &t, 3).unwrap());
        assert_eq!(online_ramsey_number(&t, 6).unwrap(), RamseyValue::Exact(3));
    }

    #[test]
    fn unknown_above_cap() {
        assert_eq!(
            online_ramsey_number(&pair("S3", "P4"), 4).unwrap(),
            RamseyValue::UnknownAbove(4)
        );
    }

    #[test]
    fn moves_of_empty_and_single_edge() {
        assert_eq!(candidate_moves(&ColoredGraph::new()).unwrap(), vec![(0, 1)]);
        let g = ColoredGraph::from_edges([(0, 1, Blue)]).unwrap();
        // both endpoints are equivalent: attach, or a disjoint edge
        assert_eq!(candidate_moves(&g).unwrap(), vec![(0, 2), (2, 3)]);
        let h = ColoredGraph::from_edges([(0, 1, Blue), (1, 2, Red)]).unwrap();
        assert_eq!(candidate_moves(&h).unwrap().len(), 5);
    }

    #[test]
    fn memo_records_both_bounds() {
        let mut s = Solver::new(TargetPair::star_path(3)).unwrap();
        let empty = ColoredGraph::new();
        assert!(!s.wins_within(&empty, 3).unwrap());
        assert!(s.wins_within(&empty, 4).unwrap());
        let e = s.memo_entry(&empty).unwrap().unwrap();
        assert_eq!(e.loss_at, Some(3));
        assert_eq!(e.win_within, Some(4));
    }
}
