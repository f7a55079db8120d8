//! Counting audit for games played against the blocking painter.

use serde::{Deserialize, Serialize};

use crate::engine::MoveRecord;
use crate::graph::{bits, has_cycle_len, longest_path_order, Color, ColoredGraph};
use crate::painter::BlockingPainter;

/// Red-structure quantities of a board.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PainterAudit {
    /// vertices of red degree two
    pub x: usize,
    /// red components that are paths (with at least one edge)
    pub s: usize,
    pub red_edges: usize,
    pub blue_edges: usize,
    pub longest_blue: usize,
    /// every red component is a path
    pub red_is_paths: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("audit violation at move {index}: {reason}")]
pub struct AuditViolation {
    /// 1-based move number; 0 for the final board
    pub index: usize,
    pub reason: String,
}

/// Checks that every move was colored as the blocking painter would and
/// that the red graph stays legal, then audits the final board.
pub fn audit_blocking_painter(
    moves: &[MoveRecord],
    l: usize,
) -> Result<PainterAudit, AuditViolation> {
    let painter = BlockingPainter::new(l);
    let mut board = ColoredGraph::new();
    for (i, m) in moves.iter().enumerate() {
        let index = i + 1;
        let expected = painter.color_for(&board, m.u, m.v);
        if m.color != expected {
            let reason = match m.color {
                Color::Blue => "blue although red was safe",
                Color::Red => "red completes a red star or a short red cycle",
            };
            return Err(AuditViolation {
                index,
                reason: reason.into(),
            });
        }
        board.add_edge(m.u, m.v, m.color).map_err(|e| AuditViolation {
            index,
            reason: e.to_string(),
        })?;
        red_invariant(&board, l).map_err(|reason| AuditViolation { index, reason })?;
    }
    audit_board(&board, l).map_err(|reason| AuditViolation { index: 0, reason })
}

/// Red maximum degree at most two and no red cycle of length in
/// `3..=l/2`.
fn red_invariant(board: &ColoredGraph, l: usize) -> Result<(), String> {
    for v in 0..board.vertex_count() {
        if board.degree(v, Color::Red) > 2 {
            return Err(format!("vertex {v} has red degree 3"));
        }
    }
    for k in 3..=l / 2 {
        if has_cycle_len(board, Color::Red, k) {
            return Err(format!("red cycle of length {k}"));
        }
    }
    Ok(())
}

/// Computes the audit quantities. When red is a union of paths and there is
/// no blue `P_l`, checks that the red edge count is `|X| + s` and that a
/// longest blue path has order at most `2|X| + s + 1`.
pub fn audit_board(board: &ColoredGraph, l: usize) -> Result<PainterAudit, String> {
    let x = (0..board.vertex_count())
        .filter(|&v| board.degree(v, Color::Red) == 2)
        .count();
    let mut s = 0;
    let mut red_is_paths = true;
    for comp in board.components(Color::Red) {
        let k = comp.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let edges: usize = bits(comp).map(|v| board.degree(v, Color::Red)).sum::<usize>() / 2;
        if edges == k - 1 {
            s += 1;
        } else {
            red_is_paths = false;
        }
    }
    let audit = PainterAudit {
        x,
        s,
        red_edges: board.color_edge_count(Color::Red),
        blue_edges: board.color_edge_count(Color::Blue),
        longest_blue: longest_path_order(board, Color::Blue),
        red_is_paths,
    };
    if red_is_paths && audit.longest_blue < l {
        if audit.red_edges != x + s {
            return Err(format!(
                "red has {} edges, expected |X| + s = {}",
                audit.red_edges,
                x + s
            ));
        }
        if audit.longest_blue > 2 * x + s + 1 {
            return Err(format!(
                "blue path of order {} exceeds 2|X| + s + 1 = {}",
                audit.longest_blue,
                2 * x + s + 1
            ));
        }
    }
    Ok(audit)
}
