//! Exact minimax search, exhaustive strategy verification and the
//! blocking-painter audit.

mod audit;
mod minimax;
mod verify;

pub use audit::{audit_blocking_painter, audit_board, AuditViolation, PainterAudit};
pub use minimax::{
    all_moves, builder_wins_within, candidate_moves, online_ramsey_number, reference_wins_within,
    MemoEntry, RamseyValue, Solver,
};
pub use verify::{
    verify_lower_exhaustive, verify_lower_with_budget, verify_upper, verify_upper_with_cap,
    Verdict, VerificationReport,
};
