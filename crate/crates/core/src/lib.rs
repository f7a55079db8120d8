//! Core library for online Ramsey games on edge-colored graphs: the board
//! and pattern detection, the referee, Builder and Painter strategies, and
//! the exhaustive solver and verifiers.

pub mod builder;
pub mod engine;
pub mod graph;
pub mod painter;
pub mod solver;
