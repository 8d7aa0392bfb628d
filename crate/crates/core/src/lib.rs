//! Satisfiability games for the branching-time logics CTL, CTL+ and CTL*.
//!
//! The pipeline: parse and normalize the input, build its Fischer-Ladner
//! table, unfold the formula with the game rules into a configuration graph,
//! run a deterministic acceptance automaton for the winning condition
//! alongside it, solve the resulting parity or Büchi game, and turn a
//! winning strategy for player 0 into a finite model.

pub mod arena;
pub mod automata;
pub mod formula;
pub mod game;
pub mod model;
pub mod solve;
pub mod winning;

pub use formula::{classify_fragment, parse, to_nnf, Ast, Fragment};
pub use solve::{solve, SolveError, SolveOptions, SolveReport, Verdict};
