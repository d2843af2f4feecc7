//! The lamplighter-group programming language: four instructions (`t`, `r`,
//! `l`, `[E]`) over an infinite bit tape, whose loop-free fragments form the
//! lamplighter group `(Z/2Z) wr Z`.
//!
//! The crate provides exact group algebra and word norms ([`group`]), exact
//! truncated power series for the growth and program-counting generating
//! functions ([`series`]), a parser and interpreter ([`lang`]), static
//! analysis and a normalizing rewrite system ([`analysis`]), canonical
//! program enumeration at several pruning levels ([`enumerate`]), and
//! shortest-program search ([`search`]).
//!
//! With the `parallel` feature (on by default) the bulk operations
//! (enumeration counting, semantic tabulation sweeps, the equivalence census)
//! run on rayon; without it they fall back to equivalent sequential code.

pub mod analysis;
pub mod enumerate;
pub mod group;
pub mod lang;
pub mod search;
pub mod series;

mod par;

pub use analysis::{BitWindow, SemanticTable, ShiftClass};
pub use enumerate::PruneLevel;
pub use group::{GroupElement, LampState, Word};
pub use lang::{Node, Outcome, Program, Tape};
pub use series::Series;
