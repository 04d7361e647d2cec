#![no_std]
//! Exchange matrices, seeds and their combinatorics over a tropical semifield: mutation, F-
//! polynomials, c- and g-vectors, G-fans, foldings of acted quivers and exchange graphs.
//!
//! Library indices are 0-based throughout; [`MutationPath`] prints 1-based.

extern crate alloc;

pub mod error;
pub mod exchange;
pub mod fan;
pub mod folding;
pub mod graph;
pub mod laurent;
pub mod matrix;
pub mod path;
pub mod pattern;
pub mod ratfunc;
pub mod recurrence;
pub mod seed;
pub mod tropical;
pub mod walk;
pub mod yhat;

pub use error::{Error, Result};
pub use exchange::{ExchangeMatrix, SssReport};
pub use graph::ExchangeGraph;
pub use laurent::{LaurentPoly, Vars};
pub use matrix::IntMatrix;
pub use path::MutationPath;
pub use pattern::{LockstepPair, PatternNode};
pub use ratfunc::RatFunc;
pub use recurrence::RecurrenceState;
pub use seed::Seed;
pub use tropical::TropicalElement;
