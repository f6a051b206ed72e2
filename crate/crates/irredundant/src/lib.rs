//! Irredundancy analysis for directed graphs.
//!
//! A directed graph is *irredundant* if removing any edge strictly shrinks
//! its reachability relation; equivalently, no edge `(x, y)` has an
//! alternate directed path from `x` to `y`. This crate provides the core
//! graph representation, irredundancy diagnostics with explicit witnesses,
//! the double-edge and triangle contractions with their recurrence bound,
//! the extremal constructions (double trees and oriented complete bipartite
//! graphs), and an exhaustive isomorph-reduced search for the maximum edge
//! count `f(n)` at small `n`.

pub mod bits;
pub mod constructors;
pub mod digraph;
pub mod io;
pub mod irredundance;
pub mod reduction;
pub mod report;
pub mod search;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
