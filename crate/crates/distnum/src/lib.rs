//! Exact distinguishing numbers of permutation-group actions and small
//! graphs.
//!
//! A `d`-labeling of the point set is *distinguishing* when no non-identity
//! group element preserves it; the distinguishing number `D(G, X)` is the
//! least such `d`. This crate provides a small permutation-group engine
//! (full element enumeration, desk scale), builders for the actions of
//! symmetric groups with orbit sizes in `{1, 2, n, 2n}` and their
//! exceptional relatives, an exact backtracking solver with a canonical
//! lexicographically-least witness, the closed-form predictor, graph
//! automorphism machinery, and a verification harness.

pub mod constructions;
pub mod distinguishing;
pub mod error;
pub mod graphs;
pub mod group;
pub mod iso;
pub mod perm;
pub mod report;

pub use error::{Error, Result};
