//! Exact verification of q-supercongruences, terminating basic hypergeometric
//! summations and their p-adic shadows.
//!
//! Sums are reduced in `Q[q] / (Phi_n(q)^2)` (or `[n]^2`), parametric
//! congruences are checked by exact substitution `a = q^{+-n}`, and the
//! `q -> 1` limits are checked modulo `p^2`.

pub mod catalog;
pub mod crosscheck;
pub mod cyclotomic;
pub mod error;
pub mod factored;
pub mod polyarith;
pub mod padic;
pub mod qobjects;
pub mod residue;
pub mod sweep;
pub mod verifier;

pub use error::{Error, Result};
