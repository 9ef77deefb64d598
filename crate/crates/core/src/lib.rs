//! Exact and certified arithmetic for the Diophantine equations
//! `F_k = L_m * L_n` and `L_k = F_m * F_n`.
//!
//! The crate is a pipeline of five pieces:
//!
//! * [`sequences`] — exact Fibonacci/Lucas values (fast doubling) plus the
//!   growth inequalities that sandwich them between powers of the golden
//!   ratio.
//! * [`algebraic`] — exact arithmetic in `Q(sqrt 5)`: canonical field
//!   elements, minimal polynomials, logarithmic heights, multiplicative
//!   dependence.
//! * [`bounds`] — evaluation of the Matveev lower bound for linear forms in
//!   logarithms and the chaining machinery that turns it into explicit index
//!   bounds.
//! * [`reduction`] — certified interval reals, continued fractions, and the
//!   Dujella-Petho reduction step that shrinks the Matveev bounds.
//! * [`search`] — exhaustive enumeration of solutions over the reduced
//!   ranges, the common-term and square-case corollaries, and cross-checks
//!   against earlier published claims.
//!
//! Everything that decides an inequality goes through [`real::CertifiedReal`],
//! an interval with arbitrary-precision dyadic endpoints: a comparison is
//! answered only when every value in the interval agrees, and callers
//! escalate precision otherwise. Integer facts (solution triples, minimal
//! polynomials, convergent recurrences) are decided in exact big-integer or
//! field arithmetic and never through floating point.
//!
//! The crate is `no_std` (alloc only); IO, the CLI, and report formats live
//! in the companion `fibluc-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebraic;
pub mod bounds;
pub mod error;
pub mod expr;
pub mod real;
pub mod reduction;
pub mod reference;
pub mod search;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use real::{CertifiedReal, Precision};
