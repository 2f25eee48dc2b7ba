//! Levi-form analysis and Kohn multiplier-ideal chains for polynomial
//! domains in `C^n`.
//!
//! Given a polynomial defining function `r` of a domain `{ r < 0 }`, this
//! crate computes:
//!
//! - the complex Hessian, tangent frames, and the Levi form on a frame, with
//!   pointwise classification (eigen-signature, pseudoconvexity, `Z(q)`, and
//!   the q-convexity margin, the sum of the `q` smallest Levi eigenvalues);
//! - the multiplier-ideal chain on q-forms: form-module matrices, exact
//!   determinantal minors of size `n - q + 1`, radical-closed ideal growth,
//!   and the terminate-or-stabilize dichotomy, with replayable certificates;
//! - the geometry of candidate varieties and submanifolds in the boundary:
//!   Levi kernels, holomorphic dimension, complex tangency, Lie-bracket
//!   flags and finite bracket type, involutivity, and the order of tangency
//!   of parametrized complex manifolds.
//!
//! All symbolic arithmetic is exact over the Gaussian rationals; numeric work
//! (eigenvalues, subspace intersections, sampling) is deterministic for a
//! fixed seed. The `levikohn` binary exposes the same operations over JSON
//! problem files; the `examples/` directory shows one runnable program per
//! capability.

pub mod cli;
pub mod error;
pub mod groebner;
pub mod kohn;
pub mod levi;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod problem;
pub mod rational;
pub mod report;
pub mod variety;

pub use error::{Error, Result};
pub use levi::DefiningFunction;
pub use poly::HermitianPolynomial;
pub use rational::GaussianRational;
