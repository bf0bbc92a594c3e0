//! Exact theta-series invariants of positive definite quadratic forms.
//!
//! A quadratic form is given by its Gram matrix `A` on `Z^n`. From it this
//! crate computes, in exact rational arithmetic and up to a chosen exponent
//! bound `X`:
//!
//! * the theta series `Θ_A = Σ_λ q^{λᵀAλ}` ([`invariants::theta_series`]),
//! * directional derivatives `∂_BΘ_A = Σ_λ (λᵀBλ) q^{λᵀAλ}` ([`invariants::dtheta`]),
//! * the degree-(2,2) invariant `Θ₁,₁` by two independent routes
//!   ([`invariants::theta11_direct`], [`invariants::theta11_harmonic`]),
//! * the Wronskian of the harmonic theta series and its basis-free square
//!   ([`invariants::wronskian`]),
//! * the rank-2 classification of vanishing and degenerate differentials
//!   ([`rank2`]).
//!
//! Every decision (zero / nonzero, equal / different) is a statement about the
//! truncated series: callers choose `X`.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod constructions;
pub mod error;
pub mod harmonic;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod qseries;
pub mod rank2;
pub mod rational;

pub use constructions::NamedLattice;
pub use error::{Error, Result};
pub use harmonic::{SymMatrix, TangentBasis};
pub use lattice::{GramMatrix, LatticeVector};
pub use qseries::QSeries;
pub use rational::Rational;
