//! Exact-rational Hochschild cohomology for finite-dimensional associative
//! algebras, with finite-group invariance, polydifferential calculus on
//! polynomial algebras, and formal deformations.
//!
//! Everything is computed over the rationals with exact arithmetic: ranks,
//! cohomology dimensions, class representatives, and deformation terms are
//! all certified by construction, never floating-point estimates.

pub mod algebra;
pub mod cochain;
pub mod cohomology;
pub mod circle;
pub mod deform;
pub mod hkr;
pub mod invariance;
pub mod lie;
pub mod linear_action;
pub mod matrix;
pub mod multidiff;
pub mod poly;
pub mod polyvector;
pub mod cli;
pub mod problem;
pub mod report;
pub mod scalar;
pub mod symbol_solve;

pub use algebra::{AlgebraError, Bimodule, FiniteDimAlgebra};
pub use cochain::{
    differential, gerstenhaber_bracket, ActionError, Cochain, CochainError, GroupAction,
};
pub use matrix::{bareiss_rank, Mat};
pub use scalar::{format_rat, parse_rat, Rat};
