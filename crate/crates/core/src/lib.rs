//! Finite-difference solver and analysis tools for the stationary equation
//!
//! ```text
//! −Δu + aU + bu + φu = F,   U ∈ sign(u)
//! ```
//!
//! with complex coefficients `a`, `b`, a saturated section `U` (`U = u/|u|`
//! where `u ≠ 0`, `|U| ≤ 1` elsewhere), Dirichlet or Neumann boundaries in one
//! or two dimensions, and the Schrödinger–Poisson coupling `φ = e·(−Δ)⁻¹(|u|²/2)`.
//!
//! Entry points: [`solver::solve`] for a single problem, [`poisson::solve_sp`]
//! for the coupled system, [`localization`] for local energy profiles and the
//! ODE comparison lemmas, and [`runner::run`] for config-driven experiments.

// NaN-rejecting guards are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop, clippy::too_many_arguments)]

pub mod coeffs;
pub mod config;
pub mod domain;
pub mod error;
pub mod expr;
pub mod localization;
pub mod poisson;
pub mod report;
pub mod runner;
pub mod saturation;
pub mod scan;
pub mod soliton;
pub mod solver;
pub mod sparse;
