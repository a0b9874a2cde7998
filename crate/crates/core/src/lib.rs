//! Exact Lie-theoretic machinery for deciding when the Kähler–Einstein metric
//! of a classical generalized flag manifold `G/H` is a critical point of the
//! first Laplace eigenvalue, restricted to invariant Kähler metrics of fixed
//! volume.
//!
//! The pipeline is built from four layers:
//!
//! * [`root_systems`] — classical root systems (types A–D) in orthonormal
//!   ambient coordinates, with exact rational arithmetic throughout.
//! * [`flag`] — a parabolic selection `Π₀` splits the roots into isotropy and
//!   tangent parts, producing `δ_m`, the center projection and the T-root
//!   decomposition.
//! * [`extremality`] — the criticality test `Σ_j (μ/β_j − 1) m_j ρ_j = 0`
//!   with `μ = ‖δ_m‖²/dim_ℂ M`, its scalar full-flag reductions, the product
//!   rule and a survey driver.
//! * [`spectrum`] — compact-form structure constants, invariant metrics
//!   `g_ξ`, the torus-restricted operator `D_Ad = −Σ ad(v_i)²`, and the
//!   constrained eigenvalue maximization on `SU(3)/T²`.
//!
//! Verdicts are equalities of rational numbers and never depend on floating
//! point; floats appear only in eigenvalue extraction and one-dimensional
//! optimization.

// Index loops mirror the matrix formulas; iterator rewrites obscure them.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod extremality;
pub mod flag;
pub mod linalg;
pub mod ratio;
pub mod root_systems;
pub mod spectrum;

pub use error::{Error, Result};
pub use ratio::Q;
