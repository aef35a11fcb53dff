//! Rotation alignment without an SVD.
//!
//! This crate finds the rotation `U` maximizing `tr(U M)` for a given 2x2 or
//! 3x3 matrix `M` — the computational core of the constrained orthogonal
//! Procrustes problem and of Wahba's problem. Three routes are provided:
//!
//! - a closed form in 2D ([`planar`]),
//! - Newton iteration on a Cayley parametrization that first symmetrizes
//!   `U M`, then fixes it up with at most one half-turn ([`cayley`],
//!   [`spatial`]), backed by a trigonometric closed-form eigensolver for
//!   symmetric 3x3 matrices ([`spectral3`]),
//! - the classical Kabsch–Umeyama SVD construction as a reference and
//!   fallback ([`svd`]).
//!
//! Every solver's output is checked against an independent characterization
//! of optimality ([`maximality`]): a matrix has maximal trace over rotations
//! iff it is symmetric with at most one negative eigenvalue, that eigenvalue
//! no larger in absolute value than the others.
//!
//! The [`wahba`] module wraps the matrix-level solvers for weighted
//! point-set alignment, and [`batch`] drives large randomized experiments.

pub mod batch;
pub mod cayley;
pub mod error;
pub mod mat;
pub mod maximality;
pub mod planar;
pub mod report;
pub mod spatial;
pub mod spectral3;
pub mod svd;
pub mod wahba;

pub use batch::{generate, run_batch, BatchOptions, BatchRecord, BatchSummary, MatrixKind};
pub use cayley::{newton_symmetrize, solve_spatial, CayleyPoint, NewtonConfig, NewtonStatus};
pub use error::{Error, Result};
pub use mat::{Mat2, Mat3, Vec2, Vec3, DEFAULT_TOL};
pub use maximality::{is_maximal_2d, is_maximal_3d, MaximalityReason, MaximalityVerdict};
pub use planar::{solve_planar, solve_planar_wahba};
pub use report::{SolveReport, Strategy};
pub use spatial::{maximize_by_diagonalization, maximize_symmetric, rotation_about_axis};
pub use spectral3::{spectral_decomposition, SpectralDecomposition3};
pub use svd::{kabsch_umeyama, kabsch_umeyama_2d, svd3, Svd3};
pub use wahba::{WahbaProblem2, WahbaProblem3};
