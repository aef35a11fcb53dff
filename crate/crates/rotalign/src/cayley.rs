//! Symmetrization through the Cayley transform and Newton's method.
//!
//! A rotation without -1 as an eigenvalue is the Cayley transform of a
//! skew-symmetric matrix, so the unknown rotation is parametrized by three
//! numbers `x = (r, s, t)`. With `F(x) = (delta/2) C(A(x))` computed in
//! polynomial form (no inversion), `U M` is symmetric exactly when the three
//! independent entries of `F(x) M - M^T F(x)^T` vanish; Newton's method
//! drives them to zero from `x0 = 0`. Half-turn optima live outside the
//! chart, so failure is an expected outcome handled by the SVD fallback.

use crate::mat::{Mat3, Vec3};
use crate::report::{SolveReport, Strategy};
use crate::spatial::maximize_symmetric;
use crate::svd::kabsch_umeyama;

/// The Newton unknown `(r, s, t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CayleyPoint {
    pub r: f64,
    pub s: f64,
    pub t: f64,
}

impl CayleyPoint {
    pub const ORIGIN: CayleyPoint = CayleyPoint {
        r: 0.0,
        s: 0.0,
        t: 0.0,
    };

    pub fn new(r: f64, s: f64, t: f64) -> Self {
        CayleyPoint { r, s, t }
    }

    /// `1 + r^2 + s^2 + t^2`, always >= 1.
    pub fn delta(&self) -> f64 {
        1.0 + self.r * self.r + self.s * self.s + self.t * self.t
    }

    pub fn norm(&self) -> f64 {
        (self.r * self.r + self.s * self.s + self.t * self.t).sqrt()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonConfig {
    pub max_iters: usize,
    /// Convergence threshold on `||g||`, scaled by `(1 + max|M|)^2`.
    pub g_tolerance: f64,
    /// Reject steps when `|det J|` falls below this times `(1 + max|J|)^3`.
    pub jacobian_guard: f64,
    /// `||x||` beyond this counts as divergence.
    pub divergence_bound: f64,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            max_iters: 50,
            g_tolerance: 1e-12,
            jacobian_guard: 1e-14,
            divergence_bound: 1e8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NewtonStatus {
    Converged,
    JacobianSingular,
    IterationLimit,
    Diverged,
}

#[derive(Clone, Copy, Debug)]
pub struct NewtonOutcome {
    pub status: NewtonStatus,
    pub iterations: usize,
    /// Present only on convergence: `(2/delta) F(x)` at the root.
    pub rotation: Option<Mat3>,
}

/// The skew-symmetric matrix parametrized by `x`.
pub fn skew_from(x: CayleyPoint) -> Mat3 {
    Mat3::new([[0.0, x.r, -x.s], [-x.r, 0.0, x.t], [x.s, -x.t, 0.0]])
}

/// `F(x) = (delta/2) I - A + A^2`, equal to `(delta/2) (I-A)(I+A)^{-1}`
/// without performing any inversion. `(2/delta) F(x)` is a rotation.
pub fn scaled_cayley(x: CayleyPoint) -> Mat3 {
    let a = skew_from(x);
    let h = x.delta() / 2.0;
    Mat3::diag(h, h, h) - a + a * a
}

/// Cayley transform `C(B) = (I-B)(I+B)^{-1}`; involutive where defined.
pub fn cayley_transform(b: &Mat3) -> Option<Mat3> {
    let ipb = Mat3::IDENTITY + *b;
    let imb = Mat3::IDENTITY - *b;
    // columns of (I+B)^{-1} via three solves
    let c0 = ipb.solve(Vec3::new(1.0, 0.0, 0.0))?;
    let c1 = ipb.solve(Vec3::new(0.0, 1.0, 0.0))?;
    let c2 = ipb.solve(Vec3::new(0.0, 0.0, 1.0))?;
    Some(imb * Mat3::from_columns(c0, c1, c2))
}

/// The three independent entries `(u, v, w)` of the skew matrix
/// `F(x) M - M^T F(x)^T`, laid out as `[[0,u,-v],[-u,0,w],[v,-w,0]]`.
pub fn symmetry_gap(x: CayleyPoint, m: &Mat3) -> Vec3 {
    let f = scaled_cayley(x);
    let g = f * *m - m.transpose() * f.transpose();
    Vec3::new(g.m[0][1], g.m[2][0], g.m[1][2])
}

fn partials(x: CayleyPoint) -> [Mat3; 3] {
    let CayleyPoint { r, s, t } = x;
    let f_r = Mat3::diag(r, r, r) - Mat3::new([[0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        + Mat3::new([[-2.0 * r, 0.0, t], [0.0, -2.0 * r, s], [t, s, 0.0]]);
    let f_s = Mat3::diag(s, s, s) - Mat3::new([[0.0, 0.0, -1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        + Mat3::new([[-2.0 * s, t, 0.0], [t, 0.0, r], [0.0, r, -2.0 * s]]);
    let f_t = Mat3::diag(t, t, t) - Mat3::new([[0.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]])
        + Mat3::new([[0.0, s, r], [s, -2.0 * t, 0.0], [r, 0.0, -2.0 * t]]);
    [f_r, f_s, f_t]
}

/// Analytic Jacobian of [`symmetry_gap`] with respect to `(r, s, t)`.
pub fn jacobian(x: CayleyPoint, m: &Mat3) -> Mat3 {
    let mut j = Mat3::ZERO;
    for (col, f_p) in partials(x).into_iter().enumerate() {
        let g_p = f_p * *m - m.transpose() * f_p.transpose();
        j.m[0][col] = g_p.m[0][1];
        j.m[1][col] = g_p.m[2][0];
        j.m[2][col] = g_p.m[1][2];
    }
    j
}

/// Newton iteration from the origin for a rotation `U` with `U*M` symmetric.
pub fn newton_symmetrize(m: &Mat3, cfg: &NewtonConfig) -> NewtonOutcome {
    let gtol = cfg.g_tolerance * (1.0 + m.max_abs()).powi(2);
    let mut x = CayleyPoint::ORIGIN;
    let mut iterations = 0;
    loop {
        let gap = symmetry_gap(x, m);
        if gap.norm() <= gtol {
            let u = scaled_cayley(x).scale(2.0 / x.delta());
            return NewtonOutcome {
                status: NewtonStatus::Converged,
                iterations,
                rotation: Some(u),
            };
        }
        if iterations >= cfg.max_iters {
            return NewtonOutcome {
                status: NewtonStatus::IterationLimit,
                iterations,
                rotation: None,
            };
        }
        let j = jacobian(x, m);
        let guard = cfg.jacobian_guard * (1.0 + j.max_abs()).powi(3);
        if j.det().abs() < guard {
            return NewtonOutcome {
                status: NewtonStatus::JacobianSingular,
                iterations,
                rotation: None,
            };
        }
        let step = j.solve(gap).expect("determinant already checked");
        x = CayleyPoint::new(x.r - step.x, x.s - step.y, x.t - step.z);
        iterations += 1;
        if x.norm() > cfg.divergence_bound || !x.delta().is_finite() {
            return NewtonOutcome {
                status: NewtonStatus::Diverged,
                iterations,
                rotation: None,
            };
        }
    }
}

/// End-to-end 3D solve: symmetrize by Newton, finish with the half-turn
/// maximizer, and fall back to the SVD route on any failure (or when
/// `svd_only` skips Newton entirely).
pub fn solve_spatial(m: &Mat3, cfg: &NewtonConfig, svd_only: bool) -> SolveReport<Mat3> {
    use crate::mat::DEFAULT_TOL;
    use crate::maximality::is_maximal_3d;

    let svd_solve = |iterations: usize, fell_back: bool| {
        let u = kabsch_umeyama(m);
        SolveReport {
            rotation: u,
            achieved_trace: (u * *m).trace(),
            residual: None,
            strategy: Strategy::SvdKabschUmeyama,
            newton_iterations: iterations,
            fell_back,
        }
    };
    if svd_only {
        return svd_solve(0, false);
    }
    let outcome = newton_symmetrize(m, cfg);
    let Some(u) = outcome.rotation else {
        return svd_solve(outcome.iterations, true);
    };
    // The converged g leaves a skew part below tolerance; drop it so the
    // spectral step sees an exactly symmetric matrix.
    let symmetric = (u * *m).symmetrized();
    match maximize_symmetric(&symmetric) {
        Ok((r, _)) => {
            let total = r * u;
            let product = total * *m;
            if is_maximal_3d(&product, DEFAULT_TOL).is_maximal {
                SolveReport {
                    rotation: total,
                    achieved_trace: product.trace(),
                    residual: None,
                    strategy: Strategy::NewtonThenSpectral,
                    newton_iterations: outcome.iterations,
                    fell_back: false,
                }
            } else {
                svd_solve(outcome.iterations, true)
            }
        }
        Err(_) => svd_solve(outcome.iterations, true),
    }
}
