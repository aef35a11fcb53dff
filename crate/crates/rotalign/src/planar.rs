//! Closed-form solution of the 2D trace-maximization / alignment problems.
//!
//! For a 2x2 matrix `M` the optimal rotation depends only on `a = m11 + m22`
//! and `b = m21 - m12`: if both vanish every rotation achieves the same
//! trace and the identity is returned; otherwise the rotation with
//! `cos = a/c`, `sin = -b/c` (`c = sqrt(a^2+b^2)`) achieves trace `c`, the
//! maximum, and makes `U*M` symmetric.

use crate::error::{Error, Result};
use crate::mat::{Mat2, Vec2};

/// Absolute tolerance factor for the `a = b = 0` degeneracy test. Near the
/// degenerate point the trace is nearly constant over all rotations, so
/// misclassification is harmless.
const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
pub struct PlanarCoefficients {
    pub a: f64,
    pub b: f64,
    /// `sqrt(a^2 + b^2)`; the achievable maximum of `tr(U*M)` when nonzero.
    pub c: f64,
}

pub fn planar_coefficients(m: &Mat2) -> PlanarCoefficients {
    let a = m.m[0][0] + m.m[1][1];
    let b = m.m[1][0] - m.m[0][1];
    PlanarCoefficients {
        a,
        b,
        c: a.hypot(b),
    }
}

/// Rotation maximizing `tr(U*m)` over all 2x2 rotations.
pub fn solve_planar(m: &Mat2) -> Mat2 {
    let co = planar_coefficients(m);
    if co.c <= DEGENERATE_TOL * (1.0 + m.max_abs()) {
        return Mat2::IDENTITY;
    }
    Mat2::new([[co.a / co.c, co.b / co.c], [-co.b / co.c, co.a / co.c]])
}

/// Rotation minimizing the weighted alignment error
/// `sum_i w_i * ||U q_i - p_i||^2` for planar point sets.
pub fn solve_planar_wahba(p: &[Vec2], q: &[Vec2], w: &[f64]) -> Result<Mat2> {
    if p.len() != q.len() || p.len() != w.len() || p.is_empty() {
        return Err(Error::LengthMismatch {
            p: p.len(),
            q: q.len(),
            w: w.len(),
        });
    }
    if let Some((i, &value)) = w.iter().enumerate().find(|(_, &x)| x < 0.0) {
        return Err(Error::NegativeWeight { index: i, value });
    }
    // a, b assembled directly from the weighted sums; equivalent to forming
    // the profile matrix Q W P^T first.
    let mut m = Mat2::ZERO;
    for ((pi, qi), wi) in p.iter().zip(q).zip(w) {
        m = m + Mat2::outer(*qi, *pi).scale(*wi);
    }
    Ok(solve_planar(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::DEFAULT_TOL;

    fn sweep_max_trace(m: &Mat2, steps: usize) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for k in 0..steps {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
            best = best.max((Mat2::rotation(theta) * *m).trace());
        }
        best
    }

    #[test]
    fn coefficient_examples() {
        let c = planar_coefficients(&Mat2::IDENTITY);
        assert_eq!((c.a, c.b, c.c), (2.0, 0.0, 2.0));
        let c = planar_coefficients(&Mat2::new([[0.0, -1.0], [1.0, 0.0]]));
        assert_eq!((c.a, c.b, c.c), (0.0, 2.0, 2.0));
        let c = planar_coefficients(&Mat2::new([[3.0, 1.0], [2.0, 1.0]]));
        assert_eq!((c.a, c.b), (4.0, 1.0));
        assert!((c.c - 17.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_returns_identity() {
        // a = b = 0: trace is flat over all rotations
        let m = Mat2::new([[1.0, 2.0], [2.0, -1.0]]);
        assert_eq!(solve_planar(&m), Mat2::IDENTITY);
        let flat = sweep_max_trace(&m, 1000);
        assert!(flat.abs() < 1e-12);
    }

    #[test]
    fn skew_case() {
        let m = Mat2::new([[0.0, -1.0], [1.0, 0.0]]);
        let u = solve_planar(&m);
        assert_eq!(u, Mat2::new([[0.0, 1.0], [-1.0, 0.0]]));
        assert!(((u * m).trace() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn achieves_swept_maximum() {
        let m = Mat2::new([[3.0, 1.0], [2.0, 1.0]]);
        let u = solve_planar(&m);
        assert!(u.is_rotation(DEFAULT_TOL));
        let achieved = (u * m).trace();
        assert!((achieved - 17.0f64.sqrt()).abs() < 1e-12);
        assert!(achieved + 1e-12 >= sweep_max_trace(&m, 1_000_000));
        assert!((u * m).is_symmetric(DEFAULT_TOL));
    }

    #[test]
    fn wahba_examples() {
        let p = [Vec2::new(1.0, 0.0)];
        let u = solve_planar_wahba(&p, &p, &[1.0]).unwrap();
        assert_eq!(u, Mat2::IDENTITY);

        let q = [Vec2::new(0.0, 1.0)];
        let u = solve_planar_wahba(&p, &q, &[1.0]).unwrap();
        let aligned = u.mul_vec(q[0]) - p[0];
        assert!(aligned.norm() < 1e-15);

        // zero weight makes the second pair irrelevant
        let p2 = [Vec2::new(1.0, 0.0), Vec2::new(5.0, 5.0)];
        let q2 = [Vec2::new(1.0, 0.0), Vec2::new(-3.0, 7.0)];
        let u = solve_planar_wahba(&p2, &q2, &[1.0, 0.0]).unwrap();
        assert_eq!(u, Mat2::IDENTITY);
    }

    #[test]
    fn wahba_validation() {
        let p = [Vec2::new(1.0, 0.0)];
        assert!(solve_planar_wahba(&p, &p, &[1.0, 2.0]).is_err());
        assert!(solve_planar_wahba(&p, &p, &[-1.0]).is_err());
        assert!(solve_planar_wahba(&[], &[], &[]).is_err());
    }
}
