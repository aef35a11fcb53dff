//! SVD-based reference solver.
//!
//! The 3x3 SVD is assembled from the spectral decomposition of `M^T M`
//! rather than an iterative bidiagonalization. Going through `M^T M` loses
//! roughly half the floating-point precision for tiny singular values,
//! which is acceptable here: the algorithm only needs the correct sign
//! branch and eigenvector directions, and residual tolerances downstream
//! are set at 1e-8 accordingly.

use crate::mat::{Mat2, Mat3, Vec2, Vec3};
use crate::spectral3::spectral_decomposition;

/// Relative threshold under which a singular value counts as zero and the
/// corresponding left column is completed instead of divided out.
const SIGMA_ZERO_TOL: f64 = 1e-9;

/// `m = v * diag(s) * r^T` with `v`, `r` orthogonal and `s` descending,
/// nonnegative.
#[derive(Clone, Copy, Debug)]
pub struct Svd3 {
    pub v: Mat3,
    pub s: [f64; 3],
    pub r: Mat3,
}

impl Svd3 {
    pub fn reconstruct(&self) -> Mat3 {
        self.v * Mat3::diag(self.s[0], self.s[1], self.s[2]) * self.r.transpose()
    }
}

fn orthonormal_completion(existing: &[Vec3]) -> Vec3 {
    if existing.len() == 2 {
        return existing[0].cross(existing[1]).normalized();
    }
    // Gram-Schmidt against whatever is there, seeded from the standard
    // basis vector least aligned with it.
    let std_basis = [
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
    ];
    let mut best = std_basis[0];
    let mut best_res = -1.0;
    for e in std_basis {
        let mut res = e;
        for u in existing {
            res = res - u.scale(u.dot(e));
        }
        if res.norm() > best_res {
            best_res = res.norm();
            best = res;
        }
    }
    best.normalized()
}

/// Singular value decomposition of a 3x3 matrix via the eigenpairs of
/// `M^T M`. Orientation of columns paired with zero singular values is an
/// arbitrary orthonormal completion.
pub fn svd3(m: &Mat3) -> Svd3 {
    let a = m.transpose() * *m;
    // M^T M is symmetric by construction; symmetrize to absorb roundoff.
    let d = spectral_decomposition(&a.symmetrized()).expect("gram matrix is symmetric");
    // Refine each singular value as ||M r_k||: the eigenvalue route squares
    // the conditioning, the norm route does not.
    let mut pairs: [(f64, Vec3); 3] =
        std::array::from_fn(|k| (m.mul_vec(d.basis[k]).norm(), d.basis[k]));
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    let s = pairs.map(|(sigma, _)| sigma);
    let right = pairs.map(|(_, r)| r);
    let mut left: [Option<Vec3>; 3] = [None, None, None];
    for k in 0..3 {
        if s[k] > SIGMA_ZERO_TOL * s[0] && s[k] > 0.0 {
            left[k] = Some(m.mul_vec(right[k]).scale(1.0 / s[k]));
        }
    }
    for k in 0..3 {
        if left[k].is_none() {
            let existing: Vec<Vec3> = left.iter().flatten().copied().collect();
            left[k] = Some(orthonormal_completion(&existing));
        }
    }
    Svd3 {
        v: Mat3::from_columns(left[0].unwrap(), left[1].unwrap(), left[2].unwrap()),
        s,
        r: Mat3::from_columns(right[0], right[1], right[2]),
    }
}

/// Rotation maximizing `tr(U*m)`: `U = R * diag(1, 1, sign) * V^T` with the
/// sign chosen from `det(V R)`.
pub fn kabsch_umeyama(m: &Mat3) -> Mat3 {
    let svd = svd3(m);
    let sign = if (svd.v * svd.r).det() > 0.0 {
        1.0
    } else {
        -1.0
    };
    svd.r * Mat3::diag(1.0, 1.0, sign) * svd.v.transpose()
}

/// 2x2 counterpart through the closed-form eigenpairs of `M^T M`; used as an
/// independent cross-check of the planar closed form.
pub fn kabsch_umeyama_2d(m: &Mat2) -> Mat2 {
    let a = m.transpose() * *m;
    // symmetric 2x2 eigenpairs in closed form, descending
    let (a11, a12, a22) = (a.m[0][0], (a.m[0][1] + a.m[1][0]) / 2.0, a.m[1][1]);
    let mean = (a11 + a22) / 2.0;
    let half_gap = ((a11 - a22) / 2.0).hypot(a12);
    let l1 = mean + half_gap;
    let l2 = (mean - half_gap).max(0.0);
    let r1 = if (l1 - a11).abs() > a12.abs() {
        Vec2::new(a12, l1 - a11)
    } else {
        Vec2::new(l1 - a22, a12)
    };
    let r1 = if r1.norm() > 0.0 {
        Vec2::new(r1.x / r1.norm(), r1.y / r1.norm())
    } else {
        Vec2::new(1.0, 0.0)
    };
    let r2 = Vec2::new(-r1.y, r1.x);
    let s = [l1.max(0.0).sqrt(), l2.sqrt()];
    let v1 = if s[0] > 0.0 {
        let u = m.mul_vec(r1);
        Vec2::new(u.x / s[0], u.y / s[0])
    } else {
        Vec2::new(1.0, 0.0)
    };
    let v2 = if s[1] > SIGMA_ZERO_TOL * s[0] {
        let u = m.mul_vec(r2);
        Vec2::new(u.x / s[1], u.y / s[1])
    } else {
        Vec2::new(-v1.y, v1.x)
    };
    let v = Mat2::new([[v1.x, v2.x], [v1.y, v2.y]]);
    let r = Mat2::new([[r1.x, r2.x], [r1.y, r2.y]]);
    let sign = if (v * r).det() > 0.0 { 1.0 } else { -1.0 };
    r * Mat2::diag(1.0, sign) * v.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::DEFAULT_TOL;
    use crate::maximality::is_maximal_3d;
    use crate::planar::planar_coefficients;

    fn assert_valid_svd(m: &Mat3, svd: &Svd3, tol: f64) {
        assert!(svd.s[0] >= svd.s[1] && svd.s[1] >= svd.s[2] && svd.s[2] >= 0.0);
        let scale = 1.0 + m.max_abs();
        assert!((svd.reconstruct() - *m).max_abs() <= tol * scale);
        for q in [svd.v, svd.r] {
            assert!((q.transpose() * q - Mat3::IDENTITY).max_abs() <= tol * scale);
        }
    }

    #[test]
    fn identity_svd() {
        let svd = svd3(&Mat3::IDENTITY);
        assert_eq!(svd.s, [1.0, 1.0, 1.0]);
        assert!((svd.v * svd.r.transpose() - Mat3::IDENTITY).max_abs() < 1e-12);
    }

    #[test]
    fn diagonal_singular_values_are_sorted_magnitudes() {
        let m = Mat3::diag(3.0, -2.0, 1.0);
        let svd = svd3(&m);
        for (got, want) in svd.s.iter().zip([3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-8);
        }
        assert_valid_svd(&m, &svd, 1e-8);
    }

    #[test]
    fn rank_one_completion_path() {
        let m = Mat3::outer(Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0));
        let svd = svd3(&m);
        assert!((svd.s[0] - 1.0).abs() < 1e-8);
        assert!(svd.s[1] < 1e-8 && svd.s[2] < 1e-8);
        assert_valid_svd(&m, &svd, 1e-8);
    }

    #[test]
    fn trace_matches_worked_example() {
        // nonsymmetric matrix whose maximal-trace companion has trace 6
        let m = Mat3::new([[-2.0, -1.0, 0.0], [-1.0, -2.0, -1.0], [0.0, 1.0, 2.0]]);
        let u = kabsch_umeyama(&m);
        assert!(u.is_rotation(DEFAULT_TOL));
        assert!(((u * m).trace() - 6.0).abs() < 1e-9);
        assert!(is_maximal_3d(&(u * m), 1e-8).is_maximal);
    }

    #[test]
    fn maximal_input_keeps_its_trace() {
        let um = Mat3::new([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]]);
        let u = kabsch_umeyama(&um);
        assert!(((u * um).trace() - um.trace()).abs() < 1e-9);
    }

    #[test]
    fn reflection_branch() {
        // det < 0: the achieved trace is sigma1 + sigma2 - sigma3 = 1
        let m = Mat3::diag(1.0, 1.0, -1.0);
        let u = kabsch_umeyama(&m);
        assert!(u.is_rotation(DEFAULT_TOL));
        assert!(((u * m).trace() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn planar_cross_check() {
        for m in [
            Mat2::IDENTITY,
            Mat2::new([[3.0, 1.0], [2.0, 1.0]]),
            Mat2::new([[0.3, -0.9], [0.4, 0.1]]),
            Mat2::new([[1.0, 2.0], [2.0, -1.0]]), // a = b = 0, flat trace
        ] {
            let u = kabsch_umeyama_2d(&m);
            assert!(u.is_rotation(1e-8), "{m:?}");
            let c = planar_coefficients(&m).c;
            assert!(((u * m).trace() - c).abs() < 1e-8, "{m:?}");
        }
    }
}
