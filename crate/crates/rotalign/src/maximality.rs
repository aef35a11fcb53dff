//! Tests deciding whether a matrix is of maximal trace over rotation (or
//! orthogonal) matrices, with improving rotations as witnesses when it is not.
//!
//! A matrix is of maximal trace over rotations iff it is symmetric with at
//! most one negative eigenvalue, that eigenvalue no larger in absolute value
//! than the others. In 2D this reduces to a sign test on the trace; in 3D to
//! positive semidefiniteness of `tr(A)I - A`, checked through principal
//! minors so the test stays independent of the eigensolver.

use crate::error::{Error, Result};
use crate::mat::{Mat2, Mat3, Vec3, DEFAULT_TOL};
use crate::spectral3::spectral_decomposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalityReason {
    Nonsymmetric,
    TraceNegative2d,
    PsdTestFailed3d,
    EigenConditionFailed,
    Maximal,
}

/// Verdict of a maximality test. A witness, when present, is a rotation `W`
/// with `tr(W*A) > tr(A)`.
#[derive(Clone, Copy, Debug)]
pub struct MaximalityVerdict<M> {
    pub is_maximal: bool,
    pub witness: Option<M>,
    pub reason: MaximalityReason,
}

impl<M> MaximalityVerdict<M> {
    fn maximal() -> Self {
        MaximalityVerdict {
            is_maximal: true,
            witness: None,
            reason: MaximalityReason::Maximal,
        }
    }

    fn failed(reason: MaximalityReason, witness: Option<M>) -> Self {
        MaximalityVerdict {
            is_maximal: false,
            witness,
            reason,
        }
    }
}

/// Givens rotation `G(k,l,theta)` that strictly increases the trace of a
/// matrix whose `(l,k)/(k,l)` entries differ. With `a = a_ll + a_kk`,
/// `b = a_lk - a_kl` and `c = sqrt(a^2 + b^2)`, choosing `cos(theta) = a/c`,
/// `sin(theta) = b/c` gives `tr(G*A) - tr(A) = c - a > 0`.
///
/// Indices are zero-based and require `k > l`.
pub fn givens_improvement(a: &Mat3, k: usize, l: usize) -> Result<Mat3> {
    if k <= l || k >= 3 {
        return Err(Error::InvalidIndices { k, l, dim: 3 });
    }
    let av = a.m[l][l] + a.m[k][k];
    let bv = a.m[l][k] - a.m[k][l];
    if bv == 0.0 {
        return Err(Error::NoImprovementDirection { k, l });
    }
    let c = av.hypot(bv);
    let mut g = Mat3::IDENTITY;
    g.m[l][l] = av / c;
    g.m[k][k] = av / c;
    g.m[l][k] = -bv / c;
    g.m[k][l] = bv / c;
    Ok(g)
}

/// 2x2 version of [`givens_improvement`] (the only plane is `(k,l) = (1,0)`).
pub fn givens_improvement_2d(a: &Mat2) -> Result<Mat2> {
    let av = a.m[0][0] + a.m[1][1];
    let bv = a.m[0][1] - a.m[1][0];
    if bv == 0.0 {
        return Err(Error::NoImprovementDirection { k: 1, l: 0 });
    }
    let c = av.hypot(bv);
    Ok(Mat2::new([[av / c, -bv / c], [bv / c, av / c]]))
}

/// A 2x2 symmetric matrix is of maximal trace over rotations iff its trace
/// is nonnegative.
pub fn is_maximal_2d(a: &Mat2, tol: f64) -> MaximalityVerdict<Mat2> {
    let scale = tol * (1.0 + a.max_abs());
    if !a.is_symmetric(tol) {
        return MaximalityVerdict::failed(
            MaximalityReason::Nonsymmetric,
            givens_improvement_2d(a).ok(),
        );
    }
    if a.trace() >= -scale {
        MaximalityVerdict::maximal()
    } else {
        // negative trace: the half-turn flips its sign
        let half_turn = Mat2::diag(-1.0, -1.0);
        MaximalityVerdict::failed(MaximalityReason::TraceNegative2d, Some(half_turn))
    }
}

fn principal_minors_psd(s: &Mat3, tol: f64) -> bool {
    let scale = 1.0 + s.max_abs();
    let minor2 = |i: usize, j: usize| s.m[i][i] * s.m[j][j] - s.m[i][j] * s.m[j][i];
    // Leading minors first: positive definiteness needs only these three.
    let lead = [s.m[0][0], minor2(0, 1), s.det()];
    if lead.iter().all(|&m| m > 0.0) {
        return true;
    }
    // Semidefiniteness needs all seven principal minors.
    let ok1 = (0..3).all(|i| s.m[i][i] >= -tol * scale);
    let ok2 = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .all(|&(i, j)| minor2(i, j) >= -tol * scale * scale);
    let ok3 = s.det() >= -tol * scale * scale * scale;
    ok1 && ok2 && ok3
}

/// A 3x3 symmetric matrix is of maximal trace over rotations iff
/// `S = tr(A)I - A` is positive semidefinite.
pub fn is_maximal_3d(a: &Mat3, tol: f64) -> MaximalityVerdict<Mat3> {
    if !a.is_symmetric(tol) {
        // improve in the plane with the largest asymmetry
        let pairs = [(1usize, 0usize), (2, 0), (2, 1)];
        let (k, l) = pairs
            .into_iter()
            .max_by(|&(k1, l1), &(k2, l2)| {
                (a.m[l1][k1] - a.m[k1][l1])
                    .abs()
                    .total_cmp(&(a.m[l2][k2] - a.m[k2][l2]).abs())
            })
            .unwrap();
        return MaximalityVerdict::failed(
            MaximalityReason::Nonsymmetric,
            givens_improvement(a, k, l).ok(),
        );
    }
    let t = a.trace();
    let s = Mat3::diag(t, t, t) - *a;
    if principal_minors_psd(&s, tol) {
        MaximalityVerdict::maximal()
    } else {
        let witness = householder_witness(a, tol).ok().flatten().map(|(_, v)| v);
        MaximalityVerdict::failed(MaximalityReason::PsdTestFailed3d, witness)
    }
}

/// Same decision as [`is_maximal_3d`] but through the eigenvalue condition:
/// at most one negative eigenvalue, no larger in absolute value than the
/// others. Used to cross-check the principal-minor route.
pub fn is_maximal_3d_by_eigenvalues(a: &Mat3, tol: f64) -> Result<MaximalityVerdict<Mat3>> {
    if !a.is_symmetric(tol) {
        return Ok(MaximalityVerdict::failed(
            MaximalityReason::Nonsymmetric,
            None,
        ));
    }
    let d = spectral_decomposition(a)?;
    let scale = tol * (1.0 + a.max_abs());
    let [a1, a2, a3] = d.eigenvalues;
    // ascending order: only a1 may be negative, and |a1| <= a2, a3
    let ok = a2 >= -scale && (a1 >= -scale || -a1 <= a2.min(a3) + scale);
    if ok {
        Ok(MaximalityVerdict::maximal())
    } else {
        Ok(MaximalityVerdict::failed(
            MaximalityReason::EigenConditionFailed,
            None,
        ))
    }
}

/// Maximality over the full orthogonal group: symmetric and positive
/// semidefinite (all principal minors nonnegative).
pub fn is_maximal_orthogonal_3d(a: &Mat3, tol: f64) -> bool {
    a.is_symmetric(tol) && principal_minors_psd(a, tol)
}

pub fn is_maximal_orthogonal_2d(a: &Mat2, tol: f64) -> bool {
    if !a.is_symmetric(tol) {
        return false;
    }
    let scale = 1.0 + a.max_abs();
    a.m[0][0] >= -tol * scale && a.m[1][1] >= -tol * scale && a.det() >= -tol * scale * scale
}

/// Householder-style improving rotation for a symmetric matrix failing the
/// 3D maximality test.
///
/// If `S = tr(A)I - A` has a direction with `v^T S v < 0`, then `V = 2vv^T - I`
/// is a rotation with `tr(V*A) > tr(A)`. The steepest such direction is the
/// eigenvector of `S` for its most negative eigenvalue. Returns `None` when
/// `S` is positive semidefinite.
pub fn householder_witness(a: &Mat3, tol: f64) -> Result<Option<(Vec3, Mat3)>> {
    if !a.is_symmetric(tol) {
        return Err(Error::NotSymmetric {
            defect: a.symmetry_defect(),
        });
    }
    let t = a.trace();
    let s = Mat3::diag(t, t, t) - *a;
    let d = spectral_decomposition(&s)?;
    let lambda_min = d.eigenvalues[0];
    if lambda_min < -tol * (1.0 + s.max_abs()) {
        let v = d.basis[0];
        let reflection = Mat3::outer(v, v).scale(2.0) - Mat3::IDENTITY;
        Ok(Some((v, reflection)))
    } else {
        Ok(None)
    }
}

/// Shared default used by the callers that do not thread a tolerance.
pub fn default_tol() -> f64 {
    DEFAULT_TOL
}
