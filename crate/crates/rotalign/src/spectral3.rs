//! Closed-form spectral decomposition of a real symmetric 3x3 matrix.
//!
//! Eigenvalues come from the trigonometric solution of the shifted, scaled
//! characteristic cubic; eigenvectors from cross products of the columns of
//! `A - alpha*I`. No iteration anywhere.

use crate::error::{Error, Result};
use crate::mat::{Mat3, Vec3, DEFAULT_TOL};

use std::f64::consts::PI;

/// Threshold deciding when two computed eigenvalues count as one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Branch-selection threshold for the cross-product vectors: a candidate
/// counts as nonzero when its norm exceeds this times `max|C|^2`.
const CROSS_ZERO_TOL: f64 = 1e-12;

/// Threshold below which `C = A - alpha*I` counts as the zero matrix.
const C_ZERO_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateCase {
    Distinct,
    DoubleRoot,
    TripleRoot,
}

/// Intermediates of the trigonometric eigenvalue formula.
#[derive(Clone, Copy, Debug)]
pub struct TrigEigenIntermediates {
    /// `tr(A)/3`.
    pub q: f64,
    /// `sqrt(tr((A - qI)^2) / 6)`, nonnegative; zero iff `A = qI`.
    pub p: f64,
    /// `det((A - qI)/p)`, in `[-2, 2]` up to roundoff. Zero on the `p = 0` path.
    pub det_b: f64,
    /// Angles with `theta[0] >= theta[1] >= theta[2]`, each in `[0, pi]`.
    pub theta: [f64; 3],
}

#[derive(Clone, Copy, Debug)]
pub struct SpectralDecomposition3 {
    /// Ascending eigenvalues.
    pub eigenvalues: [f64; 3],
    /// Orthonormal eigenvectors, `basis[k]` matching `eigenvalues[k]`.
    pub basis: [Vec3; 3],
    pub degenerate_case: DegenerateCase,
}

/// Orthonormal set spanning one eigenspace; the variant reveals the
/// multiplicity the column-space construction detected.
#[derive(Clone, Copy, Debug)]
pub enum EigenspaceBasis {
    /// `A - alpha*I` is zero: the eigenspace is all of R^3.
    Full([Vec3; 3]),
    /// Simple eigenvalue.
    Line(Vec3),
    /// Eigenvalue of multiplicity two; the second field of the pair is the
    /// normalized surviving column of `C`, an eigenvector for the remaining
    /// eigenvalue.
    Plane { basis: [Vec3; 2], complement: Vec3 },
}

fn require_symmetric(a: &Mat3) -> Result<()> {
    if a.is_symmetric(DEFAULT_TOL) {
        Ok(())
    } else {
        Err(Error::NotSymmetric {
            defect: a.symmetry_defect(),
        })
    }
}

/// Ascending eigenvalues of a symmetric 3x3 matrix, in closed form.
///
/// With `q = tr(A)/3` and `p = sqrt(tr((A-qI)^2)/6)`: if `p = 0` the matrix
/// is `q*I` and `q` is a triple eigenvalue. Otherwise `B = (A-qI)/p` has
/// characteristic polynomial `b^3 - 3b - det(B)` with `|det(B)| <= 2`, and
/// the roots are `2 cos(theta_k)` for the three angles solving
/// `cos(3 theta) = det(B)/2`.
pub fn eigenvalues3(a: &Mat3) -> Result<(TrigEigenIntermediates, [f64; 3])> {
    require_symmetric(a)?;
    let q = a.trace() / 3.0;
    let shifted = *a - Mat3::diag(q, q, q);
    let p = ((shifted * shifted).trace() / 6.0).sqrt();
    let scale = 1.0 + a.max_abs();
    if p <= DEFAULT_TOL * scale {
        let inter = TrigEigenIntermediates {
            q,
            p: 0.0,
            det_b: 0.0,
            theta: [0.0; 3],
        };
        return Ok((inter, [q, q, q]));
    }
    let b = shifted.scale(1.0 / p);
    let det_b = b.det();
    // Exactly bounded by 2 in exact arithmetic; roundoff may poke outside.
    let half = (det_b / 2.0).clamp(-1.0, 1.0);
    let theta3 = half.acos() / 3.0;
    let theta2 = 2.0 * PI / 3.0 - theta3;
    let theta1 = 2.0 * PI / 3.0 + theta3;
    let alpha = |t: f64| 2.0 * p * t.cos() + q;
    let inter = TrigEigenIntermediates {
        q,
        p,
        det_b,
        theta: [theta1, theta2, theta3],
    };
    Ok((inter, [alpha(theta1), alpha(theta2), alpha(theta3)]))
}

/// Orthonormal set of eigenvectors spanning the eigenspace of `alpha`.
///
/// Driven entirely by `C = A - alpha*I`: if `C` vanishes the standard basis
/// is returned; if some cross product of column pairs survives, it spans the
/// one-dimensional null space; otherwise the null space is a plane built
/// from the single independent column.
pub fn eigenspace_basis(a: &Mat3, alpha: f64) -> Result<EigenspaceBasis> {
    require_symmetric(a)?;
    let scale = 1.0 + a.max_abs().max(alpha.abs());
    let c = *a - Mat3::diag(alpha, alpha, alpha);
    let residual = c.det().abs();
    if residual > DEFAULT_TOL * scale * scale * scale {
        return Err(Error::NotAnEigenvalue {
            value: alpha,
            residual,
        });
    }
    let c_max = c.max_abs();
    if c_max <= C_ZERO_TOL * scale {
        return Ok(EigenspaceBasis::Full([
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ]));
    }
    let cols = [c.column(0), c.column(1), c.column(2)];
    let candidates = [
        cols[0].cross(cols[1]),
        cols[1].cross(cols[2]),
        cols[2].cross(cols[0]),
    ];
    // Any nonzero candidate is valid; take the largest for robustness.
    let best = candidates
        .iter()
        .copied()
        .max_by(|u, v| u.norm().total_cmp(&v.norm()))
        .unwrap();
    if best.norm() > CROSS_ZERO_TOL * c_max * c_max {
        return Ok(EigenspaceBasis::Line(best.normalized()));
    }
    // Rank-one C: the null space is the plane orthogonal to its one
    // independent column.
    let u = cols
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap();
    let comps = [u.x.abs(), u.y.abs(), u.z.abs()];
    let k = (0..3)
        .max_by(|&i, &j| comps[i].total_cmp(&comps[j]))
        .unwrap();
    let mut w = Vec3::new(1.0, 1.0, 1.0);
    match k {
        0 => w.x = 0.0,
        1 => w.y = 0.0,
        _ => w.z = 0.0,
    }
    let v1 = u.cross(w).normalized();
    let v2 = v1.cross(u).normalized();
    Ok(EigenspaceBasis::Plane {
        basis: [v1, v2],
        complement: u.normalized(),
    })
}

/// Full orthonormal eigendecomposition, eigenvalues ascending.
pub fn spectral_decomposition(a: &Mat3) -> Result<SpectralDecomposition3> {
    let (_, alpha) = eigenvalues3(a)?;
    let tau = CLUSTER_TOL * (1.0 + a.max_abs());
    let degenerate_case = if alpha[2] - alpha[0] <= tau {
        DegenerateCase::TripleRoot
    } else if alpha[1] - alpha[0] <= tau || alpha[2] - alpha[1] <= tau {
        DegenerateCase::DoubleRoot
    } else {
        DegenerateCase::Distinct
    };

    // Near multiple roots the arccos in the eigenvalue formula loses
    // ~sqrt(eps) accuracy, which the cross products then pass on to the
    // eigenvectors. Two refinement rounds recover full precision: polish the
    // basis, take Rayleigh-quotient eigenvalues (quadratically accurate),
    // and reassemble the eigenspaces from those.
    let basis = assemble_basis(a, alpha)?;
    let (alpha, basis) = polish(a, basis);
    let basis = assemble_basis(a, alpha).unwrap_or(basis);
    let (alpha, basis) = polish(a, basis);
    Ok(SpectralDecomposition3 {
        eigenvalues: alpha,
        basis,
        degenerate_case,
    })
}

fn assemble_basis(a: &Mat3, alpha: [f64; 3]) -> Result<[Vec3; 3]> {
    Ok(match eigenspace_basis(a, alpha[0])? {
        EigenspaceBasis::Full(b) => b,
        EigenspaceBasis::Plane {
            basis: [v1, v2],
            complement,
        } => {
            // alpha[0] is double; the surviving column is the alpha[2] vector.
            [v1, v2, complement]
        }
        EigenspaceBasis::Line(v1) => match eigenspace_basis(a, alpha[2])? {
            EigenspaceBasis::Line(v3) => [v1, v3.cross(v1).normalized(), v3],
            EigenspaceBasis::Plane {
                basis: [v2, v3],
                complement: _,
            } => [v1, v2, v3],
            EigenspaceBasis::Full(_) => unreachable!("C was nonzero at alpha[0]"),
        },
    })
}

/// Gram-Schmidt plus one Jacobi sweep plus Rayleigh-quotient eigenvalues,
/// output ascending. The orthogonalization matters: eigenvectors taken at
/// independently-errored eigenvalues need not be quite orthogonal, and
/// Jacobi rotations alone cannot repair that.
fn polish(a: &Mat3, mut basis: [Vec3; 3]) -> ([f64; 3], [Vec3; 3]) {
    basis[0] = basis[0].normalized();
    basis[1] = (basis[1] - basis[0].scale(basis[0].dot(basis[1]))).normalized();
    basis[2] = basis[0]
        .cross(basis[1])
        .scale(basis[0].cross(basis[1]).dot(basis[2]).signum());
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let t_ij = basis[i].dot(a.mul_vec(basis[j]));
        if t_ij == 0.0 {
            continue;
        }
        let t_ii = basis[i].dot(a.mul_vec(basis[i]));
        let t_jj = basis[j].dot(a.mul_vec(basis[j]));
        let theta = 0.5 * (2.0 * t_ij).atan2(t_jj - t_ii);
        let (s, c) = theta.sin_cos();
        let bi = basis[i].scale(c) - basis[j].scale(s);
        let bj = basis[i].scale(s) + basis[j].scale(c);
        basis[i] = bi.normalized();
        basis[j] = bj.normalized();
    }
    let mut pairs: [(f64, Vec3); 3] =
        std::array::from_fn(|i| (basis[i].dot(a.mul_vec(basis[i])), basis[i]));
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    (pairs.map(|(l, _)| l), pairs.map(|(_, v)| v))
}

impl SpectralDecomposition3 {
    /// Eigenvector matrix with `basis[k]` as column `k`.
    pub fn basis_matrix(&self) -> Mat3 {
        Mat3::from_columns(self.basis[0], self.basis[1], self.basis[2])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn um() -> Mat3 {
        Mat3::new([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]])
    }

    fn char_residual(a: &Mat3, alpha: f64) -> f64 {
        (*a - Mat3::diag(alpha, alpha, alpha)).det().abs()
    }

    #[test]
    fn identity_takes_p_zero_path() {
        let (inter, alpha) = eigenvalues3(&Mat3::IDENTITY).unwrap();
        assert_eq!(inter.p, 0.0);
        assert_eq!(alpha, [1.0, 1.0, 1.0]);
    }

    #[test]
    fn tridiagonal_example() {
        let a = um();
        let (inter, alpha) = eigenvalues3(&a).unwrap();
        assert!((inter.q - 2.0).abs() < 1e-15);
        assert!((inter.p - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!(inter.det_b.abs() < 1e-12);
        assert!((inter.theta[2] - PI / 6.0).abs() < 1e-12);
        let s2 = 2.0f64.sqrt();
        for (got, want) in alpha.iter().zip([2.0 - s2, 2.0, 2.0 + s2]) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
            assert!(char_residual(&a, *got) < 1e-10);
        }
    }

    #[test]
    fn diagonal_read_off() {
        let (_, alpha) = eigenvalues3(&Mat3::diag(1.0, 2.0, 3.0)).unwrap();
        for (got, want) in alpha.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_nonsymmetric() {
        let m = Mat3::new([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]]);
        assert!(eigenvalues3(&m).is_err());
    }

    #[test]
    fn eigenspace_branches() {
        match eigenspace_basis(&Mat3::IDENTITY, 1.0).unwrap() {
            EigenspaceBasis::Full(_) => {}
            other => panic!("expected full eigenspace, got {other:?}"),
        }
        let a = Mat3::diag(1.0, 1.0, 2.0);
        match eigenspace_basis(&a, 2.0).unwrap() {
            EigenspaceBasis::Line(v) => {
                let r = a.mul_vec(v) - v.scale(2.0);
                assert!(r.norm() < 1e-12);
                assert!(v.z.abs() > 0.999);
            }
            other => panic!("expected line, got {other:?}"),
        }
        match eigenspace_basis(&a, 1.0).unwrap() {
            EigenspaceBasis::Plane {
                basis: [v1, v2], ..
            } => {
                for v in [v1, v2] {
                    assert!((a.mul_vec(v) - v).norm() < 1e-12);
                    assert!(v.z.abs() < 1e-12);
                }
                assert!(v1.dot(v2).abs() < 1e-12);
            }
            other => panic!("expected plane, got {other:?}"),
        }
    }

    #[test]
    fn eigenvalue_precondition() {
        assert!(eigenspace_basis(&Mat3::diag(1.0, 1.0, 2.0), 1.5).is_err());
    }

    #[test]
    fn decomposition_residuals() {
        let a = um();
        let d = spectral_decomposition(&a).unwrap();
        assert_eq!(d.degenerate_case, DegenerateCase::Distinct);
        for k in 0..3 {
            let r = a.mul_vec(d.basis[k]) - d.basis[k].scale(d.eigenvalues[k]);
            assert!(r.norm() < 1e-10);
        }
        let b = d.basis_matrix();
        let g = b.transpose() * b;
        assert!((g - Mat3::IDENTITY).max_abs() < 1e-10);
    }

    #[test]
    fn perturbed_triple_root() {
        let mut a = Mat3::diag(5.0, 5.0, 5.0);
        a.m[0][1] = 1e-14;
        a.m[1][0] = 1e-14;
        let d = spectral_decomposition(&a).unwrap();
        assert_eq!(d.degenerate_case, DegenerateCase::TripleRoot);
        for k in 0..3 {
            let r = a.mul_vec(d.basis[k]) - d.basis[k].scale(d.eigenvalues[k]);
            assert!(r.norm() < 1e-9);
        }
    }
}
