//! SVD-free maximization for symmetric 3x3 matrices.
//!
//! Both routes rest on the spectral decomposition: the default needs only
//! the top eigenpair (a half-turn about the dominant eigenvector), the
//! second flips the signs of an even number of eigenvalues through the full
//! eigenbasis.

use crate::error::Result;
use crate::mat::{Mat3, Vec3, DEFAULT_TOL};
use crate::maximality::is_maximal_3d;
use crate::spectral3::spectral_decomposition;

/// Rotation by `theta` about the unit axis `w` (counterclockwise,
/// right-hand rule).
pub fn rotation_about_axis(w: Vec3, theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    let k = 1.0 - c;
    Mat3::new([
        [
            c + w.x * w.x * k,
            w.x * w.y * k - w.z * s,
            w.x * w.z * k + w.y * s,
        ],
        [
            w.y * w.x * k + w.z * s,
            c + w.y * w.y * k,
            w.y * w.z * k - w.x * s,
        ],
        [
            w.z * w.x * k - w.y * s,
            w.z * w.y * k + w.x * s,
            c + w.z * w.z * k,
        ],
    ])
}

/// Half-turn `2ww^T - I` about the dominant eigenvector.
///
/// If `a` is already maximal the identity is returned; otherwise the
/// half-turn about a unit eigenvector for the largest eigenvalue makes the
/// product maximal.
pub fn maximize_symmetric(a: &Mat3) -> Result<(Mat3, Mat3)> {
    if is_maximal_3d(a, DEFAULT_TOL).is_maximal {
        return Ok((Mat3::IDENTITY, *a));
    }
    let d = spectral_decomposition(a)?;
    let r_hat = d.basis[2];
    let w = Mat3::outer(r_hat, r_hat).scale(2.0) - Mat3::IDENTITY;
    Ok((w, w * *a))
}

/// Sign-flip maximizer through a full diagonalization.
///
/// Negative eigenvalues are flipped; if their count is odd the membership
/// of the smallest-magnitude eigenvalue is toggled so the flip set stays
/// even and the conjugated sign matrix is a rotation.
pub fn maximize_by_diagonalization(a: &Mat3) -> Result<(Mat3, Mat3)> {
    let d = spectral_decomposition(a)?;
    let mut flip = [false; 3];
    for (f, &alpha) in flip.iter_mut().zip(&d.eigenvalues) {
        *f = alpha < 0.0;
    }
    if flip.iter().filter(|&&f| f).count() % 2 == 1 {
        let mags = d.eigenvalues.map(f64::abs);
        // ties broken toward the lowest index
        let k = (0..3).min_by(|&i, &j| mags[i].total_cmp(&mags[j])).unwrap();
        flip[k] = !flip[k];
    }
    let b = d.basis_matrix();
    let g = Mat3::diag(
        if flip[0] { -1.0 } else { 1.0 },
        if flip[1] { -1.0 } else { 1.0 },
        if flip[2] { -1.0 } else { 1.0 },
    );
    let w = b * g * b.transpose();
    Ok((w, w * *a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn already_maximal_is_untouched() {
        let um = Mat3::new([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]]);
        let (r, out) = maximize_symmetric(&um).unwrap();
        assert_eq!(r, Mat3::IDENTITY);
        assert_eq!(out, um);
    }

    #[test]
    fn half_turn_on_strongly_negative_axis() {
        let a = Mat3::diag(1.0, 1.0, -5.0);
        let (r, out) = maximize_symmetric(&a).unwrap();
        assert!(r.is_rotation(DEFAULT_TOL));
        // max trace is 1 + 1 + 5 (the smallest singular value flips sign)
        assert!((out.trace() - 5.0).abs() < 1e-10);
        assert!(is_maximal_3d(&out, DEFAULT_TOL).is_maximal);
    }

    #[test]
    fn negative_multiple_of_identity() {
        let a = Mat3::diag(-1.0, -1.0, -1.0);
        let (r, out) = maximize_symmetric(&a).unwrap();
        assert!(r.is_rotation(DEFAULT_TOL));
        // -R with R a half-turn has trace 1
        assert!((out.trace() - 1.0).abs() < 1e-10);
        assert!(is_maximal_3d(&out, DEFAULT_TOL).is_maximal);
    }

    #[test]
    fn diagonalization_even_flip() {
        let a = Mat3::diag(-3.0, -2.0, 1.0);
        let (w, out) = maximize_by_diagonalization(&a).unwrap();
        assert!(w.is_rotation(DEFAULT_TOL));
        assert!((out - Mat3::diag(3.0, 2.0, 1.0)).max_abs() < 1e-10);
    }

    #[test]
    fn diagonalization_odd_flip_toggles_smallest() {
        let a = Mat3::diag(-3.0, 1.0, 2.0);
        let (w, out) = maximize_by_diagonalization(&a).unwrap();
        assert!(w.is_rotation(DEFAULT_TOL));
        assert!((out - Mat3::diag(3.0, -1.0, 2.0)).max_abs() < 1e-10);
        assert!(is_maximal_3d(&out, DEFAULT_TOL).is_maximal);
    }

    #[test]
    fn psd_input_gives_identity_flip() {
        let a = Mat3::diag(3.0, 2.0, 1.0);
        let (w, out) = maximize_by_diagonalization(&a).unwrap();
        assert!((w - Mat3::IDENTITY).max_abs() < 1e-12);
        assert!((out - a).max_abs() < 1e-12);
    }

    #[test]
    fn affine_trace_identity() {
        let a = Mat3::new([[1.0, 0.5, -0.2], [0.5, -2.0, 0.3], [-0.2, 0.3, 0.7]]);
        let w = Vec3::new(1.0, -2.0, 0.5).normalized();
        for k in 0..16 {
            let theta = std::f64::consts::PI * k as f64 / 15.0;
            let rot = rotation_about_axis(w, theta);
            assert!(rot.is_rotation(DEFAULT_TOL));
            let lhs = (rot * a).trace();
            let rhs = a.trace() * theta.cos() + w.dot(a.mul_vec(w)) * (1.0 - theta.cos());
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
