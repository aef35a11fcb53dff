//! Property-based invariants over randomly drawn matrices and problems.

use proptest::prelude::*;

use rotalign::cayley::{cayley_transform, scaled_cayley, skew_from, CayleyPoint, NewtonConfig};
use rotalign::mat::{Mat2, Mat3, Vec3, DEFAULT_TOL};
use rotalign::maximality::{
    givens_improvement_2d, is_maximal_2d, is_maximal_3d, is_maximal_3d_by_eigenvalues,
};
use rotalign::planar::{planar_coefficients, solve_planar};
use rotalign::spectral3::spectral_decomposition;
use rotalign::svd::{kabsch_umeyama, svd3};
use rotalign::{solve_spatial, WahbaProblem3};

fn entry() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn mat3() -> impl Strategy<Value = Mat3> {
    prop::array::uniform3(prop::array::uniform3(entry())).prop_map(Mat3::new)
}

fn mat2() -> impl Strategy<Value = Mat2> {
    prop::array::uniform2(prop::array::uniform2(entry())).prop_map(Mat2::new)
}

fn sym3() -> impl Strategy<Value = Mat3> {
    mat3().prop_map(|m| m.symmetrized())
}

proptest! {
    #[test]
    fn trace_is_cyclic(a in mat3(), b in mat3()) {
        let lhs = (a * b).trace();
        let rhs = (b * a).trace();
        let scale = (1.0 + a.max_abs()) * (1.0 + b.max_abs());
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn cross_product_is_orthogonal(x in entry(), y in entry(), z in entry(),
                                   u in entry(), v in entry(), w in entry()) {
        let a = Vec3::new(x, y, z);
        let b = Vec3::new(u, v, w);
        let c = a.cross(b);
        let scale = 1.0 + a.norm() * b.norm();
        prop_assert!(c.dot(a).abs() <= 1e-12 * scale);
        prop_assert!(c.dot(b).abs() <= 1e-12 * scale);
    }

    #[test]
    fn spectral_reconstructs(a in sym3()) {
        let d = spectral_decomposition(&a).unwrap();
        let b = d.basis_matrix();
        let l = Mat3::diag(d.eigenvalues[0], d.eigenvalues[1], d.eigenvalues[2]);
        let scale = 1.0 + a.max_abs();
        prop_assert!((b * l * b.transpose() - a).max_abs() <= 1e-10 * scale);
        prop_assert!((b.transpose() * b - Mat3::IDENTITY).max_abs() <= 1e-12);
        prop_assert!(d.eigenvalues[0] <= d.eigenvalues[1]);
        prop_assert!(d.eigenvalues[1] <= d.eigenvalues[2]);
    }

    #[test]
    fn svd_reconstructs(m in mat3()) {
        let svd = svd3(&m);
        let scale = 1.0 + m.max_abs();
        prop_assert!((svd.reconstruct() - m).max_abs() <= 1e-7 * scale);
        prop_assert!(svd.s[0] >= svd.s[1] && svd.s[1] >= svd.s[2] && svd.s[2] >= 0.0);
    }

    #[test]
    fn solver_output_is_rotation_and_maximal(m in mat3()) {
        let report = solve_spatial(&m, &NewtonConfig::default(), false);
        prop_assert!(report.rotation.is_rotation(1e-8));
        prop_assert!(is_maximal_3d(&(report.rotation * m), 1e-7).is_maximal);
    }

    #[test]
    fn newton_and_svd_traces_agree(m in mat3()) {
        let newton = solve_spatial(&m, &NewtonConfig::default(), false);
        let svd = solve_spatial(&m, &NewtonConfig::default(), true);
        let scale = 1.0 + newton.achieved_trace.abs();
        prop_assert!((newton.achieved_trace - svd.achieved_trace).abs() <= 1e-8 * scale);
    }

    #[test]
    fn planar_beats_sampled_rotations(m in mat2(), theta in 0.0..std::f64::consts::TAU) {
        let u = solve_planar(&m);
        let sampled = (Mat2::rotation(theta) * m).trace();
        let scale = 1.0 + m.max_abs();
        prop_assert!((u * m).trace() >= sampled - 1e-10 * scale);
    }

    #[test]
    fn planar_achieved_trace_is_c(m in mat2()) {
        let u = solve_planar(&m);
        let c = planar_coefficients(&m).c;
        prop_assert!(((u * m).trace() - c).abs() <= 1e-10 * (1.0 + m.max_abs()));
    }

    #[test]
    fn givens_witness_improves(m in mat2()) {
        // only nonsymmetric inputs admit a Givens improvement
        if let Ok(g) = givens_improvement_2d(&m) {
            prop_assert!(g.is_rotation(1e-12));
            prop_assert!((g * m).trace() >= m.trace() - 1e-12);
        }
    }

    #[test]
    fn maximality_witness_is_sound_2d(m in mat2()) {
        let sym = (m + m.transpose()).scale(0.5);
        let v = is_maximal_2d(&sym, DEFAULT_TOL);
        if let Some(w) = v.witness {
            prop_assert!(w.is_rotation(1e-10));
            prop_assert!((w * sym).trace() > sym.trace());
        }
    }

    #[test]
    fn maximality_routes_agree(a in sym3()) {
        let minors = is_maximal_3d(&a, DEFAULT_TOL).is_maximal;
        let eigen = is_maximal_3d_by_eigenvalues(&a, DEFAULT_TOL).unwrap().is_maximal;
        prop_assert_eq!(minors, eigen);
    }

    #[test]
    fn kabsch_result_is_maximal(m in mat3()) {
        let u = kabsch_umeyama(&m);
        prop_assert!(u.is_rotation(1e-8));
        prop_assert!(is_maximal_3d(&(u * m), 1e-7).is_maximal);
    }

    #[test]
    fn scaled_cayley_is_scaled_rotation(r in -5.0..5.0f64, s in -5.0..5.0f64, t in -5.0..5.0f64) {
        let x = CayleyPoint::new(r, s, t);
        let f = scaled_cayley(x);
        let u = f.scale(2.0 / x.delta());
        prop_assert!(u.is_rotation(1e-10));
        // involution: the Cayley transform of the skew part recovers u
        if let Some(back) = cayley_transform(&skew_from(x)) {
            prop_assert!((back - u).max_abs() <= 1e-9 * (1.0 + u.max_abs()));
        }
    }

    #[test]
    fn wahba_residual_trace_identity(
        pts in prop::collection::vec(prop::array::uniform3(entry()), 1..8),
        qts in prop::collection::vec(prop::array::uniform3(entry()), 1..8),
        ws in prop::collection::vec(0.0..2.0f64, 1..8),
    ) {
        let n = pts.len().min(qts.len()).min(ws.len());
        let p: Vec<Vec3> = pts[..n].iter().map(|a| Vec3::new(a[0], a[1], a[2])).collect();
        let q: Vec<Vec3> = qts[..n].iter().map(|a| Vec3::new(a[0], a[1], a[2])).collect();
        let w = ws[..n].to_vec();
        let prob = WahbaProblem3::new(p.clone(), q.clone(), w.clone()).unwrap();
        let m = prob.profile_matrix();
        // residual(U) + 2 tr(U M) is constant in U; check at two rotations
        let fixed: f64 = p.iter().zip(&q).zip(&w)
            .map(|((pi, qi), wi)| wi * (pi.dot(*pi) + qi.dot(*qi)))
            .sum();
        for u in [Mat3::IDENTITY, Mat3::diag(-1.0, -1.0, 1.0)] {
            let res = prob.residual(&u).unwrap();
            let scale = 1.0 + fixed.abs();
            prop_assert!((res + 2.0 * (u * m).trace() - fixed).abs() <= 1e-9 * scale);
        }
        // solving minimizes the residual among those rotations
        let report = prob.solve(&NewtonConfig::default(), false);
        let best = prob.residual(&report.rotation).unwrap();
        for u in [Mat3::IDENTITY, Mat3::diag(-1.0, -1.0, 1.0)] {
            prop_assert!(best <= prob.residual(&u).unwrap() + 1e-7 * (1.0 + fixed.abs()));
        }
    }

    #[test]
    fn wahba_weight_scaling_invariance(
        lambda in 0.1..10.0f64,
        pts in prop::collection::vec(prop::array::uniform3(entry()), 2..6),
    ) {
        let p: Vec<Vec3> = pts.iter().map(|a| Vec3::new(a[0], a[1], a[2])).collect();
        let q: Vec<Vec3> = pts.iter().map(|a| Vec3::new(a[2], a[0], a[1])).collect();
        let w = vec![1.0; p.len()];
        let scaled: Vec<f64> = w.iter().map(|x| x * lambda).collect();
        let a = WahbaProblem3::new(p.clone(), q.clone(), w).unwrap();
        let b = WahbaProblem3::new(p, q, scaled).unwrap();
        let ra = a.solve(&NewtonConfig::default(), false);
        let rb = b.solve(&NewtonConfig::default(), false);
        let scale = 1.0 + ra.achieved_trace.abs() * lambda;
        prop_assert!((rb.achieved_trace - lambda * ra.achieved_trace).abs() <= 1e-7 * scale);
    }
}
