//! The Newton path's known blind spot and the SVD fallback that covers it.
//!
//! Nonsymmetric rank-1 matrices usually have their optimizing rotation at a
//! half-turn, which the Cayley parametrization cannot reach, so Newton
//! stalls and the solver falls back to the Kabsch-Umeyama construction.

use rotalign::batch::{generate, MatrixKind};
use rotalign::cayley::NewtonConfig;
use rotalign::maximality::is_maximal_3d;
use rotalign::solve_spatial;

fn main() {
    let matrices = generate(10, 99, MatrixKind::Rank1);
    let mut fallbacks = 0;
    for (i, m) in matrices.iter().enumerate() {
        let report = solve_spatial(m, &NewtonConfig::default(), false);
        let product = report.rotation * *m;
        println!(
            "matrix {i}: strategy={} fell_back={} trace={:.6} maximal={}",
            report.strategy,
            report.fell_back,
            report.achieved_trace,
            is_maximal_3d(&product, 1e-7).is_maximal
        );
        if report.fell_back {
            fallbacks += 1;
        }
        assert!(is_maximal_3d(&product, 1e-7).is_maximal);
    }
    println!("\n{fallbacks}/10 rank-1 matrices needed the SVD fallback");
}
