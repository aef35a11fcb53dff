//! Align two planar point clouds with the closed-form 2D solver.
//!
//! A reference shape is rotated by a known angle; the solver recovers the
//! rotation from the weighted point pairs alone.

use rotalign::mat::{Mat2, Vec2};
use rotalign::WahbaProblem2;

fn main() {
    let shape = [
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 2.0),
        Vec2::new(-1.5, -0.5),
        Vec2::new(0.3, -1.2),
    ];
    let theta = 0.7;
    let true_rotation = Mat2::rotation(theta);
    // q holds the un-rotated originals; solving finds U with U*q ~= p
    let p: Vec<Vec2> = shape.iter().map(|v| true_rotation.mul_vec(*v)).collect();
    let q = shape.to_vec();
    let w = vec![1.0, 2.0, 0.5, 1.5];

    let problem = WahbaProblem2::new(p, q, w).expect("valid problem");
    let report = problem.solve();

    println!("true angle:      {theta}");
    println!(
        "recovered angle: {}",
        report.rotation.m[1][0].atan2(report.rotation.m[0][0])
    );
    println!("strategy:        {}", report.strategy);
    println!("achieved trace:  {}", report.achieved_trace);
    println!("residual:        {:e}", report.residual.unwrap());
    assert!(report.residual.unwrap() < 1e-12);
}
