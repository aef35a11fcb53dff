//! Maximize tr(U*M) for a 3x3 matrix via the Newton path and the SVD path.
//!
//! The example matrix is nonsymmetric with trace -2; both routes find a
//! rotation pushing the trace to 6, and the product U*M passes the
//! independent maximality characterization.

use rotalign::cayley::NewtonConfig;
use rotalign::mat::Mat3;
use rotalign::maximality::is_maximal_3d;
use rotalign::solve_spatial;

fn main() {
    let m = Mat3::new([[-2.0, -1.0, 0.0], [-1.0, -2.0, -1.0], [0.0, 1.0, 2.0]]);
    println!("input trace: {}", m.trace());

    for svd_only in [false, true] {
        let report = solve_spatial(&m, &NewtonConfig::default(), svd_only);
        let product = report.rotation * m;
        println!();
        println!("strategy:        {}", report.strategy);
        println!("iterations:      {}", report.newton_iterations);
        println!("achieved trace:  {}", report.achieved_trace);
        println!("symmetry defect: {:e}", product.symmetry_defect());
        println!(
            "maximal:         {}",
            is_maximal_3d(&product, 1e-8).is_maximal
        );
        for row in report.rotation.m {
            println!("  {:+.6} {:+.6} {:+.6}", row[0], row[1], row[2]);
        }
        assert!((report.achieved_trace - 6.0).abs() < 1e-9);
    }
}
