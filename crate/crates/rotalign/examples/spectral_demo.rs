//! Closed-form eigendecomposition of symmetric 3x3 matrices, including the
//! degenerate (repeated-eigenvalue) branches.

use rotalign::mat::Mat3;
use rotalign::spectral_decomposition;

fn show(name: &str, a: Mat3) {
    let d = spectral_decomposition(&a).expect("symmetric input");
    println!("{name}:");
    println!("  case        {:?}", d.degenerate_case);
    println!("  eigenvalues {:?}", d.eigenvalues);
    for (k, v) in d.basis.iter().enumerate() {
        let residual = (a.mul_vec(*v) - v.scale(d.eigenvalues[k])).norm();
        println!(
            "  v{k} = ({:+.6}, {:+.6}, {:+.6})   |Av - av| = {residual:.2e}",
            v.x, v.y, v.z
        );
        assert!(residual <= 1e-9 * (1.0 + a.max_abs()));
    }
    println!();
}

fn main() {
    show(
        "tridiagonal, distinct eigenvalues",
        Mat3::new([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]]),
    );
    show("double eigenvalue", Mat3::diag(1.0, 1.0, 4.0));
    show("triple eigenvalue", Mat3::diag(5.0, 5.0, 5.0));
    show(
        "dense symmetric",
        Mat3::new([[0.3, -0.7, 0.2], [-0.7, 1.1, 0.5], [0.2, 0.5, -0.9]]),
    );
}
