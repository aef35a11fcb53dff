//! Decide whether matrices already have maximal trace over rotations, and
//! exhibit an improving rotation when they do not.

use rotalign::mat::{Mat2, Mat3, DEFAULT_TOL};
use rotalign::maximality::{is_maximal_2d, is_maximal_3d};

fn main() {
    println!("== 3x3 ==");
    let cases3 = [
        ("identity", Mat3::IDENTITY),
        (
            "symmetric, one mild negative eigenvalue",
            Mat3::diag(-1.0, 2.0, 3.0),
        ),
        (
            "symmetric, dominant negative eigenvalue",
            Mat3::diag(-3.0, 1.0, 2.0),
        ),
        (
            "nonsymmetric",
            Mat3::new([[-2.0, -1.0, 0.0], [-1.0, -2.0, -1.0], [0.0, 1.0, 2.0]]),
        ),
    ];
    for (name, a) in cases3 {
        let verdict = is_maximal_3d(&a, DEFAULT_TOL);
        println!(
            "{name}: maximal={} reason={:?}",
            verdict.is_maximal, verdict.reason
        );
        if let Some(w) = verdict.witness {
            let improved = (w * a).trace();
            println!(
                "  witness rotation raises trace {} -> {improved}",
                a.trace()
            );
            assert!(improved > a.trace());
        }
    }

    println!();
    println!("== 2x2 ==");
    for (name, a) in [
        ("positive trace", Mat2::diag(-1.0, 3.0)),
        ("negative trace", Mat2::diag(-2.0, 1.0)),
        ("skew", Mat2::new([[0.0, 1.0], [-1.0, 0.0]])),
    ] {
        let verdict = is_maximal_2d(&a, DEFAULT_TOL);
        println!(
            "{name}: maximal={} reason={:?}",
            verdict.is_maximal, verdict.reason
        );
        if let Some(w) = verdict.witness {
            println!(
                "  witness raises trace {} -> {}",
                a.trace(),
                (w * a).trace()
            );
        }
    }
}
