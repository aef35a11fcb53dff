//! Inside the Newton symmetrizer: the Cayley parametrization, the symmetry
//! gap g(x), its analytic Jacobian, and the iteration trace.

use rotalign::cayley::{
    jacobian, newton_symmetrize, scaled_cayley, symmetry_gap, CayleyPoint, NewtonConfig,
    NewtonStatus,
};
use rotalign::mat::Mat3;

fn main() {
    let m = Mat3::new([[-2.0, -1.0, 0.0], [-1.0, -2.0, -1.0], [0.0, 1.0, 2.0]]);

    // Any Cayley point yields a rotation (2/delta)*F(x).
    let x = CayleyPoint::new(0.4, -0.2, 0.9);
    let u = scaled_cayley(x).scale(2.0 / x.delta());
    println!("(2/delta)F(x) is a rotation: {}", u.is_rotation(1e-12));

    // The symmetry gap at the origin and its Jacobian drive the iteration.
    let g0 = symmetry_gap(CayleyPoint::ORIGIN, &m);
    println!("g(0) = ({}, {}, {})", g0.x, g0.y, g0.z);
    let j0 = jacobian(CayleyPoint::ORIGIN, &m);
    println!("J(0) = {:?}", j0.m);

    let outcome = newton_symmetrize(&m, &NewtonConfig::default());
    println!(
        "status: {:?} after {} iterations",
        outcome.status, outcome.iterations
    );
    assert_eq!(outcome.status, NewtonStatus::Converged);
    let u = outcome.rotation.unwrap();
    let product = u * m;
    println!(
        "U*M symmetry defect: {:e} (trace {})",
        product.symmetry_defect(),
        product.trace()
    );
}
