//! Randomized batch experiment: generate matrices, solve them in parallel,
//! verify each result against the maximality characterization, and compare
//! the Newton path against the SVD reference.

use rotalign::batch::{generate, run_batch, BatchOptions, MatrixKind};

fn main() {
    let matrices = generate(50_000, 2024, MatrixKind::DenseUniform);
    let opts = BatchOptions {
        cross_check: true,
        ..BatchOptions::default()
    };
    let (_, summary) = run_batch(&matrices, &opts);

    println!("total:               {}", summary.total);
    println!("newton converged:    {}", summary.newton_converged);
    println!("fell back to SVD:    {}", summary.fell_back);
    println!("mean iterations:     {:.2}", summary.mean_iterations);
    println!("max iterations:      {}", summary.max_iterations);
    println!(
        "mean trace gap vs SVD: {:.2e}",
        summary.mean_trace_gap.unwrap()
    );
    println!(
        "max trace gap vs SVD:  {:.2e}",
        summary.max_trace_gap.unwrap()
    );
    println!("maximality failures: {}", summary.maximality_failures);
    println!(
        "wall time:           {:.1} ms",
        summary.wall_time_ns as f64 / 1.0e6
    );
    assert_eq!(summary.maximality_failures, 0);
}
