//! Batch experiment driver: deterministic matrix generation, parallel
//! solving with postcondition checks, and the flat-file matrix format.
//!
//! Records are independent, so the batch is embarrassingly parallel; results
//! are reassembled in input order and every per-record solver output is
//! identical whatever the worker count.

use std::io::{BufRead, Write};
use std::time::Instant;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cayley::{solve_spatial, NewtonConfig};
use crate::error::{Error, Result};
use crate::mat::{Mat2, Mat3, Vec3};
use crate::maximality::is_maximal_3d;
use crate::report::Strategy;
use crate::svd::kabsch_umeyama;

/// Default tolerance for the per-record maximality postcondition. Looser
/// than the solver-internal 1e-9 because the SVD fallback goes through
/// `M^T M` and can leave a symmetry defect around 1e-8 times the scale.
pub const BATCH_CHECK_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    DenseUniform,
    Rank1,
    Rank2,
    Symmetric,
}

impl std::str::FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dense_uniform" => Ok(MatrixKind::DenseUniform),
            "rank1" => Ok(MatrixKind::Rank1),
            "rank2" => Ok(MatrixKind::Rank2),
            "symmetric" => Ok(MatrixKind::Symmetric),
            other => Err(format!(
                "unknown kind {other:?} (expected dense_uniform, rank1, rank2 or symmetric)"
            )),
        }
    }
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MatrixKind::DenseUniform => "dense_uniform",
            MatrixKind::Rank1 => "rank1",
            MatrixKind::Rank2 => "rank2",
            MatrixKind::Symmetric => "symmetric",
        })
    }
}

fn random_vec3<R: rand::Rng>(rng: &mut R, u: &Uniform<f64>) -> Vec3 {
    Vec3::new(u.sample(rng), u.sample(rng), u.sample(rng))
}

/// Deterministic stream of `count` random 3x3 matrices with entries drawn
/// from the seeded generator; entry distribution is uniform on [-1, 1].
pub fn generate(count: usize, seed: u64, kind: MatrixKind) -> Vec<Mat3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = Uniform::new_inclusive(-1.0, 1.0);
    (0..count)
        .map(|_| match kind {
            MatrixKind::DenseUniform => {
                let mut m = [[0.0; 3]; 3];
                for row in &mut m {
                    for e in row.iter_mut() {
                        *e = u.sample(&mut rng);
                    }
                }
                Mat3::new(m)
            }
            MatrixKind::Rank1 => {
                let a = random_vec3(&mut rng, &u);
                let b = random_vec3(&mut rng, &u);
                Mat3::outer(a, b)
            }
            MatrixKind::Rank2 => {
                let m1 = Mat3::outer(random_vec3(&mut rng, &u), random_vec3(&mut rng, &u));
                let m2 = Mat3::outer(random_vec3(&mut rng, &u), random_vec3(&mut rng, &u));
                m1 + m2
            }
            MatrixKind::Symmetric => {
                let mut m = [[0.0; 3]; 3];
                for row in &mut m {
                    for e in row.iter_mut() {
                        *e = u.sample(&mut rng);
                    }
                }
                Mat3::new(m).symmetrized()
            }
        })
        .collect()
}

/// One solved matrix with its postcondition evidence.
#[derive(Clone, Copy, Debug)]
pub struct BatchRecord {
    pub index: usize,
    pub input: Mat3,
    pub strategy: Strategy,
    pub iterations: usize,
    pub fell_back: bool,
    pub achieved_trace: f64,
    pub trace_svd_reference: Option<f64>,
    pub max_symmetry_defect: f64,
    pub maximality_passed: bool,
    pub wall_time_ns: u128,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BatchSummary {
    pub total: usize,
    pub newton_converged: usize,
    pub fell_back: usize,
    pub mean_iterations: f64,
    pub max_iterations: usize,
    /// Mean/max of `trace_svd_reference - achieved_trace` when cross-checking.
    pub mean_trace_gap: Option<f64>,
    pub max_trace_gap: Option<f64>,
    pub maximality_failures: usize,
    pub wall_time_ns: u128,
}

#[derive(Clone, Copy, Debug)]
pub struct BatchOptions {
    pub config: NewtonConfig,
    pub svd_only: bool,
    /// 0 means "let the runtime decide".
    pub workers: usize,
    pub cross_check: bool,
    /// Tolerance for the per-record maximality postcondition.
    pub check_tol: f64,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions {
            config: NewtonConfig::default(),
            svd_only: false,
            workers: 0,
            cross_check: false,
            check_tol: BATCH_CHECK_TOL,
        }
    }
}

fn solve_one(index: usize, m: &Mat3, opts: &BatchOptions) -> BatchRecord {
    let started = Instant::now();
    let report = solve_spatial(m, &opts.config, opts.svd_only);
    let wall_time_ns = started.elapsed().as_nanos();
    let product = report.rotation * *m;
    let trace_svd_reference = if opts.cross_check {
        let u_ref = kabsch_umeyama(m);
        Some((u_ref * *m).trace())
    } else {
        None
    };
    BatchRecord {
        index,
        input: *m,
        strategy: report.strategy,
        iterations: report.newton_iterations,
        fell_back: report.fell_back,
        achieved_trace: report.achieved_trace,
        trace_svd_reference,
        max_symmetry_defect: product.symmetry_defect(),
        maximality_passed: is_maximal_3d(&product, opts.check_tol).is_maximal,
        wall_time_ns,
    }
}

fn summarize(records: &[BatchRecord], opts: &BatchOptions, wall_time_ns: u128) -> BatchSummary {
    let total = records.len();
    let fell_back = records.iter().filter(|r| r.fell_back).count();
    let newton_converged = records
        .iter()
        .filter(|r| r.strategy == Strategy::NewtonThenSpectral)
        .count();
    let iter_sum: usize = records.iter().map(|r| r.iterations).sum();
    let (mean_trace_gap, max_trace_gap) = if opts.cross_check && total > 0 {
        let gaps: Vec<f64> = records
            .iter()
            .filter_map(|r| r.trace_svd_reference.map(|t| (t - r.achieved_trace).abs()))
            .collect();
        let sum: f64 = gaps.iter().sum();
        let max = gaps.iter().cloned().fold(0.0, f64::max);
        (Some(sum / total as f64), Some(max))
    } else {
        (None, None)
    };
    BatchSummary {
        total,
        newton_converged,
        fell_back,
        mean_iterations: if total > 0 {
            iter_sum as f64 / total as f64
        } else {
            0.0
        },
        max_iterations: records.iter().map(|r| r.iterations).max().unwrap_or(0),
        mean_trace_gap,
        max_trace_gap,
        maximality_failures: records.iter().filter(|r| !r.maximality_passed).count(),
        wall_time_ns,
    }
}

/// Solves each matrix, verifying the maximality postcondition per record.
/// Partitioned across `workers` threads; results come back in input order.
pub fn run_batch(matrices: &[Mat3], opts: &BatchOptions) -> (Vec<BatchRecord>, BatchSummary) {
    let started = Instant::now();
    let records: Vec<BatchRecord> = if opts.workers == 1 {
        matrices
            .iter()
            .enumerate()
            .map(|(i, m)| solve_one(i, m, opts))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .expect("thread pool");
        pool.install(|| {
            matrices
                .par_iter()
                .enumerate()
                .map(|(i, m)| solve_one(i, m, opts))
                .collect()
        })
    };
    let summary = summarize(&records, opts, started.elapsed().as_nanos());
    (records, summary)
}

/// A parsed matrix line: the file format carries both dimensions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AnyMatrix {
    Planar(Mat2),
    Spatial(Mat3),
}

/// Reads the flat matrix format: one matrix per line, 9 (3x3) or 4 (2x2)
/// whitespace-separated decimals in row-major order; '#' starts a comment.
pub fn read_matrices<R: BufRead>(reader: R) -> Result<Vec<AnyMatrix>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        let nums: std::result::Result<Vec<f64>, _> =
            text.split_whitespace().map(str::parse::<f64>).collect();
        let nums = nums.map_err(|e| Error::Parse {
            line: lineno + 1,
            message: e.to_string(),
        })?;
        match nums.len() {
            4 => out.push(AnyMatrix::Planar(Mat2::new([
                [nums[0], nums[1]],
                [nums[2], nums[3]],
            ]))),
            9 => out.push(AnyMatrix::Spatial(Mat3::new([
                [nums[0], nums[1], nums[2]],
                [nums[3], nums[4], nums[5]],
                [nums[6], nums[7], nums[8]],
            ]))),
            n => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected 4 or 9 numbers per line, found {n}"),
                })
            }
        }
    }
    Ok(out)
}

/// Writes matrices in the same format with 17 significant digits, enough to
/// round-trip every finite f64 exactly.
pub fn write_matrices<W: Write>(writer: &mut W, matrices: &[AnyMatrix]) -> Result<()> {
    for m in matrices {
        let nums: Vec<f64> = match m {
            AnyMatrix::Planar(m) => m.m.iter().flatten().copied().collect(),
            AnyMatrix::Spatial(m) => m.m.iter().flatten().copied().collect(),
        };
        let fields: Vec<String> = nums.iter().map(|x| format!("{x:.16e}")).collect();
        writeln!(writer, "{}", fields.join(" "))?;
    }
    Ok(())
}

/// CSV dump of batch records, one row per record.
pub fn write_records_csv<W: Write>(writer: &mut W, records: &[BatchRecord]) -> Result<()> {
    writeln!(
        writer,
        "index,strategy,iterations,fell_back,achieved_trace,trace_svd_reference,\
         max_symmetry_defect,maximality_passed,wall_time_ns"
    )?;
    for r in records {
        writeln!(
            writer,
            "{},{},{},{},{:.16e},{},{:.16e},{},{}",
            r.index,
            r.strategy,
            r.iterations,
            r.fell_back,
            r.achieved_trace,
            r.trace_svd_reference
                .map(|t| format!("{t:.16e}"))
                .unwrap_or_default(),
            r.max_symmetry_defect,
            r.maximality_passed,
            r.wall_time_ns,
        )?;
    }
    Ok(())
}
