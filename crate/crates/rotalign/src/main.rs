//! Batch CLI over the alignment solvers.
//!
//! Exit codes: 0 on success, 1 when any solver postcondition fails,
//! 2 on I/O or parse errors.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use rotalign::batch::{
    generate, read_matrices, run_batch, write_matrices, write_records_csv, AnyMatrix, BatchOptions,
    MatrixKind, BATCH_CHECK_TOL,
};
use rotalign::cayley::NewtonConfig;
use rotalign::mat::{Vec2, Vec3, DEFAULT_TOL};
use rotalign::maximality::{is_maximal_2d, is_maximal_3d, MaximalityReason};
use rotalign::wahba::{WahbaProblem2, WahbaProblem3};
use rotalign::{Error, SolveReport};

const EXIT_POSTCONDITION: i32 = 1;
const EXIT_IO: i32 = 2;

#[derive(Parser)]
#[command(
    name = "rotalign",
    about = "Trace-maximizing rotation alignment",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SolverFlags {
    /// Skip the Newton path and use the SVD construction directly.
    #[arg(long)]
    svd_only: bool,
    /// Newton iteration cap.
    #[arg(long, default_value_t = NewtonConfig::default().max_iters)]
    max_iters: usize,
    /// Tolerance for the maximality postcondition check.
    #[arg(long, default_value_t = BATCH_CHECK_TOL)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve matrices or weighted point-pair problems from a file.
    ///
    /// Matrix lines hold 9 (3x3) or 4 (2x2) numbers in row-major order;
    /// problem lines hold "w px py qx qy" (2D) or "w px py pz qx qy qz"
    /// (3D), one weighted pair per line, the whole file being one problem.
    Solve {
        #[command(flatten)]
        flags: SolverFlags,
        /// Input file; standard input when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run a batch experiment and print a summary.
    Bench {
        #[command(flatten)]
        flags: SolverFlags,
        /// Read matrices from a file instead of generating them.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of matrices to generate when no input file is given.
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "dense_uniform")]
        kind: MatrixKind,
        /// Worker threads; 0 lets the runtime decide.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Also run the SVD path on every matrix and report the trace gap.
        #[arg(long)]
        cross_check: bool,
        /// Write per-record CSV here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate random matrices in the flat text format.
    Gen {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "dense_uniform")]
        kind: MatrixKind,
        /// Output file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a maximality verdict for every matrix in a file.
    Check {
        /// Input file; standard input when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

fn open_input(path: &Option<PathBuf>) -> io::Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(File::open(p)?)),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

enum ProblemFile {
    Matrices(Vec<AnyMatrix>),
    Planar(WahbaProblem2),
    Spatial(WahbaProblem3),
}

/// The column count per line decides the interpretation: 4/9 numbers are
/// matrices, 5/7 numbers are weighted point pairs forming one problem.
fn read_problem_file<R: BufRead>(mut reader: R) -> Result<ProblemFile, Error> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut width = None;
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let n = body.split_whitespace().count();
        match (width, n) {
            (None, 4 | 5 | 7 | 9) => width = Some(n),
            (Some(w), n) if w == n => {}
            (Some(w), n) => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("line has {n} fields but the file started with {w}"),
                })
            }
            (None, n) => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("expected 4, 5, 7 or 9 fields per line, found {n}"),
                })
            }
        }
    }
    let width = width.ok_or(Error::Parse {
        line: 0,
        message: "empty input".into(),
    })?;
    if width == 4 || width == 9 {
        return Ok(ProblemFile::Matrices(read_matrices(text.as_bytes())?));
    }
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums: Result<Vec<f64>, _> = body.split_whitespace().map(str::parse::<f64>).collect();
        rows.push(nums.map_err(|e| Error::Parse {
            line: lineno + 1,
            message: e.to_string(),
        })?);
    }
    let validity = |e: Error| e;
    if width == 5 {
        let (mut w, mut p, mut q) = (Vec::new(), Vec::new(), Vec::new());
        for r in &rows {
            w.push(r[0]);
            p.push(Vec2::new(r[1], r[2]));
            q.push(Vec2::new(r[3], r[4]));
        }
        Ok(ProblemFile::Planar(
            WahbaProblem2::new(p, q, w).map_err(validity)?,
        ))
    } else {
        let (mut w, mut p, mut q) = (Vec::new(), Vec::new(), Vec::new());
        for r in &rows {
            w.push(r[0]);
            p.push(Vec3::new(r[1], r[2], r[3]));
            q.push(Vec3::new(r[4], r[5], r[6]));
        }
        Ok(ProblemFile::Spatial(
            WahbaProblem3::new(p, q, w).map_err(validity)?,
        ))
    }
}

fn print_report_3d(report: &SolveReport<rotalign::Mat3>) {
    println!("strategy: {}", report.strategy);
    println!("iterations: {}", report.newton_iterations);
    println!("fell_back: {}", report.fell_back);
    println!("achieved_trace: {:.16e}", report.achieved_trace);
    if let Some(res) = report.residual {
        println!("residual: {res:.16e}");
    }
    for row in report.rotation.m {
        println!("  {:+.16e} {:+.16e} {:+.16e}", row[0], row[1], row[2]);
    }
}

fn print_report_2d(report: &SolveReport<rotalign::Mat2>) {
    println!("strategy: {}", report.strategy);
    println!("achieved_trace: {:.16e}", report.achieved_trace);
    if let Some(res) = report.residual {
        println!("residual: {res:.16e}");
    }
    for row in report.rotation.m {
        println!("  {:+.16e} {:+.16e}", row[0], row[1]);
    }
}

fn reason_text(reason: MaximalityReason) -> &'static str {
    match reason {
        MaximalityReason::Maximal => "maximal",
        MaximalityReason::Nonsymmetric => "not maximal: nonsymmetric",
        MaximalityReason::TraceNegative2d => "not maximal: trace negative",
        MaximalityReason::PsdTestFailed3d => "not maximal: psd test failed",
        MaximalityReason::EigenConditionFailed => "not maximal: eigenvalue condition failed",
    }
}

fn cmd_solve(flags: &SolverFlags, input: &Option<PathBuf>) -> Result<i32, Error> {
    let cfg = NewtonConfig {
        max_iters: flags.max_iters,
        ..NewtonConfig::default()
    };
    let mut failures = 0usize;
    match read_problem_file(open_input(input)?)? {
        ProblemFile::Matrices(ms) => {
            for (i, m) in ms.iter().enumerate() {
                println!("# matrix {i}");
                match m {
                    AnyMatrix::Spatial(m) => {
                        let report = rotalign::solve_spatial(m, &cfg, flags.svd_only);
                        print_report_3d(&report);
                        if !is_maximal_3d(&(report.rotation * *m), flags.tol).is_maximal {
                            failures += 1;
                        }
                    }
                    AnyMatrix::Planar(m) => {
                        let u = rotalign::solve_planar(m);
                        let report = SolveReport {
                            rotation: u,
                            achieved_trace: (u * *m).trace(),
                            residual: None,
                            strategy: rotalign::Strategy::PlanarClosedForm,
                            newton_iterations: 0,
                            fell_back: false,
                        };
                        print_report_2d(&report);
                        if !is_maximal_2d(&(u * *m), flags.tol).is_maximal {
                            failures += 1;
                        }
                    }
                }
            }
        }
        ProblemFile::Planar(p) => {
            let report = p.solve();
            print_report_2d(&report);
            let m = p.profile_matrix();
            if !is_maximal_2d(&(report.rotation * m), flags.tol).is_maximal {
                failures += 1;
            }
        }
        ProblemFile::Spatial(p) => {
            let report = p.solve(&cfg, flags.svd_only);
            print_report_3d(&report);
            let m = p.profile_matrix();
            if !is_maximal_3d(&(report.rotation * m), flags.tol).is_maximal {
                failures += 1;
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} result(s) failed the maximality postcondition");
        return Ok(EXIT_POSTCONDITION);
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    flags: &SolverFlags,
    input: &Option<PathBuf>,
    count: usize,
    seed: u64,
    kind: MatrixKind,
    workers: usize,
    cross_check: bool,
    output: &Option<PathBuf>,
) -> Result<i32, Error> {
    let matrices = match input {
        Some(_) => {
            let mut spatial = Vec::new();
            for (i, m) in read_matrices(open_input(input)?)?.into_iter().enumerate() {
                match m {
                    AnyMatrix::Spatial(m) => spatial.push(m),
                    AnyMatrix::Planar(_) => {
                        return Err(Error::Parse {
                            line: i + 1,
                            message: "bench expects 3x3 matrices".into(),
                        })
                    }
                }
            }
            spatial
        }
        None => generate(count, seed, kind),
    };
    let opts = BatchOptions {
        config: NewtonConfig {
            max_iters: flags.max_iters,
            ..NewtonConfig::default()
        },
        svd_only: flags.svd_only,
        workers,
        cross_check,
        check_tol: flags.tol,
    };
    let (records, summary) = run_batch(&matrices, &opts);
    println!("# entries drawn i.i.d. uniform on [-1, 1] unless read from a file");
    println!("total: {}", summary.total);
    println!("newton_converged: {}", summary.newton_converged);
    println!("fell_back: {}", summary.fell_back);
    println!("mean_iterations: {:.3}", summary.mean_iterations);
    println!("max_iterations: {}", summary.max_iterations);
    if let (Some(mean), Some(max)) = (summary.mean_trace_gap, summary.max_trace_gap) {
        println!("mean_trace_gap: {mean:.3e}");
        println!("max_trace_gap: {max:.3e}");
    }
    println!("maximality_failures: {}", summary.maximality_failures);
    println!("wall_time_ms: {:.1}", summary.wall_time_ns as f64 / 1.0e6);
    if let Some(path) = output {
        let mut w = open_output(&Some(path.clone()))?;
        write_records_csv(&mut w, &records)?;
    }
    if summary.maximality_failures > 0 {
        return Ok(EXIT_POSTCONDITION);
    }
    Ok(0)
}

fn cmd_gen(
    count: usize,
    seed: u64,
    kind: MatrixKind,
    output: &Option<PathBuf>,
) -> Result<i32, Error> {
    let matrices: Vec<AnyMatrix> = generate(count, seed, kind)
        .into_iter()
        .map(AnyMatrix::Spatial)
        .collect();
    let mut w = open_output(output)?;
    writeln!(
        w,
        "# kind={kind} seed={seed} count={count}; entries i.i.d. uniform on [-1, 1]"
    )?;
    write_matrices(&mut w, &matrices)?;
    Ok(0)
}

fn cmd_check(input: &Option<PathBuf>, tol: f64) -> Result<i32, Error> {
    for (i, m) in read_matrices(open_input(input)?)?.into_iter().enumerate() {
        let text = match m {
            AnyMatrix::Spatial(m) => reason_text(is_maximal_3d(&m, tol).reason),
            AnyMatrix::Planar(m) => reason_text(is_maximal_2d(&m, tol).reason),
        };
        println!("{i}: {text}");
    }
    Ok(0)
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve { flags, input } => cmd_solve(flags, input),
        Command::Bench {
            flags,
            input,
            count,
            seed,
            kind,
            workers,
            cross_check,
            output,
        } => cmd_bench(
            flags,
            input,
            *count,
            *seed,
            *kind,
            *workers,
            *cross_check,
            output,
        ),
        Command::Gen {
            count,
            seed,
            kind,
            output,
        } => cmd_gen(*count, *seed, *kind, output),
        Command::Check { input, tol } => cmd_check(input, *tol),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(EXIT_IO);
        }
    }
}
