//! `qr`: generate, solve, check and benchmark annulus root-difference
//! instances.

mod bench;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qr_core::{
    brute_force, load_instance, random_instance, save_instance, solve, Config, Problem, Stepsize,
};

/// Largest dimension accepted by `check` unless raised with `--max-dim`.
const DEFAULT_ORACLE_DIM: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qr_core::Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("oracle limited to n <= {max}, instance has n = {n}")]
    OracleDimensionLimit { n: usize, max: usize },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let io = match self {
            CliError::Core(e) => e.is_io(),
            CliError::Io(_) => true,
            CliError::Csv(e) => e.is_io_error(),
            _ => false,
        };
        if io {
            2
        } else {
            1
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Diminishing step 2/(k+2).
    Dim,
    /// Exact line search.
    Exact,
}

impl Method {
    pub fn stepsize(self) -> Stepsize {
        match self {
            Method::Dim => Stepsize::Diminishing,
            Method::Exact => Stepsize::ExactLineSearch,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Dim => "dim",
            Method::Exact => "exact",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qr",
    version,
    about = "Global minimization of xᵀAx − √(xᵀBx) over α ≤ xᵀCx ≤ β"
)]
#[command(after_help = "Exit codes: 0 success, 1 validation error, 2 I/O error.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seeded random instance: A = (R+Rᵀ)/2, B = WWᵀ/n + I, C = VVᵀ/n + I.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 10.0)]
        beta: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Solve an instance file and print a summary.
    #[command(after_help = output::TRACE_HELP)]
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        max_iter: usize,
        /// Per-iteration CSV trace.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Solve random instances over a grid of sizes, seeds and methods.
    #[command(after_help = bench::BENCH_HELP)]
    Bench {
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Inclusive range `a..b` or comma-separated list.
        #[arg(long, default_value = "1..5")]
        seeds: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "dim,exact")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long, default_value_t = 10.0)]
        beta: f64,
        /// Output CSV; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the solver against a sampling oracle on a small instance.
    Check {
        instance: PathBuf,
        #[arg(long, default_value_t = 20000)]
        num_dirs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        max_iter: usize,
        #[arg(long, default_value_t = DEFAULT_ORACLE_DIM)]
        max_dim: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen {
            n,
            seed,
            alpha,
            beta,
            out,
        } => {
            let p = random_instance::<f64>(n, seed, alpha, beta)?;
            save_instance(&p, &out)?;
            println!("wrote {}", out.display());
        }
        Command::Solve {
            instance,
            method,
            tol,
            max_iter,
            trace_out,
        } => cmd_solve(&instance, method, tol, max_iter, trace_out.as_deref())?,
        Command::Bench {
            n,
            seeds,
            methods,
            tol,
            max_iter,
            alpha,
            beta,
            out,
        } => {
            let sweep = bench::Sweep {
                sizes: n,
                seeds: bench::parse_seeds(&seeds)?,
                methods,
                tol,
                max_iter,
                alpha,
                beta,
            };
            let rows = bench::run(&sweep)?;
            match out {
                Some(path) => bench::write_csv(&rows, File::create(path)?)?,
                None => bench::write_csv(&rows, io::stdout().lock())?,
            }
        }
        Command::Check {
            instance,
            num_dirs,
            seed,
            method,
            tol,
            max_iter,
            max_dim,
        } => cmd_check(&instance, num_dirs, seed, method, tol, max_iter, max_dim)?,
    }
    Ok(())
}

fn load(path: &Path) -> Result<Problem, CliError> {
    Ok(load_instance(path)?)
}

fn config(method: Method, tol: f64, max_iter: usize, trace: bool) -> Config {
    Config {
        record_trace: trace,
        ..Config::new(method.stepsize(), tol, max_iter)
    }
}

fn cmd_solve(
    instance: &Path,
    method: Method,
    tol: f64,
    max_iter: usize,
    trace_out: Option<&Path>,
) -> Result<(), CliError> {
    let p = load(instance)?;
    let r = solve(&p, &config(method, tol, max_iter, trace_out.is_some()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "method: {}", method.name())?;
    writeln!(out, "n: {}", p.dim())?;
    writeln!(out, "value_best: {}", r.value_best)?;
    writeln!(out, "lower_bound_best: {}", r.lower_bound_best)?;
    writeln!(out, "gap: {:e}", r.final_gap)?;
    writeln!(out, "certificate_gap: {:e}", r.certificate_gap())?;
    writeln!(out, "iterations: {}", r.iterations)?;
    writeln!(out, "terminated_by: {}", r.terminated_by.as_str())?;
    writeln!(out, "time_s: {:.6}", r.elapsed_secs)?;
    if let Some(path) = trace_out {
        output::write_trace(&r.trace, BufWriter::new(File::create(path)?))?;
    }
    Ok(())
}

/// PASS iff `LB − tol ≤ oracle ≤ solver + tol`, `tol = 1e-4 (1 + |oracle|)`.
pub fn sandwich_holds(lower_bound: f64, oracle: f64, solver: f64) -> bool {
    let tol = 1e-4 * (1.0 + oracle.abs());
    lower_bound - tol <= oracle && oracle <= solver + tol
}

fn cmd_check(
    instance: &Path,
    num_dirs: usize,
    seed: u64,
    method: Method,
    tol: f64,
    max_iter: usize,
    max_dim: usize,
) -> Result<(), CliError> {
    let p = load(instance)?;
    if p.dim() > max_dim {
        return Err(CliError::OracleDimensionLimit {
            n: p.dim(),
            max: max_dim,
        });
    }
    let r = solve(&p, &config(method, tol, max_iter, false))?;
    let o = brute_force(&p, num_dirs, seed)?;
    let pass = sandwich_holds(r.lower_bound_best, o.value, r.value_best);
    let mut out = io::stdout().lock();
    writeln!(out, "oracle: {}", o.value)?;
    writeln!(out, "solver: {}", r.value_best)?;
    writeln!(out, "lower_bound: {}", r.lower_bound_best)?;
    writeln!(out, "certificate_gap: {:e}", r.certificate_gap())?;
    writeln!(out, "iterations: {}", r.iterations)?;
    writeln!(out, "verdict: {}", if pass { "PASS" } else { "FAIL" })?;
    Ok(())
}
