use std::io::Write;

use rayon::prelude::*;

use crate::{CliError, Method};
use qr_core::{random_instance, solve, Config, Termination};

pub const BENCH_COLUMNS: [&str; 11] = [
    "n",
    "seed",
    "method",
    "status",
    "time_s",
    "iterations",
    "value",
    "gap",
    "lower_bound",
    "last_gamma",
    "terminated_by",
];

pub const BENCH_HELP: &str = "Benchmark CSV columns, in order:\n  \
n,seed,method,status,time_s,iterations,value,gap,lower_bound,last_gamma,terminated_by\n\
Rows are ordered by (n, seed, method). After the rows for each n come one\n\
row per method with seed = avg, averaged over that method's successful rows.\n\
status is ok or an error message. gap uses scientific notation.\n\
QR_THREADS caps the number of parallel solves.";

pub struct Sweep {
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub methods: Vec<Method>,
    pub tol: f64,
    pub max_iter: usize,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub time_s: f64,
    pub iterations: f64,
    pub value: f64,
    pub gap: f64,
    pub lower_bound: f64,
    pub last_gamma: Option<f64>,
    pub terminated_by: Option<Termination>,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub n: usize,
    /// `None` on average rows.
    pub seed: Option<u64>,
    pub method: Method,
    pub result: Result<Outcome, String>,
}

/// `a..b` (inclusive) or `a,b,c`.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse seeds '{text}'"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn thread_count() -> Option<usize> {
    std::env::var("QR_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

fn run_one(sweep: &Sweep, n: usize, seed: u64, method: Method) -> Result<Outcome, String> {
    let p = random_instance::<f64>(n, seed, sweep.alpha, sweep.beta).map_err(|e| e.to_string())?;
    let cfg = Config {
        record_trace: false,
        ..Config::new(method.stepsize(), sweep.tol, sweep.max_iter)
    };
    let r = solve(&p, &cfg).map_err(|e| e.to_string())?;
    Ok(Outcome {
        time_s: r.elapsed_secs,
        iterations: r.iterations as f64,
        value: r.value_best,
        gap: r.final_gap,
        lower_bound: r.lower_bound_best,
        last_gamma: r.last_gamma,
        terminated_by: Some(r.terminated_by),
    })
}

/// Runs every `(n, seed, method)` job, then appends per-`n` averages.
pub fn run(sweep: &Sweep) -> Result<Vec<Row>, CliError> {
    let mut jobs = Vec::new();
    for &n in &sweep.sizes {
        for &seed in &sweep.seeds {
            for &method in &sweep.methods {
                jobs.push((n, seed, method));
            }
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = thread_count() {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    // indexed collect keeps job order
    let results: Vec<Row> = pool.install(|| {
        jobs.par_iter()
            .map(|&(n, seed, method)| Row {
                n,
                seed: Some(seed),
                method,
                result: run_one(sweep, n, seed, method),
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(results.len() + sweep.sizes.len() * sweep.methods.len());
    for &n in &sweep.sizes {
        rows.extend(results.iter().filter(|r| r.n == n).cloned());
        for &method in &sweep.methods {
            rows.push(average(&results, n, method));
        }
    }
    Ok(rows)
}

fn average(results: &[Row], n: usize, method: Method) -> Row {
    let ok: Vec<&Outcome> = results
        .iter()
        .filter(|r| r.n == n && r.method == method)
        .filter_map(|r| r.result.as_ref().ok())
        .collect();
    let result = if ok.is_empty() {
        Err("no successful rows".to_string())
    } else {
        let m = ok.len() as f64;
        let mean = |f: fn(&Outcome) -> f64| ok.iter().map(|o| f(o)).sum::<f64>() / m;
        let gammas: Vec<f64> = ok.iter().filter_map(|o| o.last_gamma).collect();
        Ok(Outcome {
            time_s: mean(|o| o.time_s),
            iterations: mean(|o| o.iterations),
            value: mean(|o| o.value),
            gap: mean(|o| o.gap),
            lower_bound: mean(|o| o.lower_bound),
            last_gamma: (!gammas.is_empty())
                .then(|| gammas.iter().sum::<f64>() / gammas.len() as f64),
            terminated_by: None,
        })
    };
    Row {
        n,
        seed: None,
        method,
        result,
    }
}

pub fn write_csv<W: Write>(rows: &[Row], w: W) -> Result<(), CliError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(BENCH_COLUMNS)?;
    for row in rows {
        let seed = row
            .seed
            .map(|s| s.to_string())
            .unwrap_or_else(|| "avg".into());
        let mut rec = vec![row.n.to_string(), seed, row.method.name().to_string()];
        match &row.result {
            Ok(o) => rec.extend([
                "ok".to_string(),
                format!("{:.6}", o.time_s),
                o.iterations.to_string(),
                o.value.to_string(),
                format!("{:e}", o.gap),
                o.lower_bound.to_string(),
                o.last_gamma.map(|g| g.to_string()).unwrap_or_default(),
                o.terminated_by
                    .map(|t| t.as_str().to_string())
                    .unwrap_or_default(),
            ]),
            Err(msg) => {
                rec.push(msg.clone());
                rec.extend(std::iter::repeat_n(String::new(), 7));
            }
        }
        wr.write_record(&rec)?;
    }
    wr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!(parse_seeds("1..5").unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(parse_seeds("3,1,2").unwrap(), vec![3, 1, 2]);
        assert!(parse_seeds("5..1").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn rows_in_job_order_with_averages() {
        let sweep = Sweep {
            sizes: vec![5, 2],
            seeds: vec![2, 1],
            methods: vec![Method::Exact, Method::Dim],
            tol: 1e-6,
            max_iter: 50,
            alpha: 1.0,
            beta: 10.0,
        };
        let rows = run(&sweep).unwrap();
        assert_eq!(rows.len(), 2 * (4 + 2));
        let keys: Vec<(usize, Option<u64>, &str)> = rows
            .iter()
            .map(|r| (r.n, r.seed, r.method.name()))
            .collect();
        assert_eq!(keys[0], (5, Some(2), "exact"));
        assert_eq!(keys[3], (5, Some(1), "dim"));
        assert_eq!(keys[4], (5, None, "exact"));
        // n = 2 is rejected per row without aborting the sweep
        assert!(rows[6].result.is_err());
        assert!(rows[10].result.is_err());
    }
}
