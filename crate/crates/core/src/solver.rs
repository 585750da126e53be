//! Frank-Wolfe on the hidden variables `(s, t) = (xᵀAx, xᵀBx)`.
//!
//! Each iteration linearizes `f(s, t) = s − √t` at `(s_k, t_k)`, solves the
//! linearized problem over the annulus by one minimum generalized eigenpair,
//! and moves `(s, t)` toward the image `(ŝ_k, t̂_k)` of the eigenvector. The
//! eigenvector scaled onto the annulus is itself a feasible approximate
//! minimizer of `q`, so no point is ever reconstructed from `(s, t)`.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::oracle::radial_min;
use crate::problem::{QrProblem, SmoothnessConstants};
use crate::scalar::Scalar;
use crate::subproblem::{dual_certificate, LinearizedSubproblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stepsize {
    /// `γ_k = 2 / (k + 2)`
    Diminishing,
    /// `γ_k = argmin_{γ ∈ [0,1]} f((1−γ)(s_k,t_k) + γ(ŝ_k,t̂_k))`
    ExactLineSearch,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig<T> {
    pub stepsize: Stepsize,
    /// Stop once the Frank-Wolfe gap is at most this.
    pub gap_tol: T,
    pub max_iter: usize,
    pub record_trace: bool,
    /// Also minimize `q` exactly along each eigenvector direction over the
    /// feasible radii. Never worse than the boundary point itself, and
    /// required to reach optima strictly inside the annulus.
    pub radial_polish: bool,
}

impl<T: Scalar> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            stepsize: Stepsize::ExactLineSearch,
            gap_tol: T::c(1e-6),
            max_iter: 2000,
            record_trace: true,
            radial_polish: true,
        }
    }
}

impl<T: Scalar> SolverConfig<T> {
    pub fn new(stepsize: Stepsize, gap_tol: T, max_iter: usize) -> Self {
        Self {
            stepsize,
            gap_tol,
            max_iter,
            ..Self::default()
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.gap_tol > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "gap tolerance must be positive, got {}",
                self.gap_tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// State and certificates at iteration `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord<T> {
    pub k: usize,
    pub s: T,
    pub t: T,
    /// `f(s_k, t_k) = s_k − √t_k`
    pub f: T,
    /// Step taken after this iteration; `None` on the terminal record.
    pub gamma: Option<T>,
    pub gap: T,
    /// `q(x̂_k)` for the unpolished subproblem minimizer.
    pub q_xhat: T,
    pub lower_bound: T,
    pub lambda_g: T,
    pub delta_k: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Gap,
    MaxIter,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Gap => "GAP",
            Termination::MaxIter => "MAX_ITER",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult<T> {
    pub x_best: Vec<T>,
    /// Smallest objective value seen.
    pub value_best: T,
    /// Largest certified lower bound seen.
    pub lower_bound_best: T,
    pub iterations: usize,
    pub terminated_by: Termination,
    pub final_gap: T,
    /// Last hidden iterate `(s_k, t_k)`.
    pub s_final: T,
    pub t_final: T,
    /// Last step actually taken.
    pub last_gamma: Option<T>,
    pub constants: SmoothnessConstants<T>,
    pub elapsed_secs: f64,
    pub trace: Vec<IterationRecord<T>>,
}

impl<T: Scalar> SolveResult<T> {
    /// `value_best − lower_bound_best`, nonnegative up to rounding.
    pub fn certificate_gap(&self) -> T {
        self.value_best - self.lower_bound_best
    }
}

/// `2 / (k + 2)`.
pub fn diminishing_step<T: Scalar>(k: usize) -> T {
    T::c(2.0) / T::c((k + 2) as f64)
}

/// Minimizer over `[0, 1]` of
/// `φ(γ) = (1−γ)s + γŝ − √((1−γ)t + γt̂)`.
///
/// `φ` is convex. With `Δs = ŝ − s`, `Δt = t̂ − t`, the stationary point is
/// `Δt/(4Δs²) − t/Δt` when `Δs` and `Δt` share a sign; otherwise `φ` is
/// monotone and the minimizer is an endpoint.
pub fn exact_linesearch<T: Scalar>(s: T, t: T, s_hat: T, t_hat: T) -> T {
    let zero = T::zero();
    let one = T::one();
    let ds = s_hat - s;
    let dt = t_hat - t;
    if ds == zero {
        return if dt > zero { one } else { zero };
    }
    if dt == zero {
        return if ds < zero { one } else { zero };
    }
    if ds > zero && dt < zero {
        return zero;
    }
    if ds < zero && dt > zero {
        return one;
    }
    let gamma = dt / (T::c(4.0) * ds * ds) - t / dt;
    if gamma.is_nan() {
        return zero;
    }
    gamma.max(zero).min(one)
}

/// `s − ŝ + t̂/(2√t) − √t/2`.
pub fn fw_gap<T: Scalar>(s: T, t: T, s_hat: T, t_hat: T) -> T {
    let root = t.sqrt();
    s - s_hat + t_hat / (T::c(2.0) * root) - root * T::c(0.5)
}

/// Certified suboptimality of the subproblem minimizer at iteration `k`:
/// `(t_max/t_min) √(L D² √t_max / (k + 2))`.
pub fn delta_bound<T: Scalar>(c: &SmoothnessConstants<T>, k: usize) -> T {
    (c.t_max / c.t_min) * root_term(c, k)
}

/// Primal rate `2 L D² / (k + 2)` for `f(s_k, t_k) − f*`.
pub fn primal_bound<T: Scalar>(c: &SmoothnessConstants<T>, k: usize) -> T {
    T::c(2.0) * c.lipschitz * c.diameter * c.diameter / T::c((k + 2) as f64)
}

/// Bound on `|√t_k − √t*|`: `√(4 L D² √t_max / (k + 2))`.
pub fn sqrt_t_bound<T: Scalar>(c: &SmoothnessConstants<T>, k: usize) -> T {
    T::c(2.0) * root_term(c, k)
}

/// Interval containing `s_k − s*`.
pub fn s_bounds<T: Scalar>(c: &SmoothnessConstants<T>, k: usize) -> (T, T) {
    let r = sqrt_t_bound(c, k);
    (-r, primal_bound(c, k) + r)
}

/// Bound on `|t_k − t*|`: `4 √t_max √(L D² √t_max / (k + 2))`.
pub fn t_bound<T: Scalar>(c: &SmoothnessConstants<T>, k: usize) -> T {
    T::c(4.0) * c.t_max.sqrt() * root_term(c, k)
}

fn root_term<T: Scalar>(c: &SmoothnessConstants<T>, k: usize) -> T {
    (c.lipschitz * c.diameter * c.diameter * c.t_max.sqrt() / T::c((k + 2) as f64)).sqrt()
}

/// Runs the iteration from [`QrProblem::initial_point`].
pub fn solve<T: Scalar>(p: &QrProblem<T>, config: &SolverConfig<T>) -> Result<SolveResult<T>> {
    config.check()?;
    let started = Instant::now();
    let constants = p.constants()?;
    let sub = LinearizedSubproblem::new(p)?;
    let t_floor = constants.t_min * (T::one() - T::c(1e-12));

    let x0 = p.initial_point();
    let start = p.hidden_point(&x0);
    let (mut s, mut t) = (start.s, start.t.max(t_floor));

    let mut x_best = x0.clone();
    let mut value_best = p.objective(&x0);
    let mut lower_bound_best = T::neg_infinity();
    let mut last_gamma = None;
    let mut trace = Vec::new();
    let mut k = 1;

    let (terminated_by, final_gap) = loop {
        let sol = sub.solve(t)?;
        let q_xhat = sol.s_hat - sol.t_hat.max(T::zero()).sqrt();
        let cert = dual_certificate(p, t, sol.lambda_g)?;
        let gap = fw_gap(s, t, sol.s_hat, sol.t_hat);

        if q_xhat < value_best {
            value_best = q_xhat;
            x_best.clone_from(&sol.x_hat);
        }
        if config.radial_polish {
            let cx = p.c().quad_form(&sol.x_hat);
            if cx > T::zero() {
                let a = sol.s_hat / cx;
                let b = (sol.t_hat / cx).max(T::zero()).sqrt();
                let radial = radial_min(a, b, p.alpha(), p.beta())?;
                if radial.value < value_best {
                    value_best = radial.value;
                    let factor = radial.r_star / cx.sqrt();
                    x_best = sol.x_hat.iter().map(|&v| v * factor).collect();
                }
            }
        }
        if cert.lower_bound > lower_bound_best {
            lower_bound_best = cert.lower_bound;
        }

        let done = if gap <= config.gap_tol {
            Some(Termination::Gap)
        } else if k >= config.max_iter {
            Some(Termination::MaxIter)
        } else {
            None
        };
        let gamma = match (done, config.stepsize) {
            (Some(_), _) => None,
            (None, Stepsize::Diminishing) => Some(diminishing_step(k)),
            (None, Stepsize::ExactLineSearch) => Some(exact_linesearch(s, t, sol.s_hat, sol.t_hat)),
        };
        if config.record_trace {
            trace.push(IterationRecord {
                k,
                s,
                t,
                f: s - t.sqrt(),
                gamma,
                gap,
                q_xhat,
                lower_bound: cert.lower_bound,
                lambda_g: sol.lambda_g,
                delta_k: delta_bound(&constants, k),
            });
        }
        if let Some(reason) = done {
            break (reason, gap);
        }
        let gamma = gamma.expect("step chosen when not terminating");
        last_gamma = Some(gamma);
        s = (T::one() - gamma) * s + gamma * sol.s_hat;
        t = ((T::one() - gamma) * t + gamma * sol.t_hat).max(t_floor);
        k += 1;
    };

    Ok(SolveResult {
        x_best,
        value_best,
        lower_bound_best,
        iterations: k,
        terminated_by,
        final_gap,
        s_final: s,
        t_final: t,
        last_gamma,
        constants,
        elapsed_secs: started.elapsed().as_secs_f64(),
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SymMatrix;
    use crate::problem::Feasibility;

    fn eye() -> SymMatrix<f64> {
        SymMatrix::identity(3)
    }

    #[test]
    fn diminishing_examples() {
        assert!((diminishing_step::<f64>(1) - 2.0 / 3.0).abs() < 1e-16);
        assert_eq!(diminishing_step::<f64>(2), 0.5);
        assert!((diminishing_step::<f64>(998) - 0.002).abs() < 1e-16);
    }

    #[test]
    fn linesearch_examples() {
        assert_eq!(exact_linesearch(0.0, 1.0, -1.0, 2.0), 1.0);
        assert_eq!(exact_linesearch(0.0, 4.0, 1.0, 1.0), 0.0);
        // stationary point 8/4 − 1/8 = 1.875 lies past the segment
        assert_eq!(exact_linesearch(0.0, 1.0, 1.0, 9.0), 1.0);
    }

    #[test]
    fn linesearch_degenerate_cases() {
        assert_eq!(exact_linesearch(1.0, 1.0, 1.0, 2.0), 1.0);
        assert_eq!(exact_linesearch(1.0, 2.0, 1.0, 1.0), 0.0);
        assert_eq!(exact_linesearch(1.0, 1.0, 0.5, 1.0), 1.0);
        assert_eq!(exact_linesearch(1.0, 1.0, 2.0, 1.0), 0.0);
        assert_eq!(exact_linesearch(1.0, 1.0, 1.0, 1.0), 0.0);
    }

    #[test]
    fn linesearch_interior_minimizer() {
        // s = 0, t = 1, ŝ = 1, t̂ = 25: φ'(γ) = 1 − 12/√(1 + 24γ) vanishes at γ = 143/24 > 1
        // s = 0, t = 1, ŝ = 2, t̂ = 9: φ'(γ) = 2 − 4/√(1 + 8γ) vanishes at γ = 3/8
        let g: f64 = exact_linesearch(0.0, 1.0, 2.0, 9.0);
        assert!((g - 0.375).abs() < 1e-15);
        let phi = |g: f64| 2.0 * g - (1.0 + 8.0 * g).sqrt();
        for probe in [0.0, 0.2, 0.37, 0.38, 0.6, 1.0] {
            assert!(phi(g) <= phi(probe) + 1e-15);
        }
    }

    #[test]
    fn gap_examples() {
        assert_eq!(fw_gap(1.0, 1.0, 1.0, 1.0), 0.0);
        assert_eq!(fw_gap(2.0, 4.0, 1.0, 4.0), 1.0);
    }

    #[test]
    fn bound_examples_identity_constants() {
        let p = QrProblem::new(eye(), eye(), eye(), 1.0, 10.0).unwrap();
        let c = p.constants().unwrap();
        // (10/1) √((1/4)·162·√10/3)
        let expect = 10.0 * (0.25 * 162.0 * 10f64.sqrt() / 3.0).sqrt();
        assert!((delta_bound(&c, 1) - expect).abs() < 1e-9);
        assert!((delta_bound(&c, 1) - 65.33).abs() < 0.01);
        assert!((primal_bound(&c, 1) - 27.0).abs() < 1e-9);
        assert!((primal_bound(&c, 160) - 0.5).abs() < 1e-9);
        let mut prev = f64::INFINITY;
        for k in 1..200 {
            let d = delta_bound(&c, k);
            assert!(d < prev);
            prev = d;
        }
    }

    #[test]
    fn delta_scales_with_t_max() {
        let p = QrProblem::new(eye(), eye(), eye(), 1.0, 10.0).unwrap();
        let c = p.constants().unwrap();
        let mut doubled = c;
        doubled.t_max = 2.0 * c.t_max;
        let ratio = delta_bound(&doubled, 5) / delta_bound(&c, 5);
        assert!((ratio - 2.0 * 2f64.powf(0.25)).abs() < 1e-12);
    }

    #[test]
    fn identity_instance_solves_to_zero() {
        let p = QrProblem::new(eye(), eye(), eye(), 1.0, 10.0).unwrap();
        let cfg = SolverConfig::new(Stepsize::ExactLineSearch, 1e-8, 2000);
        let r = solve(&p, &cfg).unwrap();
        assert!(r.value_best.abs() < 1e-8);
        assert_eq!(r.terminated_by, Termination::Gap);
        assert!((p.c().quad_form(&r.x_best) - 1.0).abs() < 1e-8);
        assert_eq!(r.trace.len(), r.iterations);
        assert!(r.trace.last().unwrap().gamma.is_none());
    }

    #[test]
    fn axis_instance_solves_to_minus_six() {
        let p = QrProblem::new(
            SymMatrix::from_diagonal(&[-1.0, 1.0, 1.0]),
            eye(),
            eye(),
            1.0,
            4.0,
        )
        .unwrap();
        let r = solve(
            &p,
            &SolverConfig::new(Stepsize::ExactLineSearch, 1e-8, 2000),
        )
        .unwrap();
        assert!((r.value_best + 6.0).abs() < 1e-6);
        assert!((r.x_best[0].abs() - 2.0).abs() < 1e-6);
        assert!(r.lower_bound_best <= r.value_best + 1e-8);
        assert_ne!(p.feasibility(&r.x_best, 1e-8), Feasibility::Infeasible);
    }

    #[test]
    fn max_iter_one_reports_truncation() {
        let p = crate::problem::random_instance::<f64>(10, 4, 1.0, 10.0).unwrap();
        let r = solve(&p, &SolverConfig::new(Stepsize::Diminishing, 1e-12, 1)).unwrap();
        assert_eq!(r.iterations, 1);
        assert_eq!(r.terminated_by, Termination::MaxIter);
        assert!(r.lower_bound_best <= r.value_best);
    }

    #[test]
    fn invalid_config_rejected() {
        let p = QrProblem::new(eye(), eye(), eye(), 1.0, 10.0).unwrap();
        let bad = SolverConfig::new(Stepsize::Diminishing, 0.0, 10);
        assert!(matches!(solve(&p, &bad), Err(Error::InvalidConfig(_))));
        let bad = SolverConfig::new(Stepsize::Diminishing, 1e-6, 0);
        assert!(matches!(solve(&p, &bad), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn single_precision_runs() {
        let p: QrProblem<f32> = QrProblem::new(
            SymMatrix::from_diagonal(&[-1.0, 1.0, 1.0]),
            SymMatrix::identity(3),
            SymMatrix::identity(3),
            1.0,
            4.0,
        )
        .unwrap();
        let r = solve(&p, &SolverConfig::new(Stepsize::ExactLineSearch, 1e-4, 200)).unwrap();
        assert!((r.value_best + 6.0).abs() < 1e-4);
    }
}
