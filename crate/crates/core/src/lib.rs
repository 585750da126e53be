//! Global minimization of a quadratic minus the square root of a quadratic
//! over an ellipsoidal annulus:
//!
//! ```text
//! min  q(x) = xᵀAx − √(xᵀBx)   s.t.  α ≤ xᵀCx ≤ β
//! ```
//!
//! with `B, C ≻ 0`, `0 < α < β` and `n ≥ 3`. In that regime the image of the
//! annulus under `x ↦ (xᵀAx, xᵀBx)` is convex, so Frank-Wolfe on the two
//! hidden variables converges to the global optimum. Each iteration costs one
//! extreme generalized eigenpair and produces both a feasible point and a
//! certified lower bound.
//!
//! ```
//! use qr_core::{random_instance, solve, SolverConfig, Stepsize};
//!
//! let p = random_instance::<f64>(20, 7, 1.0, 10.0).unwrap();
//! let cfg = SolverConfig::new(Stepsize::ExactLineSearch, 1e-6, 2000);
//! let r = solve(&p, &cfg).unwrap();
//! assert!(r.lower_bound_best <= r.value_best + 1e-9);
//! ```

// `!(x > 0)` is used deliberately so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod applications;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod problem;
pub mod scalar;
pub mod solver;
pub mod subproblem;

pub use applications::{hcdt_penalty, max_eig_via_qr, MaxEigRecovery, PenaltyResult};
pub use error::{Error, Result};
pub use linalg::{cholesky_spd, gen_eigpair, CholeskyFactor, Extreme, GenEigPair, SymMatrix};
pub use oracle::{brute_force, brute_force_annulus, radial_min, OracleResult, RadialResult};
pub use problem::{
    load_instance, random_instance, read_instance, reduce_alpha_zero, save_instance, validate,
    write_instance, AlphaZeroReduction, Feasibility, HiddenPoint, InstanceFile, QrProblem,
    SmoothnessConstants,
};
pub use scalar::Scalar;
pub use solver::{
    delta_bound, diminishing_step, exact_linesearch, fw_gap, primal_bound, solve, IterationRecord,
    SolveResult, SolverConfig, Stepsize, Termination,
};
pub use subproblem::{
    dual_certificate, solve_gp, solve_gp_with, DualCertificate, GpCase, GpOptions,
    LinearizedSubproblem, SubproblemSolution,
};

pub type Matrix = SymMatrix<f64>;
pub type Matrix32 = SymMatrix<f32>;
pub type Problem = QrProblem<f64>;
pub type Problem32 = QrProblem<f32>;
pub type Config = SolverConfig<f64>;
pub type Config32 = SolverConfig<f32>;
pub type Solution = SolveResult<f64>;
pub type Solution32 = SolveResult<f32>;
