//! Problems that reduce to a single annulus instance.

use crate::error::Result;
use crate::linalg::{
    cholesky_named, fix_sign, gen_eig_extremes, gen_eigpair, Extreme, GenEigPair, SymMatrix,
};
use crate::problem::QrProblem;
use crate::scalar::Scalar;
use crate::solver::{solve, SolveResult, SolverConfig, Stepsize};

#[derive(Clone, Debug)]
pub struct MaxEigRecovery<T> {
    /// `λ_max(B, A)` and the optimal direction scaled to `vᵀCv = 1`.
    pub pair: GenEigPair<T>,
    pub problem: QrProblem<T>,
    pub solve: SolveResult<T>,
}

/// Largest `λ` with `Bv = λAv`, read off the minimizer of
/// `xᵀAx − √(xᵀBx)`.
///
/// Along a direction `d` the radial minimum is `−(dᵀBd)/(4 dᵀAd)`, so the
/// optimal direction maximizes the Rayleigh quotient of `(B, A)` and
/// `λ = 2√(x*ᵀBx*)`. The annulus is sized from a probe of the same pencil
/// with a factor-2 margin on each side so that `x*` is interior.
pub fn max_eig_via_qr<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    c: &SymMatrix<T>,
) -> Result<MaxEigRecovery<T>> {
    let a_factor = cholesky_named(a, "A")?;
    cholesky_named(b, "B")?;
    let c_factor = cholesky_named(c, "C")?;
    let probe = gen_eigpair(b, &a_factor, Extreme::Max)?.value;
    let (lam_min_bc, lam_max_bc) = gen_eig_extremes(b, &c_factor)?;
    let sq = probe * probe;
    let alpha = sq / (T::c(8.0) * lam_max_bc);
    let beta = sq / (T::c(2.0) * lam_min_bc);

    let problem = QrProblem::new(a.clone(), b.clone(), c.clone(), alpha, beta)?;
    let config = SolverConfig {
        record_trace: false,
        ..SolverConfig::new(Stepsize::ExactLineSearch, T::c(1e-8), 2000)
    };
    let result = solve(&problem, &config)?;
    let x = &result.x_best;
    let value = T::c(2.0) * b.quad_form(x).sqrt();
    let inv = T::one() / c.quad_form(x).sqrt();
    let mut vector: Vec<T> = x.iter().map(|&v| v * inv).collect();
    fix_sign(&mut vector);
    Ok(MaxEigRecovery {
        pair: GenEigPair { value, vector },
        problem,
        solve: result,
    })
}

#[derive(Clone, Debug)]
pub struct PenaltyResult<T> {
    /// The instance `(A + ρB, 4ρ²B, C, α, β)`.
    pub problem: QrProblem<T>,
    pub solve: SolveResult<T>,
    /// `value_best + ρ`
    pub penalty_objective: T,
    /// `|x_bestᵀ B x_best − 1|`
    pub residual: T,
}

/// Penalized form of `min xᵀAx` subject to `xᵀBx = 1` and the annulus:
/// `xᵀ(A + ρB)x − √(xᵀ(4ρ²B)x) + ρ = xᵀAx + ρ(√(xᵀBx) − 1)²`.
#[allow(clippy::too_many_arguments)]
pub fn hcdt_penalty<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    c: &SymMatrix<T>,
    alpha: T,
    beta: T,
    rho: T,
    config: &SolverConfig<T>,
) -> Result<PenaltyResult<T>> {
    if !(rho > T::zero() && rho.is_finite()) {
        return Err(crate::error::Error::InvalidConfig(format!(
            "penalty weight must be positive, got {rho}"
        )));
    }
    let pa = a.add_scaled(b, rho)?;
    let pb = b.scale(T::c(4.0) * rho * rho);
    let problem = QrProblem::new(pa, pb, c.clone(), alpha, beta)?;
    let result = solve(&problem, config)?;
    let residual = (b.quad_form(&result.x_best) - T::one()).abs();
    Ok(PenaltyResult {
        penalty_objective: result.value_best + rho,
        residual,
        problem,
        solve: result,
    })
}
