//! The linearized subproblem
//!
//! ```text
//! min xᵀ M x   s.t.  α ≤ xᵀCx ≤ β,    M = A − B / (2√t)
//! ```
//!
//! is solved exactly by one minimum generalized eigenpair `(λ_g, v_g)` of the
//! pencil `(M, C)`: the minimizer is `√α·v_g` when `λ_g ≥ 0` and `√β·v_g`
//! when `λ_g < 0`. The same eigenvalue yields multipliers for the conic dual
//! and hence a certified lower bound on the global optimum.

use crate::error::{Error, Result};
use crate::linalg::{extreme_eigenpair, kernel_basis, whitened_extreme_pair, Extreme, SymMatrix};
use crate::problem::QrProblem;
use crate::scalar::Scalar;

/// Which branch of the closed-form solution produced the minimizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GpCase {
    /// `M` singular: an interior kernel point, value 0.
    Kernel,
    /// `λ_g ≥ 0`: minimizer on `xᵀCx = α`.
    Lower,
    /// `λ_g < 0`: minimizer on `xᵀCx = β`.
    Upper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubproblemSolution<T> {
    pub x_hat: Vec<T>,
    /// `x̂ᵀAx̂`
    pub s_hat: T,
    /// `x̂ᵀBx̂`
    pub t_hat: T,
    pub lambda_g: T,
    pub case: GpCase,
    /// Optimal value `x̂ᵀMx̂`.
    pub value: T,
}

/// Options for [`LinearizedSubproblem::solve_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GpOptions {
    /// Return an interior kernel point when `λ_g` is numerically zero instead
    /// of the boundary point `√α·v_g`. Both are optimal.
    pub interior_kernel: bool,
}

/// Multipliers `(λ₁, λ₂, λ₃)` with `A + (λ₂ − λ₁)C − λ₃B ⪰ 0`, certifying
/// `v(QR) ≥ λ₁α − λ₂β − 1/(4λ₃)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualCertificate<T> {
    pub lambda1: T,
    pub lambda2: T,
    pub lambda3: T,
    pub lower_bound: T,
}

impl<T: Scalar> DualCertificate<T> {
    /// `A + (λ₂ − λ₁)C − λ₃B`.
    pub fn slack_matrix(&self, p: &QrProblem<T>) -> Result<SymMatrix<T>> {
        p.a()
            .add_scaled(p.c(), self.lambda2 - self.lambda1)?
            .add_scaled(p.b(), -self.lambda3)
    }

    /// Smallest eigenvalue of the slack matrix; nonnegative up to rounding.
    pub fn psd_margin(&self, p: &QrProblem<T>) -> Result<T> {
        Ok(extreme_eigenpair(&self.slack_matrix(p)?, Extreme::Min).0)
    }
}

/// `M = A − B / (2√t)`.
pub fn linearized_matrix<T: Scalar>(p: &QrProblem<T>, t: T) -> Result<SymMatrix<T>> {
    check_t(t)?;
    p.a().add_scaled(p.b(), -linear_weight(t))
}

#[inline]
fn linear_weight<T: Scalar>(t: T) -> T {
    T::one() / (T::c(2.0) * t.sqrt())
}

fn check_t<T: Scalar>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveT { t: t.as_f64() })
    }
}

/// Subproblem solver with `A` and `B` pre-reduced by the Cholesky factor of
/// `C`, so each solve costs one symmetric eigenpair.
pub struct LinearizedSubproblem<'a, T> {
    problem: &'a QrProblem<T>,
    a_white: SymMatrix<T>,
    b_white: SymMatrix<T>,
}

impl<'a, T: Scalar> LinearizedSubproblem<'a, T> {
    pub fn new(problem: &'a QrProblem<T>) -> Result<Self> {
        let f = problem.c_factor();
        Ok(Self {
            problem,
            a_white: f.congruence(problem.a())?,
            b_white: f.congruence(problem.b())?,
        })
    }

    pub fn problem(&self) -> &QrProblem<T> {
        self.problem
    }

    pub fn solve(&self, t: T) -> Result<SubproblemSolution<T>> {
        self.solve_with(t, GpOptions::default())
    }

    pub fn solve_with(&self, t: T, opts: GpOptions) -> Result<SubproblemSolution<T>> {
        check_t(t)?;
        let p = self.problem;
        let weight = linear_weight(t);
        let m_white = self.a_white.add_scaled(&self.b_white, -weight)?;
        let pair = whitened_extreme_pair(&m_white, p.c_factor(), Extreme::Min);
        let lambda_g = pair.value;

        if opts.interior_kernel {
            let m = linearized_matrix(p, t)?;
            let eps0 = T::c(1e-9) * (T::one() + m.frobenius_norm());
            if lambda_g.abs() <= eps0 {
                if let Some(sol) = self.kernel_point(&m, lambda_g) {
                    return Ok(sol);
                }
            }
        }

        let (case, bound) = if lambda_g >= T::zero() {
            (GpCase::Lower, p.alpha())
        } else {
            (GpCase::Upper, p.beta())
        };
        let scale = bound.sqrt();
        let x_hat: Vec<T> = pair.vector.iter().map(|&v| v * scale).collect();
        Ok(self.finish(x_hat, lambda_g, case, lambda_g * bound))
    }

    fn kernel_point(&self, m: &SymMatrix<T>, lambda_g: T) -> Option<SubproblemSolution<T>> {
        let p = self.problem;
        let basis = kernel_basis(m, T::c(1e-9));
        let u = basis.first()?;
        let target = (p.alpha() + p.beta()) * T::c(0.5);
        let scale = (target / p.c().quad_form(u)).sqrt();
        let x_hat = u.iter().map(|&v| v * scale).collect();
        Some(self.finish(x_hat, lambda_g, GpCase::Kernel, T::zero()))
    }

    fn finish(&self, x_hat: Vec<T>, lambda_g: T, case: GpCase, value: T) -> SubproblemSolution<T> {
        let h = self.problem.hidden_point(&x_hat);
        SubproblemSolution {
            x_hat,
            s_hat: h.s,
            t_hat: h.t,
            lambda_g,
            case,
            value,
        }
    }
}

/// One-off solve of the linearized subproblem at `t`.
pub fn solve_gp<T: Scalar>(p: &QrProblem<T>, t: T) -> Result<SubproblemSolution<T>> {
    solve_gp_with(p, t, GpOptions::default())
}

pub fn solve_gp_with<T: Scalar>(
    p: &QrProblem<T>,
    t: T,
    opts: GpOptions,
) -> Result<SubproblemSolution<T>> {
    check_t(t)?;
    LinearizedSubproblem::new(p)?.solve_with(t, opts)
}

/// Dual certificate from the minimum generalized eigenvalue `λ_g` of
/// `(A − B/(2√t), C)`.
///
/// `λ₃ = 1/(2√t)`; `λ₁ = λ_g, λ₂ = 0` if `λ_g ≥ 0`, else `λ₁ = 0, λ₂ = −λ_g`.
/// The slack matrix is then `M − λ_g C ⪰ 0` and the bound equals
/// `v(GP) − √t / 2`.
pub fn dual_certificate<T: Scalar>(
    p: &QrProblem<T>,
    t: T,
    lambda_g: T,
) -> Result<DualCertificate<T>> {
    check_t(t)?;
    let lambda3 = linear_weight(t);
    let (lambda1, lambda2) = if lambda_g >= T::zero() {
        (lambda_g, T::zero())
    } else {
        (T::zero(), -lambda_g)
    };
    let lower_bound = lambda1 * p.alpha() - lambda2 * p.beta() - T::one() / (T::c(4.0) * lambda3);
    Ok(DualCertificate {
        lambda1,
        lambda2,
        lambda3,
        lower_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eye() -> SymMatrix<f64> {
        SymMatrix::identity(3)
    }

    fn diag_instance(beta: f64) -> QrProblem<f64> {
        QrProblem::new(
            SymMatrix::from_diagonal(&[-1.0, 1.0, 1.0]),
            eye(),
            eye(),
            1.0,
            beta,
        )
        .unwrap()
    }

    #[test]
    fn identity_instance_lower_case() {
        let p = QrProblem::new(eye(), eye(), eye(), 1.0, 10.0).unwrap();
        let sol = solve_gp(&p, 1.0).unwrap();
        assert_eq!(sol.case, GpCase::Lower);
        assert!((sol.lambda_g - 0.5).abs() < 1e-14);
        assert!((sol.value - 0.5).abs() < 1e-14);
        assert!((p.c().quad_form(&sol.x_hat) - 1.0).abs() < 1e-14);
        assert!((sol.s_hat - 1.0).abs() < 1e-14 && (sol.t_hat - 1.0).abs() < 1e-14);
    }

    #[test]
    fn negative_direction_upper_case() {
        let p = diag_instance(4.0);
        let sol = solve_gp(&p, 1.0).unwrap();
        assert_eq!(sol.case, GpCase::Upper);
        assert!((sol.lambda_g + 1.5).abs() < 1e-14);
        assert!((sol.value + 6.0).abs() < 1e-13);
        assert!((sol.x_hat[0] - 2.0).abs() < 1e-14);
        assert!((sol.s_hat + 4.0).abs() < 1e-13 && (sol.t_hat - 4.0).abs() < 1e-13);
    }

    #[test]
    fn singular_linearization_kernel_and_default() {
        // M = diag(0.5, 2, 2) − I/2 = diag(0, 1.5, 1.5) at t = 1
        let a = SymMatrix::from_diagonal(&[0.5, 2.0, 2.0]);
        let p = QrProblem::new(a, eye(), eye(), 1.0, 4.0).unwrap();
        let kernel = solve_gp_with(
            &p,
            1.0,
            GpOptions {
                interior_kernel: true,
            },
        )
        .unwrap();
        assert_eq!(kernel.case, GpCase::Kernel);
        assert_eq!(kernel.value, 0.0);
        assert!((kernel.x_hat[0] - 2.5f64.sqrt()).abs() < 1e-14);
        assert!((p.c().quad_form(&kernel.x_hat) - 2.5).abs() < 1e-13);

        let default = solve_gp(&p, 1.0).unwrap();
        assert_eq!(default.case, GpCase::Lower);
        assert!(default.value.abs() < 1e-14);
        assert!((default.x_hat[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_nonpositive_t() {
        let p = diag_instance(4.0);
        assert!(matches!(solve_gp(&p, 0.0), Err(Error::NonPositiveT { .. })));
        assert!(matches!(
            solve_gp(&p, -1.0),
            Err(Error::NonPositiveT { .. })
        ));
        assert!(matches!(
            dual_certificate(&p, 0.0, 1.0),
            Err(Error::NonPositiveT { .. })
        ));
    }

    #[test]
    fn certificate_examples() {
        let p = QrProblem::new(eye(), eye(), eye(), 1.0, 10.0).unwrap();
        let cert = dual_certificate(&p, 1.0, 0.5).unwrap();
        assert_eq!((cert.lambda1, cert.lambda2, cert.lambda3), (0.5, 0.0, 0.5));
        assert!(cert.lower_bound.abs() < 1e-15);
        assert!(cert.psd_margin(&p).unwrap() >= -1e-12);

        let p = diag_instance(4.0);
        let sol = solve_gp(&p, 4.0).unwrap();
        assert!((sol.lambda_g + 1.25).abs() < 1e-14);
        let cert = dual_certificate(&p, 4.0, sol.lambda_g).unwrap();
        assert!((cert.lambda2 - 1.25).abs() < 1e-14);
        assert!((cert.lower_bound + 6.0).abs() < 1e-13);
        assert_eq!(cert.lambda1 * cert.lambda2, 0.0);
        assert!(cert.psd_margin(&p).unwrap() >= -1e-12);
    }
}
