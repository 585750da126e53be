//! Problem instances: minimize `q(x) = xᵀAx − √(xᵀBx)` subject to
//! `α ≤ xᵀCx ≤ β`.

mod io;
mod random;

pub use io::{load_instance, read_instance, save_instance, write_instance, InstanceFile};
pub use random::random_instance;

use crate::error::{Error, Result};
use crate::linalg::{
    cholesky_named, fix_sign, gen_eig_extremes, CholeskyFactor, SymMatrix, Tridiagonal,
};
use crate::scalar::Scalar;

/// Smallest dimension for which the joint image of two quadratic forms over
/// an annulus is convex.
pub const MIN_DIMENSION: usize = 3;

/// A validated instance: `B ≻ 0`, `C ≻ 0`, `0 < α < β`, `n ≥ 3`.
#[derive(Clone, Debug)]
pub struct QrProblem<T> {
    a: SymMatrix<T>,
    b: SymMatrix<T>,
    c: SymMatrix<T>,
    alpha: T,
    beta: T,
    c_factor: CholeskyFactor<T>,
}

/// Image point `(s, t) = (xᵀAx, xᵀBx)` of the hidden two-dimensional problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HiddenPoint<T> {
    pub s: T,
    pub t: T,
}

impl<T: Scalar> HiddenPoint<T> {
    /// `f(s, t) = s − √t`.
    pub fn value(&self) -> T {
        self.s - self.t.sqrt()
    }
}

/// Where a point sits relative to the annulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Interior,
    LowerBoundary,
    UpperBoundary,
    Infeasible,
}

/// Extreme values of the quadratic forms over the annulus and the derived
/// Frank-Wolfe constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothnessConstants<T> {
    /// Smoothness constant of `f` over the image set.
    pub lipschitz: T,
    /// Upper bound on the diameter of the image set.
    pub diameter: T,
    pub s_min: T,
    pub s_max: T,
    pub t_min: T,
    pub t_max: T,
    pub lam_min_bc: T,
    pub lam_max_bc: T,
    pub lam_min_ac: T,
    pub lam_max_ac: T,
}

/// Outcome of the lower-bound reduction for an instance with `α = 0`.
#[derive(Clone, Debug)]
pub struct AlphaZeroReduction<T> {
    /// Upper bound on the optimal value of the `α = 0` problem (negative).
    pub f_bar: T,
    /// Every minimizer satisfies `√(xᵀCx) ≥ alpha_bar`.
    pub alpha_bar: T,
    /// The instance with lower bound `alpha_bar²` (see [`reduce_alpha_zero`]).
    pub problem: QrProblem<T>,
}

impl<T: Scalar> QrProblem<T> {
    pub fn new(
        a: SymMatrix<T>,
        b: SymMatrix<T>,
        c: SymMatrix<T>,
        alpha: T,
        beta: T,
    ) -> Result<Self> {
        let n = a.dim();
        for m in [&b, &c] {
            if m.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.dim(),
                });
            }
        }
        if n < MIN_DIMENSION {
            return Err(Error::DimensionTooSmall {
                n,
                min: MIN_DIMENSION,
            });
        }
        check_bounds(alpha, beta)?;
        cholesky_named(&b, "B")?;
        let c_factor = cholesky_named(&c, "C")?;
        Ok(Self {
            a,
            b,
            c,
            alpha,
            beta,
            c_factor,
        })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.a.dim()
    }
    pub fn a(&self) -> &SymMatrix<T> {
        &self.a
    }
    pub fn b(&self) -> &SymMatrix<T> {
        &self.b
    }
    pub fn c(&self) -> &SymMatrix<T> {
        &self.c
    }
    pub fn alpha(&self) -> T {
        self.alpha
    }
    pub fn beta(&self) -> T {
        self.beta
    }
    pub fn c_factor(&self) -> &CholeskyFactor<T> {
        &self.c_factor
    }

    /// `q(x) = xᵀAx − √(xᵀBx)`.
    pub fn objective(&self, x: &[T]) -> T {
        self.a.quad_form(x) - self.b.quad_form(x).max(T::zero()).sqrt()
    }

    pub fn hidden_point(&self, x: &[T]) -> HiddenPoint<T> {
        HiddenPoint {
            s: self.a.quad_form(x),
            t: self.b.quad_form(x),
        }
    }

    /// Classifies `xᵀCx` against `[α, β]` with absolute tolerance `tol · (1 + β)`.
    pub fn feasibility(&self, x: &[T], tol: T) -> Feasibility {
        let v = self.c.quad_form(x);
        let slack = tol * (T::one() + self.beta);
        if v < self.alpha - slack || v > self.beta + slack {
            Feasibility::Infeasible
        } else if (v - self.alpha).abs() <= slack {
            Feasibility::LowerBoundary
        } else if (v - self.beta).abs() <= slack {
            Feasibility::UpperBoundary
        } else {
            Feasibility::Interior
        }
    }

    pub fn constants(&self) -> Result<SmoothnessConstants<T>> {
        let (lam_min_ac, lam_max_ac) = gen_eig_extremes(&self.a, &self.c_factor)?;
        let (lam_min_bc, lam_max_bc) = gen_eig_extremes(&self.b, &self.c_factor)?;
        let (alpha, beta) = (self.alpha, self.beta);
        let s_max = if lam_max_ac >= T::zero() {
            lam_max_ac * beta
        } else {
            lam_max_ac * alpha
        };
        let s_min = if lam_min_ac >= T::zero() {
            lam_min_ac * alpha
        } else {
            lam_min_ac * beta
        };
        let t_max = lam_max_bc * beta;
        let t_min = lam_min_bc * alpha;
        let lipschitz = T::one() / (T::c(4.0) * t_min.powf(T::c(1.5)));
        let diameter = (s_max - s_min).hypot(t_max - t_min);
        Ok(SmoothnessConstants {
            lipschitz,
            diameter,
            s_min,
            s_max,
            t_min,
            t_max,
            lam_min_bc,
            lam_max_bc,
            lam_min_ac,
            lam_max_ac,
        })
    }

    /// Starting point with `α ≤ x₀ᵀCx₀ ≤ β`.
    ///
    /// Takes the unit eigenvector of the smallest eigenvalue of `C` lying
    /// strictly inside `(α, β)`. If there is none, scales `e₁` so that
    /// `x₀ᵀCx₀ = (α + β) / 2`.
    pub fn initial_point(&self) -> Vec<T> {
        let tri = Tridiagonal::new(&self.c);
        let inside = tri
            .eigenvalues()
            .into_iter()
            .find(|&l| l > self.alpha && l < self.beta);
        if let Some(lambda) = inside {
            let mut x = tri.eigenvector(lambda);
            fix_sign(&mut x);
            let cx = self.c.quad_form(&x);
            if cx >= self.alpha && cx <= self.beta {
                return x;
            }
        }
        let mut x = vec![T::zero(); self.dim()];
        let mid = (self.alpha + self.beta) * T::c(0.5);
        x[0] = (mid / self.c.get(0, 0)).sqrt();
        x
    }

    /// Same matrices with new annulus bounds.
    pub fn with_bounds(&self, alpha: T, beta: T) -> Result<Self> {
        check_bounds(alpha, beta)?;
        Ok(Self {
            alpha,
            beta,
            ..self.clone()
        })
    }

    pub fn cast<U: Scalar>(&self) -> Result<QrProblem<U>> {
        QrProblem::new(
            self.a.cast(),
            self.b.cast(),
            self.c.cast(),
            U::c(self.alpha.as_f64()),
            U::c(self.beta.as_f64()),
        )
    }
}

fn check_bounds<T: Scalar>(alpha: T, beta: T) -> Result<()> {
    if alpha > T::zero() && alpha < beta && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::BadBounds {
            alpha: alpha.as_f64(),
            beta: beta.as_f64(),
        })
    }
}

/// Validates `(A, B, C, α, β)` into a [`QrProblem`].
pub fn validate<T: Scalar>(
    a: SymMatrix<T>,
    b: SymMatrix<T>,
    c: SymMatrix<T>,
    alpha: T,
    beta: T,
) -> Result<QrProblem<T>> {
    QrProblem::new(a, b, c, alpha, beta)
}

/// Replaces the constraint `0 ≤ xᵀCx ≤ β` by an equivalent annulus.
///
/// With `f̄` the value of the bound `λ_max(A,C)·r − √(λ_min(B,C)·r)` minimized
/// over `r ∈ [0, β]`, every minimizer satisfies `√(xᵀCx) ≥ ᾱ` where
///
/// * `ᾱ = −f̄ / √λ_max(B,C)` if `λ_min(A,C) ≥ 0`,
/// * `ᾱ = (√λ_max(B,C) − √(λ_max(B,C) + 4 λ_min(A,C) f̄)) / (2 λ_min(A,C))` otherwise.
///
/// The returned instance uses `ᾱ²` as its lower bound on `xᵀCx`. When `ᾱ²`
/// reaches `β` (the optimum sits on the outer boundary) the lower bound is
/// pulled to `β (1 − 10⁻⁶)`; any lower bound below `ᾱ²` keeps every minimizer.
pub fn reduce_alpha_zero<T: Scalar>(
    a: SymMatrix<T>,
    b: SymMatrix<T>,
    c: SymMatrix<T>,
    beta: T,
) -> Result<AlphaZeroReduction<T>> {
    if !(beta > T::zero() && beta.is_finite()) {
        return Err(Error::BadBounds {
            alpha: 0.0,
            beta: beta.as_f64(),
        });
    }
    // validate everything but the lower bound with a placeholder
    let staged = QrProblem::new(a, b, c, beta * T::c(0.5), beta)?;
    let c_factor = staged.c_factor();
    let (lam_min_ac, lam_max_ac) = gen_eig_extremes(staged.a(), c_factor)?;
    let (lam_min_bc, lam_max_bc) = gen_eig_extremes(staged.b(), c_factor)?;

    let two = T::c(2.0);
    let four = T::c(4.0);
    let f_bar = if lam_max_ac > T::zero() && lam_min_bc.sqrt() / (two * lam_max_ac) <= beta.sqrt() {
        -lam_min_bc / (four * lam_max_ac)
    } else {
        lam_max_ac * beta - (lam_min_bc * beta).sqrt()
    };
    if !(f_bar < T::zero()) {
        return Err(Error::NonNegativeFbar {
            f_bar: f_bar.as_f64(),
        });
    }
    let alpha_bar = if lam_min_ac >= T::zero() {
        -f_bar / lam_max_bc.sqrt()
    } else {
        let disc = (lam_max_bc + four * lam_min_ac * f_bar).max(T::zero());
        (lam_max_bc.sqrt() - disc.sqrt()) / (two * lam_min_ac)
    };
    let cap = beta * (T::one() - T::c(1e-6));
    let lower = (alpha_bar * alpha_bar).min(cap);
    let problem = staged.with_bounds(lower, beta)?;
    Ok(AlphaZeroReduction {
        f_bar,
        alpha_bar,
        problem,
    })
}
