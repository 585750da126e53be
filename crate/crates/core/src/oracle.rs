//! Brute-force reference values.
//!
//! Along a direction `d` with `dᵀCd = 1` the objective is `h(r) = a r² − b r`
//! with `a = dᵀAd`, `b = √(dᵀBd)`, and the feasible radii are `[√α, √β]`.
//! Minimizing `h` in closed form over many sampled directions gives a
//! feasible point whose value is an upper bound on the optimum. The best few
//! directions are then polished by a derivative-free pattern search.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{gen_eigen_all, norm2, CholeskyFactor, SymMatrix};
use crate::problem::QrProblem;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialResult<T> {
    pub r_star: T,
    pub value: T,
}

/// Minimizes `a r² − b r` over `r ∈ [√α, √β]`.
///
/// Accepts `α = 0` so that instances without an inner bound can be checked.
pub fn radial_min<T: Scalar>(a: T, b: T, alpha: T, beta: T) -> Result<RadialResult<T>> {
    if !(alpha >= T::zero() && alpha < beta && beta.is_finite()) {
        return Err(Error::BadBounds {
            alpha: alpha.as_f64(),
            beta: beta.as_f64(),
        });
    }
    let (lo, hi) = (alpha.sqrt(), beta.sqrt());
    let r_star = if a > T::zero() {
        (b / (T::c(2.0) * a)).max(lo).min(hi)
    } else {
        hi
    };
    Ok(RadialResult {
        r_star,
        value: a * r_star * r_star - b * r_star,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult<T> {
    pub x: Vec<T>,
    pub value: T,
    /// Index of the winning candidate; generalized eigenvectors come first,
    /// sampled directions after.
    pub candidate: usize,
}

/// Oracle value for a validated instance.
pub fn brute_force<T: Scalar>(
    p: &QrProblem<T>,
    num_dirs: usize,
    seed: u64,
) -> Result<OracleResult<T>> {
    search(
        p.a(),
        p.b(),
        p.c(),
        p.c_factor(),
        p.alpha(),
        p.beta(),
        num_dirs,
        seed,
    )
}

/// Oracle value for raw data, allowing `α = 0`. `B` and `C` must be
/// positive definite.
pub fn brute_force_annulus<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    c: &SymMatrix<T>,
    alpha: T,
    beta: T,
    num_dirs: usize,
    seed: u64,
) -> Result<OracleResult<T>> {
    let n = a.dim();
    for m in [b, c] {
        if m.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.dim(),
            });
        }
    }
    crate::linalg::cholesky_named(b, "B")?;
    let c_factor = crate::linalg::cholesky_named(c, "C")?;
    search(a, b, c, &c_factor, alpha, beta, num_dirs, seed)
}

/// Sampled candidates refined by pattern search.
const REFINED: usize = 4;

struct Radial<'a, T> {
    a: &'a SymMatrix<T>,
    b: &'a SymMatrix<T>,
    c: &'a SymMatrix<T>,
    alpha: T,
    beta: T,
}

impl<T: Scalar> Radial<'_, T> {
    /// Best value along `d` and the scale taking `d` to the minimizing point.
    fn eval(&self, d: &[T]) -> Result<Option<(T, T)>> {
        let cd = self.c.quad_form(d);
        if !(cd > T::zero()) {
            return Ok(None);
        }
        let inv = T::one() / cd.sqrt();
        let av = self.a.quad_form(d) * inv * inv;
        let bv = (self.b.quad_form(d) * inv * inv).max(T::zero()).sqrt();
        let r = radial_min(av, bv, self.alpha, self.beta)?;
        Ok(Some((r.value, r.r_star * inv)))
    }

    /// Coordinate pattern search over directions, halving the step down to
    /// `1e-10` relative to `‖d‖`.
    fn refine(&self, d: &mut [T], value: &mut T) -> Result<()> {
        let mut h = T::c(0.25) * norm2(d);
        let floor = T::c(1e-10) * norm2(d);
        let mut trial = d.to_vec();
        while h > floor {
            let mut improved = false;
            for i in 0..d.len() {
                for sign in [T::one(), -T::one()] {
                    trial.copy_from_slice(d);
                    trial[i] = trial[i] + sign * h;
                    if let Some((v, _)) = self.eval(&trial)? {
                        if v < *value {
                            *value = v;
                            d.copy_from_slice(&trial);
                            improved = true;
                            break;
                        }
                    }
                }
            }
            if !improved {
                h = h * T::c(0.5);
            }
        }
        Ok(())
    }
}

#[allow(clippy::too_many_arguments)]
fn search<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    c: &SymMatrix<T>,
    c_factor: &CholeskyFactor<T>,
    alpha: T,
    beta: T,
    num_dirs: usize,
    seed: u64,
) -> Result<OracleResult<T>> {
    let n = a.dim();
    let radial = Radial {
        a,
        b,
        c,
        alpha,
        beta,
    };
    // (value, candidate index, direction), ascending by value; ties keep the
    // earlier index
    let mut top: Vec<(T, usize, Vec<T>)> = Vec::with_capacity(REFINED + 1);
    let mut index = 0usize;
    let mut consider = |d: &[T], top: &mut Vec<(T, usize, Vec<T>)>| -> Result<()> {
        let idx = index;
        index += 1;
        if let Some((value, _)) = radial.eval(d)? {
            let pos = top.partition_point(|e| e.0 <= value);
            if pos < REFINED {
                top.insert(pos, (value, idx, d.to_vec()));
                top.truncate(REFINED);
            }
        }
        Ok(())
    };

    for pencil in [a, b] {
        for pair in gen_eigen_all(pencil, c_factor)? {
            consider(&pair.vector, &mut top)?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = vec![T::zero(); n];
    for _ in 0..num_dirs {
        for v in d.iter_mut() {
            let z: f64 = StandardNormal.sample(&mut rng);
            *v = T::c(z);
        }
        let nd = norm2(&d);
        if nd > T::zero() {
            d.iter_mut().for_each(|v| *v = *v / nd);
        }
        consider(&d, &mut top)?;
    }

    let mut best: Option<OracleResult<T>> = None;
    for (mut value, idx, mut dir) in top {
        radial.refine(&mut dir, &mut value)?;
        if best.as_ref().is_none_or(|cur| value < cur.value) {
            let (value, scale) = radial.eval(&dir)?.expect("refined direction stays valid");
            best = Some(OracleResult {
                x: dir.iter().map(|&v| v * scale).collect(),
                value,
                candidate: idx,
            });
        }
    }
    Ok(best.expect("eigenvector candidates are always present"))
}
