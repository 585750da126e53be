//! Dense symmetric eigensolver.
//!
//! Householder reduction to tridiagonal form followed by the implicit QL
//! iteration with Wilkinson-style shifts. Single extreme eigenpairs skip the
//! O(n³) eigenvector accumulation: the eigenvalue comes from QL on the
//! tridiagonal matrix alone, its vector from inverse iteration on the
//! tridiagonal matrix, mapped back through the stored reflectors.

use crate::linalg::matrix::{dot, norm2, SymMatrix};
use crate::scalar::Scalar;

const MAX_QL_SWEEPS: usize = 64;

/// Which end of the spectrum to extract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extreme {
    Min,
    Max,
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<T>>,
}

struct Reflector<T> {
    // acts on indices offset.. as I - tau v vᵀ
    offset: usize,
    v: Vec<T>,
    tau: T,
}

pub(crate) struct Tridiagonal<T> {
    diag: Vec<T>,
    // off[i] couples i and i+1; off[n-1] == 0
    off: Vec<T>,
    reflectors: Vec<Reflector<T>>,
}

impl<T: Scalar> Tridiagonal<T> {
    /// Householder reduction `A = Q T Qᵀ`.
    pub(crate) fn new(m: &SymMatrix<T>) -> Self {
        let n = m.dim();
        let mut a = m.as_slice().to_vec();
        let mut diag = vec![T::zero(); n];
        let mut off = vec![T::zero(); n];
        let mut reflectors = Vec::new();
        let two = T::c(2.0);
        let half = T::c(0.5);

        for k in 0..n.saturating_sub(2) {
            diag[k] = a[k * n + k];
            let start = k + 1;
            let m_len = n - start;
            // column k below the diagonal equals row k right of the diagonal
            let x: Vec<T> = a[k * n + start..k * n + n].to_vec();
            let tail = norm2(&x[1..]);
            if tail == T::zero() {
                off[k] = x[0];
                continue;
            }
            let xnorm = x[0].hypot(tail);
            let alpha = if x[0] >= T::zero() { -xnorm } else { xnorm };
            let mut v = x;
            v[0] = v[0] - alpha;
            let vtv = dot(&v, &v);
            let tau = two / vtv;
            off[k] = alpha;

            // p = tau S v on the trailing block
            let mut p = vec![T::zero(); m_len];
            for (i, pi) in p.iter_mut().enumerate() {
                let row = &a[(start + i) * n + start..(start + i) * n + n];
                *pi = tau * dot(row, &v);
            }
            let kappa = half * tau * dot(&p, &v);
            for (pi, &vi) in p.iter_mut().zip(&v) {
                *pi = *pi - kappa * vi;
            }
            // S -= v wᵀ + w vᵀ
            for i in 0..m_len {
                let (vi, wi) = (v[i], p[i]);
                let row = &mut a[(start + i) * n + start..(start + i) * n + n];
                for ((s, &vj), &wj) in row.iter_mut().zip(&v).zip(&p) {
                    *s = *s - vi * wj - wi * vj;
                }
            }
            reflectors.push(Reflector {
                offset: start,
                v,
                tau,
            });
        }
        if n >= 2 {
            diag[n - 2] = a[(n - 2) * n + n - 2];
            off[n - 2] = a[(n - 1) * n + n - 2];
        }
        diag[n - 1] = a[(n - 1) * n + n - 1];

        Self {
            diag,
            off,
            reflectors,
        }
    }

    /// Maps an eigenvector of the tridiagonal matrix to one of the original.
    pub(crate) fn back_transform(&self, z: &mut [T]) {
        for r in self.reflectors.iter().rev() {
            let seg = &mut z[r.offset..];
            let s = r.tau * dot(&r.v, seg);
            for (zi, &vi) in seg.iter_mut().zip(&r.v) {
                *zi = *zi - s * vi;
            }
        }
    }

    /// Ascending eigenvalues.
    pub(crate) fn eigenvalues(&self) -> Vec<T> {
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        tridiagonal_ql(&mut d, &mut e, None);
        d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        d
    }

    /// Unit eigenvector of the original matrix for an (accurate) eigenvalue.
    pub(crate) fn eigenvector(&self, lambda: T) -> Vec<T> {
        let mut z = self.inverse_iteration(lambda);
        self.back_transform(&mut z);
        let nz = norm2(&z);
        z.iter_mut().for_each(|x| *x = *x / nz);
        z
    }

    fn inverse_iteration(&self, lambda: T) -> Vec<T> {
        let n = self.diag.len();
        if n == 1 {
            return vec![T::one()];
        }
        let scale = self
            .diag
            .iter()
            .zip(&self.off)
            .fold(T::zero(), |m, (&d, &e)| {
                m.max(d.abs() + T::c(2.0) * e.abs())
            })
            .max(T::min_positive_value());
        let tiny = T::epsilon() * scale;
        let lu = TridiagonalLu::factor(&self.diag, &self.off, lambda, tiny);
        let mut y = vec![T::one() / T::c(n as f64).sqrt(); n];
        for _ in 0..3 {
            lu.solve(&mut y);
            let ny = norm2(&y);
            if !(ny.is_finite() && ny > T::zero()) {
                break;
            }
            y.iter_mut().for_each(|x| *x = *x / ny);
        }
        y
    }
}

/// LU with partial pivoting of `T - λI`; U has two superdiagonals.
struct TridiagonalLu<T> {
    u0: Vec<T>,
    u1: Vec<T>,
    u2: Vec<T>,
    mult: Vec<T>,
    swapped: Vec<bool>,
}

impl<T: Scalar> TridiagonalLu<T> {
    fn factor(diag: &[T], off: &[T], lambda: T, tiny: T) -> Self {
        let n = diag.len();
        let mut u0 = vec![T::zero(); n];
        let mut u1 = vec![T::zero(); n];
        let mut u2 = vec![T::zero(); n];
        let mut mult = vec![T::zero(); n];
        let mut swapped = vec![false; n];
        let guard = |x: T| {
            if x.abs() < tiny {
                if x < T::zero() {
                    -tiny
                } else {
                    tiny
                }
            } else {
                x
            }
        };

        let mut cur_d = diag[0] - lambda;
        let mut cur_s = off[0];
        for i in 0..n - 1 {
            let sub = off[i];
            let next_d = diag[i + 1] - lambda;
            let next_s = if i + 2 < n { off[i + 1] } else { T::zero() };
            if cur_d.abs() >= sub.abs() {
                let d = guard(cur_d);
                let m = sub / d;
                u0[i] = d;
                u1[i] = cur_s;
                u2[i] = T::zero();
                mult[i] = m;
                cur_d = next_d - m * cur_s;
                cur_s = next_s;
            } else {
                let m = cur_d / sub;
                u0[i] = sub;
                u1[i] = next_d;
                u2[i] = next_s;
                mult[i] = m;
                swapped[i] = true;
                cur_d = cur_s - m * next_d;
                cur_s = -m * next_s;
            }
        }
        u0[n - 1] = guard(cur_d);
        Self {
            u0,
            u1,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, y: &mut [T]) {
        let n = y.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                y.swap(i, i + 1);
            }
            y[i + 1] = y[i + 1] - self.mult[i] * y[i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            if i + 1 < n {
                s = s - self.u1[i] * y[i + 1];
            }
            if i + 2 < n {
                s = s - self.u2[i] * y[i + 2];
            }
            y[i] = s / self.u0[i];
        }
    }
}

/// Implicit QL on a symmetric tridiagonal matrix. On return `d` holds the
/// (unsorted) eigenvalues. When `z` is given, its rows are rotated along,
/// so rows that start as the identity end as eigenvectors of the tridiagonal.
fn tridiagonal_ql<T: Scalar>(d: &mut [T], e: &mut [T], mut z: Option<&mut [Vec<T>]>) {
    let n = d.len();
    let eps = T::epsilon();
    let two = T::c(2.0);
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                // QL stalls only on pathological input; accept the current split.
                e[l] = T::zero();
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r } else { -r });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    let (lo, hi) = z.split_at_mut(i + 1);
                    let zi = &mut lo[i];
                    let zi1 = &mut hi[0];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let f = *b;
                        *b = s * *a + c * f;
                        *a = c * *a - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
}

/// Full eigendecomposition of a symmetric matrix.
pub fn symmetric_eigen<T: Scalar>(m: &SymMatrix<T>) -> SymmetricEigen<T> {
    let n = m.dim();
    let tri = Tridiagonal::new(m);
    let mut d = tri.diag.clone();
    let mut e = tri.off.clone();
    let mut z: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = vec![T::zero(); n];
            row[i] = T::one();
            row
        })
        .collect();
    tridiagonal_ql(&mut d, &mut e, Some(&mut z));
    for row in z.iter_mut() {
        tri.back_transform(row);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    SymmetricEigen {
        values: order.iter().map(|&i| d[i]).collect(),
        vectors: order.iter().map(|&i| z[i].clone()).collect(),
    }
}

/// Ascending eigenvalues only.
pub fn symmetric_eigenvalues<T: Scalar>(m: &SymMatrix<T>) -> Vec<T> {
    Tridiagonal::new(m).eigenvalues()
}

/// Extreme eigenpair with a unit eigenvector.
///
/// Uses inverse iteration on the tridiagonal form and falls back to the full
/// decomposition when the residual of that vector is not at rounding level.
pub fn extreme_eigenpair<T: Scalar>(m: &SymMatrix<T>, which: Extreme) -> (T, Vec<T>) {
    let n = m.dim();
    let tri = Tridiagonal::new(m);
    let values = tri.eigenvalues();
    let lambda = match which {
        Extreme::Min => values[0],
        Extreme::Max => values[n - 1],
    };
    let v = tri.eigenvector(lambda);
    let accept = T::c(64.0) * T::epsilon() * T::c(n as f64) * (T::one() + m.frobenius_norm());
    if residual(m, lambda, &v) <= accept {
        return (lambda, v);
    }
    let full = symmetric_eigen(m);
    let idx = match which {
        Extreme::Min => 0,
        Extreme::Max => n - 1,
    };
    (full.values[idx], full.vectors[idx].clone())
}

fn residual<T: Scalar>(m: &SymMatrix<T>, lambda: T, v: &[T]) -> T {
    let mv = m.mul_vec(v);
    mv.iter()
        .zip(v)
        .map(|(&a, &b)| {
            let r = a - lambda * b;
            r * r
        })
        .sum::<T>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sym(n: usize, seed: u64) -> SymMatrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SymMatrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0)).unwrap()
    }

    fn check_decomposition(m: &SymMatrix<f64>, tol: f64) {
        let n = m.dim();
        let eig = symmetric_eigen(m);
        let scale = 1.0 + m.frobenius_norm();
        for (lambda, v) in eig.values.iter().zip(&eig.vectors) {
            assert!(residual(m, *lambda, v) <= tol * scale);
        }
        for i in 0..n {
            for j in 0..n {
                let g = dot(&eig.vectors[i], &eig.vectors[j]);
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((g - e).abs() < 1e-12, "gram ({i},{j}) = {g}");
            }
        }
        assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn diagonal_spectrum() {
        let m = SymMatrix::from_diagonal(&[3.0, 1.0, 2.0]);
        let eig = symmetric_eigen(&m);
        assert_eq!(eig.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(eig.vectors[0], vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn random_decompositions() {
        for (n, seed) in [(1, 1), (2, 2), (3, 3), (7, 4), (40, 5), (120, 6)] {
            check_decomposition(&random_sym(n, seed), 1e-12);
        }
    }

    #[test]
    fn repeated_eigenvalues() {
        // Q diag(1,1,1,5,5) Qᵀ for a rotation-like Q built from a symmetric eigenbasis
        let basis = symmetric_eigen(&random_sym(5, 9)).vectors;
        let spectrum = [1.0, 1.0, 1.0, 5.0, 5.0];
        let m = SymMatrix::from_fn(5, |i, j| {
            (0..5)
                .map(|k| spectrum[k] * basis[k][i] * basis[k][j])
                .sum()
        })
        .unwrap();
        check_decomposition(&m, 1e-12);
        let (lo, v) = extreme_eigenpair(&m, Extreme::Min);
        assert!((lo - 1.0).abs() < 1e-12);
        assert!(residual(&m, lo, &v) < 1e-12);
    }

    #[test]
    fn extreme_pairs_match_full_decomposition() {
        for (n, seed) in [(2, 11), (5, 12), (30, 13), (200, 14)] {
            let m = random_sym(n, seed);
            let full = symmetric_eigen(&m);
            let (lo, vlo) = extreme_eigenpair(&m, Extreme::Min);
            let (hi, vhi) = extreme_eigenpair(&m, Extreme::Max);
            assert!((lo - full.values[0]).abs() < 1e-12);
            assert!((hi - full.values[n - 1]).abs() < 1e-12);
            assert!((norm2(&vlo) - 1.0).abs() < 1e-12);
            assert!(residual(&m, lo, &vlo) < 1e-11 * (1.0 + m.frobenius_norm()));
            assert!(residual(&m, hi, &vhi) < 1e-11 * (1.0 + m.frobenius_norm()));
        }
    }

    #[test]
    fn already_tridiagonal_and_zero_matrices() {
        let t = SymMatrix::from_row_major(3, vec![2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0])
            .unwrap();
        let vals = symmetric_eigenvalues(&t);
        let expect = [2.0 - 2f64.sqrt(), 2.0, 2.0 + 2f64.sqrt()];
        for (a, b) in vals.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
        let z = SymMatrix::<f64>::zeros(4);
        let (lo, v) = extreme_eigenpair(&z, Extreme::Min);
        assert_eq!(lo, 0.0);
        assert!((norm2(&v) - 1.0).abs() < 1e-14);
    }
}
