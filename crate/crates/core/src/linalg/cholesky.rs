use crate::error::{Error, Result};
use crate::linalg::matrix::{dot, SymMatrix};
use crate::scalar::Scalar;

/// Lower-triangular factor `U` with `C = U Uᵀ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CholeskyFactor<T> {
    n: usize,
    // row-major n×n, zero above the diagonal
    lower: Vec<T>,
}

/// Cholesky factorization of a symmetric positive definite matrix.
///
/// A pivot at or below `1e-12 · (1 + max|C|)` is reported as
/// [`Error::NotPositiveDefinite`].
pub fn cholesky_spd<T: Scalar>(c: &SymMatrix<T>) -> Result<CholeskyFactor<T>> {
    cholesky_named(c, "input")
}

pub(crate) fn cholesky_named<T: Scalar>(
    c: &SymMatrix<T>,
    name: &'static str,
) -> Result<CholeskyFactor<T>> {
    let n = c.dim();
    let threshold = T::c(1e-12) * (T::one() + c.max_abs());
    let mut l = vec![T::zero(); n * n];
    for j in 0..n {
        let row_j = &l[j * n..j * n + j];
        let pivot = c.get(j, j) - dot(row_j, row_j);
        if !(pivot > threshold) {
            return Err(Error::NotPositiveDefinite {
                matrix: name,
                index: j,
                pivot: pivot.as_f64(),
            });
        }
        let diag = pivot.sqrt();
        l[j * n + j] = diag;
        for i in (j + 1)..n {
            let s = c.get(i, j) - dot(&l[i * n..i * n + j], &l[j * n..j * n + j]);
            l[i * n + j] = s / diag;
        }
    }
    Ok(CholeskyFactor { n, lower: l })
}

impl<T: Scalar> CholeskyFactor<T> {
    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.lower[i * self.n + j]
    }

    /// Row-major lower factor.
    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    /// `U Uᵀ`.
    pub fn reconstruct(&self) -> SymMatrix<T> {
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..=i {
                let k = j + 1;
                let v = dot(&self.lower[i * n..i * n + k], &self.lower[j * n..j * n + k]);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix::from_symmetric_unchecked(n, data)
    }

    /// Solves `U y = b` in place by forward substitution.
    pub fn solve_lower_in_place(&self, b: &mut [T]) {
        let n = self.n;
        debug_assert_eq!(b.len(), n);
        for i in 0..n {
            let s = dot(&self.lower[i * n..i * n + i], &b[..i]);
            b[i] = (b[i] - s) / self.lower[i * n + i];
        }
    }

    /// Solves `Uᵀ x = y` in place by back substitution.
    pub fn solve_upper_in_place(&self, y: &mut [T]) {
        let n = self.n;
        debug_assert_eq!(y.len(), n);
        for i in (0..n).rev() {
            let xi = y[i] / self.lower[i * n + i];
            y[i] = xi;
            // eliminate column i of Uᵀ, i.e. row i of U, from the remaining equations
            let row = &self.lower[i * n..i * n + i];
            for (yj, &l) in y[..i].iter_mut().zip(row) {
                *yj = *yj - l * xi;
            }
        }
    }

    /// `U⁻¹ M U⁻ᵀ`, exactly symmetrized.
    pub fn congruence(&self, m: &SymMatrix<T>) -> Result<SymMatrix<T>> {
        let n = self.n;
        if m.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.dim(),
            });
        }
        // rows of Y = M U⁻ᵀ are U⁻¹ applied to rows of M (M symmetric)
        let mut y = m.as_slice().to_vec();
        for row in y.chunks_exact_mut(n) {
            self.solve_lower_in_place(row);
        }
        // rows of the result are U⁻¹ applied to rows of Yᵀ
        let mut w = transpose(&y, n);
        for row in w.chunks_exact_mut(n) {
            self.solve_lower_in_place(row);
        }
        SymMatrix::from_row_major(n, w)
    }

    /// Maps a whitened vector back: `v = U⁻ᵀ w`.
    pub fn unwhiten(&self, w: &[T]) -> Vec<T> {
        let mut v = w.to_vec();
        self.solve_upper_in_place(&mut v);
        v
    }
}

fn transpose<T: Scalar>(a: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j];
        }
    }
    out
}
