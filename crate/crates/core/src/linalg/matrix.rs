use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense symmetric matrix stored row-major.
///
/// Construction always symmetrizes: entry `(i, j)` and `(j, i)` are replaced
/// by their average, so the stored matrix is exactly symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn from_row_major(n: usize, mut data: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        let half = T::c(0.5);
        for i in 0..n {
            for j in (i + 1)..n {
                let avg = (data[i * n + j] + data[j * n + i]) * half;
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(Self { n, data })
    }

    /// Builds a matrix from a generator evaluated on every `(i, j)`; the result
    /// is symmetrized like [`SymMatrix::from_row_major`].
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self::from_row_major(n, data)
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![T::one(); n])
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.n + i] = d;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// `xᵀ M x`.
    pub fn quad_form(&self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.n);
        let mut acc = T::zero();
        for (i, &xi) in x.iter().enumerate() {
            acc = acc + xi * dot(self.row(i), x);
        }
        acc
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &v| m.max(v.abs()))
    }

    /// `self + scale · other`.
    pub fn add_scaled(&self, other: &Self, scale: T) -> Result<Self> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + scale * b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * factor).collect(),
        }
    }

    pub fn cast<U: Scalar>(&self) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|&v| U::c(v.as_f64())).collect(),
        }
    }

    /// Wraps row-major data that is symmetric by construction.
    pub(crate) fn from_symmetric_unchecked(n: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Self { n, data }
    }
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        acc = acc + x * y;
    }
    acc
}

#[inline]
pub fn norm2<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Flips `v` so that its first component with magnitude above `1e-12` is positive.
pub fn fix_sign<T: Scalar>(v: &mut [T]) {
    let threshold = T::c(1e-12);
    if let Some(&first) = v.iter().find(|x| x.abs() > threshold) {
        if first < T::zero() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
