use crate::error::Result;
use crate::linalg::cholesky::CholeskyFactor;
use crate::linalg::eigen::{extreme_eigenpair, symmetric_eigen, symmetric_eigenvalues, Extreme};
use crate::linalg::matrix::{fix_sign, SymMatrix};
use crate::scalar::Scalar;

/// Generalized eigenpair `M v = λ C v` with `vᵀ C v = 1`.
///
/// The sign of `v` is fixed so that its first component of magnitude above
/// `1e-12` is positive.
#[derive(Clone, Debug, PartialEq)]
pub struct GenEigPair<T> {
    pub value: T,
    pub vector: Vec<T>,
}

/// Extreme generalized eigenpair of the pencil `(M, C)` with `C = U Uᵀ`.
///
/// Reduces to the standard problem `U⁻¹ M U⁻ᵀ w = λ w` and maps back with
/// `v = U⁻ᵀ w`, so `vᵀ C v = wᵀ w = 1`.
pub fn gen_eigpair<T: Scalar>(
    m: &SymMatrix<T>,
    c_factor: &CholeskyFactor<T>,
    which: Extreme,
) -> Result<GenEigPair<T>> {
    let whitened = c_factor.congruence(m)?;
    Ok(whitened_extreme_pair(&whitened, c_factor, which))
}

/// Extreme pair from an already whitened matrix `U⁻¹ M U⁻ᵀ`.
pub(crate) fn whitened_extreme_pair<T: Scalar>(
    whitened: &SymMatrix<T>,
    c_factor: &CholeskyFactor<T>,
    which: Extreme,
) -> GenEigPair<T> {
    let (value, w) = extreme_eigenpair(whitened, which);
    let mut vector = c_factor.unwhiten(&w);
    fix_sign(&mut vector);
    GenEigPair { value, vector }
}

/// Smallest and largest generalized eigenvalues of `(M, C)`.
pub fn gen_eig_extremes<T: Scalar>(
    m: &SymMatrix<T>,
    c_factor: &CholeskyFactor<T>,
) -> Result<(T, T)> {
    let values = symmetric_eigenvalues(&c_factor.congruence(m)?);
    Ok((values[0], values[values.len() - 1]))
}

/// All generalized eigenpairs of `(M, C)`, ascending, each C-normalized.
pub fn gen_eigen_all<T: Scalar>(
    m: &SymMatrix<T>,
    c_factor: &CholeskyFactor<T>,
) -> Result<Vec<GenEigPair<T>>> {
    let eig = symmetric_eigen(&c_factor.congruence(m)?);
    Ok(eig
        .values
        .into_iter()
        .zip(eig.vectors)
        .map(|(value, w)| {
            let mut vector = c_factor.unwhiten(&w);
            fix_sign(&mut vector);
            GenEigPair { value, vector }
        })
        .collect())
}

/// Orthonormal basis of the eigenspace of `M` for eigenvalues with
/// `|λ| ≤ tol · (1 + ‖M‖_F)`. May be empty.
pub fn kernel_basis<T: Scalar>(m: &SymMatrix<T>, tol: T) -> Vec<Vec<T>> {
    let cutoff = tol * (T::one() + m.frobenius_norm());
    let eig = symmetric_eigen(m);
    eig.values
        .into_iter()
        .zip(eig.vectors)
        .filter(|(value, _)| value.abs() <= cutoff)
        .map(|(_, mut u)| {
            fix_sign(&mut u);
            u
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::cholesky::cholesky_spd;
    use crate::linalg::matrix::{dot, norm2};

    #[test]
    fn diagonal_pencil_min() {
        let m = SymMatrix::from_diagonal(&[1.0f64, 2.0, 3.0]);
        let f = cholesky_spd(&SymMatrix::identity(3)).unwrap();
        let p = gen_eigpair(&m, &f, Extreme::Min).unwrap();
        assert!((p.value - 1.0).abs() < 1e-15);
        assert_eq!(p.vector[0], 1.0);
        assert!(p.vector[1].abs() < 1e-15 && p.vector[2].abs() < 1e-15);
    }

    #[test]
    fn scaled_diagonal_pencil() {
        // eigenvalues of (diag(4,12), diag(2,3)) are 4/2 and 12/3
        let m = SymMatrix::from_diagonal(&[4.0f64, 12.0]);
        let c = SymMatrix::from_diagonal(&[2.0, 3.0]);
        let f = cholesky_spd(&c).unwrap();
        let p = gen_eigpair(&m, &f, Extreme::Min).unwrap();
        assert!((p.value - 2.0).abs() < 1e-14);
        assert!((p.vector[0] - 0.5f64.sqrt()).abs() < 1e-14);
        assert!(p.vector[1].abs() < 1e-14);
        assert!((c.quad_form(&p.vector) - 1.0).abs() < 1e-14);
        let mv = m.mul_vec(&p.vector);
        let cv = c.mul_vec(&p.vector);
        let r: Vec<f64> = mv.iter().zip(&cv).map(|(a, b)| a - p.value * b).collect();
        assert!(norm2(&r) < 1e-13);
        let q = gen_eigpair(&m, &f, Extreme::Max).unwrap();
        assert!((q.value - 4.0).abs() < 1e-14);
    }

    #[test]
    fn negative_identity() {
        let m = SymMatrix::<f64>::identity(2).scale(-1.0);
        let f = cholesky_spd(&SymMatrix::identity(2)).unwrap();
        let p = gen_eigpair(&m, &f, Extreme::Min).unwrap();
        assert!((p.value + 1.0).abs() < 1e-15);
        assert!((dot(&p.vector, &p.vector) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mismatched_dimension() {
        let m = SymMatrix::<f64>::identity(2);
        let f = cholesky_spd(&SymMatrix::identity(3)).unwrap();
        assert!(matches!(
            gen_eigpair(&m, &f, Extreme::Min),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&SymMatrix::from_diagonal(&[0.0f64, 1.0, 2.0]), 1e-9);
        assert_eq!(k, vec![vec![1.0, 0.0, 0.0]]);
        assert!(kernel_basis(&SymMatrix::<f64>::identity(2), 1e-9).is_empty());
        let m = SymMatrix::from_diagonal(&[0.0f64, 0.0, 3.0]);
        let k = kernel_basis(&m, 1e-9);
        assert_eq!(k.len(), 2);
        for (i, u) in k.iter().enumerate() {
            assert!(norm2(&m.mul_vec(u)) <= 1e-9);
            for (j, w) in k.iter().enumerate() {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((dot(u, w) - e).abs() < 1e-10);
            }
        }
    }
}
