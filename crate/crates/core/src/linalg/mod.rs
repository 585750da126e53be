//! Dense symmetric linear algebra: Cholesky, symmetric eigendecomposition and
//! extreme generalized eigenpairs of a pencil `(M, C)` with `C ≻ 0`.

mod cholesky;
mod eigen;
mod geneig;
mod matrix;

pub use cholesky::{cholesky_spd, CholeskyFactor};
pub use eigen::{
    extreme_eigenpair, symmetric_eigen, symmetric_eigenvalues, Extreme, SymmetricEigen,
};
pub use geneig::{gen_eig_extremes, gen_eigen_all, gen_eigpair, kernel_basis, GenEigPair};
pub use matrix::{dot, fix_sign, norm2, SymMatrix};

pub(crate) use cholesky::cholesky_named;
pub(crate) use eigen::Tridiagonal;
pub(crate) use geneig::whitened_extreme_pair;
