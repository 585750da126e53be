use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::linalg::SymMatrix;
use crate::problem::QrProblem;
use crate::scalar::Scalar;

/// Seeded random instance.
///
/// Draws, in this order and row-major, three `n × n` standard normal matrices
/// `R`, `W`, `V` from ChaCha8 seeded with `seed`, then sets
/// `A = (R + Rᵀ)/2`, `B = W Wᵀ/n + I`, `C = V Vᵀ/n + I`.
pub fn random_instance<T: Scalar>(n: usize, seed: u64, alpha: T, beta: T) -> Result<QrProblem<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || -> Vec<f64> {
        (0..n * n)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect()
    };
    let r = draw();
    let w = draw();
    let v = draw();

    let a = SymMatrix::from_fn(n, |i, j| T::c(r[i * n + j]))?;
    let b = gram_plus_identity(&w, n)?;
    let c = gram_plus_identity(&v, n)?;
    QrProblem::new(a, b, c, alpha, beta)
}

fn gram_plus_identity<T: Scalar>(g: &[f64], n: usize) -> Result<SymMatrix<T>> {
    let inv_n = 1.0 / n as f64;
    let mut data = vec![T::zero(); n * n];
    for i in 0..n {
        let gi = &g[i * n..(i + 1) * n];
        for j in 0..=i {
            let gj = &g[j * n..(j + 1) * n];
            let mut s: f64 = gi.iter().zip(gj).map(|(x, y)| x * y).sum();
            s *= inv_n;
            if i == j {
                s += 1.0;
            }
            data[i * n + j] = T::c(s);
            data[j * n + i] = T::c(s);
        }
    }
    SymMatrix::from_row_major(n, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::linalg::cholesky_spd;

    #[test]
    fn deterministic_and_valid() {
        let p = random_instance::<f64>(100, 42, 1.0, 10.0).unwrap();
        assert!(cholesky_spd(p.b()).is_ok());
        assert!(cholesky_spd(p.c()).is_ok());
        let q = random_instance::<f64>(100, 42, 1.0, 10.0).unwrap();
        assert_eq!(p.a(), q.a());
        assert_eq!(p.b(), q.b());
        assert_eq!(p.c(), q.c());
        let other = random_instance::<f64>(100, 43, 1.0, 10.0).unwrap();
        assert_ne!(p.a(), other.a());
    }

    #[test]
    fn small_instance_is_symmetric() {
        let p = random_instance::<f64>(3, 7, 1.0, 10.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.a().get(i, j), p.a().get(j, i));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            random_instance::<f64>(2, 1, 1.0, 10.0),
            Err(Error::DimensionTooSmall { .. })
        ));
        assert!(matches!(
            random_instance::<f64>(5, 1, 3.0, 2.0),
            Err(Error::BadBounds { .. })
        ));
    }
}
