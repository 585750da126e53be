//! Instance file format.
//!
//! A single JSON object:
//!
//! ```json
//! {"n": 3, "alpha": 1.0, "beta": 10.0, "A": [9 numbers], "B": [...], "C": [...]}
//! ```
//!
//! Matrices are dense and row-major. On load each matrix must be symmetric to
//! `1e-10 · (1 + max|entry|)`; it is then symmetrized exactly.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::problem::QrProblem;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub alpha: f64,
    pub beta: f64,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    #[serde(rename = "B")]
    pub b: Vec<f64>,
    #[serde(rename = "C")]
    pub c: Vec<f64>,
}

impl InstanceFile {
    pub fn from_problem<T: Scalar>(p: &QrProblem<T>) -> Self {
        let flat = |m: &SymMatrix<T>| m.as_slice().iter().map(|v| v.as_f64()).collect();
        Self {
            n: p.dim(),
            alpha: p.alpha().as_f64(),
            beta: p.beta().as_f64(),
            a: flat(p.a()),
            b: flat(p.b()),
            c: flat(p.c()),
        }
    }

    pub fn into_problem<T: Scalar>(self) -> Result<QrProblem<T>> {
        let n = self.n;
        let a = checked_matrix(n, &self.a, "A")?;
        let b = checked_matrix(n, &self.b, "B")?;
        let c = checked_matrix(n, &self.c, "C")?;
        QrProblem::new(a, b, c, T::c(self.alpha), T::c(self.beta))
    }
}

fn checked_matrix<T: Scalar>(n: usize, data: &[f64], name: &'static str) -> Result<SymMatrix<T>> {
    if data.len() != n * n {
        return Err(Error::Parse(format!(
            "matrix {name} has {} entries, expected {}",
            data.len(),
            n * n
        )));
    }
    let max = data.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-10 * (1.0 + max);
    for i in 0..n {
        for j in (i + 1)..n {
            let (upper, lower) = (data[i * n + j], data[j * n + i]);
            if (upper - lower).abs() > tol {
                return Err(Error::NotSymmetric {
                    matrix: name,
                    row: i,
                    col: j,
                    upper,
                    lower,
                });
            }
        }
    }
    SymMatrix::from_row_major(n, data.iter().map(|&v| T::c(v)).collect())
}

pub fn read_instance<T: Scalar, R: Read>(reader: R) -> Result<QrProblem<T>> {
    let file: InstanceFile =
        serde_json::from_reader(reader).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_problem()
}

pub fn write_instance<T: Scalar, W: Write>(p: &QrProblem<T>, mut writer: W) -> Result<()> {
    let text = serde_json::to_string(&InstanceFile::from_problem(p))
        .map_err(|e| Error::Parse(e.to_string()))?;
    writer.write_all(text.as_bytes())?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn load_instance<T: Scalar>(path: impl AsRef<Path>) -> Result<QrProblem<T>> {
    let bytes = fs::read(path)?;
    read_instance(bytes.as_slice())
}

pub fn save_instance<T: Scalar>(p: &QrProblem<T>, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_instance(p, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::random_instance;

    #[test]
    fn text_round_trip_is_exact() {
        let p = random_instance::<f64>(6, 3, 1.0, 10.0).unwrap();
        let mut first = Vec::new();
        write_instance(&p, &mut first).unwrap();
        let q: QrProblem<f64> = read_instance(first.as_slice()).unwrap();
        let mut second = Vec::new();
        write_instance(&q, &mut second).unwrap();
        assert_eq!(
            String::from_utf8(first).unwrap(),
            String::from_utf8(second).unwrap()
        );
        assert_eq!(p.a(), q.a());
    }

    #[test]
    fn asymmetric_input_rejected() {
        let text = r#"{"n":3,"alpha":1,"beta":10,
            "A":[1,0,0, 0.5,1,0, 0,0,1],
            "B":[1,0,0, 0,1,0, 0,0,1],
            "C":[1,0,0, 0,1,0, 0,0,1]}"#;
        let err = read_instance::<f64, _>(text.as_bytes()).unwrap_err();
        assert!(matches!(
            err,
            Error::NotSymmetric {
                matrix: "A",
                row: 0,
                col: 1,
                ..
            }
        ));
    }

    #[test]
    fn tiny_asymmetry_is_symmetrized() {
        let text = r#"{"n":3,"alpha":1,"beta":10,
            "A":[1,2e-12,0, 0,1,0, 0,0,1],
            "B":[1,0,0, 0,1,0, 0,0,1],
            "C":[1,0,0, 0,1,0, 0,0,1]}"#;
        let p = read_instance::<f64, _>(text.as_bytes()).unwrap();
        assert_eq!(p.a().get(0, 1), p.a().get(1, 0));
    }

    #[test]
    fn wrong_length_and_garbage() {
        let text = r#"{"n":3,"alpha":1,"beta":10,"A":[1,0],"B":[],"C":[]}"#;
        assert!(matches!(
            read_instance::<f64, _>(text.as_bytes()),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            read_instance::<f64, _>(&b"not json"[..]),
            Err(Error::Parse(_))
        ));
    }
}
