//! Matrix JSON: `{"d": 2, "re": [[..], [..]], "im": [[..], [..]]}`, row-major,
//! with `im` optional.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CMatrix, HermitianMatrix, PositiveMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub d: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let d = m.nrows();
        let re = (0..d)
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect())
            .collect();
        let has_im = m.iter().any(|z| z.im != 0.0);
        let im = has_im.then(|| {
            (0..d)
                .map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect())
                .collect()
        });
        Self { d, re, im }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let d = self.d;
        if d == 0 {
            return Err(Error::Parse("\"d\" must be at least 1".into()));
        }
        check_shape("re", &self.re, d)?;
        if let Some(im) = &self.im {
            check_shape("im", im, d)?;
        }
        let m = CMatrix::from_fn(d, d, |i, j| {
            let im = self.im.as_ref().map_or(0.0, |im| im[i][j]);
            Complex64::new(self.re[i][j], im)
        });
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("matrix entries must be finite".into()));
        }
        Ok(m)
    }
}

fn check_shape(field: &str, rows: &[Vec<f64>], d: usize) -> Result<()> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(Error::Parse(format!("\"{field}\" must be a {d}x{d} array")));
    }
    Ok(())
}

pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    raw.to_matrix()
}

pub fn parse_hermitian(text: &str) -> Result<HermitianMatrix> {
    HermitianMatrix::new(parse_matrix(text)?)
}

pub fn parse_positive(text: &str) -> Result<PositiveMatrix> {
    PositiveMatrix::new(parse_hermitian(text)?)
}

pub fn to_json(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(m)).expect("matrix JSON serializes")
}
