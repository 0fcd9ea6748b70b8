//! The repo-wide JSON matrix format: `{"dims":[dA,dB],"re":[[...]],"im":[[...]]}`.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::density::DensityMatrix;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::DEFAULT_TOL;

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

/// Wire form of a density matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityJson {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

fn split(m: &ComplexMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let re = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].re).collect()).collect();
    let im = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m[(r, c)].im).collect()).collect();
    (re, im)
}

fn join(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<ComplexMatrix> {
    let rows = re.len();
    let cols = re.first().map_or(0, Vec::len);
    if re.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged `re` rows".into()));
    }
    if let Some(im) = im {
        if im.len() != rows || im.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("`im` shape differs from `re`".into()));
        }
    }
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let i = im.map_or(0.0, |im| im[r][c]);
            data.push(Complex64::new(re[r][c], i));
        }
    }
    ComplexMatrix::from_vec(rows, cols, data)
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (re, im) = split(self);
        MatrixWire { re, im: Some(im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        join(&w.re, w.im.as_deref()).map_err(D::Error::custom)
    }
}

impl DensityJson {
    pub fn from_density(rho: &DensityMatrix) -> Self {
        let (re, im) = split(rho.matrix());
        DensityJson { dims: rho.dims().to_vec(), re, im: Some(im) }
    }

    /// Converts to a density matrix, validating Hermiticity, unit trace and
    /// positivity within `tol` unless `validate` is false.
    pub fn into_density(self, validate: bool, tol: f64) -> Result<DensityMatrix> {
        let m = join(&self.re, self.im.as_deref())?;
        if validate {
            DensityMatrix::new(m, self.dims, tol)
        } else {
            DensityMatrix::new_unchecked(m, self.dims)
        }
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DensityJson::from_density(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DensityJson::deserialize(d)?.into_density(true, DEFAULT_TOL).map_err(D::Error::custom)
    }
}

/// Parses the JSON matrix format.
pub fn parse_density(text: &str, validate: bool, tol: f64) -> Result<DensityMatrix> {
    let wire: DensityJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    wire.into_density(validate, tol)
}

pub fn density_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(rho).expect("density matrices always serialize")
}
