//! Dense parameter-vector arithmetic.
//!
//! One flat `Vec<f64>` holds everything that is a vector in the simulation:
//! model parameters, first/second-order momenta, preconditioners, and
//! global offsets. Every operation validates dimensions and rejects
//! non-finite results instead of letting NaN spread through a run.

use crate::error::{CoreError, Result};

/// Flat dense real vector of fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector {
    values: Vec<f64>,
}

fn check_finite(values: &[f64], context: &'static str) -> Result<()> {
    for (index, v) in values.iter().enumerate() {
        if !v.is_finite() {
            return Err(CoreError::NonFinite { context, index });
        }
    }
    Ok(())
}

fn check_dims(op: &'static str, left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(CoreError::DimensionMismatch { op, left, right });
    }
    Ok(())
}

impl ParamVector {
    pub fn zeros(dim: usize) -> Self {
        ParamVector {
            values: vec![0.0; dim],
        }
    }

    pub fn filled(dim: usize, value: f64) -> Result<Self> {
        let v = ParamVector {
            values: vec![value; dim],
        };
        check_finite(&v.values, "filled")?;
        Ok(v)
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        check_finite(&values, "from_values")?;
        Ok(ParamVector { values })
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// a*x + y, elementwise.
    pub fn axpy(a: f64, x: &ParamVector, y: &ParamVector) -> Result<ParamVector> {
        if !a.is_finite() {
            return Err(CoreError::NonFinite {
                context: "axpy scalar",
                index: 0,
            });
        }
        check_dims("axpy", x.dim(), y.dim())?;
        let values: Vec<f64> = x
            .values
            .iter()
            .zip(&y.values)
            .map(|(xi, yi)| a * xi + yi)
            .collect();
        check_finite(&values, "axpy")?;
        Ok(ParamVector { values })
    }

    /// self += a*x, in place.
    pub fn axpy_in_place(&mut self, a: f64, x: &ParamVector) -> Result<()> {
        if !a.is_finite() {
            return Err(CoreError::NonFinite {
                context: "axpy scalar",
                index: 0,
            });
        }
        check_dims("axpy_in_place", self.dim(), x.dim())?;
        for (si, xi) in self.values.iter_mut().zip(&x.values) {
            *si += a * xi;
        }
        check_finite(&self.values, "axpy_in_place")
    }

    /// Elementwise product.
    pub fn hadamard(&self, other: &ParamVector) -> Result<ParamVector> {
        check_dims("hadamard", self.dim(), other.dim())?;
        let values: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        check_finite(&values, "hadamard")?;
        Ok(ParamVector { values })
    }

    /// Elementwise maximum. Backs the running maximum of second-order
    /// momenta, which must never decrease.
    pub fn elementwise_max(&self, other: &ParamVector) -> Result<ParamVector> {
        check_dims("elementwise_max", self.dim(), other.dim())?;
        let values: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.max(*b))
            .collect();
        check_finite(&values, "elementwise_max")?;
        Ok(ParamVector { values })
    }

    /// Elementwise 1/sqrt(x). Every entry must be strictly positive; a
    /// non-positive entry means the second-order momenta floor was violated
    /// upstream.
    pub fn inv_sqrt(&self) -> Result<ParamVector> {
        for (index, v) in self.values.iter().enumerate() {
            if *v <= 0.0 {
                return Err(CoreError::NonPositiveEntry { index, value: *v });
            }
        }
        let values: Vec<f64> = self.values.iter().map(|v| 1.0 / v.sqrt()).collect();
        check_finite(&values, "inv_sqrt")?;
        Ok(ParamVector { values })
    }

    /// Sum of squared entries.
    pub fn l2_norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// Largest absolute entry.
    pub fn linf_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn add(&self, other: &ParamVector) -> Result<ParamVector> {
        check_dims("add", self.dim(), other.dim())?;
        let values: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        check_finite(&values, "add")?;
        Ok(ParamVector { values })
    }

    pub fn sub(&self, other: &ParamVector) -> Result<ParamVector> {
        check_dims("sub", self.dim(), other.dim())?;
        let values: Vec<f64> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        check_finite(&values, "sub")?;
        Ok(ParamVector { values })
    }

    pub fn scale(&self, a: f64) -> Result<ParamVector> {
        if !a.is_finite() {
            return Err(CoreError::NonFinite {
                context: "scale factor",
                index: 0,
            });
        }
        let values: Vec<f64> = self.values.iter().map(|v| a * v).collect();
        check_finite(&values, "scale")?;
        Ok(ParamVector { values })
    }

    /// Mean of a non-empty list of equal-dimension vectors, summed in the
    /// order given. Callers that need determinism must pass a fixed order.
    pub fn mean(vectors: &[&ParamVector]) -> Result<ParamVector> {
        let first = vectors.first().ok_or(CoreError::EmptyInput("mean"))?;
        let mut acc = ParamVector::zeros(first.dim());
        for v in vectors {
            acc.axpy_in_place(1.0, v)?;
        }
        acc.scale(1.0 / vectors.len() as f64)
    }

    pub fn max_entry(&self) -> f64 {
        self.values.iter().fold(f64::NEG_INFINITY, |a, v| a.max(*v))
    }

    pub fn min_entry(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |a, v| a.min(*v))
    }
}
