//! Piecewise-cubic Hermite interpolation on a uniform mesh.

use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)] // shadowed by std's inherent methods when a test build links std
use num_traits::Float;

use crate::error::{Error, Result};

/// Uniformly sampled function values together with their exact first
/// derivatives; evaluation uses the cubic Hermite interpolant on each cell.
#[derive(Clone)]
pub struct HermiteSeries {
    r0: f64,
    h: f64,
    values: Vec<f64>,
    derivs: Vec<f64>,
}

impl HermiteSeries {
    pub fn new(r0: f64, h: f64, values: Vec<f64>, derivs: Vec<f64>) -> Result<Self> {
        if values.len() < 2 || values.len() != derivs.len() {
            return Err(Error::Domain(format!(
                "Hermite series needs matching sample vectors with >= 2 entries, got {} and {}",
                values.len(),
                derivs.len()
            )));
        }
        if !(h > 0.0) || !r0.is_finite() {
            return Err(Error::Domain(format!("invalid Hermite mesh: r0 = {r0:e}, h = {h:e}")));
        }
        Ok(Self { r0, h, values, derivs })
    }

    pub fn start(&self) -> f64 {
        self.r0
    }

    pub fn end(&self) -> f64 {
        self.r0 + (self.values.len() - 1) as f64 * self.h
    }

    fn locate(&self, r: f64) -> (usize, f64) {
        let cells = self.values.len() - 1;
        let x = ((r - self.r0) / self.h).max(0.0);
        let mut i = x.floor() as usize;
        if i >= cells {
            i = cells - 1;
        }
        (i, x - i as f64)
    }

    /// Interpolated value at `r`, clamped to the sampled range.
    pub fn eval(&self, r: f64) -> f64 {
        let (i, theta) = self.locate(r.max(self.r0).min(self.end()));
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.derivs[i], self.derivs[i + 1]);
        let t2 = theta * theta;
        let t3 = t2 * theta;
        (2.0 * t3 - 3.0 * t2 + 1.0) * v0
            + (t3 - 2.0 * t2 + theta) * self.h * d0
            + (-2.0 * t3 + 3.0 * t2) * v1
            + (t3 - t2) * self.h * d1
    }

    /// Derivative of the interpolant at `r`.
    pub fn eval_deriv(&self, r: f64) -> f64 {
        let (i, theta) = self.locate(r.max(self.r0).min(self.end()));
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.derivs[i], self.derivs[i + 1]);
        let t2 = theta * theta;
        ((6.0 * t2 - 6.0 * theta) * (v0 - v1) / self.h)
            + (3.0 * t2 - 4.0 * theta + 1.0) * d0
            + (3.0 * t2 - 2.0 * theta) * d1
    }
}
