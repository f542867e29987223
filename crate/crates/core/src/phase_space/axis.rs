use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A uniform grid of `n` points spanning `[min, max]`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    min: f64,
    max: f64,
    n: usize,
}

impl Axis {
    pub fn new(min: f64, max: f64, n: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::InvalidAxis(format!(
                "non-finite bounds [{min}, {max}]"
            )));
        }
        if max <= min {
            return Err(Error::InvalidAxis(format!(
                "max {max} must exceed min {min}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidAxis(format!(
                "need at least 2 points, got {n}"
            )));
        }
        let axis = Axis { min, max, n };
        if !(axis.spacing() > 0.0) {
            return Err(Error::InvalidAxis("spacing underflows to zero".into()));
        }
        Ok(axis)
    }

    /// Symmetric axis `[-extent, extent]`.
    pub fn symmetric(extent: f64, n: usize) -> Result<Self> {
        Axis::new(-extent, extent, n)
    }

    /// Axis starting at `min` with the given spacing.
    pub fn from_spacing(min: f64, spacing: f64, n: usize) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::InvalidAxis(format!(
                "spacing {spacing} must be positive"
            )));
        }
        Axis::new(min, min + spacing * (n.max(1) - 1) as f64, n)
    }

    /// The conjugate axis matched to lag sums on this grid.
    ///
    /// A Wigner kernel `exp(-2i p x / scale)` sampled at lags `x = m h` is
    /// periodic in `p` with period `pi scale / h`. The returned axis covers
    /// exactly one period, `[-pi scale / 2h, pi scale / 2h]`, so trapezoidal
    /// marginals over it are exact lattice identities.
    pub fn lag_conjugate(&self, scale: f64, n: usize) -> Result<Self> {
        let bound = PI * scale / (2.0 * self.spacing());
        Axis::symmetric(bound, n)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.n - 1) as f64
    }

    #[inline]
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.max
        } else {
            self.min + i as f64 * self.spacing()
        }
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.value(i))
    }

    pub fn contains(&self, x: f64) -> bool {
        let tol = 1e-9 * self.spacing();
        x >= self.min - tol && x <= self.max + tol
    }

    /// Nearest grid index, clamped to the axis.
    pub fn nearest_index(&self, x: f64) -> usize {
        let f = ((x - self.min) / self.spacing()).round();
        f.clamp(0.0, (self.n - 1) as f64) as usize
    }

    /// Index of `x` if it lies on a grid point (within `1e-6` spacings).
    pub fn grid_index(&self, x: f64) -> Option<usize> {
        let f = (x - self.min) / self.spacing();
        let i = f.round();
        if (f - i).abs() <= 1e-6 && i >= 0.0 && i <= (self.n - 1) as f64 {
            Some(i as usize)
        } else {
            None
        }
    }

    /// Trapezoidal quadrature weights.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut w = vec![h; self.n];
        w[0] *= 0.5;
        w[self.n - 1] *= 0.5;
        w
    }

    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.n);
        let h = self.spacing();
        let inner: f64 = values[1..self.n - 1].iter().sum();
        h * (inner + 0.5 * (values[0] + values[self.n - 1]))
    }

    pub(crate) fn describe(&self) -> String {
        format!("[{}, {}; {}]", self.min, self.max, self.n)
    }
}
