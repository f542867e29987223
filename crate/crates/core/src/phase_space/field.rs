use serde::Serialize;

use super::axis::Axis;
use crate::error::{Error, Result};

/// Selects one of the two axes of a [`DistributionField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisId {
    /// `q` or `t`.
    First,
    /// `p` or `omega`.
    Second,
}

/// Real-valued distribution sampled on `axis1 x axis2`.
///
/// Values are stored row-major: `values[i * axis2.len() + j]` is the sample at
/// `(axis1[i], axis2[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionField {
    axis1: Axis,
    axis2: Axis,
    values: Vec<f64>,
}

/// First moments, standard deviations and total mass of a field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean1: f64,
    pub mean2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub total_mass: f64,
}

impl DistributionField {
    pub fn new(axis1: Axis, axis2: Axis, values: Vec<f64>) -> Result<Self> {
        let expected = axis1.len() * axis2.len();
        if values.len() != expected {
            return Err(Error::ShapeMismatch {
                expected: format!("{} x {}", axis1.len(), axis2.len()),
                got: format!("{} values", values.len()),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(DistributionField {
            axis1,
            axis2,
            values,
        })
    }

    pub fn from_fn(axis1: Axis, axis2: Axis, mut f: impl FnMut(f64, f64) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(axis1.len() * axis2.len());
        for x in axis1.values() {
            for y in axis2.values() {
                values.push(f(x, y));
            }
        }
        DistributionField::new(axis1, axis2, values)
    }

    pub fn zeros(axis1: Axis, axis2: Axis) -> Self {
        DistributionField {
            axis1,
            axis2,
            values: vec![0.0; axis1.len() * axis2.len()],
        }
    }

    pub fn axis1(&self) -> &Axis {
        &self.axis1
    }

    pub fn axis2(&self) -> &Axis {
        &self.axis2
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.axis1.len(), self.axis2.len())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n2 = self.axis2.len();
        &self.values[i * n2..(i + 1) * n2]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.axis1.len()).map(|i| self.get(i, j)).collect()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Grid indices of the largest value.
    pub fn argmax(&self) -> (usize, usize) {
        let k = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bk, bv), (k, &v)| {
                if v > bv {
                    (k, v)
                } else {
                    (bk, bv)
                }
            })
            .0;
        (k / self.axis2.len(), k % self.axis2.len())
    }

    pub fn same_axes(&self, other: &DistributionField) -> bool {
        self.axis1 == other.axis1 && self.axis2 == other.axis2
    }

    /// `a * self + b * other` on identical axes.
    pub fn combine(&self, a: f64, other: &DistributionField, b: f64) -> Result<Self> {
        if !self.same_axes(other) {
            return Err(Error::ShapeMismatch {
                expected: format!("{} x {}", self.axis1.describe(), self.axis2.describe()),
                got: format!("{} x {}", other.axis1.describe(), other.axis2.describe()),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        DistributionField::new(self.axis1, self.axis2, values)
    }

    /// Largest `|self - other|` over the grid.
    pub fn max_abs_diff(&self, other: &DistributionField) -> f64 {
        assert!(self.same_axes(other), "fields live on different axes");
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    /// Sub-field restricted to index ranges (inclusive start, exclusive end).
    pub fn crop(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Result<Self> {
        let a1 = Axis::new(
            self.axis1.value(rows.start),
            self.axis1.value(rows.end - 1),
            rows.len(),
        )?;
        let a2 = Axis::new(
            self.axis2.value(cols.start),
            self.axis2.value(cols.end - 1),
            cols.len(),
        )?;
        let mut values = Vec::with_capacity(rows.len() * cols.len());
        for i in rows {
            values.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        DistributionField::new(a1, a2, values)
    }

    /// Bilinear interpolation at `(x1, x2)`; `None` outside the grid.
    pub fn sample_bilinear(&self, x1: f64, x2: f64) -> Option<f64> {
        if !self.axis1.contains(x1) || !self.axis2.contains(x2) {
            return None;
        }
        let (n1, n2) = self.shape();
        let f1 = ((x1 - self.axis1.min()) / self.axis1.spacing()).clamp(0.0, (n1 - 1) as f64);
        let f2 = ((x2 - self.axis2.min()) / self.axis2.spacing()).clamp(0.0, (n2 - 1) as f64);
        let i = (f1.floor() as usize).min(n1 - 2);
        let j = (f2.floor() as usize).min(n2 - 2);
        let (u, v) = (f1 - i as f64, f2 - j as f64);
        Some(
            (1.0 - u) * (1.0 - v) * self.get(i, j)
                + u * (1.0 - v) * self.get(i + 1, j)
                + (1.0 - u) * v * self.get(i, j + 1)
                + u * v * self.get(i + 1, j + 1),
        )
    }

    /// Trapezoidal integral over the other axis, keeping `keep`.
    pub fn marginal(&self, keep: AxisId) -> Vec<f64> {
        match keep {
            AxisId::First => (0..self.axis1.len())
                .map(|i| self.axis2.trapezoid(self.row(i)))
                .collect(),
            AxisId::Second => {
                let w = self.axis1.trapezoid_weights();
                let mut out = vec![0.0; self.axis2.len()];
                for (i, wi) in w.iter().enumerate() {
                    for (o, v) in out.iter_mut().zip(self.row(i)) {
                        *o += wi * v;
                    }
                }
                out
            }
        }
    }

    pub fn total_mass(&self) -> f64 {
        self.axis1.trapezoid(&self.marginal(AxisId::First))
    }

    /// Moments with the field treated as a (possibly signed) density.
    pub fn moments(&self) -> Result<Moments> {
        let m1 = self.marginal(AxisId::First);
        let m2 = self.marginal(AxisId::Second);
        let mass = self.axis1.trapezoid(&m1);
        if mass == 0.0 || !mass.is_finite() {
            return Err(Error::ZeroMass);
        }
        let weighted = |axis: &Axis, m: &[f64], k: i32| {
            let v: Vec<f64> = axis.values().zip(m).map(|(x, w)| x.powi(k) * w).collect();
            axis.trapezoid(&v) / mass
        };
        let mean1 = weighted(&self.axis1, &m1, 1);
        let mean2 = weighted(&self.axis2, &m2, 1);
        let var1 = weighted(&self.axis1, &m1, 2) - mean1 * mean1;
        let var2 = weighted(&self.axis2, &m2, 2) - mean2 * mean2;
        Ok(Moments {
            mean1,
            mean2,
            delta1: var1.max(0.0).sqrt(),
            delta2: var2.max(0.0).sqrt(),
            total_mass: mass,
        })
    }
}
