use serde::Serialize;

use crate::error::{Error, Result};

/// Static one-dimensional binding potential.
pub trait Potential: Sync {
    fn value(&self, x: f64) -> f64;
    fn derivative(&self, x: f64) -> f64;
    fn label(&self) -> String;
}

/// `V(x) = -1 / sqrt(beta^2 + x^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SoftCoreSpec {
    pub beta: f64,
}

impl SoftCoreSpec {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta must be positive, got {beta}"
            )));
        }
        Ok(SoftCoreSpec { beta })
    }

    /// Builds the potential from the softening constant `beta^2`.
    pub fn from_softening(beta_sq: f64) -> Result<Self> {
        if !(beta_sq > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "softening must be positive, got {beta_sq}"
            )));
        }
        SoftCoreSpec::new(beta_sq.sqrt())
    }

    /// Softening `beta^2 = 0.67`, whose ground state is bound by 0.79 hartree
    /// (neon's first ionization potential).
    pub fn neon() -> Self {
        SoftCoreSpec {
            beta: 0.67f64.sqrt(),
        }
    }
}

impl Potential for SoftCoreSpec {
    fn value(&self, x: f64) -> f64 {
        -1.0 / (self.beta * self.beta + x * x).sqrt()
    }

    fn derivative(&self, x: f64) -> f64 {
        x / (self.beta * self.beta + x * x).powf(1.5)
    }

    fn label(&self) -> String {
        format!("soft-core beta={}", self.beta)
    }
}

/// `V = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct FreeSpace;

impl Potential for FreeSpace {
    fn value(&self, _x: f64) -> f64 {
        0.0
    }

    fn derivative(&self, _x: f64) -> f64 {
        0.0
    }

    fn label(&self) -> String {
        "free".into()
    }
}
