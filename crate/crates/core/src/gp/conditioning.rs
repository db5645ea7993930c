use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radial bump `w · exp(−‖x − c‖² / 2s²)` anchored at a prior-belief point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: Vec<f64>,
    pub width: f64,
    pub weight: f64,
}

/// Additive prior-mean shift `κ(x) = α · u(x)` where `u` is a sum of
/// radial bumps. With no bumps κ is identically zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditioningFn {
    pub alpha: f64,
    pub bumps: Vec<Bump>,
}

impl ConditioningFn {
    pub fn new(alpha: f64, bumps: Vec<Bump>) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::config("conditioning alpha must be finite"));
        }
        for b in &bumps {
            if !(b.width.is_finite() && b.width > 0.0) {
                return Err(Error::config(format!("bump width must be > 0, got {}", b.width)));
            }
            if !b.weight.is_finite() || b.center.iter().any(|c| !c.is_finite()) {
                return Err(Error::config("bump weight and centre must be finite"));
            }
        }
        if let Some(first) = bumps.first() {
            if bumps.iter().any(|b| b.center.len() != first.center.len()) {
                return Err(Error::config("bump centres differ in dimension"));
            }
        }
        Ok(ConditioningFn { alpha, bumps })
    }

    /// Builds from parallel arrays as found in a conditioning file.
    pub fn from_parts(alpha: f64, centers: Vec<Vec<f64>>, widths: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if centers.len() != widths.len() || centers.len() != weights.len() {
            return Err(Error::config(format!(
                "conditioning needs equally many centres, widths and weights ({}, {}, {})",
                centers.len(),
                widths.len(),
                weights.len()
            )));
        }
        let bumps = centers
            .into_iter()
            .zip(widths)
            .zip(weights)
            .map(|((center, width), weight)| Bump { center, width, weight })
            .collect();
        Self::new(alpha, bumps)
    }

    pub fn dim(&self) -> Option<usize> {
        self.bumps.first().map(|b| b.center.len())
    }

    /// The influence function `u(x)`.
    pub fn influence(&self, x: &[f64]) -> f64 {
        self.bumps
            .iter()
            .map(|b| {
                let r2: f64 = b.center.iter().zip(x).map(|(c, v)| (v - c) * (v - c)).sum();
                b.weight * (-r2 / (2.0 * b.width * b.width)).exp()
            })
            .sum()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.alpha * self.influence(x)
    }
}
