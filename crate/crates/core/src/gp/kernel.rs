use crate::error::{Error, Result};

/// Squared-exponential kernel with one length scale per input dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    pub signal_variance: f64,
    pub length_scales: Vec<f64>,
}

impl Kernel {
    pub fn new(signal_variance: f64, length_scales: Vec<f64>) -> Result<Self> {
        if !(signal_variance.is_finite() && signal_variance >= 0.0) {
            return Err(Error::domain(format!(
                "signal variance must be >= 0, got {signal_variance}"
            )));
        }
        if length_scales.is_empty() || length_scales.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::domain("length scales must be positive and non-empty"));
        }
        Ok(Kernel {
            signal_variance,
            length_scales,
        })
    }

    pub fn dim(&self) -> usize {
        self.length_scales.len()
    }

    /// `σ_f² · exp(−½ Σ ((x_i − x'_i) / ℓ_i)²)`.
    pub fn eval(&self, x: &[f64], x2: &[f64]) -> Result<f64> {
        if x.len() != self.dim() || x2.len() != self.dim() {
            return Err(Error::domain(format!(
                "kernel expects {}-dimensional points, got {} and {}",
                self.dim(),
                x.len(),
                x2.len()
            )));
        }
        Ok(self.eval_unchecked(x, x2))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64], x2: &[f64]) -> f64 {
        let mut r2 = 0.0;
        for ((a, b), l) in x.iter().zip(x2).zip(&self.length_scales) {
            let d = (a - b) / l;
            r2 += d * d;
        }
        self.signal_variance * (-0.5 * r2).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_distance_gives_signal_variance() {
        let k = Kernel::new(2.5, vec![0.3, 4.0]).unwrap();
        assert_eq!(k.eval(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 2.5);
    }

    #[test]
    fn symmetric() {
        let k = Kernel::new(1.3, vec![0.7, 1.9]).unwrap();
        let (a, b) = ([0.1, -2.0], [1.4, 0.3]);
        assert_eq!(k.eval(&a, &b).unwrap(), k.eval(&b, &a).unwrap());
    }

    #[test]
    fn unit_distance() {
        let k = Kernel::new(1.0, vec![1.0]).unwrap();
        assert!((k.eval(&[0.0], &[1.0]).unwrap() - (-0.5f64).exp()).abs() < 1e-15);
        assert!((k.eval(&[0.0], &[1.0]).unwrap() - 0.6065).abs() < 1e-4);
    }

    #[test]
    fn dimension_mismatch() {
        let k = Kernel::new(1.0, vec![1.0, 1.0]).unwrap();
        assert!(matches!(k.eval(&[0.0], &[1.0, 2.0]), Err(Error::Domain(_))));
    }
}
