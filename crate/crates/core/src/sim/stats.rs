//! Order-stable reductions for replication outputs.

use crate::error::{Error, Result};

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Mean and sample standard deviation (n − 1 denominator; 0 when n = 1).
pub fn mean_std(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::domain("need at least one sample"));
    }
    let n = values.len() as f64;
    let mean = compensated_sum(values.iter().copied()) / n;
    if values.len() == 1 {
        return Ok((mean, 0.0));
    }
    let ss = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean)));
    Ok((mean, (ss / (n - 1.0)).sqrt()))
}

/// Monte-Carlo estimate of an expectation: the sample mean and its
/// standard error `s / √S`.
pub fn mc_estimate(samples: &[f64]) -> Result<(f64, f64)> {
    let (mean, std) = mean_std(samples)?;
    Ok((mean, std / (samples.len() as f64).sqrt()))
}
