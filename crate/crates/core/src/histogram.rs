//! Equal-width histograms for plot-ready CSV output.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Bins spanning `[min, max]`. The last bin is closed on the right. When all
/// samples are equal every sample lands in the first bin.
pub fn histogram(samples: &[f64], bins: usize) -> Result<Vec<Bin>> {
    if samples.is_empty() {
        return Err(Error::domain("histogram needs at least one sample"));
    }
    if bins == 0 {
        return Err(Error::domain("histogram needs at least one bin"));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::domain("histogram samples must be finite"));
    }
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = (max - min) / bins as f64;
    let mut out: Vec<Bin> = (0..bins)
        .map(|i| Bin {
            lo: min + width * i as f64,
            hi: if i + 1 == bins {
                max
            } else {
                min + width * (i + 1) as f64
            },
            count: 0,
        })
        .collect();
    for &x in samples {
        let idx = if width > 0.0 {
            (((x - min) / width) as usize).min(bins - 1)
        } else {
            0
        };
        out[idx].count += 1;
    }
    Ok(out)
}

/// `bin_lo,bin_hi,count` rows with a header line.
pub fn to_csv(bins: &[Bin]) -> String {
    let mut s = String::from("bin_lo,bin_hi,count\n");
    for b in bins {
        s.push_str(&format!("{},{},{}\n", b.lo, b.hi, b.count));
    }
    s
}
