use std::collections::BTreeMap;

use nalgebra::{Cholesky, DMatrix, DVector};

use crate::error::{Error, Result};

/// Distribution of the unobserved components given the observed ones.
#[derive(Debug, Clone, PartialEq)]
pub struct Conditional {
    /// Indices (into the original vector) of the unobserved components,
    /// ascending; `mean` and `cov` follow this order.
    pub indices: Vec<usize>,
    pub mean: DVector<f64>,
    pub cov: DMatrix<f64>,
}

/// Conditions `N(mean, cov)` on `x_b = observed` via the Schur complement:
/// `μ_a + Σ_ab Σ_bb⁻¹ (x_b − μ_b)` and `Σ_aa − Σ_ab Σ_bb⁻¹ Σ_ba`.
pub fn condition_mvn(mean: &DVector<f64>, cov: &DMatrix<f64>, observed: &BTreeMap<usize, f64>) -> Result<Conditional> {
    let d = mean.len();
    if cov.nrows() != d || cov.ncols() != d {
        return Err(Error::domain(format!(
            "covariance is {}x{} but mean has {d} components",
            cov.nrows(),
            cov.ncols()
        )));
    }
    let scale = cov.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    if (cov - cov.transpose()).amax() > 1e-12 * scale {
        return Err(Error::domain("covariance must be symmetric"));
    }
    if let Some((&i, _)) = observed.iter().find(|(&i, _)| i >= d) {
        return Err(Error::domain(format!(
            "observed index {i} out of range for dimension {d}"
        )));
    }
    if observed.len() >= d {
        return Err(Error::domain("observed indices must be a proper subset"));
    }
    let b: Vec<usize> = observed.keys().copied().collect();
    let a: Vec<usize> = (0..d).filter(|i| !observed.contains_key(i)).collect();
    let mu_a = DVector::from_iterator(a.len(), a.iter().map(|&i| mean[i]));
    let sigma_aa = DMatrix::from_fn(a.len(), a.len(), |r, c| cov[(a[r], a[c])]);
    if b.is_empty() {
        return Ok(Conditional {
            indices: a,
            mean: mu_a,
            cov: sigma_aa,
        });
    }
    let sigma_ab = DMatrix::from_fn(a.len(), b.len(), |r, c| cov[(a[r], b[c])]);
    let sigma_bb = DMatrix::from_fn(b.len(), b.len(), |r, c| cov[(b[r], b[c])]);
    let resid = DVector::from_iterator(b.len(), observed.iter().map(|(&i, &v)| v - mean[i]));
    let chol = Cholesky::new(sigma_bb).ok_or_else(|| {
        Error::numerical(format!(
            "observed covariance block {b:?} is singular; add a small nugget to its diagonal"
        ))
    })?;
    let cond_mean = mu_a + &sigma_ab * chol.solve(&resid);
    let mut cond_cov = sigma_aa - &sigma_ab * chol.solve(&sigma_ab.transpose());
    // restore exact symmetry lost to rounding
    cond_cov = (&cond_cov + cond_cov.transpose()) * 0.5;
    Ok(Conditional {
        indices: a,
        mean: cond_mean,
        cov: cond_cov,
    })
}
