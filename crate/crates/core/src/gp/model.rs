use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use super::conditioning::ConditioningFn;
use super::kernel::Kernel;
use super::optim::NelderMead;
use crate::error::{Error, Result};
use crate::par;
use crate::stochastic::RngStream;

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Search box for the kernel hyperparameters, in scaled units: length
/// scales relative to the unit input box, variances relative to
/// standardized outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperBounds {
    pub length_scale: (f64, f64),
    pub signal_variance: (f64, f64),
    pub noise_variance: (f64, f64),
}

impl Default for HyperBounds {
    fn default() -> Self {
        HyperBounds {
            length_scale: (1e-3, 10.0),
            signal_variance: (1e-6, 10.0),
            noise_variance: (1e-10, 1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperparams {
    pub length_scales: Vec<f64>,
    pub signal_variance: f64,
    pub noise_variance: f64,
}

impl Hyperparams {
    fn to_log(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.length_scales.iter().map(|l| l.ln()).collect();
        v.push(self.signal_variance.ln());
        v.push(self.noise_variance.ln());
        v
    }

    fn from_log(theta: &[f64]) -> Self {
        let d = theta.len() - 2;
        Hyperparams {
            length_scales: theta[..d].iter().map(|t| t.exp()).collect(),
            signal_variance: theta[d].exp(),
            noise_variance: theta[d + 1].exp(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FitOptions {
    pub bounds: HyperBounds,
    /// Local searches started per fit; the first starts from a fixed
    /// default (or `warm_start`), the rest from seeded random points.
    pub restarts: usize,
    pub seed: u64,
    /// Box used to scale inputs to `[0, 1]^d`. Defaults to the data range.
    pub input_box: Option<Vec<(f64, f64)>>,
    pub warm_start: Option<Hyperparams>,
    pub max_evals: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            bounds: HyperBounds::default(),
            restarts: 8,
            seed: 0,
            input_box: None,
            warm_start: None,
            max_evals: 300,
        }
    }
}

/// A fitted GP with its Cholesky factor cached.
#[derive(Debug, Clone)]
pub struct GpModel {
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
    conditioning: Option<ConditioningFn>,
    offset: Vec<f64>,
    span: Vec<f64>,
    x_scaled: Vec<Vec<f64>>,
    y_mean: f64,
    y_scale: f64,
    kernel: Kernel,
    noise_variance: f64,
    jitter: f64,
    chol: Cholesky<f64, Dyn>,
    alpha: DVector<f64>,
    log_marginal_likelihood: f64,
}

struct Prepared {
    offset: Vec<f64>,
    span: Vec<f64>,
    x_scaled: Vec<Vec<f64>>,
    y_mean: f64,
    y_scale: f64,
    z: DVector<f64>,
}

fn prepare(
    x: &[Vec<f64>],
    y: &[f64],
    conditioning: Option<&ConditioningFn>,
    input_box: Option<&[(f64, f64)]>,
) -> Result<Prepared> {
    if x.len() != y.len() {
        return Err(Error::domain(format!("{} inputs but {} outputs", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::domain("a GP needs at least two observations"));
    }
    let d = x[0].len();
    if d == 0 || x.iter().any(|p| p.len() != d) {
        return Err(Error::domain("inputs must share one non-zero dimension"));
    }
    if x.iter().flatten().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::domain("inputs and outputs must be finite"));
    }
    if let Some(k) = conditioning {
        if k.dim().is_some_and(|kd| kd != d) {
            return Err(Error::domain("conditioning dimension differs from inputs"));
        }
    }
    let (offset, span): (Vec<f64>, Vec<f64>) = match input_box {
        Some(b) => {
            if b.len() != d {
                return Err(Error::domain("input box dimension differs from inputs"));
            }
            b.iter().map(|&(lo, hi)| (lo, hi - lo)).unzip()
        }
        None => (0..d)
            .map(|k| {
                let lo = x.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min);
                let hi = x.iter().map(|p| p[k]).fold(f64::NEG_INFINITY, f64::max);
                (lo, hi - lo)
            })
            .unzip(),
    };
    let span: Vec<f64> = span.into_iter().map(|s| if s > 0.0 { s } else { 1.0 }).collect();
    let x_scaled = x
        .iter()
        .map(|p| {
            p.iter()
                .zip(&offset)
                .zip(&span)
                .map(|((v, o), s)| (v - o) / s)
                .collect()
        })
        .collect();
    let residual: Vec<f64> = match conditioning {
        Some(k) => x.iter().zip(y).map(|(p, v)| v - k.value(p)).collect(),
        None => y.to_vec(),
    };
    let n = residual.len() as f64;
    let y_mean = residual.iter().sum::<f64>() / n;
    let var = residual.iter().map(|r| (r - y_mean) * (r - y_mean)).sum::<f64>() / n;
    let y_scale = if var.sqrt() > 1e-12 * y_mean.abs().max(1.0) {
        var.sqrt()
    } else {
        1.0
    };
    let z = DVector::from_iterator(residual.len(), residual.iter().map(|r| (r - y_mean) / y_scale));
    Ok(Prepared {
        offset,
        span,
        x_scaled,
        y_mean,
        y_scale,
        z,
    })
}

fn gram(xs: &[Vec<f64>], kernel: &Kernel, diag: f64) -> DMatrix<f64> {
    let n = xs.len();
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = kernel.signal_variance + diag;
        for j in 0..i {
            let v = kernel.eval_unchecked(&xs[i], &xs[j]);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    k
}

/// Cholesky of `K + (σ_n² + jitter) I`, escalating the jitter on failure.
fn factorize(xs: &[Vec<f64>], kernel: &Kernel, noise: f64) -> Result<(Cholesky<f64, Dyn>, f64)> {
    let mut jitter = 0.0;
    let base = kernel.signal_variance.max(1e-12);
    for attempt in 0..8 {
        if let Some(c) = Cholesky::new(gram(xs, kernel, noise + jitter)) {
            return Ok((c, jitter));
        }
        jitter = base * 10f64.powi(attempt - 10);
    }
    Err(Error::numerical(format!(
        "Gram matrix not positive definite after nugget escalation \
         (n = {}, signal variance = {:.3e}, noise = {:.3e}, last jitter = {:.3e}, length scales = {:?})",
        xs.len(),
        kernel.signal_variance,
        noise,
        jitter,
        kernel.length_scales
    )))
}

fn log_likelihood(chol: &Cholesky<f64, Dyn>, z: &DVector<f64>) -> (f64, DVector<f64>) {
    let alpha = chol.solve(z);
    let log_det_half: f64 = chol.l_dirty().diagonal().iter().map(|v| v.ln()).sum();
    let n = z.len() as f64;
    (-0.5 * z.dot(&alpha) - log_det_half - 0.5 * n * LN_2PI, alpha)
}

fn lml_at(p: &Prepared, hyper: &Hyperparams) -> f64 {
    let kernel = Kernel {
        signal_variance: hyper.signal_variance,
        length_scales: hyper.length_scales.clone(),
    };
    match Cholesky::new(gram(&p.x_scaled, &kernel, hyper.noise_variance)) {
        Some(c) => log_likelihood(&c, &p.z).0,
        None => f64::NEG_INFINITY,
    }
}

impl GpModel {
    /// Builds a model with fixed hyperparameters (no likelihood search).
    pub fn with_hyperparams(
        x: Vec<Vec<f64>>,
        y: Vec<f64>,
        conditioning: Option<ConditioningFn>,
        hyper: &Hyperparams,
        input_box: Option<&[(f64, f64)]>,
    ) -> Result<GpModel> {
        let p = prepare(&x, &y, conditioning.as_ref(), input_box)?;
        if hyper.length_scales.len() != x[0].len() {
            return Err(Error::domain("one length scale per input dimension required"));
        }
        Self::assemble(x, y, conditioning, p, hyper)
    }

    fn assemble(
        x: Vec<Vec<f64>>,
        y: Vec<f64>,
        conditioning: Option<ConditioningFn>,
        p: Prepared,
        hyper: &Hyperparams,
    ) -> Result<GpModel> {
        let kernel = Kernel::new(hyper.signal_variance, hyper.length_scales.clone())?;
        if hyper.noise_variance.is_nan() || hyper.noise_variance < 0.0 {
            return Err(Error::domain("noise variance must be >= 0"));
        }
        let (chol, jitter) = factorize(&p.x_scaled, &kernel, hyper.noise_variance)?;
        let (lml, alpha) = log_likelihood(&chol, &p.z);
        Ok(GpModel {
            x,
            y,
            conditioning,
            offset: p.offset,
            span: p.span,
            x_scaled: p.x_scaled,
            y_mean: p.y_mean,
            y_scale: p.y_scale,
            kernel,
            noise_variance: hyper.noise_variance,
            jitter,
            chol,
            alpha,
            log_marginal_likelihood: lml,
        })
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn outputs(&self) -> &[f64] {
        &self.y
    }

    pub fn conditioning(&self) -> Option<&ConditioningFn> {
        self.conditioning.as_ref()
    }

    /// Kernel on scaled inputs and standardized outputs.
    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn hyperparams(&self) -> Hyperparams {
        Hyperparams {
            length_scales: self.kernel.length_scales.clone(),
            signal_variance: self.kernel.signal_variance,
            noise_variance: self.noise_variance,
        }
    }

    /// Extra diagonal added during factorization (0 unless escalation kicked in).
    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Log marginal likelihood of the standardized residuals.
    pub fn log_marginal_likelihood(&self) -> f64 {
        self.log_marginal_likelihood
    }

    /// Log marginal likelihood of this model's data under other hyperparameters.
    pub fn log_marginal_likelihood_at(&self, hyper: &Hyperparams) -> Result<f64> {
        let p = prepare(&self.x, &self.y, self.conditioning.as_ref(), Some(&self.input_box()))?;
        Ok(lml_at(&p, hyper))
    }

    pub fn input_box(&self) -> Vec<(f64, f64)> {
        self.offset.iter().zip(&self.span).map(|(o, s)| (*o, o + s)).collect()
    }

    /// Constant part of the prior mean, in output units.
    pub fn constant_mean(&self) -> f64 {
        self.y_mean
    }

    /// Conditioned prior mean `m_c(x) = m + κ(x)`.
    pub fn prior_mean(&self, x: &[f64]) -> f64 {
        self.y_mean + self.conditioning.as_ref().map_or(0.0, |k| k.value(x))
    }

    /// Prior variance of the latent function, in output units².
    pub fn prior_variance(&self) -> f64 {
        self.kernel.signal_variance * self.y_scale * self.y_scale
    }

    fn scale(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.offset)
            .zip(&self.span)
            .map(|((v, o), s)| (v - o) / s)
            .collect()
    }

    /// Posterior mean and variance of the latent function at `x`.
    ///
    /// Panics if `x` has the wrong dimension.
    pub fn posterior(&self, x: &[f64]) -> (f64, f64) {
        assert_eq!(x.len(), self.dim(), "query dimension");
        let xs = self.scale(x);
        let k_star = DVector::from_iterator(
            self.x_scaled.len(),
            self.x_scaled.iter().map(|xi| self.kernel.eval_unchecked(&xs, xi)),
        );
        let mean_z = k_star.dot(&self.alpha);
        let v = self
            .chol
            .l_dirty()
            .solve_lower_triangular(&k_star)
            .expect("Cholesky factor has a positive diagonal");
        let var_z = (self.kernel.signal_variance - v.norm_squared()).max(0.0);
        (
            self.prior_mean(x) + self.y_scale * mean_z,
            self.y_scale * self.y_scale * var_z,
        )
    }

    /// Surrogate of the combined objective: the conditioned posterior mean.
    pub fn combined_objective(&self, x: &[f64]) -> f64 {
        self.posterior(x).0
    }
}

/// Fits a GP by maximizing the log marginal likelihood over the kernel
/// hyperparameters with multi-start Nelder–Mead in log space.
pub fn gp_fit(
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
    conditioning: Option<ConditioningFn>,
    opts: &FitOptions,
) -> Result<GpModel> {
    let p = prepare(&x, &y, conditioning.as_ref(), opts.input_box.as_deref())?;
    let d = x[0].len();
    let b = opts.bounds;
    let mut lo: Vec<f64> = vec![b.length_scale.0.ln(); d];
    let mut hi: Vec<f64> = vec![b.length_scale.1.ln(); d];
    lo.extend([b.signal_variance.0.ln(), b.noise_variance.0.ln()]);
    hi.extend([b.signal_variance.1.ln(), b.noise_variance.1.ln()]);

    let default_start = opts
        .warm_start
        .clone()
        .filter(|h| h.length_scales.len() == d)
        .unwrap_or(Hyperparams {
            length_scales: vec![0.3; d],
            signal_variance: 1.0,
            noise_variance: 1e-6,
        });
    let mut rng = RngStream::new(opts.seed, 0x6770_6669);
    let mut starts = vec![default_start.to_log()];
    for _ in 1..opts.restarts.max(1) {
        starts.push(lo.iter().zip(&hi).map(|(l, h)| l + (h - l) * rng.uniform()).collect());
    }
    let nm = NelderMead {
        max_evals: opts.max_evals,
        f_tol: 1e-9,
        initial_step: 0.1,
    };
    let results = par::map_slice(&starts, |s| {
        nm.minimize(|t| -lml_at(&p, &Hyperparams::from_log(t)), s, &lo, &hi)
    });
    let (best_theta, best_neg) =
        results
            .into_iter()
            .fold((Vec::new(), f64::INFINITY), |acc, r| if r.1 < acc.1 { r } else { acc });
    if !best_neg.is_finite() {
        // every start failed to factorize; fall back to the default start so
        // that nugget escalation can report a diagnosable error
        return GpModel::assemble(x, y, conditioning, p, &default_start);
    }
    GpModel::assemble(x, y, conditioning, p, &Hyperparams::from_log(&best_theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixed(d: usize) -> Hyperparams {
        Hyperparams {
            length_scales: vec![0.3; d],
            signal_variance: 1.0,
            noise_variance: 1e-8,
        }
    }

    #[test]
    fn constant_data() {
        let x: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64]).collect();
        let y = vec![4.2; 6];
        let m = gp_fit(x, y, None, &FitOptions::default()).unwrap();
        for q in [-3.0, 0.5, 2.7, 9.0] {
            assert!((m.posterior(&[q]).0 - 4.2).abs() < 1e-6);
        }
        assert!(m.kernel().signal_variance < 1e-3, "{}", m.kernel().signal_variance);
    }

    #[test]
    fn interpolates_smooth_function() {
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64 / 19.0 * 6.0]).collect();
        let y: Vec<f64> = x.iter().map(|p| p[0].sin() + 0.1 * p[0]).collect();
        let m = gp_fit(x.clone(), y.clone(), None, &FitOptions::default()).unwrap();
        for (p, v) in x.iter().zip(&y) {
            assert!((m.posterior(p).0 - v).abs() < 1e-6, "{} vs {}", m.posterior(p).0, v);
        }
    }

    #[test]
    fn fitted_likelihood_beats_random_draws() {
        let x: Vec<Vec<f64>> = (0..15).map(|i| vec![i as f64 * 0.4, (i * 7 % 5) as f64]).collect();
        let y: Vec<f64> = x.iter().map(|p| (p[0] * 0.7).cos() * p[1]).collect();
        let m = gp_fit(x, y, None, &FitOptions::default()).unwrap();
        let mut rng = RngStream::new(77, 0);
        let b = HyperBounds::default();
        let draw = |rng: &mut RngStream, (lo, hi): (f64, f64)| (lo.ln() + (hi.ln() - lo.ln()) * rng.uniform()).exp();
        for _ in 0..10 {
            let h = Hyperparams {
                length_scales: vec![draw(&mut rng, b.length_scale), draw(&mut rng, b.length_scale)],
                signal_variance: draw(&mut rng, b.signal_variance),
                noise_variance: draw(&mut rng, b.noise_variance),
            };
            assert!(m.log_marginal_likelihood() >= m.log_marginal_likelihood_at(&h).unwrap());
        }
    }

    #[test]
    fn prior_recovered_far_from_data() {
        let x = vec![vec![0.0], vec![0.5], vec![1.0]];
        let y = vec![1.0, 3.0, 2.0];
        let m = GpModel::with_hyperparams(x, y, None, &fixed(1), None).unwrap();
        let (mean, var) = m.posterior(&[100.0]);
        assert!((mean - m.constant_mean()).abs() < 1e-12);
        assert!((var - m.prior_variance()).abs() < 1e-12);
    }

    #[test]
    fn training_points_are_reproduced() {
        let x = vec![vec![0.0], vec![0.3], vec![0.6], vec![1.0]];
        let y = vec![0.5, -1.0, 2.0, 0.0];
        let m = GpModel::with_hyperparams(x.clone(), y.clone(), None, &fixed(1), None).unwrap();
        for (p, v) in x.iter().zip(&y) {
            let (mean, var) = m.posterior(p);
            assert!((mean - v).abs() < 1e-5);
            assert!(var < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(gp_fit(vec![vec![0.0]], vec![1.0], None, &FitOptions::default()).is_err());
        assert!(gp_fit(vec![vec![0.0], vec![1.0]], vec![1.0], None, &FitOptions::default()).is_err());
        assert!(gp_fit(
            vec![vec![0.0], vec![1.0, 2.0]],
            vec![1.0, 2.0],
            None,
            &FitOptions::default()
        )
        .is_err());
    }

    #[test]
    fn duplicate_inputs_need_noise() {
        let x = vec![vec![0.5], vec![0.5], vec![1.0]];
        let y = vec![1.0, 2.0, 0.0];
        let zero_noise = Hyperparams {
            length_scales: vec![0.3],
            signal_variance: 1.0,
            noise_variance: 0.0,
        };
        // exact duplicates are rescued by the nugget escalation
        let m = GpModel::with_hyperparams(x, y, None, &zero_noise, None).unwrap();
        assert!(m.jitter() > 0.0);
    }
}
