//! Independent numerical oracles shared by the GP tests and the acceptance run.
#![allow(dead_code)]

use invsim::gp::{latin_hypercube, GpModel, Hyperparams};
use invsim::RngStream;
use nalgebra::{DMatrix, DVector};

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, p);
        b.swap(c, p);
        let pivot = a[c].clone();
        for r in c + 1..n {
            let f = a[r][c] / pivot[c];
            for (v, p) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *v -= f * p;
            }
            b[r] -= f * b[c];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|k| a[r][k] * x[k]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

pub struct Instance {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub hyper: Hyperparams,
    pub bounds: Vec<(f64, f64)>,
}

pub fn instance(seed: u64) -> Instance {
    let mut rng = RngStream::new(seed, 0);
    let d = 1 + (seed % 2) as usize;
    let n = 5 + (rng.next_u64() % 11) as usize;
    let bounds: Vec<(f64, f64)> = (0..d)
        .map(|_| (-2.0 - 3.0 * rng.uniform(), 1.0 + 4.0 * rng.uniform()))
        .collect();
    let x: Vec<Vec<f64>> = (0..n)
        .map(|_| bounds.iter().map(|(lo, hi)| lo + (hi - lo) * rng.uniform()).collect())
        .collect();
    let y = x
        .iter()
        .map(|p| p.iter().map(|v| (1.3 * v).sin()).sum::<f64>() * 40.0 + 100.0 + rng.standard_normal())
        .collect();
    let hyper = Hyperparams {
        length_scales: (0..d).map(|_| 0.15 + 0.8 * rng.uniform()).collect(),
        signal_variance: 0.5 + 1.5 * rng.uniform(),
        noise_variance: 1e-4 + 1e-2 * rng.uniform(),
    };
    Instance { x, y, hyper, bounds }
}

/// Posterior mean and variance computed directly in output units from the
/// textbook formulas `m + k*ᵀ(K + σ²I)⁻¹(y − m)` and `k** − k*ᵀ(K + σ²I)⁻¹k*`.
pub fn oracle_posterior(model: &GpModel, q: &[f64]) -> (f64, f64) {
    let h = model.hyperparams();
    let y_var = model.prior_variance() / h.signal_variance;
    let spans: Vec<f64> = model.input_box().iter().map(|(lo, hi)| hi - lo).collect();
    let k = |a: &[f64], b: &[f64]| {
        let r2: f64 = a
            .iter()
            .zip(b)
            .zip(spans.iter().zip(&h.length_scales))
            .map(|((u, v), (s, l))| ((u - v) / (s * l)).powi(2))
            .sum();
        model.prior_variance() * (-0.5 * r2).exp()
    };
    let xs = model.inputs();
    let noise = y_var * (h.noise_variance + model.jitter());
    let gram: Vec<Vec<f64>> = xs
        .iter()
        .enumerate()
        .map(|(i, a)| {
            xs.iter()
                .enumerate()
                .map(|(j, b)| k(a, b) + if i == j { noise } else { 0.0 })
                .collect()
        })
        .collect();
    let resid: Vec<f64> = xs
        .iter()
        .zip(model.outputs())
        .map(|(p, v)| v - model.prior_mean(p))
        .collect();
    let k_star: Vec<f64> = xs.iter().map(|p| k(q, p)).collect();
    let w = dense_solve(gram.clone(), resid);
    let v = dense_solve(gram, k_star.clone());
    let mean = model.prior_mean(q) + k_star.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
    let var = model.prior_variance() - k_star.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>();
    (mean, var)
}

pub fn query_points(bounds: &[(f64, f64)], seed: u64) -> Vec<Vec<f64>> {
    let wide: Vec<(f64, f64)> = bounds.iter().map(|(lo, hi)| (lo - 1.0, hi + 1.0)).collect();
    latin_hypercube(50, &wide, seed)
}

pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Composite Simpson rule on `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

pub fn reference_gaussian() -> (DVector<f64>, DMatrix<f64>) {
    (
        DVector::from_vec(vec![1.0, 2.0]),
        DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 1.0]),
    )
}

/// Conditional mean and variance of the free coordinate, by normalizing the
/// joint density along the observed slice of a 200×200 grid.
pub fn grid_conditional(observed: usize, value: f64) -> (f64, f64) {
    let (mu, cov) = reference_gaussian();
    let inv = cov.clone().try_inverse().unwrap();
    let free = 1 - observed;
    let n = 200;
    let axis = |k: usize, centre: f64| -> Vec<f64> {
        let h = 12.0 * cov[(k, k)].sqrt() / n as f64;
        (0..n).map(|i| centre + (i as f64 - (n / 2) as f64) * h).collect()
    };
    let free_axis = axis(free, mu[free]);
    let obs_axis = axis(observed, value);
    let row = obs_axis.iter().position(|v| (*v - value).abs() < 1e-12).unwrap();
    let mut weights = Vec::with_capacity(n);
    for &f in &free_axis {
        let mut p = DVector::zeros(2);
        p[free] = f;
        p[observed] = obs_axis[row];
        let r = &p - &mu;
        weights.push((-0.5 * (r.transpose() * &inv * &r)[(0, 0)]).exp());
    }
    let total: f64 = weights.iter().sum();
    let mean = free_axis.iter().zip(&weights).map(|(f, w)| f * w).sum::<f64>() / total;
    let var = free_axis
        .iter()
        .zip(&weights)
        .map(|(f, w)| (f - mean).powi(2) * w)
        .sum::<f64>()
        / total;
    (mean, var)
}

/// `E[max(f − f_best, 0)]` (or the mirrored loss when minimizing) for
/// `f ~ N(mean, std²)`, by Simpson quadrature over ±14σ.
pub fn ei_quadrature(mean: f64, std: f64, f_best: f64, maximize: bool) -> f64 {
    let density = |f: f64| normal_pdf((f - mean) / std) / std;
    if maximize {
        let hi = mean.max(f_best) + 14.0 * std;
        simpson(|f| (f - f_best) * density(f), f_best, hi, 20_000)
    } else {
        let lo = mean.min(f_best) - 14.0 * std;
        simpson(|f| (f_best - f) * density(f), lo, f_best, 20_000)
    }
}

/// The 100 (mean, std) pairs used for the EI comparison, with `f_best = 1`.
pub fn ei_grid() -> Vec<(f64, f64)> {
    (0..100)
        .map(|i| (-4.0 + 8.0 * i as f64 / 99.0, 0.2 + 2.8 * ((i * 37) % 100) as f64 / 99.0))
        .collect()
}
