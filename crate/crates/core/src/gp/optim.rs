//! Box-constrained Nelder–Mead, used for hyperparameter search and
//! acquisition refinement. Points are clamped into the box before every
//! evaluation, so the objective is never called outside it.

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub max_evals: usize,
    /// Stop once the simplex's objective spread falls below this.
    pub f_tol: f64,
    /// Initial simplex edge as a fraction of each box side.
    pub initial_step: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_evals: 400,
            f_tol: 1e-10,
            initial_step: 0.1,
        }
    }
}

fn clamp_into(x: &mut [f64], lo: &[f64], hi: &[f64]) {
    for ((v, l), h) in x.iter_mut().zip(lo).zip(hi) {
        *v = v.clamp(*l, *h);
    }
}

impl NelderMead {
    /// Minimizes `f` from `x0` within `[lo, hi]`. Returns the best point and
    /// value. Non-finite objective values are treated as +∞.
    pub fn minimize(&self, mut f: impl FnMut(&[f64]) -> f64, x0: &[f64], lo: &[f64], hi: &[f64]) -> (Vec<f64>, f64) {
        let n = x0.len();
        let mut eval = |x: &[f64]| {
            let v = f(x);
            if v.is_finite() {
                v
            } else {
                f64::INFINITY
            }
        };
        let mut start = x0.to_vec();
        clamp_into(&mut start, lo, hi);
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        let f0 = eval(&start);
        simplex.push((start.clone(), f0));
        for i in 0..n {
            let mut p = start.clone();
            let step = self.initial_step * (hi[i] - lo[i]);
            // step away from whichever face is closer
            p[i] = if p[i] + step <= hi[i] { p[i] + step } else { p[i] - step };
            clamp_into(&mut p, lo, hi);
            let fp = eval(&p);
            simplex.push((p, fp));
        }
        let mut evals = n + 1;

        while evals < self.max_evals {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].1;
            let worst = simplex[n].1;
            if (worst - best).abs() <= self.f_tol * (1.0 + best.abs()) {
                break;
            }
            let mut centroid = vec![0.0; n];
            for (p, _) in &simplex[..n] {
                for (c, v) in centroid.iter_mut().zip(p) {
                    *c += v / n as f64;
                }
            }
            let along = |t: f64| {
                let mut p: Vec<f64> = centroid
                    .iter()
                    .zip(&simplex[n].0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect();
                clamp_into(&mut p, lo, hi);
                p
            };
            let xr = along(1.0);
            let fr = eval(&xr);
            evals += 1;
            if fr < simplex[0].1 {
                let xe = along(2.0);
                let fe = eval(&xe);
                evals += 1;
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
            } else {
                let (xc, fc) = if fr < worst {
                    let xc = along(0.5);
                    let fc = eval(&xc);
                    (xc, fc)
                } else {
                    let xc = along(-0.5);
                    let fc = eval(&xc);
                    (xc, fc)
                };
                evals += 1;
                if fc < worst.min(fr) {
                    simplex[n] = (xc, fc);
                } else {
                    let x_best = simplex[0].0.clone();
                    for (p, fp) in simplex.iter_mut().skip(1) {
                        for (v, b) in p.iter_mut().zip(&x_best) {
                            *v = b + 0.5 * (*v - b);
                        }
                        *fp = eval(p);
                    }
                    evals += n;
                }
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        simplex.swap_remove(0)
    }
}
