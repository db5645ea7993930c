use std::cmp::Ordering;

use serde::Serialize;

use super::acquisition::{Acquisition, Direction};
use super::conditioning::ConditioningFn;
use super::design::latin_hypercube;
use super::model::{gp_fit, FitOptions, GpModel, Hyperparams};
use super::optim::NelderMead;
use crate::error::{Error, Result};
use crate::par;
use crate::stochastic::derive_seed;

#[derive(Debug, Clone, PartialEq)]
pub struct BoConfig {
    pub bounds: Vec<(f64, f64)>,
    /// Total objective evaluations, initial design included.
    pub budget: usize,
    pub initial_design: usize,
    pub acquisition: Acquisition,
    pub direction: Direction,
    /// Drives the initial design, candidate sets and hyperparameter restarts.
    pub seed: u64,
    /// Seed the caller's objective uses for common random numbers.
    pub objective_seed: u64,
    pub candidates: usize,
    /// Best raw candidates refined by local search.
    pub refine_top: usize,
    pub fit_restarts: usize,
}

impl BoConfig {
    /// Defaults: EI, maximize, 512 candidates, top 5 refined, and an initial
    /// design of `4d + 2` points capped by the budget.
    pub fn new(bounds: Vec<(f64, f64)>, budget: usize) -> Self {
        let d = bounds.len();
        BoConfig {
            initial_design: (4 * d + 2).min(budget).max(2),
            bounds,
            budget,
            acquisition: Acquisition::ExpectedImprovement,
            direction: Direction::Maximize,
            seed: 0,
            objective_seed: 0,
            candidates: 512,
            refine_top: 5,
            fit_restarts: 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bounds.is_empty() {
            return Err(Error::config("bounds must have at least one dimension"));
        }
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::config(format!("bounds[{i}] = [{lo}, {hi}] needs lo < hi")));
            }
        }
        if self.initial_design < 2 {
            return Err(Error::config("initial design needs at least 2 points"));
        }
        if self.budget < self.initial_design {
            return Err(Error::config(format!(
                "budget {} is smaller than the initial design {}",
                self.budget, self.initial_design
            )));
        }
        if self.candidates == 0 {
            return Err(Error::config("candidate set must be non-empty"));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    /// 0-based evaluation index.
    pub iteration: usize,
    pub x: Vec<f64>,
    pub y: f64,
    /// Best value seen up to and including this evaluation.
    pub incumbent: f64,
}

#[derive(Debug, Clone)]
pub struct BoOutcome {
    pub best_x: Vec<f64>,
    pub best_y: f64,
    pub history: Vec<Observation>,
    /// Hyperparameters of the last fitted surrogate, if any was fitted.
    pub hyperparams: Option<Hyperparams>,
}

/// A run that stopped early; `history` holds every completed evaluation.
#[derive(Debug, thiserror::Error)]
#[error("{error} (after {} evaluations)", history.len())]
pub struct BoAbort {
    pub error: Error,
    pub history: Vec<Observation>,
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Index of the highest score; scores within 1e-12 of the max are broken by
/// the lexicographically lowest point.
fn argmax_tiebreak(points: &[Vec<f64>], scores: &[f64]) -> usize {
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut best: Option<usize> = None;
    for (i, s) in scores.iter().enumerate() {
        if *s >= max - 1e-12 && best.is_none_or(|b| lex_cmp(&points[i], &points[b]) == Ordering::Less) {
            best = Some(i);
        }
    }
    best.unwrap_or(0)
}

fn incumbent(model: &GpModel, direction: Direction) -> (usize, f64) {
    model
        .outputs()
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NAN), |(bi, bv), (i, v)| {
            if bv.is_nan() || direction.better(v, bv) {
                (i, v)
            } else {
                (bi, bv)
            }
        })
}

fn near_existing(model: &GpModel, bounds: &[(f64, f64)], x: &[f64]) -> bool {
    model.inputs().iter().any(|p| {
        p.iter()
            .zip(x)
            .zip(bounds)
            .all(|((a, b), (lo, hi))| ((a - b) / (hi - lo)).abs() < 1e-7)
    })
}

/// Next point to evaluate: the acquisition maximizer over a Latin-hypercube
/// candidate set plus the incumbent, with the best few refined by
/// Nelder–Mead. Falls back to the best posterior mean when the acquisition
/// vanishes everywhere.
pub fn propose_next(model: &GpModel, cfg: &BoConfig) -> Vec<f64> {
    let (best_i, f_best) = incumbent(model, cfg.direction);
    let lo: Vec<f64> = cfg.bounds.iter().map(|b| b.0).collect();
    let hi: Vec<f64> = cfg.bounds.iter().map(|b| b.1).collect();

    let mut points = latin_hypercube(cfg.candidates, &cfg.bounds, derive_seed(cfg.seed, model.len() as u64));
    points.push(model.inputs()[best_i].clone());
    let acq = |x: &[f64]| cfg.acquisition.evaluate(model, x, f_best, cfg.direction);
    let mut scores = par::map_slice(&points, |x| acq(x));

    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .total_cmp(&scores[a])
            .then_with(|| lex_cmp(&points[a], &points[b]))
    });
    let starts: Vec<Vec<f64>> = order.iter().take(cfg.refine_top).map(|&i| points[i].clone()).collect();
    let nm = NelderMead {
        max_evals: 60 + 30 * cfg.dim(),
        f_tol: 1e-12,
        initial_step: 0.05,
    };
    let refined = par::map_slice(&starts, |s| nm.minimize(|x| -acq(x), s, &lo, &hi));
    for (x, neg) in refined {
        points.push(x);
        scores.push(-neg);
    }

    // Avoid re-proposing an evaluated point; that adds no information.
    let admissible: Vec<f64> = points
        .iter()
        .zip(&scores)
        .map(|(p, &s)| {
            if near_existing(model, &cfg.bounds, p) {
                f64::NEG_INFINITY
            } else {
                s
            }
        })
        .collect();
    let i = argmax_tiebreak(&points, &admissible);
    if admissible[i] > 0.0 {
        return points.swap_remove(i);
    }
    let means: Vec<f64> = points
        .iter()
        .map(|p| {
            let m = model.posterior(p).0;
            match cfg.direction {
                Direction::Maximize => m,
                Direction::Minimize => -m,
            }
        })
        .collect();
    let i = argmax_tiebreak(&points, &means);
    points.swap_remove(i)
}

/// Bayesian optimization of `objective` over `cfg.bounds`.
///
/// The objective must be a deterministic function of `x` (fix its CRN seed
/// from `cfg.objective_seed`). Initial-design evaluations run in parallel.
pub fn bo_run<F>(objective: F, cfg: &BoConfig, conditioning: Option<&ConditioningFn>) -> Result<BoOutcome, BoAbort>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let abort = |error: Error, history: Vec<Observation>| BoAbort { error, history };
    cfg.validate().map_err(|e| abort(e, Vec::new()))?;
    if let Some(k) = conditioning {
        if k.dim().is_some_and(|d| d != cfg.dim()) {
            return Err(abort(
                Error::config("conditioning dimension differs from bounds"),
                Vec::new(),
            ));
        }
    }
    let eval = |x: &[f64]| -> Result<f64> {
        let y = objective(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::numerical(format!("objective returned {y} at {x:?}")))
        }
    };

    let mut history: Vec<Observation> = Vec::with_capacity(cfg.budget);
    let record = |history: &mut Vec<Observation>, x: Vec<f64>, y: f64| {
        let incumbent = match history.last() {
            Some(o) if !cfg.direction.better(y, o.incumbent) => o.incumbent,
            _ => y,
        };
        history.push(Observation {
            iteration: history.len(),
            x,
            y,
            incumbent,
        });
    };

    let design = latin_hypercube(cfg.initial_design, &cfg.bounds, cfg.seed);
    let values = par::map_slice(&design, |x| eval(x));
    for (x, y) in design.into_iter().zip(values) {
        match y {
            Ok(y) => record(&mut history, x, y),
            Err(e) => return Err(abort(e, history)),
        }
    }

    let mut hyper: Option<Hyperparams> = None;
    while history.len() < cfg.budget {
        let opts = FitOptions {
            restarts: cfg.fit_restarts,
            seed: derive_seed(cfg.seed ^ 0x5eed, history.len() as u64),
            input_box: Some(cfg.bounds.clone()),
            warm_start: hyper.clone(),
            ..FitOptions::default()
        };
        let xs = history.iter().map(|o| o.x.clone()).collect();
        let ys = history.iter().map(|o| o.y).collect();
        let model = match gp_fit(xs, ys, conditioning.cloned(), &opts) {
            Ok(m) => m,
            Err(e) => return Err(abort(e, history)),
        };
        hyper = Some(model.hyperparams());
        let x = propose_next(&model, cfg);
        match eval(&x) {
            Ok(y) => record(&mut history, x, y),
            Err(e) => return Err(abort(e, history)),
        }
    }

    let best = history
        .iter()
        .fold(None::<&Observation>, |b, o| match b {
            Some(b) if !cfg.direction.better(o.y, b.y) => Some(b),
            _ => Some(o),
        })
        .expect("history is non-empty");
    Ok(BoOutcome {
        best_x: best.x.clone(),
        best_y: best.y,
        history,
        hyperparams: hyper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowl(x: &[f64]) -> Result<f64> {
        Ok(-(x[0] - 0.3).powi(2) - 2.0 * (x[1] + 0.4).powi(2))
    }

    #[test]
    fn config_checks() {
        let mut c = BoConfig::new(vec![(0.0, 1.0)], 10);
        assert!(c.validate().is_ok());
        assert_eq!(c.initial_design, 6);
        c.budget = 3;
        assert!(c.validate().is_err());
        assert!(BoConfig::new(vec![(1.0, 1.0)], 10).validate().is_err());
        assert_eq!(BoConfig::new(vec![(0.0, 1.0); 4], 80).initial_design, 18);
    }

    #[test]
    fn budget_equal_to_design() {
        let mut cfg = BoConfig::new(vec![(-1.0, 1.0), (-1.0, 1.0)], 7);
        cfg.initial_design = 7;
        let out = bo_run(bowl, &cfg, None).unwrap();
        assert_eq!(out.history.len(), 7);
        let best = out.history.iter().map(|o| o.y).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(out.best_y, best);
        assert!(out.hyperparams.is_none());
    }

    #[test]
    fn finds_bowl_optimum_and_is_deterministic() {
        let mut cfg = BoConfig::new(vec![(-1.0, 1.0), (-1.0, 1.0)], 25);
        cfg.seed = 9;
        let a = bo_run(bowl, &cfg, None).unwrap();
        assert!(a.best_y > -1e-3, "{:?} {}", a.best_x, a.best_y);
        let b = bo_run(bowl, &cfg, None).unwrap();
        assert_eq!(a.history, b.history);
        for w in a.history.windows(2) {
            assert!(w[1].incumbent >= w[0].incumbent);
        }
    }

    #[test]
    fn minimize_direction() {
        let mut cfg = BoConfig::new(vec![(-1.0, 1.0)], 15);
        cfg.direction = Direction::Minimize;
        let out = bo_run(|x: &[f64]| Ok((x[0] - 0.5).powi(2)), &cfg, None).unwrap();
        assert!(out.best_y < 1e-4, "{}", out.best_y);
    }

    #[test]
    fn failure_keeps_partial_history() {
        let mut cfg = BoConfig::new(vec![(0.0, 1.0)], 12);
        cfg.initial_design = 4;
        let calls = std::sync::atomic::AtomicUsize::new(0);
        let err = bo_run(
            |x: &[f64]| {
                if calls.fetch_add(1, std::sync::atomic::Ordering::SeqCst) >= 6 {
                    Err(Error::config("boom"))
                } else {
                    Ok(x[0])
                }
            },
            &cfg,
            None,
        )
        .unwrap_err();
        assert_eq!(err.history.len(), 6);
    }

    #[test]
    fn proposals_in_bounds() {
        let bounds = vec![(2.0, 3.0), (-5.0, -4.0)];
        let x: Vec<Vec<f64>> = latin_hypercube(6, &bounds, 1);
        let y: Vec<f64> = x.iter().map(|p| p[0] + p[1]).collect();
        let model = gp_fit(x, y, None, &FitOptions::default()).unwrap();
        let cfg = BoConfig::new(bounds.clone(), 20);
        let p = propose_next(&model, &cfg);
        for (v, (lo, hi)) in p.iter().zip(&bounds) {
            assert!(v >= lo && v <= hi);
        }
    }
}
