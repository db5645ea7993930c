//! Policy tuning: analytic starting points, OUP sweeps and BO over (r, Q).

use std::collections::HashMap;

use crate::catalog::{Catalog, ProductSpec};
use crate::eoq;
use crate::error::{Error, Result};
use crate::gp::{bo_run, BoConfig};
use crate::sim::{replicate, PolicyParams, ReplicationStats, SimConfig, MONTH_DAYS};
use crate::stochastic::{derive_seed, DemandModel};

/// Periodic policy covering mean demand over `L + P` plus `z` standard
/// deviations of that demand.
pub fn analytic_periodic(spec: &ProductSpec, demand: &DemandModel, review_period: u32, z: f64) -> Result<PolicyParams> {
    let t = (spec.lead_time() + review_period) as f64;
    let oup = demand.daily_mean() * t + z * demand.daily_std() * t.sqrt();
    PolicyParams::periodic(review_period, (oup.ceil() as u64).max(1))
}

/// Continuous policy with `r` at mean lead-time demand plus `z` deviations
/// and `Q` at the EOQ.
pub fn analytic_continuous(spec: &ProductSpec, demand: &DemandModel, z: f64) -> Result<PolicyParams> {
    let l = spec.lead_time() as f64;
    let r = demand.daily_mean() * l + z * demand.daily_std() * l.sqrt();
    let q = eoq::eoq(spec.annual_demand(), spec.order_cost(), spec.holding_cost())?;
    PolicyParams::continuous((r.ceil() as u64).max(1), (q.round() as u64).max(1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TunedPolicy {
    pub product: String,
    pub policy: PolicyParams,
    pub stats: ReplicationStats,
}

#[derive(Debug, Clone)]
pub struct TuneOptions {
    pub review_period: u32,
    pub z: f64,
    /// OUP values per sweep pass; two passes are made (coarse, then fine).
    pub sweep_points: usize,
    /// BO evaluations per product for (r, Q).
    pub bo_budget: usize,
    pub seed: u64,
    /// Replications used while searching; the winner is re-run at the full
    /// configured count. `None` searches at the full count.
    pub search_replications: Option<u32>,
}

impl Default for TuneOptions {
    fn default() -> Self {
        TuneOptions {
            review_period: MONTH_DAYS,
            z: 1.6449,
            sweep_points: 41,
            bo_budget: 40,
            seed: 0,
            search_replications: Some(500),
        }
    }
}

impl TuneOptions {
    fn search_cfg(&self, cfg: &SimConfig) -> SimConfig {
        SimConfig {
            replications: self
                .search_replications
                .map_or(cfg.replications, |n| n.min(cfg.replications)),
            ..*cfg
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<u64> {
    let n = n.max(2);
    let mut v: Vec<u64> = (0..n)
        .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).round().max(1.0) as u64)
        .collect();
    v.dedup();
    v
}

/// Best OUP for a periodic policy: a coarse sweep over `[0.05, 2.5]` times
/// mean demand over `L + P`, then a fine sweep around the coarse winner.
/// All points share `cfg`'s seed.
pub fn tune_periodic(
    spec: &ProductSpec,
    demand: &DemandModel,
    cfg: &SimConfig,
    opts: &TuneOptions,
) -> Result<TunedPolicy> {
    let search = opts.search_cfg(cfg);
    let profit = |oup: u64| -> Result<f64> {
        Ok(replicate(spec, demand, &PolicyParams::periodic(opts.review_period, oup)?, &search)?.mean_profit)
    };
    let argmax = |grid: &[u64]| -> Result<u64> {
        let mut best = (grid[0], f64::NEG_INFINITY);
        for &oup in grid {
            let v = profit(oup)?;
            if v > best.1 {
                best = (oup, v);
            }
        }
        Ok(best.0)
    };
    let t = (demand.daily_mean() * (spec.lead_time() + opts.review_period) as f64).max(1.0);
    let (lo, hi) = (0.05 * t, 2.5 * t);
    let coarse = argmax(&linspace(lo, hi, opts.sweep_points))? as f64;
    let step = (hi - lo) / (opts.sweep_points.max(2) - 1) as f64;
    let fine = argmax(&linspace((coarse - step).max(1.0), coarse + step, opts.sweep_points))?;
    let policy = PolicyParams::periodic(opts.review_period, fine)?;
    Ok(TunedPolicy {
        product: spec.name().to_string(),
        policy,
        stats: replicate(spec, demand, &policy, cfg)?,
    })
}

/// Best (r, Q) by Bayesian optimization, never worse than the analytic
/// policy under the search configuration.
pub fn tune_continuous(
    spec: &ProductSpec,
    demand: &DemandModel,
    cfg: &SimConfig,
    opts: &TuneOptions,
) -> Result<TunedPolicy> {
    let search = opts.search_cfg(cfg);
    let mu = demand.daily_mean().max(1e-9);
    let bounds = vec![
        (1.0, (3.0 * mu * spec.lead_time() as f64).max(10.0)),
        (1.0, (180.0 * mu).max(10.0)),
    ];
    let to_policy = |x: &[f64]| PolicyParams::continuous((x[0].round() as u64).max(1), (x[1].round() as u64).max(1));
    let mut bo = BoConfig::new(bounds, opts.bo_budget.max(2));
    bo.seed = derive_seed(opts.seed, search.seed);
    bo.objective_seed = search.seed;
    let objective = |x: &[f64]| -> Result<f64> { Ok(replicate(spec, demand, &to_policy(x)?, &search)?.mean_profit) };
    let out = bo_run(objective, &bo, None).map_err(|a| a.error)?;

    let analytic = analytic_continuous(spec, demand, opts.z)?;
    let analytic_profit = replicate(spec, demand, &analytic, &search)?.mean_profit;
    let policy = if analytic_profit > out.best_y {
        analytic
    } else {
        to_policy(&out.best_x)?
    };
    Ok(TunedPolicy {
        product: spec.name().to_string(),
        policy,
        stats: replicate(spec, demand, &policy, cfg)?,
    })
}

#[derive(Debug, Clone)]
pub struct CatalogTuning {
    pub periodic: Vec<TunedPolicy>,
    pub continuous: Vec<TunedPolicy>,
}

fn to_map(rows: &[TunedPolicy]) -> HashMap<String, PolicyParams> {
    rows.iter().map(|t| (t.product.clone(), t.policy)).collect()
}

impl CatalogTuning {
    pub fn periodic_map(&self) -> HashMap<String, PolicyParams> {
        to_map(&self.periodic)
    }

    pub fn continuous_map(&self) -> HashMap<String, PolicyParams> {
        to_map(&self.continuous)
    }
}

/// Tunes both policy families for every product. Each product uses the
/// streams of its catalog slot, as in policy comparison.
pub fn tune_catalog(catalog: &Catalog, cfg: &SimConfig, opts: &TuneOptions) -> Result<CatalogTuning> {
    cfg.validate()?;
    let mut periodic = Vec::with_capacity(catalog.len());
    let mut continuous = Vec::with_capacity(catalog.len());
    for (slot, spec) in catalog.products().iter().enumerate() {
        let demand = DemandModel::for_product(spec)?;
        let product_cfg = cfg.for_product(slot);
        periodic.push(tune_periodic(spec, &demand, &product_cfg, opts)?);
        continuous.push(tune_continuous(spec, &demand, &product_cfg, opts)?);
    }
    Ok(CatalogTuning { periodic, continuous })
}

/// Decision vector searched by catalog-level optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    /// One order quantity per product; reorder points fixed analytically.
    OrderQuantity,
    /// One order-up-to level per product at a shared review period.
    OrderUpTo,
}

#[derive(Debug, Clone)]
struct Entry {
    spec: ProductSpec,
    demand: DemandModel,
    reorder_point: u64,
    cfg: SimConfig,
}

/// Total expected profit of the catalog as a function of one decision
/// variable per product. Every evaluation reuses the same streams, so the
/// function is deterministic in `x`.
#[derive(Debug, Clone)]
pub struct CatalogObjective {
    kind: ObjectiveKind,
    review_period: u32,
    entries: Vec<Entry>,
}

impl CatalogObjective {
    pub fn new(catalog: &Catalog, cfg: &SimConfig, kind: ObjectiveKind, opts: &TuneOptions) -> Result<Self> {
        cfg.validate()?;
        let entries = catalog
            .products()
            .iter()
            .enumerate()
            .map(|(slot, spec)| {
                let demand = DemandModel::for_product(spec)?;
                let reorder_point = match analytic_continuous(spec, &demand, opts.z)? {
                    PolicyParams::ContinuousReview { reorder_point, .. } => reorder_point,
                    PolicyParams::PeriodicReview { .. } => unreachable!(),
                };
                Ok(Entry {
                    spec: spec.clone(),
                    demand,
                    reorder_point,
                    cfg: cfg.for_product(slot),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CatalogObjective {
            kind,
            review_period: opts.review_period,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn kind(&self) -> ObjectiveKind {
        self.kind
    }

    /// `(0, 5000)` in every dimension.
    pub fn default_bounds(&self) -> Vec<(f64, f64)> {
        vec![(0.0, 5000.0); self.dim()]
    }

    pub fn product_names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.spec.name()).collect()
    }

    /// Policies encoded by `x`; components are rounded and floored at 1.
    pub fn policies(&self, x: &[f64]) -> Result<Vec<PolicyParams>> {
        if x.len() != self.dim() {
            return Err(Error::domain(format!(
                "expected {} components, got {}",
                self.dim(),
                x.len()
            )));
        }
        self.entries
            .iter()
            .zip(x)
            .map(|(e, v)| {
                let units = (v.round().max(1.0)) as u64;
                match self.kind {
                    ObjectiveKind::OrderQuantity => PolicyParams::continuous(e.reorder_point, units),
                    ObjectiveKind::OrderUpTo => PolicyParams::periodic(self.review_period, units),
                }
            })
            .collect()
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let policies = self.policies(x)?;
        let mut total = 0.0;
        for (e, p) in self.entries.iter().zip(&policies) {
            total += replicate(&e.spec, &e.demand, p, &e.cfg)?.mean_profit;
        }
        Ok(total)
    }
}
