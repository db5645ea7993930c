use crate::catalog::ProductSpec;
use crate::error::Result;
use crate::par;
use crate::stochastic::{DemandModel, RngStream};

use super::engine::{run, RunSummary};
use super::stats::{compensated_sum, mean_std};
use super::{PolicyParams, SimConfig};

/// Aggregate of `n` independent runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicationStats {
    pub mean_profit: f64,
    /// Sample standard deviation of annual profit across runs.
    pub profit_std: f64,
    /// Lost units over demanded units, pooled across runs.
    pub lost_order_fraction: f64,
    /// Units served on the day of demand over demanded units, pooled.
    pub fill_rate: f64,
    pub mean_orders_placed: f64,
    pub mean_units_sold: f64,
    pub mean_revenue: f64,
    pub mean_holding_costs: f64,
    pub n: u32,
}

impl ReplicationStats {
    pub fn from_runs(runs: &[RunSummary]) -> Result<Self> {
        let profits: Vec<f64> = runs.iter().map(|r| r.ledger.annual_profit).collect();
        let (mean_profit, profit_std) = mean_std(&profits)?;
        let n = runs.len() as f64;
        let demanded: u64 = runs.iter().map(|r| r.units_demanded).sum();
        let lost: u64 = runs.iter().map(|r| r.units_lost).sum();
        let sold: u64 = runs.iter().map(|r| r.units_sold).sum();
        let (lost_order_fraction, fill_rate) = if demanded == 0 {
            (0.0, 1.0)
        } else {
            (lost as f64 / demanded as f64, sold as f64 / demanded as f64)
        };
        Ok(ReplicationStats {
            mean_profit,
            profit_std,
            lost_order_fraction,
            fill_rate,
            mean_orders_placed: runs.iter().map(|r| r.orders_placed).sum::<u64>() as f64 / n,
            mean_units_sold: runs.iter().map(|r| r.units_sold + r.units_backlog_filled).sum::<u64>() as f64 / n,
            mean_revenue: compensated_sum(runs.iter().map(|r| r.ledger.revenue)) / n,
            mean_holding_costs: compensated_sum(runs.iter().map(|r| r.ledger.holding_costs)) / n,
            n: runs.len() as u32,
        })
    }

    pub fn profit_std_error(&self) -> f64 {
        self.profit_std / (self.n as f64).sqrt()
    }
}

/// Runs `cfg.replications` independent horizons; run `i` draws from stream
/// `(cfg.seed, i)`. Runs execute in parallel when the `parallel` feature is
/// on; the returned vector is in replication order either way.
pub fn replicate_runs(
    product: &ProductSpec,
    demand: &DemandModel,
    policy: &PolicyParams,
    cfg: &SimConfig,
) -> Result<Vec<RunSummary>> {
    cfg.validate()?;
    policy.validate()?;
    let lead = cfg.lead_time.model_for(product)?;
    Ok(par::map_range(cfg.replications as usize, |i| {
        let mut rng = RngStream::new(cfg.seed, i as u64);
        run(product, demand, &lead, policy, cfg, &mut rng, |_| {})
    }))
}

/// Monte-Carlo statistics of a policy.
pub fn replicate(
    product: &ProductSpec,
    demand: &DemandModel,
    policy: &PolicyParams,
    cfg: &SimConfig,
) -> Result<ReplicationStats> {
    ReplicationStats::from_runs(&replicate_runs(product, demand, policy, cfg)?)
}

/// Single-threaded [`replicate`], available with or without the `parallel`
/// feature. Produces bit-identical output.
pub fn replicate_sequential(
    product: &ProductSpec,
    demand: &DemandModel,
    policy: &PolicyParams,
    cfg: &SimConfig,
) -> Result<ReplicationStats> {
    cfg.validate()?;
    policy.validate()?;
    let lead = cfg.lead_time.model_for(product)?;
    let runs = par::map_range_sequential(cfg.replications as usize, |i| {
        let mut rng = RngStream::new(cfg.seed, i as u64);
        run(product, demand, &lead, policy, cfg, &mut rng, |_| {})
    });
    ReplicationStats::from_runs(&runs)
}
