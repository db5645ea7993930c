//! Day-by-day inventory simulation and its Monte-Carlo replication.

mod compare;
mod engine;
mod replicate;
pub mod stats;
mod sweep;

use serde::{Deserialize, Serialize};

use crate::catalog::ProductSpec;
use crate::error::{Error, Result};
use crate::stochastic::{DemandModel, LeadTimeMode, LeadTimeModel, DEFAULT_DELAY_FACTOR};

pub use compare::{compare_policies, PolicyComparison, ProductComparison};
pub use engine::{simulate_once, simulate_summary, DayRecord, ProfitLedger, RunSummary};
pub use replicate::{replicate, replicate_runs, replicate_sequential, ReplicationStats};
pub use stats::mc_estimate;
pub use sweep::{sweep_oup, OupRange};

/// Days between periodic reviews when a review period of "one month" is asked for.
pub const MONTH_DAYS: u32 = 30;

/// Replenishment policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "policy", rename_all = "snake_case")]
pub enum PolicyParams {
    /// Every `review_period` days, order up to `order_up_to`.
    PeriodicReview { review_period: u32, order_up_to: u64 },
    /// Whenever inventory position is at or below `reorder_point`, order
    /// `order_quantity`.
    ContinuousReview { reorder_point: u64, order_quantity: u64 },
}

impl PolicyParams {
    pub fn periodic(review_period: u32, order_up_to: u64) -> Result<Self> {
        let p = PolicyParams::PeriodicReview {
            review_period,
            order_up_to,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn continuous(reorder_point: u64, order_quantity: u64) -> Result<Self> {
        let p = PolicyParams::ContinuousReview {
            reorder_point,
            order_quantity,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            PolicyParams::PeriodicReview {
                review_period,
                order_up_to,
            } => review_period > 0 && order_up_to > 0,
            PolicyParams::ContinuousReview {
                reorder_point,
                order_quantity,
            } => reorder_point > 0 && order_quantity > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::config(format!("policy parameters must be positive: {self:?}")))
        }
    }

    pub fn kind(&self) -> PolicyKind {
        match self {
            PolicyParams::PeriodicReview { .. } => PolicyKind::Periodic,
            PolicyParams::ContinuousReview { .. } => PolicyKind::Continuous,
        }
    }

    /// Safety stock implied by the policy: the stock level it targets above
    /// the mean demand over its protection interval, floored at zero.
    pub fn implied_safety_stock(&self, product: &ProductSpec, demand: &DemandModel) -> f64 {
        let mu = demand.daily_mean();
        let lt = product.lead_time() as f64;
        let ss = match *self {
            PolicyParams::PeriodicReview {
                review_period,
                order_up_to,
            } => order_up_to as f64 - mu * (lt + review_period as f64),
            PolicyParams::ContinuousReview { reorder_point, .. } => reorder_point as f64 - mu * lt,
        };
        ss.max(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolicyKind {
    Periodic,
    Continuous,
}

/// What happens to demand that cannot be served from stock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnmetDemand {
    #[default]
    LostSales,
    /// Queued and filled from later receipts before new demand.
    Backorder,
}

/// Lead-time behaviour applied to every product in a run.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum LeadTimeSetting {
    #[default]
    Deterministic,
    /// On-time probability taken from the product's catalog probability.
    MeetOrDelayFromCatalog { delay_factor: f64 },
    /// Same on-time probability for every product.
    MeetOrDelay { p_meet: f64, delay_factor: f64 },
}

impl LeadTimeSetting {
    pub fn catalog_default() -> Self {
        LeadTimeSetting::MeetOrDelayFromCatalog {
            delay_factor: DEFAULT_DELAY_FACTOR,
        }
    }

    pub fn model_for(&self, product: &ProductSpec) -> Result<LeadTimeModel> {
        let mode = match *self {
            LeadTimeSetting::Deterministic => LeadTimeMode::Deterministic,
            LeadTimeSetting::MeetOrDelayFromCatalog { delay_factor } => LeadTimeMode::MeetOrDelay {
                p_meet: product.order_probability(),
                delay_factor,
            },
            LeadTimeSetting::MeetOrDelay { p_meet, delay_factor } => LeadTimeMode::MeetOrDelay { p_meet, delay_factor },
        };
        LeadTimeModel::new(product.lead_time(), mode)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub horizon: u32,
    pub replications: u32,
    pub seed: u64,
    pub lead_time: LeadTimeSetting,
    pub unmet_demand: UnmetDemand,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            horizon: 365,
            replications: 10_000,
            seed: 0,
            lead_time: LeadTimeSetting::Deterministic,
            unmet_demand: UnmetDemand::LostSales,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::config("horizon must be at least one day"));
        }
        if self.replications == 0 {
            return Err(Error::config("replications must be at least 1"));
        }
        Ok(())
    }

    /// Config whose streams are specific to the product in catalog slot
    /// `slot`. Used wherever several products share one run seed.
    pub fn for_product(&self, slot: usize) -> SimConfig {
        SimConfig {
            seed: crate::stochastic::derive_seed(self.seed, slot as u64),
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_validation() {
        assert!(PolicyParams::periodic(30, 2071).is_ok());
        assert!(PolicyParams::periodic(0, 2071).is_err());
        assert!(PolicyParams::continuous(0, 10).is_err());
        assert!(PolicyParams::continuous(10, 0).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SimConfig::default().validate().is_ok());
        let bad = SimConfig {
            horizon: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = SimConfig {
            replications: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn product_configs_differ_by_slot() {
        let cfg = SimConfig::default();
        assert_ne!(cfg.for_product(0).seed, cfg.for_product(1).seed);
        assert_eq!(cfg.for_product(2).seed, cfg.for_product(2).seed);
    }
}
