use crate::catalog::ProductSpec;
use crate::error::{Error, Result};
use crate::stochastic::DemandModel;

use super::replicate::{replicate, ReplicationStats};
use super::{PolicyParams, SimConfig};

/// Inclusive integer range of order-up-to levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OupRange {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl OupRange {
    pub fn new(start: u64, end: u64, step: u64) -> Result<Self> {
        if start == 0 || end < start || step == 0 {
            return Err(Error::config(format!("invalid OUP range {start}..={end} step {step}")));
        }
        Ok(OupRange { start, end, step })
    }

    pub fn values(&self) -> impl Iterator<Item = u64> {
        (self.start..=self.end).step_by(self.step as usize)
    }
}

/// Replicates the periodic policy at each OUP in `range`. Every point uses
/// the same seed, so the curve is computed under common random numbers.
pub fn sweep_oup(
    product: &ProductSpec,
    demand: &DemandModel,
    cfg: &SimConfig,
    review_period: u32,
    range: OupRange,
) -> Result<Vec<(u64, ReplicationStats)>> {
    range
        .values()
        .map(|oup| {
            let policy = PolicyParams::periodic(review_period, oup)?;
            Ok((oup, replicate(product, demand, &policy, cfg)?))
        })
        .collect()
}
