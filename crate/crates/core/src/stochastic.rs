//! Seeded random streams and the demand / lead-time samplers.
//!
//! Daily demand is Bernoulli(p) × Lognormal: an order arrives with
//! probability `p` and its size is lognormal with the catalog's mean and
//! standard deviation, rounded to whole units.
//!
//! Every sampler consumes a fixed number of raw 64-bit draws per call
//! (demand: 2, lead time: 1) whatever the outcome, so two scenarios driven
//! by the same stream see the same underlying randomness day for day.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::catalog::ProductSpec;
use crate::error::{Error, Result};

/// Name of the generator behind [`RngStream`], recorded in run manifests.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64 + set_stream";

/// Raw draws consumed by [`DemandModel::sample`].
pub const DEMAND_DRAWS: usize = 2;
/// Raw draws consumed by [`LeadTimeModel::sample`].
pub const LEAD_TIME_DRAWS: usize = 1;

/// A reproducible random stream addressed by `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on [0, 1) with 53 bits of precision.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval (0, 1).
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal by inversion (one raw draw).
    pub fn standard_normal(&mut self) -> f64 {
        standard_normal_quantile(self.uniform_open())
    }
}

pub(crate) fn standard_normal_quantile(u: f64) -> f64 {
    Normal::standard().inverse_cdf(u)
}

/// Derives an independent per-product seed from a run seed.
pub fn derive_seed(seed: u64, slot: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ slot.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Log-space parameters of a lognormal fitted by moment matching.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LognormalParams {
    pub log_mu: f64,
    pub log_sigma: f64,
}

impl LognormalParams {
    pub fn mean(&self) -> f64 {
        (self.log_mu + 0.5 * self.log_sigma * self.log_sigma).exp()
    }

    pub fn std_dev(&self) -> f64 {
        let s2 = self.log_sigma * self.log_sigma;
        // exp_m1 keeps precision when sigma is small
        self.mean() * s2.exp_m1().sqrt()
    }
}

/// Closed-form moment matching: the returned lognormal has exactly the
/// requested mean and standard deviation.
pub fn fit_lognormal(mean: f64, std: f64) -> Result<LognormalParams> {
    if !(mean.is_finite() && mean > 0.0) {
        return Err(Error::domain(format!("lognormal mean must be > 0, got {mean}")));
    }
    if !(std.is_finite() && std >= 0.0) {
        return Err(Error::domain(format!("lognormal std must be >= 0, got {std}")));
    }
    let cv = std / mean;
    let s2 = (cv * cv).ln_1p();
    Ok(LognormalParams {
        log_mu: mean.ln() - 0.5 * s2,
        log_sigma: s2.sqrt(),
    })
}

/// Daily demand generator for one product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemandModel {
    order_probability: f64,
    size: LognormalParams,
}

impl DemandModel {
    pub fn new(order_probability: f64, size_mean: f64, size_std: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&order_probability) {
            return Err(Error::domain(format!(
                "order probability must lie in [0, 1], got {order_probability}"
            )));
        }
        let size = if order_probability == 0.0 && size_mean <= 0.0 {
            LognormalParams {
                log_mu: 0.0,
                log_sigma: 0.0,
            }
        } else {
            fit_lognormal(size_mean, size_std)?
        };
        Ok(DemandModel {
            order_probability,
            size,
        })
    }

    pub fn for_product(spec: &ProductSpec) -> Result<Self> {
        Self::new(
            spec.order_probability(),
            spec.daily_order_size_mean(),
            spec.daily_order_size_std(),
        )
    }

    pub fn order_probability(&self) -> f64 {
        self.order_probability
    }

    pub fn log_mu(&self) -> f64 {
        self.size.log_mu
    }

    pub fn log_sigma(&self) -> f64 {
        self.size.log_sigma
    }

    pub fn order_size(&self) -> LognormalParams {
        self.size
    }

    /// Expected demand per day (before rounding to units).
    pub fn daily_mean(&self) -> f64 {
        self.order_probability * self.size.mean()
    }

    /// Standard deviation of demand per day (before rounding to units).
    pub fn daily_std(&self) -> f64 {
        let m = self.size.mean();
        let s = self.size.std_dev();
        let p = self.order_probability;
        (p * (s * s + m * m) - (p * m) * (p * m)).max(0.0).sqrt()
    }

    /// One day's demand in whole units. Consumes [`DEMAND_DRAWS`] draws.
    pub fn sample(&self, rng: &mut RngStream) -> u64 {
        let occurs = rng.uniform();
        let z = rng.standard_normal();
        if occurs >= self.order_probability {
            return 0;
        }
        let size = (self.size.log_mu + self.size.log_sigma * z).exp();
        size.round() as u64
    }
}

/// How realised lead times relate to the nominal one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeadTimeMode {
    Deterministic,
    /// On time with probability `p_meet`, otherwise late by `delay_factor`.
    MeetOrDelay {
        p_meet: f64,
        delay_factor: f64,
    },
}

/// Default multiplier applied to a late delivery.
pub const DEFAULT_DELAY_FACTOR: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadTimeModel {
    nominal: u32,
    mode: LeadTimeMode,
}

impl LeadTimeModel {
    pub fn new(nominal: u32, mode: LeadTimeMode) -> Result<Self> {
        if let LeadTimeMode::MeetOrDelay { p_meet, delay_factor } = mode {
            if !(0.0..=1.0).contains(&p_meet) {
                return Err(Error::domain(format!("p_meet must lie in [0, 1], got {p_meet}")));
            }
            if !(delay_factor.is_finite() && delay_factor > 1.0) {
                return Err(Error::domain(format!("delay factor must be > 1, got {delay_factor}")));
            }
        }
        Ok(LeadTimeModel { nominal, mode })
    }

    pub fn deterministic(nominal: u32) -> Self {
        LeadTimeModel {
            nominal,
            mode: LeadTimeMode::Deterministic,
        }
    }

    pub fn nominal(&self) -> u32 {
        self.nominal
    }

    pub fn mode(&self) -> LeadTimeMode {
        self.mode
    }

    /// Longest lead time the model can produce.
    pub fn max_days(&self) -> u32 {
        match self.mode {
            LeadTimeMode::Deterministic => self.nominal,
            LeadTimeMode::MeetOrDelay { delay_factor, .. } => {
                self.nominal.max((self.nominal as f64 * delay_factor).round() as u32)
            }
        }
    }

    /// Realised lead time in days. Consumes [`LEAD_TIME_DRAWS`] draws.
    pub fn sample(&self, rng: &mut RngStream) -> u32 {
        let u = rng.uniform();
        match self.mode {
            LeadTimeMode::Deterministic => self.nominal,
            LeadTimeMode::MeetOrDelay { p_meet, delay_factor } => {
                if u < p_meet {
                    self.nominal
                } else {
                    (self.nominal as f64 * delay_factor).round() as u32
                }
            }
        }
    }
}
