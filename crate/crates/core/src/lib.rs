//! Inventory policy analytics for products with stochastic demand.
//!
//! The crate covers the whole pipeline from a product catalog to tuned
//! replenishment policies:
//!
//! * [`catalog`] loads and validates product data,
//! * [`stochastic`] fits demand models and provides seeded random streams,
//! * [`eoq`] and [`risk`] hold the closed-form analytics,
//! * [`sim`] runs the day-by-day (p, OUP) and (r, Q) simulations and their
//!   Monte-Carlo replication,
//! * [`gp`] implements Gaussian-process regression with a conditioning
//!   mean and the Bayesian-optimization loop used for tuning,
//! * [`sensitivity`] perturbs policy inputs one at a time.
//!
//! Replications run on rayon when the `parallel` feature is enabled (the
//! default). Results are bit-identical with or without it and for any
//! thread count.

pub mod catalog;
pub mod eoq;
pub mod error;
pub mod gp;
pub mod histogram;
pub mod par;
pub mod risk;
pub mod sensitivity;
pub mod sim;
pub mod stochastic;
pub mod tune;

pub use catalog::{Catalog, ProductSpec};
pub use error::{Error, Result};
pub use sim::{PolicyParams, ReplicationStats, SimConfig};
pub use stochastic::{DemandModel, LeadTimeModel, RngStream};
