//! Gaussian-process surrogate modelling and Bayesian optimization.
//!
//! The GP uses a squared-exponential ARD kernel on inputs scaled to the
//! unit box, with outputs standardized before fitting. An optional
//! [`ConditioningFn`] κ(x) shifts the prior mean, `m_c(x) = m + κ(x)`, and
//! the posterior mean under that prior is the surrogate the optimizer
//! maximizes.

mod acquisition;
mod bo;
mod conditioning;
mod design;
mod kernel;
mod model;
mod mvn;
pub mod optim;

pub use acquisition::{expected_improvement, probability_of_improvement, Acquisition, Direction};
pub use bo::{bo_run, propose_next, BoAbort, BoConfig, BoOutcome, Observation};
pub use conditioning::{Bump, ConditioningFn};
pub use design::latin_hypercube;
pub use kernel::Kernel;
pub use model::{gp_fit, FitOptions, GpModel, HyperBounds, Hyperparams};
pub use mvn::{condition_mvn, Conditional};
