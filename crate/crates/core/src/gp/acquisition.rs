use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::model::GpModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    #[default]
    Maximize,
    Minimize,
}

impl Direction {
    /// Whether `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Maximize => a > b,
            Direction::Minimize => a < b,
        }
    }

    /// Signed improvement of `value` over `incumbent`.
    pub fn improvement(self, value: f64, incumbent: f64) -> f64 {
        match self {
            Direction::Maximize => value - incumbent,
            Direction::Minimize => incumbent - value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acquisition {
    #[default]
    #[serde(rename = "ei")]
    ExpectedImprovement,
    #[serde(rename = "pi")]
    ProbabilityOfImprovement,
}

fn norm_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn norm_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Closed-form expected improvement of a normal `N(mean, std²)` over `f_best`.
pub fn expected_improvement(mean: f64, std: f64, f_best: f64, direction: Direction) -> f64 {
    let gain = direction.improvement(mean, f_best);
    if std.is_nan() || std <= 0.0 {
        return gain.max(0.0);
    }
    let z = gain / std;
    (gain * norm_cdf(z) + std * norm_pdf(z)).max(0.0)
}

/// Probability that `N(mean, std²)` improves on `f_best`.
pub fn probability_of_improvement(mean: f64, std: f64, f_best: f64, direction: Direction) -> f64 {
    let gain = direction.improvement(mean, f_best);
    if std.is_nan() || std <= 0.0 {
        return if gain > 0.0 { 1.0 } else { 0.0 };
    }
    norm_cdf(gain / std)
}

impl Acquisition {
    pub fn score(self, mean: f64, std: f64, f_best: f64, direction: Direction) -> f64 {
        match self {
            Acquisition::ExpectedImprovement => expected_improvement(mean, std, f_best, direction),
            Acquisition::ProbabilityOfImprovement => probability_of_improvement(mean, std, f_best, direction),
        }
    }

    /// Acquisition value of the model's posterior at `x`.
    pub fn evaluate(self, model: &GpModel, x: &[f64], f_best: f64, direction: Direction) -> f64 {
        let (m, v) = model.posterior(x);
        self.score(m, v.sqrt(), f_best, direction)
    }
}
