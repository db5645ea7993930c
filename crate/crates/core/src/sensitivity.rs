//! One-at-a-time sensitivity analysis, by linear extrapolation or by
//! re-simulation under common random numbers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::{Catalog, ProductSpec};
use crate::error::{Error, Result};
use crate::sim::{replicate, PolicyParams, SimConfig};
use crate::stochastic::DemandModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variable {
    Oup,
    ReorderPoint,
    OrderQuantity,
    SellingPrice,
    PurchaseCost,
    DemandMean,
}

impl Variable {
    pub const ALL: [Variable; 6] = [
        Variable::Oup,
        Variable::ReorderPoint,
        Variable::OrderQuantity,
        Variable::SellingPrice,
        Variable::PurchaseCost,
        Variable::DemandMean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variable::Oup => "oup",
            Variable::ReorderPoint => "reorder_point",
            Variable::OrderQuantity => "order_quantity",
            Variable::SellingPrice => "selling_price",
            Variable::PurchaseCost => "purchase_cost",
            Variable::DemandMean => "demand_mean",
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Variable::ALL.into_iter().find(|v| v.name() == key).ok_or_else(|| {
            let known: Vec<&str> = Variable::ALL.iter().map(|v| v.name()).collect();
            Error::config(format!(
                "unknown sensitivity variable '{s}' (expected one of {})",
                known.join(", ")
            ))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Linear,
    Resimulate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivitySpec {
    pub variables: Vec<Variable>,
    pub deltas: Vec<f64>,
    pub mode: Mode,
}

impl SensitivitySpec {
    pub const DEFAULT_DELTAS: [f64; 2] = [0.10, -0.05];

    pub fn new(variables: Vec<Variable>, mode: Mode) -> Self {
        SensitivitySpec {
            variables,
            deltas: Self::DEFAULT_DELTAS.to_vec(),
            mode,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.variables.is_empty() {
            return Err(Error::config("at least one sensitivity variable is required"));
        }
        if self.deltas.is_empty() {
            return Err(Error::config("at least one delta is required"));
        }
        if let Some(d) = self.deltas.iter().find(|d| !(d.is_finite() && **d > -1.0)) {
            return Err(Error::config(format!("delta {d} must be finite and > -1")));
        }
        Ok(())
    }
}

/// Outputs tracked per product.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductOutputs {
    pub product: String,
    pub profit: f64,
    pub profit_std: f64,
    pub lost_orders: f64,
    pub safety_stock: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityRow {
    pub variable: Variable,
    pub delta: f64,
    #[serde(flatten)]
    pub outputs: ProductOutputs,
    /// Set when some outputs were copied from the baseline rather than
    /// recomputed; only a re-simulation gives their perturbed values.
    pub requires_resim: bool,
}

/// Linear extrapolation: profit scales by `1 + δ`; profit spread, lost-order
/// fraction and safety stock are copied and the row is marked.
pub fn sensitivity_linear(baseline: &[ProductOutputs], spec: &SensitivitySpec) -> Result<Vec<SensitivityRow>> {
    spec.validate()?;
    if baseline.is_empty() {
        return Err(Error::config("baseline outputs are empty"));
    }
    let mut rows = Vec::with_capacity(spec.variables.len() * spec.deltas.len() * baseline.len());
    for &variable in &spec.variables {
        for &delta in &spec.deltas {
            for b in baseline {
                rows.push(SensitivityRow {
                    variable,
                    delta,
                    outputs: ProductOutputs {
                        profit: b.profit * (1.0 + delta),
                        ..b.clone()
                    },
                    requires_resim: delta != 0.0,
                });
            }
        }
    }
    Ok(rows)
}

fn scaled_units(value: u64, delta: f64, what: &str, product: &str) -> Result<u64> {
    let v = (value as f64 * (1.0 + delta)).round();
    if v < 1.0 {
        return Err(Error::config(format!(
            "{what} of {product} becomes {v} under delta {delta}; it must stay positive"
        )));
    }
    Ok(v as u64)
}

fn perturb(
    spec: &ProductSpec,
    policy: &PolicyParams,
    variable: Variable,
    delta: f64,
) -> Result<(ProductSpec, PolicyParams)> {
    let name = spec.name();
    let wrong_policy = || {
        Error::config(format!(
            "variable {variable} does not apply to the {:?} policy of {name}",
            policy.kind()
        ))
    };
    let scaled = |v: f64, what: &str| -> Result<f64> {
        let s = v * (1.0 + delta);
        if s > 0.0 {
            Ok(s)
        } else {
            Err(Error::config(format!(
                "{what} of {name} becomes {s} under delta {delta}; it must stay positive"
            )))
        }
    };
    match (variable, *policy) {
        (
            Variable::Oup,
            PolicyParams::PeriodicReview {
                review_period,
                order_up_to,
            },
        ) => Ok((
            spec.clone(),
            PolicyParams::periodic(review_period, scaled_units(order_up_to, delta, "OUP", name)?)?,
        )),
        (
            Variable::ReorderPoint,
            PolicyParams::ContinuousReview {
                reorder_point,
                order_quantity,
            },
        ) => Ok((
            spec.clone(),
            PolicyParams::continuous(
                scaled_units(reorder_point, delta, "reorder point", name)?,
                order_quantity,
            )?,
        )),
        (
            Variable::OrderQuantity,
            PolicyParams::ContinuousReview {
                reorder_point,
                order_quantity,
            },
        ) => Ok((
            spec.clone(),
            PolicyParams::continuous(
                reorder_point,
                scaled_units(order_quantity, delta, "order quantity", name)?,
            )?,
        )),
        (Variable::Oup | Variable::ReorderPoint | Variable::OrderQuantity, _) => Err(wrong_policy()),
        (Variable::SellingPrice, _) => {
            let v = scaled(spec.selling_price(), "selling price")?;
            Ok((spec.modified(|r| r.selling_price = v)?, *policy))
        }
        (Variable::PurchaseCost, _) => {
            let v = scaled(spec.purchase_cost(), "purchase cost")?;
            Ok((spec.modified(|r| r.purchase_cost = v)?, *policy))
        }
        (Variable::DemandMean, _) => {
            let v = scaled(spec.daily_order_size_mean(), "demand mean")?;
            Ok((spec.modified(|r| r.mean = v)?, *policy))
        }
    }
}

fn simulate_outputs(spec: &ProductSpec, policy: &PolicyParams, cfg: &SimConfig) -> Result<ProductOutputs> {
    let demand = DemandModel::for_product(spec)?;
    let stats = replicate(spec, &demand, policy, cfg)?;
    Ok(ProductOutputs {
        product: spec.name().to_string(),
        profit: stats.mean_profit,
        profit_std: stats.profit_std,
        lost_orders: stats.lost_order_fraction,
        safety_stock: policy.implied_safety_stock(spec, &demand),
    })
}

fn policy_for<'a>(policies: &'a HashMap<String, PolicyParams>, name: &str) -> Result<&'a PolicyParams> {
    policies
        .get(name)
        .ok_or_else(|| Error::config(format!("no policy parameters for product {name}")))
}

/// Simulated outputs of every product under `policies`.
pub fn baseline_outputs(
    catalog: &Catalog,
    policies: &HashMap<String, PolicyParams>,
    cfg: &SimConfig,
) -> Result<Vec<ProductOutputs>> {
    catalog
        .products()
        .iter()
        .enumerate()
        .map(|(slot, spec)| simulate_outputs(spec, policy_for(policies, spec.name())?, &cfg.for_product(slot)))
        .collect()
}

/// Re-simulates every (variable, delta, product) combination with the
/// product's baseline streams.
pub fn sensitivity_resim(
    catalog: &Catalog,
    policies: &HashMap<String, PolicyParams>,
    cfg: &SimConfig,
    spec: &SensitivitySpec,
) -> Result<Vec<SensitivityRow>> {
    spec.validate()?;
    cfg.validate()?;
    let mut rows = Vec::with_capacity(spec.variables.len() * spec.deltas.len() * catalog.len());
    for &variable in &spec.variables {
        for &delta in &spec.deltas {
            for (slot, product) in catalog.products().iter().enumerate() {
                let (p, policy) = perturb(product, policy_for(policies, product.name())?, variable, delta)?;
                rows.push(SensitivityRow {
                    variable,
                    delta,
                    outputs: simulate_outputs(&p, &policy, &cfg.for_product(slot))?,
                    requires_resim: false,
                });
            }
        }
    }
    Ok(rows)
}

/// Runs whichever mode `spec` selects.
pub fn run_sensitivity(
    catalog: &Catalog,
    policies: &HashMap<String, PolicyParams>,
    cfg: &SimConfig,
    spec: &SensitivitySpec,
) -> Result<Vec<SensitivityRow>> {
    match spec.mode {
        Mode::Linear => sensitivity_linear(&baseline_outputs(catalog, policies, cfg)?, spec),
        Mode::Resimulate => sensitivity_resim(catalog, policies, cfg, spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baseline() -> Vec<ProductOutputs> {
        ["PrA", "PrB", "PrC", "PrD"]
            .iter()
            .enumerate()
            .map(|(i, n)| ProductOutputs {
                product: n.to_string(),
                profit: 100_000.0 * (i + 1) as f64,
                profit_std: 5_000.0,
                lost_orders: 0.1,
                safety_stock: 50.0,
            })
            .collect()
    }

    fn periodic_policies(cat: &Catalog) -> HashMap<String, PolicyParams> {
        cat.products()
            .iter()
            .map(|p| {
                let oup = (p.daily_order_size_mean() * p.order_probability() * (p.lead_time() + 30) as f64) as u64;
                (p.name().to_string(), PolicyParams::periodic(30, oup).unwrap())
            })
            .collect()
    }

    fn cfg() -> SimConfig {
        SimConfig {
            replications: 30,
            seed: 5,
            ..Default::default()
        }
    }

    #[test]
    fn parse_variables() {
        assert_eq!("OUP".parse::<Variable>().unwrap(), Variable::Oup);
        assert_eq!("reorder-point".parse::<Variable>().unwrap(), Variable::ReorderPoint);
        assert!(matches!("colour".parse::<Variable>(), Err(Error::Config(_))));
    }

    #[test]
    fn linear_mode_arithmetic() {
        let spec = SensitivitySpec {
            variables: vec![Variable::Oup],
            deltas: vec![0.10, -0.05, 0.0],
            mode: Mode::Linear,
        };
        let rows = sensitivity_linear(&baseline(), &spec).unwrap();
        assert_eq!(rows.len(), 12);
        assert!((rows[0].outputs.profit - 110_000.0).abs() < 1e-9);
        for (row, b) in rows[4..8].iter().zip(baseline()) {
            assert_eq!(row.outputs.profit, 0.95 * b.profit);
            assert_eq!(row.outputs.lost_orders, b.lost_orders);
            assert!(row.requires_resim);
        }
        for (row, b) in rows[8..].iter().zip(baseline()) {
            assert_eq!(row.outputs, b);
            assert!(!row.requires_resim);
        }
    }

    #[test]
    fn invalid_specs() {
        let mut spec = SensitivitySpec::new(vec![Variable::Oup], Mode::Linear);
        spec.deltas = vec![];
        assert!(sensitivity_linear(&baseline(), &spec).is_err());
        spec.deltas = vec![-1.0];
        assert!(sensitivity_linear(&baseline(), &spec).is_err());
    }

    #[test]
    fn resim_zero_delta_is_baseline() {
        let cat = Catalog::reference();
        let pol = periodic_policies(&cat);
        let base = baseline_outputs(&cat, &pol, &cfg()).unwrap();
        let spec = SensitivitySpec {
            variables: vec![Variable::Oup, Variable::SellingPrice],
            deltas: vec![0.0],
            mode: Mode::Resimulate,
        };
        let rows = sensitivity_resim(&cat, &pol, &cfg(), &spec).unwrap();
        assert_eq!(rows.len(), 8);
        for (row, b) in rows.iter().zip(base.iter().chain(base.iter())) {
            assert_eq!(&row.outputs, b);
        }
    }

    #[test]
    fn resim_oup_increase_sells_more() {
        let cat = Catalog::reference();
        let pol = periodic_policies(&cat);
        let spec = SensitivitySpec {
            variables: vec![Variable::Oup],
            deltas: vec![0.10],
            mode: Mode::Resimulate,
        };
        let rows = sensitivity_resim(&cat, &pol, &cfg(), &spec).unwrap();
        let base = baseline_outputs(&cat, &pol, &cfg()).unwrap();
        for (r, b) in rows.iter().zip(&base) {
            assert!(r.outputs.lost_orders <= b.lost_orders + 1e-12, "{}", r.outputs.product);
        }
    }

    #[test]
    fn resim_rejects_mismatched_variable() {
        let cat = Catalog::reference();
        let pol = periodic_policies(&cat);
        let spec = SensitivitySpec::new(vec![Variable::ReorderPoint], Mode::Resimulate);
        assert!(matches!(
            sensitivity_resim(&cat, &pol, &cfg(), &spec),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn resim_rejects_nonpositive() {
        let cat = Catalog::reference();
        let pol: HashMap<String, PolicyParams> = cat
            .products()
            .iter()
            .map(|p| (p.name().to_string(), PolicyParams::continuous(1, 1).unwrap()))
            .collect();
        let spec = SensitivitySpec {
            variables: vec![Variable::OrderQuantity],
            deltas: vec![-0.9],
            mode: Mode::Resimulate,
        };
        assert!(matches!(
            sensitivity_resim(&cat, &pol, &cfg(), &spec),
            Err(Error::Config(_))
        ));
    }
}
