//! Quantitative risk metrics per product.

use std::cmp::Ordering;

use crate::catalog::{Catalog, ProductSpec};
use crate::eoq;
use crate::error::{Error, Result};

pub fn holding_cost_risk(purchase_cost: f64, holding_cost_rate: f64) -> f64 {
    purchase_cost * holding_cost_rate
}

/// `(D_LT + SS) / (starting inventory + scheduled receipts)`, clamped to [0, 1].
pub fn service_level(
    lead_time_demand: f64,
    safety_stock: f64,
    starting_inventory: f64,
    scheduled_receipts: f64,
) -> Result<f64> {
    let denom = starting_inventory + scheduled_receipts;
    if denom.is_nan() || denom <= 0.0 {
        return Err(Error::domain(format!(
            "starting inventory plus scheduled receipts must be > 0, got {denom}"
        )));
    }
    Ok(((lead_time_demand + safety_stock) / denom).clamp(0.0, 1.0))
}

/// Holding cost of the average inventory `Q/2 + SS`.
pub fn inventory_holding_cost(order_quantity: f64, safety_stock: f64, holding_cost_per_unit: f64) -> f64 {
    ((order_quantity / 2.0 + safety_stock) * holding_cost_per_unit).max(0.0)
}

pub fn expected_backorders(service_level: f64, lead_time_demand: f64) -> f64 {
    ((1.0 - service_level.clamp(0.0, 1.0)) * lead_time_demand).max(0.0)
}

pub fn expected_backorder_cost(service_level: f64, lead_time_demand: f64, backorder_cost_per_unit: f64) -> f64 {
    expected_backorders(service_level, lead_time_demand) * backorder_cost_per_unit
}

/// `SL + (1 − SL) · starting / D_LT`, clamped to [0, 1].
pub fn expected_fill_rate(service_level: f64, starting_inventory: f64, lead_time_demand: f64) -> Result<f64> {
    if lead_time_demand.is_nan() || lead_time_demand <= 0.0 {
        return Err(Error::domain(format!(
            "lead-time demand must be > 0, got {lead_time_demand}"
        )));
    }
    let sl = service_level.clamp(0.0, 1.0);
    Ok((sl + (1.0 - sl) * starting_inventory / lead_time_demand).clamp(0.0, 1.0))
}

/// Products ordered from least to most reliable supplier (ascending
/// on-time probability, ties by name). The first entry carries the
/// highest supplier risk.
pub fn supplier_performance_rank(catalog: &Catalog) -> Vec<&ProductSpec> {
    let mut ranked: Vec<&ProductSpec> = catalog.products().iter().collect();
    ranked.sort_by(|a, b| {
        a.order_probability()
            .partial_cmp(&b.order_probability())
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.name().cmp(b.name()))
    });
    ranked
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskSettings {
    /// Multiplier on purchase cost for the holding-cost risk.
    pub holding_cost_rate: f64,
    pub backorder_cost_per_unit: f64,
    /// Safety stock in standard deviations of lead-time demand.
    pub safety_stock_sigmas: f64,
    pub scheduled_receipts: f64,
}

impl Default for RiskSettings {
    fn default() -> Self {
        RiskSettings {
            holding_cost_rate: 1.0,
            backorder_cost_per_unit: 1.0,
            safety_stock_sigmas: 1.0,
            scheduled_receipts: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiskReport {
    pub product: String,
    pub hcr: f64,
    pub service_level: f64,
    /// 1 = least reliable supplier.
    pub spr_rank: usize,
    pub p_meet: f64,
    pub ihc: f64,
    pub expected_backorders: f64,
    pub boc: f64,
    pub efr: f64,
    pub safety_stock: f64,
}

/// Risk metrics for every product. Order quantity for the holding-cost
/// figure is the product's EOQ.
pub fn risk_report(catalog: &Catalog, settings: &RiskSettings) -> Result<Vec<RiskReport>> {
    let ranking = supplier_performance_rank(catalog);
    catalog
        .products()
        .iter()
        .map(|p| {
            let ss = eoq::safety_stock(
                settings.safety_stock_sigmas,
                p.daily_order_size_std(),
                p.lead_time() as f64,
                0.0,
            );
            let dlt = p.lead_time_demand();
            let sl = service_level(dlt, ss, p.starting_stock() as f64, settings.scheduled_receipts)?;
            let q = eoq::eoq(p.annual_demand(), p.order_cost(), p.holding_cost())?;
            let rank = ranking
                .iter()
                .position(|r| r.name() == p.name())
                .expect("product is in its own catalog")
                + 1;
            Ok(RiskReport {
                product: p.name().to_string(),
                hcr: holding_cost_risk(p.purchase_cost(), settings.holding_cost_rate),
                service_level: sl,
                spr_rank: rank,
                p_meet: p.order_probability(),
                ihc: inventory_holding_cost(q, ss, p.holding_cost()),
                expected_backorders: expected_backorders(sl, dlt),
                boc: expected_backorder_cost(sl, dlt, settings.backorder_cost_per_unit),
                efr: expected_fill_rate(sl, p.starting_stock() as f64, dlt)?,
                safety_stock: ss,
            })
        })
        .collect()
}
