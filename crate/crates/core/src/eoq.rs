//! Closed-form EOQ analytics.
//!
//! Quantities are kept fractional; rounding to whole units happens when a
//! report is written. Safety stock is the exception and rounds up.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::catalog::ProductSpec;
use crate::error::{Error, Result};

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be > 0, got {v}")))
    }
}

/// Economic order quantity `√(2DS/H)`.
pub fn eoq(annual_demand: f64, order_cost: f64, holding_cost: f64) -> Result<f64> {
    require_positive("annual demand", annual_demand)?;
    require_positive("order cost", order_cost)?;
    require_positive("holding cost", holding_cost)?;
    Ok((2.0 * annual_demand * order_cost / holding_cost).sqrt())
}

/// Annual ordering cost plus annual cycle-stock holding cost at lot size `q`.
pub fn total_annual_cost(annual_demand: f64, q: f64, order_cost: f64, holding_cost: f64) -> Result<f64> {
    let (ordering, holding) = cost_components(annual_demand, q, order_cost, holding_cost)?;
    Ok(ordering + holding)
}

/// `(ordering, holding)` parts of [`total_annual_cost`].
pub fn cost_components(annual_demand: f64, q: f64, order_cost: f64, holding_cost: f64) -> Result<(f64, f64)> {
    require_positive("order quantity", q)?;
    Ok((annual_demand / q * order_cost, q / 2.0 * holding_cost))
}

pub fn total_annual_profit(
    annual_demand: f64,
    selling_price: f64,
    q: f64,
    order_cost: f64,
    holding_cost: f64,
) -> Result<f64> {
    Ok(annual_demand * selling_price - total_annual_cost(annual_demand, q, order_cost, holding_cost)?)
}

/// `z · σ_d · √(LT + R)`, rounded up to whole units.
pub fn safety_stock(z: f64, demand_std: f64, lead_time: f64, review_time: f64) -> f64 {
    let raw = z.max(0.0) * demand_std.max(0.0) * (lead_time + review_time).max(0.0).sqrt();
    // tolerate representation error on values that are integral in exact arithmetic
    (raw - 1e-9).ceil().max(0.0)
}

pub fn reorder_point(lead_time_demand: f64, safety_stock: f64) -> f64 {
    lead_time_demand + safety_stock
}

pub fn expected_lost_order_proportion(p_stockout: f64, safety_stock: f64, average_inventory: f64) -> Result<f64> {
    require_positive("average inventory", average_inventory)?;
    if !(0.0..=1.0).contains(&p_stockout) {
        return Err(Error::domain(format!(
            "stockout probability must lie in [0, 1], got {p_stockout}"
        )));
    }
    Ok((p_stockout * (1.0 - safety_stock / average_inventory)).clamp(0.0, 1.0))
}

/// Lot size `√(2DS/H)` with `D` taken per unit time exactly as supplied.
pub fn continuous_q_star(daily_demand_mean: f64, order_cost: f64, holding_cost: f64) -> Result<f64> {
    require_positive("demand", daily_demand_mean)?;
    require_positive("order cost", order_cost)?;
    require_positive("holding cost", holding_cost)?;
    Ok((2.0 * daily_demand_mean * order_cost / holding_cost).sqrt())
}

/// Standard-normal quantile for a service level.
///
/// The common levels come from a fixed table. With `legacy` set the table
/// holds the two-decimal textbook values (1.65 at 95%).
pub fn z_score(service_level: f64, legacy: bool) -> Result<f64> {
    if !(service_level > 0.0 && service_level < 1.0) {
        return Err(Error::domain(format!(
            "service level must lie in (0, 1), got {service_level}"
        )));
    }
    const TABLE: [(f64, f64, f64); 3] = [(0.90, 1.2816, 1.28), (0.95, 1.6449, 1.65), (0.99, 2.3263, 2.33)];
    for (level, precise, rounded) in TABLE {
        if (service_level - level).abs() < 1e-12 {
            return Ok(if legacy { rounded } else { precise });
        }
    }
    let z = Normal::standard().inverse_cdf(service_level);
    Ok(if legacy { (z * 100.0).round() / 100.0 } else { z })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EoqSettings {
    pub service_level: f64,
    /// Use two-decimal z values (1.65 at 95%).
    pub legacy_z: bool,
    /// Review interval added to the lead time in the safety-stock formula.
    pub review_time: f64,
}

impl Default for EoqSettings {
    fn default() -> Self {
        EoqSettings {
            service_level: 0.95,
            legacy_z: false,
            review_time: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EoqReport {
    pub product: String,
    pub annual_demand: f64,
    pub eoq: f64,
    pub total_annual_cost: f64,
    pub total_annual_profit: f64,
    pub safety_stock: f64,
    pub reorder_point: f64,
    pub expected_lost_order_proportion: f64,
    pub z_score: f64,
    pub service_level: f64,
}

/// EOQ metrics for one product from its catalog row. Lead-time demand is
/// the catalog's declared value and demand deviation is the catalog's
/// order-size standard deviation.
pub fn eoq_report(spec: &ProductSpec, settings: &EoqSettings) -> Result<EoqReport> {
    let d = spec.annual_demand();
    let q = eoq(d, spec.order_cost(), spec.holding_cost())?;
    let cost = total_annual_cost(d, q, spec.order_cost(), spec.holding_cost())?;
    let profit = d * spec.selling_price() - cost;
    let z = z_score(settings.service_level, settings.legacy_z)?;
    let ss = safety_stock(
        z,
        spec.daily_order_size_std(),
        spec.lead_time() as f64,
        settings.review_time,
    );
    let rop = reorder_point(spec.lead_time_demand(), ss);
    let lost = expected_lost_order_proportion(1.0 - settings.service_level, ss, q / 2.0 + ss)?;
    Ok(EoqReport {
        product: spec.name().to_string(),
        annual_demand: d,
        eoq: q,
        total_annual_cost: cost,
        total_annual_profit: profit,
        safety_stock: ss,
        reorder_point: rop,
        expected_lost_order_proportion: lost,
        z_score: z,
        service_level: settings.service_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    #[test]
    fn worked_eoq_values() {
        assert_eq!(eoq(28_670.0, 1_000.0, 20.0).unwrap().round(), 1_693.0);
        assert_eq!(eoq(237_370.0, 1_200.0, 20.0).unwrap().round(), 5_337.0);
    }

    #[test]
    fn eoq_scaling_identity() {
        let base = eoq(1_234.0, 55.0, 3.0).unwrap();
        let scaled = eoq(4.0 * 1_234.0, 55.0, 3.0).unwrap();
        assert!((scaled - 2.0 * base).abs() < 1e-9 * base);
    }

    #[test]
    fn eoq_rejects_nonpositive() {
        assert!(eoq(0.0, 1.0, 1.0).is_err());
        assert!(eoq(1.0, -1.0, 1.0).is_err());
        assert!(eoq(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn worked_total_cost() {
        let a = total_annual_cost(28_670.0, 1_693.0, 1_000.0, 20.0).unwrap();
        assert!((a - 33_864.0).abs() / 33_864.0 < 0.003, "{a}");
        let d = total_annual_cost(13_056.0, 1_252.0, 1_200.0, 20.0).unwrap();
        assert!((d - 25_033.0).abs() / 25_033.0 < 0.003, "{d}");
        assert!(total_annual_cost(1.0, 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn components_balance_at_eoq() {
        let q = eoq(28_670.0, 1_000.0, 20.0).unwrap();
        let (o, h) = cost_components(28_670.0, q, 1_000.0, 20.0).unwrap();
        assert!((o - h).abs() / h < 0.005);
    }

    #[test]
    fn eoq_minimises_cost() {
        let (d, s, h) = (51_831.0, 1_000.0, 20.0);
        let q = eoq(d, s, h).unwrap();
        let best = total_annual_cost(d, q, s, h).unwrap();
        for f in [0.5, 0.9, 1.1, 2.0] {
            assert!(total_annual_cost(d, f * q, s, h).unwrap() >= best);
        }
    }

    #[test]
    fn profit_from_formula() {
        let p = total_annual_profit(28_670.0, 16.10, 1_693.0, 1_000.0, 20.0).unwrap();
        // 461,587 revenue less 33,864 cost
        assert!((p - 427_723.0).abs() < 1.0, "{p}");
        let c = total_annual_cost(500.0, 40.0, 10.0, 2.0).unwrap();
        assert_eq!(total_annual_profit(500.0, 0.0, 40.0, 10.0, 2.0).unwrap(), -c);
        let p1 = total_annual_profit(500.0, 3.0, 40.0, 10.0, 2.0).unwrap();
        let p2 = total_annual_profit(500.0, 6.0, 40.0, 10.0, 2.0).unwrap();
        assert!((p2 - p1 - 500.0 * 3.0).abs() < 1e-9);
    }

    #[test]
    fn safety_stock_values() {
        assert_eq!(safety_stock(1.65, 37.32, 9.0, 0.0), 185.0);
        assert_eq!(safety_stock(0.0, 37.32, 9.0, 0.0), 0.0);
        assert_eq!(safety_stock(1.65, 26.45, 6.0, 30.0), 262.0);
    }

    #[test]
    fn safety_stock_monotone() {
        let base = safety_stock(1.2, 10.0, 4.0, 1.0);
        assert!(safety_stock(1.3, 10.0, 4.0, 1.0) >= base);
        assert!(safety_stock(1.2, 11.0, 4.0, 1.0) >= base);
        assert!(safety_stock(1.2, 10.0, 5.0, 1.0) >= base);
        assert!(safety_stock(1.2, 10.0, 4.0, 2.0) >= base);
    }

    #[test]
    fn reorder_points() {
        assert_eq!(reorder_point(705.0, 185.0), 890.0);
        assert_eq!(reorder_point(42.0, 0.0), 42.0);
        assert_eq!(reorder_point(3_891.0, 262.0), 4_153.0);
    }

    #[test]
    fn lost_order_proportion() {
        assert_eq!(expected_lost_order_proportion(0.05, 100.0, 100.0).unwrap(), 0.0);
        assert_eq!(expected_lost_order_proportion(0.0, 10.0, 100.0).unwrap(), 0.0);
        let v = expected_lost_order_proportion(0.05, 185.0, 1_031.0).unwrap();
        assert!((v - 0.0410).abs() < 5e-5, "{v}");
        assert!(expected_lost_order_proportion(0.05, 1.0, 0.0).is_err());
    }

    #[test]
    fn q_star_as_printed() {
        let a = continuous_q_star(103.50, 1_000.0, 20.0).unwrap();
        assert!((a - 10_350f64.sqrt()).abs() < 1e-9);
        assert!((a - 101.7).abs() < 0.05);
        let b = continuous_q_star(648.55, 1_200.0, 20.0).unwrap();
        assert!((b - 279.0).abs() < 0.05, "{b}");
        let c = continuous_q_star(4.0 * 648.55, 1_200.0, 20.0).unwrap();
        assert!((c - 2.0 * b).abs() < 1e-9);
        assert!(continuous_q_star(0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn z_table_and_legacy() {
        assert_eq!(z_score(0.95, false).unwrap(), 1.6449);
        assert_eq!(z_score(0.95, true).unwrap(), 1.65);
        assert_eq!(z_score(0.99, false).unwrap(), 2.3263);
        assert!((z_score(0.975, false).unwrap() - 1.959964).abs() < 1e-5);
        assert!(z_score(1.0, false).is_err());
    }

    #[test]
    fn report_for_pra() {
        let cat = Catalog::reference();
        let settings = EoqSettings {
            legacy_z: true,
            ..Default::default()
        };
        let r = eoq_report(cat.get("PrA").unwrap(), &settings).unwrap();
        assert_eq!(r.eoq.round(), 1_693.0);
        assert_eq!(r.safety_stock, 185.0);
        assert_eq!(r.reorder_point, 890.0);
        assert!(r.expected_lost_order_proportion > 0.0 && r.expected_lost_order_proportion < 0.05);
    }
}
