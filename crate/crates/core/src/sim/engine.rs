use crate::catalog::{ProductSpec, DAYS_PER_YEAR};
use crate::error::Result;
use crate::stochastic::{DemandModel, LeadTimeModel, RngStream};

use super::{PolicyParams, SimConfig, UnmetDemand};

/// One simulated day. Days are numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DayRecord {
    pub day: u32,
    pub demand: u64,
    /// Served from stock on the day the demand arrived.
    pub sold: u64,
    pub unmet: u64,
    /// Backlogged units served today from earlier days (backorder mode).
    pub backlog_filled: u64,
    pub on_hand_end: u64,
    pub on_order: u64,
    pub backlog: u64,
    pub order_placed: u64,
    pub receipt: u64,
}

/// Annual profit decomposition. `annual_profit` is computed from the four
/// components in one expression, so the identity holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfitLedger {
    pub revenue: f64,
    pub product_costs: f64,
    pub ordering_costs: f64,
    pub holding_costs: f64,
    pub annual_profit: f64,
}

impl ProfitLedger {
    fn new(revenue: f64, product_costs: f64, ordering_costs: f64, holding_costs: f64) -> Self {
        ProfitLedger {
            revenue,
            product_costs,
            ordering_costs,
            holding_costs,
            annual_profit: revenue - product_costs - ordering_costs - holding_costs,
        }
    }
}

/// Totals of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub units_demanded: u64,
    /// Served on the day of demand.
    pub units_sold: u64,
    pub units_backlog_filled: u64,
    pub units_unmet: u64,
    /// Lost sales, or backlog still open at the end of the horizon.
    pub units_lost: u64,
    pub units_received: u64,
    pub units_ordered: u64,
    pub orders_placed: u64,
    /// Sum over days of end-of-day on-hand stock.
    pub unit_days: u64,
    pub final_on_hand: u64,
    pub ledger: ProfitLedger,
}

impl RunSummary {
    pub fn fill_rate(&self) -> f64 {
        if self.units_demanded == 0 {
            1.0
        } else {
            self.units_sold as f64 / self.units_demanded as f64
        }
    }

    pub fn lost_fraction(&self) -> f64 {
        if self.units_demanded == 0 {
            0.0
        } else {
            self.units_lost as f64 / self.units_demanded as f64
        }
    }
}

/// Simulates one horizon and returns the full trajectory.
///
/// Each day: receive deliveries due, observe demand, sell from stock (the
/// shortfall is lost or backlogged), review the policy on inventory
/// position, then accrue holding cost on end-of-day stock. An order placed
/// on day `d` with lead time `L` arrives at the start of day `d + L`
/// (immediately when `L = 0`). Purchase cost is charged on every unit
/// ordered, including orders still in transit when the horizon ends.
pub fn simulate_once(
    product: &ProductSpec,
    demand: &DemandModel,
    policy: &PolicyParams,
    cfg: &SimConfig,
    rng: &mut RngStream,
) -> Result<(Vec<DayRecord>, ProfitLedger)> {
    let mut days = Vec::with_capacity(cfg.horizon as usize);
    let lead = cfg.lead_time.model_for(product)?;
    let summary = run(product, demand, &lead, policy, cfg, rng, |r| days.push(*r));
    Ok((days, summary.ledger))
}

/// Like [`simulate_once`] but keeps only the totals.
pub fn simulate_summary(
    product: &ProductSpec,
    demand: &DemandModel,
    policy: &PolicyParams,
    cfg: &SimConfig,
    rng: &mut RngStream,
) -> Result<RunSummary> {
    let lead = cfg.lead_time.model_for(product)?;
    Ok(run(product, demand, &lead, policy, cfg, rng, |_| {}))
}

struct State {
    on_hand: u64,
    on_order: u64,
    backlog: u64,
    pipeline: Vec<(u32, u64)>,
}

impl State {
    /// Adds a delivery to stock, clearing backlog first. Returns the
    /// backlog units served.
    fn receive(&mut self, qty: u64) -> u64 {
        self.on_hand += qty;
        let fill = self.backlog.min(self.on_hand);
        self.on_hand -= fill;
        self.backlog -= fill;
        fill
    }

    fn position(&self) -> i128 {
        self.on_hand as i128 + self.on_order as i128 - self.backlog as i128
    }
}

pub(crate) fn run(
    product: &ProductSpec,
    demand: &DemandModel,
    lead: &LeadTimeModel,
    policy: &PolicyParams,
    cfg: &SimConfig,
    rng: &mut RngStream,
    mut sink: impl FnMut(&DayRecord),
) -> RunSummary {
    let mut st = State {
        on_hand: product.starting_stock(),
        on_order: 0,
        backlog: 0,
        pipeline: Vec::new(),
    };
    let mut totals = RunSummary {
        units_demanded: 0,
        units_sold: 0,
        units_backlog_filled: 0,
        units_unmet: 0,
        units_lost: 0,
        units_received: 0,
        units_ordered: 0,
        orders_placed: 0,
        unit_days: 0,
        final_on_hand: 0,
        ledger: ProfitLedger::new(0.0, 0.0, 0.0, 0.0),
    };

    for day in 1..=cfg.horizon {
        let mut receipt = 0;
        if !st.pipeline.is_empty() {
            st.pipeline.retain(|&(arrival, qty)| {
                if arrival <= day {
                    receipt += qty;
                    false
                } else {
                    true
                }
            });
        }
        st.on_order -= receipt;
        let mut backlog_filled = st.receive(receipt);

        let demand_today = demand.sample(rng);
        let lead_days = lead.sample(rng);

        let sold = demand_today.min(st.on_hand);
        let unmet = demand_today - sold;
        st.on_hand -= sold;
        match cfg.unmet_demand {
            UnmetDemand::LostSales => totals.units_lost += unmet,
            UnmetDemand::Backorder => st.backlog += unmet,
        }

        let position = st.position();
        let order = match *policy {
            PolicyParams::PeriodicReview {
                review_period,
                order_up_to,
            } => {
                if day % review_period == 0 && position < order_up_to as i128 {
                    (order_up_to as i128 - position) as u64
                } else {
                    0
                }
            }
            PolicyParams::ContinuousReview {
                reorder_point,
                order_quantity,
            } => {
                if position <= reorder_point as i128 {
                    order_quantity
                } else {
                    0
                }
            }
        };
        if order > 0 {
            totals.orders_placed += 1;
            totals.units_ordered += order;
            if lead_days == 0 {
                receipt += order;
                backlog_filled += st.receive(order);
            } else {
                st.on_order += order;
                st.pipeline.push((day + lead_days, order));
            }
        }

        totals.units_demanded += demand_today;
        totals.units_sold += sold;
        totals.units_unmet += unmet;
        totals.units_backlog_filled += backlog_filled;
        totals.units_received += receipt;
        totals.unit_days += st.on_hand;

        sink(&DayRecord {
            day,
            demand: demand_today,
            sold,
            unmet,
            backlog_filled,
            on_hand_end: st.on_hand,
            on_order: st.on_order,
            backlog: st.backlog,
            order_placed: order,
            receipt,
        });
    }

    if cfg.unmet_demand == UnmetDemand::Backorder {
        totals.units_lost = st.backlog;
    }
    totals.final_on_hand = st.on_hand;
    totals.ledger = ProfitLedger::new(
        (totals.units_sold + totals.units_backlog_filled) as f64 * product.selling_price(),
        totals.units_ordered as f64 * product.purchase_cost(),
        totals.orders_placed as f64 * product.order_cost(),
        totals.unit_days as f64 * product.holding_cost() / DAYS_PER_YEAR,
    );
    totals
}
