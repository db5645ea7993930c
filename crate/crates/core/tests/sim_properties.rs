use invsim::catalog::ProductRecord;
use invsim::par::with_threads;
use invsim::sim::{replicate, replicate_sequential, simulate_once, simulate_summary, LeadTimeSetting, UnmetDemand};
use invsim::{DemandModel, PolicyParams, ProductSpec, RngStream, SimConfig};
use proptest::prelude::*;

fn product() -> impl Strategy<Value = ProductSpec> {
    (
        1.0f64..50.0,
        1.05f64..3.0,
        0u32..20,
        0u64..5_000,
        1.0f64..500.0,
        0.0f64..1.0,
        1.0f64..2_000.0,
        0.5f64..40.0,
        0.05f64..=1.0,
    )
        .prop_map(|(cost, markup, lead, start, mean, cv, order_cost, holding, p)| {
            ProductSpec::try_from(ProductRecord {
                name: "X".into(),
                purchase_cost: cost,
                lead_time: lead,
                size: 1.0,
                selling_price: cost * markup,
                starting_stock: start,
                mean,
                std_dev: mean * cv,
                order_cost,
                holding_cost: holding,
                probability: p,
                demand_lead: p * mean * lead as f64,
                annual_demand: p * mean * 365.0,
            })
            .unwrap()
        })
}

fn policy() -> impl Strategy<Value = PolicyParams> {
    prop_oneof![
        (1u32..60, 1u64..30_000).prop_map(|(p, s)| PolicyParams::periodic(p, s).unwrap()),
        (1u64..10_000, 1u64..20_000).prop_map(|(r, q)| PolicyParams::continuous(r, q).unwrap()),
    ]
}

fn lead_setting() -> impl Strategy<Value = LeadTimeSetting> {
    prop_oneof![
        Just(LeadTimeSetting::Deterministic),
        (0.0f64..=1.0, 1.01f64..3.0)
            .prop_map(|(p_meet, delay_factor)| LeadTimeSetting::MeetOrDelay { p_meet, delay_factor }),
    ]
}

fn unmet() -> impl Strategy<Value = UnmetDemand> {
    prop_oneof![Just(UnmetDemand::LostSales), Just(UnmetDemand::Backorder)]
}

fn config(seed: u64, lead_time: LeadTimeSetting, unmet_demand: UnmetDemand, horizon: u32) -> SimConfig {
    SimConfig {
        horizon,
        replications: 1,
        seed,
        lead_time,
        unmet_demand,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ledger_identity_is_exact(
        spec in product(), pol in policy(), lead in lead_setting(), mode in unmet(), seed: u64
    ) {
        let demand = DemandModel::for_product(&spec).unwrap();
        let cfg = config(seed, lead, mode, 365);
        let mut rng = RngStream::new(seed, 0);
        let (days, ledger) = simulate_once(&spec, &demand, &pol, &cfg, &mut rng).unwrap();
        prop_assert_eq!(
            ledger.annual_profit,
            ledger.revenue - ledger.product_costs - ledger.ordering_costs - ledger.holding_costs
        );
        let sold: u64 = days.iter().map(|d| d.sold + d.backlog_filled).sum();
        let ordered: u64 = days.iter().map(|d| d.order_placed).sum();
        let orders = days.iter().filter(|d| d.order_placed > 0).count() as f64;
        let unit_days: u64 = days.iter().map(|d| d.on_hand_end).sum();
        prop_assert_eq!(ledger.revenue, sold as f64 * spec.selling_price());
        prop_assert_eq!(ledger.product_costs, ordered as f64 * spec.purchase_cost());
        prop_assert_eq!(ledger.ordering_costs, orders * spec.order_cost());
        prop_assert_eq!(ledger.holding_costs, unit_days as f64 * spec.holding_cost() / 365.0);
    }

    #[test]
    fn stock_is_conserved(
        spec in product(), pol in policy(), lead in lead_setting(), mode in unmet(), seed: u64
    ) {
        let demand = DemandModel::for_product(&spec).unwrap();
        let cfg = config(seed, lead, mode, 365);
        let s = simulate_summary(&spec, &demand, &pol, &cfg, &mut RngStream::new(seed, 3)).unwrap();
        prop_assert_eq!(
            spec.starting_stock() + s.units_received,
            s.units_sold + s.units_backlog_filled + s.final_on_hand
        );
        prop_assert!(s.units_received <= s.units_ordered);
    }

    #[test]
    fn demand_is_split_into_sold_and_unmet(
        spec in product(), pol in policy(), lead in lead_setting(), mode in unmet(), seed: u64
    ) {
        let demand = DemandModel::for_product(&spec).unwrap();
        let cfg = config(seed, lead, mode, 365);
        let mut rng = RngStream::new(seed, 1);
        let (days, _) = simulate_once(&spec, &demand, &pol, &cfg, &mut rng).unwrap();
        for d in &days {
            prop_assert_eq!(d.sold + d.unmet, d.demand);
        }
        let s = simulate_summary(&spec, &demand, &pol, &cfg, &mut RngStream::new(seed, 1)).unwrap();
        prop_assert_eq!(s.units_sold + s.units_unmet, s.units_demanded);
        match mode {
            UnmetDemand::LostSales => prop_assert_eq!(s.units_lost, s.units_unmet),
            UnmetDemand::Backorder => prop_assert_eq!(s.units_unmet, s.units_backlog_filled + s.units_lost),
        }
    }

    #[test]
    fn replication_ignores_thread_count(
        spec in product(), pol in policy(), lead in lead_setting(), seed: u64, threads in 2usize..6
    ) {
        let demand = DemandModel::for_product(&spec).unwrap();
        let cfg = SimConfig { replications: 16, ..config(seed, lead, UnmetDemand::LostSales, 120) };
        let one = with_threads(Some(1), || replicate(&spec, &demand, &pol, &cfg).unwrap());
        let many = with_threads(Some(threads), || replicate(&spec, &demand, &pol, &cfg).unwrap());
        let seq = replicate_sequential(&spec, &demand, &pol, &cfg).unwrap();
        prop_assert_eq!(one, many);
        prop_assert_eq!(one, seq);
    }

    #[test]
    fn raising_oup_never_sells_less(
        spec in product(), review in 1u32..60, oup in 1u64..20_000, extra in 1u64..5_000,
        lead in lead_setting(), mode in unmet(), seed: u64
    ) {
        let demand = DemandModel::for_product(&spec).unwrap();
        let cfg = config(seed, lead, mode, 365);
        let sold = |s: u64| {
            let p = PolicyParams::periodic(review, s).unwrap();
            let r = simulate_summary(&spec, &demand, &p, &cfg, &mut RngStream::new(seed, 0)).unwrap();
            r.units_sold + r.units_backlog_filled
        };
        prop_assert!(sold(oup + extra) >= sold(oup));
    }

    #[test]
    fn generous_backorder_policy_loses_nothing(
        lead in 0u32..15, review in 1u32..40, daily in 1u64..300, slack in 0u64..1_000, seed: u64
    ) {
        let spec = ProductSpec::try_from(ProductRecord {
            name: "D".into(),
            purchase_cost: 5.0,
            lead_time: lead,
            size: 1.0,
            selling_price: 9.0,
            starting_stock: daily * (lead + review) as u64,
            mean: daily as f64,
            std_dev: 0.0,
            order_cost: 100.0,
            holding_cost: 2.0,
            probability: 1.0,
            demand_lead: (daily * lead as u64) as f64,
            annual_demand: daily as f64 * 365.0,
        })
        .unwrap();
        let demand = DemandModel::for_product(&spec).unwrap();
        let cfg = SimConfig { replications: 8, ..config(seed, LeadTimeSetting::Deterministic, UnmetDemand::Backorder, 365) };
        let oup = daily * (lead + review) as u64 + slack;
        let stats = replicate(&spec, &demand, &PolicyParams::periodic(review, oup).unwrap(), &cfg).unwrap();
        prop_assert_eq!(stats.lost_order_fraction, 0.0);
    }
}

// Order quantity is not pathwise monotone: a larger Q shifts every later
// reorder, so the stockout pattern on a fixed demand path can get worse.
#[test]
fn larger_q_can_sell_less_on_one_path() {
    let spec = ProductSpec::try_from(ProductRecord {
        name: "X".into(),
        purchase_cost: 1.0,
        lead_time: 15,
        size: 1.0,
        selling_price: 1.05,
        starting_stock: 895,
        mean: 439.32159416392483,
        std_dev: 220.01389530930808,
        order_cost: 1.0,
        holding_cost: 0.5,
        probability: 0.4712341791932851,
        demand_lead: 3105.3502624158396,
        annual_demand: 75563.52305211876,
    })
    .unwrap();
    let demand = DemandModel::for_product(&spec).unwrap();
    let seed = 1423481544839451038;
    let cfg = config(seed, LeadTimeSetting::Deterministic, UnmetDemand::LostSales, 365);
    let sold = |q: u64| {
        let p = PolicyParams::continuous(1, q).unwrap();
        simulate_summary(&spec, &demand, &p, &cfg, &mut RngStream::new(seed, 0))
            .unwrap()
            .units_sold
    };
    assert!(sold(7371 + 335) < sold(7371));
}
