use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use invsim::eoq::{eoq_report, EoqSettings};
use invsim::gp::{bo_run, Acquisition, BoConfig, BoOutcome, ConditioningFn};
use invsim::histogram::{histogram, to_csv as histogram_csv};
use invsim::risk::{risk_report, RiskSettings};
use invsim::sensitivity::{run_sensitivity, Mode, SensitivitySpec, Variable};
use invsim::sim::{
    compare_policies, replicate, replicate_runs, simulate_once, sweep_oup, LeadTimeSetting, OupRange, UnmetDemand,
};
use invsim::stochastic::RNG_ALGORITHM;
use invsim::tune::{
    analytic_continuous, analytic_periodic, tune_catalog, CatalogObjective, ObjectiveKind, TuneOptions,
};
use invsim::{Catalog, DemandModel, PolicyParams, ReplicationStats, RngStream, SimConfig};
use serde::Deserialize;

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::report::{csv_table, emit, num, Artifact, Output, RunManifest};

const DEFAULT_REPLICATIONS: u32 = 10_000;
const OPTIMIZE_REPLICATIONS: u32 = 200;

pub fn run(cli: Cli) -> CliResult<()> {
    let (catalog, catalog_label) = match &cli.catalog {
        Some(p) => (Catalog::load(p)?, p.display().to_string()),
        None => (Catalog::reference(), "builtin:reference".to_string()),
    };
    let name = cli.command.name();
    let config = match &cli.command {
        Command::Eoq(a) => serde_json::to_value(a),
        Command::Risk(a) => serde_json::to_value(a),
        Command::Simulate(a) => serde_json::to_value(a),
        Command::Sweep(a) => serde_json::to_value(a),
        Command::Compare(a) => serde_json::to_value(a),
        Command::Optimize(a) => serde_json::to_value(a),
        Command::Sensitivity(a) => serde_json::to_value(a),
    }?;
    let manifest = RunManifest {
        subcommand: name.to_string(),
        catalog: catalog_label,
        seed: cli.seed,
        config,
        tool_version: env!("CARGO_PKG_VERSION"),
        rng: RNG_ALGORITHM,
        timestamp: None,
    };
    if let Command::Simulate(a) = &cli.command {
        if (a.emit_trajectory || a.emit_histogram.is_some()) && cli.out_dir.is_none() {
            return Err(CliError::config(
                "--emit-trajectory and --emit-histogram need --out-dir",
            ));
        }
    }
    let seed = cli.seed;
    let command = &cli.command;
    let catalog = &catalog;
    let output = invsim::par::with_threads(cli.threads, move || match command {
        Command::Eoq(a) => eoq(catalog, a),
        Command::Risk(a) => risk(catalog, a),
        Command::Simulate(a) => simulate(catalog, seed, a),
        Command::Sweep(a) => sweep(catalog, seed, a),
        Command::Compare(a) => compare(catalog, seed, a),
        Command::Optimize(a) => optimize(catalog, seed, a),
        Command::Sensitivity(a) => sensitivity(catalog, seed, a),
    })?;
    emit(name, &manifest, &output, cli.out_dir.as_deref())
}

fn sim_config(args: &SimArgs, seed: u64, default_replications: u32) -> CliResult<SimConfig> {
    let lead_time = match (args.p_meet, args.lead_time) {
        (Some(p_meet), _) => LeadTimeSetting::MeetOrDelay {
            p_meet,
            delay_factor: args.delay_factor,
        },
        (None, LeadTimeArg::Deterministic) => LeadTimeSetting::Deterministic,
        (None, LeadTimeArg::Catalog) => LeadTimeSetting::MeetOrDelayFromCatalog {
            delay_factor: args.delay_factor,
        },
    };
    let cfg = SimConfig {
        horizon: args.horizon,
        replications: args.replications.unwrap_or(default_replications),
        seed,
        lead_time,
        unmet_demand: match args.unmet {
            UnmetArg::Lost => UnmetDemand::LostSales,
            UnmetArg::Backorder => UnmetDemand::Backorder,
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

fn eoq(catalog: &Catalog, a: &EoqArgs) -> CliResult<Output> {
    let settings = EoqSettings {
        service_level: a.service_level,
        legacy_z: a.legacy_z,
        review_time: a.review_time,
    };
    let rows = catalog
        .products()
        .iter()
        .map(|p| {
            let r = eoq_report(p, &settings)?;
            Ok(vec![
                r.product,
                num(r.annual_demand, 0),
                num(r.eoq, 2),
                num(r.total_annual_cost, 2),
                num(r.total_annual_profit, 2),
                num(r.z_score, 4),
                num(r.safety_stock, 0),
                num(r.reorder_point, 0),
                num(r.expected_lost_order_proportion, 6),
            ])
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output::new(csv_table(
        &[
            "product",
            "annual_demand",
            "eoq",
            "total_annual_cost",
            "total_annual_profit",
            "z",
            "safety_stock",
            "reorder_point",
            "expected_lost_order_proportion",
        ],
        &rows,
    )?))
}

fn risk(catalog: &Catalog, a: &RiskArgs) -> CliResult<Output> {
    let settings = RiskSettings {
        holding_cost_rate: a.holding_cost_rate,
        backorder_cost_per_unit: a.backorder_cost,
        safety_stock_sigmas: a.safety_sigmas,
        scheduled_receipts: a.scheduled_receipts,
    };
    let rows: Vec<Vec<String>> = risk_report(catalog, &settings)?
        .into_iter()
        .map(|r| {
            vec![
                r.product,
                num(r.hcr, 2),
                num(r.service_level, 6),
                r.spr_rank.to_string(),
                num(r.p_meet, 2),
                num(r.ihc, 2),
                num(r.expected_backorders, 2),
                num(r.boc, 2),
                num(r.efr, 6),
                num(r.safety_stock, 0),
            ]
        })
        .collect();
    Ok(Output::new(csv_table(
        &[
            "product",
            "hcr",
            "service_level",
            "spr_rank",
            "p_meet",
            "ihc",
            "expected_backorders",
            "boc",
            "efr",
            "safety_stock",
        ],
        &rows,
    )?))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamEntry {
    #[serde(alias = "r")]
    reorder_point: Option<u64>,
    #[serde(alias = "q")]
    order_quantity: Option<u64>,
    #[serde(alias = "p")]
    review_period: Option<u32>,
    #[serde(alias = "oup")]
    order_up_to: Option<u64>,
}

fn read_json_arg(value: &str) -> CliResult<String> {
    if value.trim_start().starts_with('{') || value.trim_start().starts_with('[') {
        Ok(value.to_string())
    } else {
        fs::read_to_string(value).map_err(|e| CliError::Io(format!("{value}: {e}")))
    }
}

fn read_json_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Policy per product: explicit parameters where given, analytic defaults
/// for anything left out.
fn resolve_policies(catalog: &Catalog, a: &PolicyArgs) -> CliResult<HashMap<String, PolicyParams>> {
    let given: BTreeMap<String, ParamEntry> = match &a.params {
        Some(v) => serde_json::from_str(&read_json_arg(v)?)?,
        None => BTreeMap::new(),
    };
    if let Some(unknown) = given.keys().find(|k| catalog.get(k).is_none()) {
        return Err(CliError::config(format!("--params names unknown product {unknown}")));
    }
    let mut out = HashMap::new();
    for spec in catalog.products() {
        let demand = DemandModel::for_product(spec)?;
        let entry = given.get(spec.name());
        let policy = match a.policy {
            PolicyArg::Rq => {
                let default = analytic_continuous(spec, &demand, a.z)?;
                let PolicyParams::ContinuousReview {
                    reorder_point,
                    order_quantity,
                } = default
                else {
                    unreachable!()
                };
                let e = entry.map(|e| (e.reorder_point, e.order_quantity)).unwrap_or_default();
                if entry.is_some_and(|e| e.review_period.is_some() || e.order_up_to.is_some()) {
                    return Err(CliError::config(format!(
                        "{}: periodic parameters given for --policy rq",
                        spec.name()
                    )));
                }
                PolicyParams::continuous(e.0.unwrap_or(reorder_point), e.1.unwrap_or(order_quantity))?
            }
            PolicyArg::Pq => {
                if entry.is_some_and(|e| e.reorder_point.is_some() || e.order_quantity.is_some()) {
                    return Err(CliError::config(format!(
                        "{}: continuous parameters given for --policy pq",
                        spec.name()
                    )));
                }
                let p = entry.and_then(|e| e.review_period).unwrap_or(a.review_period);
                match entry.and_then(|e| e.order_up_to) {
                    Some(oup) => PolicyParams::periodic(p, oup)?,
                    None => analytic_periodic(spec, &demand, p, a.z)?,
                }
            }
        };
        out.insert(spec.name().to_string(), policy);
    }
    Ok(out)
}

fn policy_columns(p: &PolicyParams) -> [String; 4] {
    match *p {
        PolicyParams::PeriodicReview {
            review_period,
            order_up_to,
        } => [
            review_period.to_string(),
            order_up_to.to_string(),
            String::new(),
            String::new(),
        ],
        PolicyParams::ContinuousReview {
            reorder_point,
            order_quantity,
        } => [
            String::new(),
            String::new(),
            reorder_point.to_string(),
            order_quantity.to_string(),
        ],
    }
}

const POLICY_HEADER: [&str; 4] = ["review_period", "order_up_to", "reorder_point", "order_quantity"];

fn stats_columns(s: &ReplicationStats) -> Vec<String> {
    vec![
        num(s.mean_profit, 2),
        num(s.profit_std, 2),
        num(s.profit_std_error(), 2),
        num(s.lost_order_fraction, 6),
        num(s.fill_rate, 6),
        num(s.mean_orders_placed, 4),
        num(s.mean_units_sold, 2),
        num(s.mean_revenue, 2),
        num(s.mean_holding_costs, 2),
        s.n.to_string(),
    ]
}

const STATS_HEADER: [&str; 10] = [
    "mean_profit",
    "profit_std",
    "profit_std_error",
    "lost_order_fraction",
    "fill_rate",
    "mean_orders",
    "mean_units_sold",
    "mean_revenue",
    "mean_holding_costs",
    "replications",
];

fn simulate(catalog: &Catalog, seed: u64, a: &SimulateArgs) -> CliResult<Output> {
    let cfg = sim_config(&a.sim, seed, DEFAULT_REPLICATIONS)?;
    let policies = resolve_policies(catalog, &a.policy)?;
    if let Some(unknown) = a.products.iter().find(|p| catalog.get(p).is_none()) {
        return Err(CliError::config(format!("unknown product {unknown}")));
    }
    let mut rows = Vec::new();
    let mut artifacts = Vec::new();
    for (slot, spec) in catalog.products().iter().enumerate() {
        if !a.products.is_empty() && !a.products.iter().any(|p| p == spec.name()) {
            continue;
        }
        let demand = DemandModel::for_product(spec)?;
        let policy = policies[spec.name()];
        let pcfg = cfg.for_product(slot);
        let runs = replicate_runs(spec, &demand, &policy, &pcfg)?;
        let stats = ReplicationStats::from_runs(&runs)?;
        let mut row = vec![spec.name().to_string()];
        row.extend(policy_columns(&policy));
        row.extend(stats_columns(&stats));
        rows.push(row);

        if let Some(bins) = a.emit_histogram {
            let profits: Vec<f64> = runs.iter().map(|r| r.ledger.annual_profit).collect();
            let lost: Vec<f64> = runs.iter().map(|r| r.lost_fraction()).collect();
            artifacts.push(Artifact {
                file_name: format!("histogram_profit_{}.csv", spec.name()),
                content: histogram_csv(&histogram(&profits, bins)?),
            });
            artifacts.push(Artifact {
                file_name: format!("histogram_lost_{}.csv", spec.name()),
                content: histogram_csv(&histogram(&lost, bins)?),
            });
        }
        if a.emit_trajectory {
            let mut rng = RngStream::new(pcfg.seed, 0);
            let (days, _) = simulate_once(spec, &demand, &policy, &pcfg, &mut rng)?;
            let rows: Vec<Vec<String>> = days
                .iter()
                .map(|d| {
                    [
                        d.day as u64,
                        d.demand,
                        d.sold,
                        d.unmet,
                        d.backlog_filled,
                        d.on_hand_end,
                        d.on_order,
                        d.backlog,
                        d.order_placed,
                        d.receipt,
                    ]
                    .iter()
                    .map(|v| v.to_string())
                    .collect()
                })
                .collect();
            artifacts.push(Artifact {
                file_name: format!("trajectory_{}.csv", spec.name()),
                content: csv_table(
                    &[
                        "day",
                        "demand",
                        "sold",
                        "unmet",
                        "backlog_filled",
                        "on_hand_end",
                        "on_order",
                        "backlog",
                        "order_placed",
                        "receipt",
                    ],
                    &rows,
                )?,
            });
        }
    }
    let mut header = vec!["product"];
    header.extend(POLICY_HEADER);
    header.extend(STATS_HEADER);
    Ok(Output {
        report: csv_table(&header, &rows)?,
        artifacts,
    })
}

fn sweep(catalog: &Catalog, seed: u64, a: &SweepArgs) -> CliResult<Output> {
    let cfg = sim_config(&a.sim, seed, DEFAULT_REPLICATIONS)?;
    let slot = catalog
        .index_of(&a.product)
        .ok_or_else(|| CliError::config(format!("unknown product {}", a.product)))?;
    let spec = &catalog.products()[slot];
    let demand = DemandModel::for_product(spec)?;
    let range = OupRange::new(a.start, a.end, a.step)?;
    let rows: Vec<Vec<String>> = sweep_oup(spec, &demand, &cfg.for_product(slot), a.review_period, range)?
        .into_iter()
        .map(|(oup, s)| {
            let mut row = vec![oup.to_string()];
            row.extend(stats_columns(&s));
            row
        })
        .collect();
    let mut header = vec!["order_up_to"];
    header.extend(STATS_HEADER);
    Ok(Output::new(csv_table(&header, &rows)?))
}

fn compare(catalog: &Catalog, seed: u64, a: &CompareArgs) -> CliResult<Output> {
    let cfg = sim_config(&a.sim, seed, DEFAULT_REPLICATIONS)?;
    let opts = TuneOptions {
        review_period: a.review_period,
        bo_budget: a.bo_budget,
        seed,
        search_replications: Some(a.search_replications),
        ..TuneOptions::default()
    };
    let (periodic, continuous) = match a.tuning {
        TuningArg::Tuned => {
            let t = tune_catalog(catalog, &cfg, &opts)?;
            (t.periodic_map(), t.continuous_map())
        }
        TuningArg::Analytic => {
            let mut pq = HashMap::new();
            let mut rq = HashMap::new();
            for spec in catalog.products() {
                let d = DemandModel::for_product(spec)?;
                pq.insert(
                    spec.name().to_string(),
                    analytic_periodic(spec, &d, a.review_period, opts.z)?,
                );
                rq.insert(spec.name().to_string(), analytic_continuous(spec, &d, opts.z)?);
            }
            (pq, rq)
        }
    };
    let c = compare_policies(catalog, &cfg, &periodic, &continuous)?;
    let mut rows: Vec<Vec<String>> = c
        .products
        .iter()
        .map(|p| {
            let [rp, oup, _, _] = policy_columns(&p.periodic);
            let [_, _, r, q] = policy_columns(&p.continuous);
            vec![
                p.product.clone(),
                rp,
                oup,
                r,
                q,
                num(p.periodic_stats.mean_profit, 2),
                num(p.periodic_stats.profit_std, 2),
                num(p.periodic_stats.lost_order_fraction, 6),
                num(p.continuous_stats.mean_profit, 2),
                num(p.continuous_stats.profit_std, 2),
                num(p.continuous_stats.lost_order_fraction, 6),
                num(
                    (p.continuous_stats.mean_profit - p.periodic_stats.mean_profit)
                        / p.periodic_stats.mean_profit.abs(),
                    6,
                ),
            ]
        })
        .collect();
    let blank = String::new;
    rows.push(vec![
        "TOTAL".to_string(),
        blank(),
        blank(),
        blank(),
        blank(),
        num(c.total_periodic, 2),
        blank(),
        blank(),
        num(c.total_continuous, 2),
        blank(),
        blank(),
        num(c.relative_difference, 6),
    ]);
    Ok(Output::new(csv_table(
        &[
            "product",
            "review_period",
            "order_up_to",
            "reorder_point",
            "order_quantity",
            "pq_profit",
            "pq_profit_std",
            "pq_lost_fraction",
            "rq_profit",
            "rq_profit_std",
            "rq_lost_fraction",
            "rq_vs_pq",
        ],
        &rows,
    )?))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConditioningFile {
    alpha: f64,
    centers: Vec<Vec<f64>>,
    widths: Vec<f64>,
    weights: Vec<f64>,
}

fn load_bounds(path: &Path, dim: usize) -> CliResult<Vec<(f64, f64)>> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(&read_json_file(path)?)?;
    if raw.len() != dim {
        return Err(CliError::config(format!(
            "{} lists {} bounds but the objective has {dim} dimensions",
            path.display(),
            raw.len()
        )));
    }
    Ok(raw.into_iter().map(|[lo, hi]| (lo, hi)).collect())
}

fn history_rows(out: &BoOutcome, prefix: &[String]) -> Vec<Vec<String>> {
    out.history
        .iter()
        .map(|o| {
            let mut row = prefix.to_vec();
            row.push(o.iteration.to_string());
            row.extend(o.x.iter().map(|v| num(*v, 4)));
            row.push(num(o.y, 2));
            row.push(num(o.incumbent, 2));
            row
        })
        .collect()
}

fn bo_config(a: &OptimizeArgs, bounds: Vec<(f64, f64)>, seed: u64) -> BoConfig {
    let mut bo = BoConfig::new(bounds, a.budget);
    if let Some(n) = a.initial_design {
        bo.initial_design = n;
    }
    bo.acquisition = match a.acquisition {
        AcquisitionArg::Ei => Acquisition::ExpectedImprovement,
        AcquisitionArg::Pi => Acquisition::ProbabilityOfImprovement,
    };
    bo.seed = seed;
    bo.objective_seed = seed;
    bo
}

fn summary_json(out: &BoOutcome, extra: serde_json::Value) -> serde_json::Value {
    serde_json::json!({
        "best_x": out.best_x,
        "best_y": out.best_y,
        "evaluations": out.history.len(),
        "hyperparams": out.hyperparams.as_ref().map(|h| serde_json::json!({
            "length_scales": h.length_scales,
            "signal_variance": h.signal_variance,
            "noise_variance": h.noise_variance,
        })),
        "policies": extra,
    })
}

fn optimize(catalog: &Catalog, seed: u64, a: &OptimizeArgs) -> CliResult<Output> {
    let cfg = sim_config(&a.sim, seed, OPTIMIZE_REPLICATIONS)?;
    let conditioning = match &a.conditioning {
        Some(p) => {
            let f: ConditioningFile = serde_json::from_str(&read_json_file(p)?)?;
            Some(ConditioningFn::from_parts(f.alpha, f.centers, f.widths, f.weights)?)
        }
        None => None,
    };
    let opts = TuneOptions {
        review_period: a.review_period,
        z: a.z,
        seed,
        ..TuneOptions::default()
    };
    let abort = |e: invsim::gp::BoAbort| {
        log::error!("optimization stopped after {} evaluations", e.history.len());
        CliError::from(e.error)
    };

    if a.objective == ObjectiveArg::OupPerProduct {
        if a.bounds.is_some() || conditioning.is_some() {
            return Err(CliError::config(
                "--bounds and --conditioning apply to the rq and pq objectives only",
            ));
        }
        let mut rows = Vec::new();
        let mut best = serde_json::Map::new();
        for (slot, spec) in catalog.products().iter().enumerate() {
            let demand = DemandModel::for_product(spec)?;
            let pcfg = cfg.for_product(slot);
            let t = demand.daily_mean() * (spec.lead_time() + a.review_period) as f64;
            let bo = bo_config(a, vec![(1.0, (2.5 * t).max(10.0))], seed);
            let objective = |x: &[f64]| -> invsim::Result<f64> {
                let policy = PolicyParams::periodic(a.review_period, (x[0].round() as u64).max(1))?;
                Ok(replicate(spec, &demand, &policy, &pcfg)?.mean_profit)
            };
            let out = bo_run(objective, &bo, None).map_err(abort)?;
            rows.extend(history_rows(&out, &[spec.name().to_string()]));
            best.insert(
                spec.name().to_string(),
                serde_json::json!({
                    "review_period": a.review_period,
                    "order_up_to": (out.best_x[0].round() as u64).max(1),
                    "mean_profit": out.best_y,
                }),
            );
        }
        let summary = serde_json::json!({ "products": best });
        return Ok(Output {
            report: csv_table(&["product", "iteration", "order_up_to", "y", "incumbent"], &rows)?,
            artifacts: vec![Artifact {
                file_name: "optimize.json".into(),
                content: serde_json::to_string_pretty(&summary)? + "\n",
            }],
        });
    }

    let kind = match a.objective {
        ObjectiveArg::Rq => ObjectiveKind::OrderQuantity,
        _ => ObjectiveKind::OrderUpTo,
    };
    let objective = CatalogObjective::new(catalog, &cfg, kind, &opts)?;
    let bounds = match &a.bounds {
        Some(p) => load_bounds(p, objective.dim())?,
        None => objective.default_bounds(),
    };
    let bo = bo_config(a, bounds, seed);
    let out = bo_run(|x: &[f64]| objective.evaluate(x), &bo, conditioning.as_ref()).map_err(abort)?;

    let label = match kind {
        ObjectiveKind::OrderQuantity => "q",
        ObjectiveKind::OrderUpTo => "oup",
    };
    let x_names: Vec<String> = objective
        .product_names()
        .iter()
        .map(|n| format!("{label}_{n}"))
        .collect();
    let mut header = vec!["iteration"];
    header.extend(x_names.iter().map(String::as_str));
    header.extend(["y", "incumbent"]);
    let policies = objective.policies(&out.best_x)?;
    let named: serde_json::Map<String, serde_json::Value> = objective
        .product_names()
        .iter()
        .zip(&policies)
        .map(|(n, p)| Ok((n.to_string(), serde_json::to_value(p)?)))
        .collect::<CliResult<_>>()?;
    Ok(Output {
        report: csv_table(&header, &history_rows(&out, &[]))?,
        artifacts: vec![Artifact {
            file_name: "optimize.json".into(),
            content: serde_json::to_string_pretty(&summary_json(&out, serde_json::Value::Object(named)))? + "\n",
        }],
    })
}

fn sensitivity(catalog: &Catalog, seed: u64, a: &SensitivityArgs) -> CliResult<Output> {
    let cfg = sim_config(&a.sim, seed, DEFAULT_REPLICATIONS)?;
    let policies = resolve_policies(catalog, &a.policy)?;
    let variables: Vec<Variable> = if a.variables.is_empty() {
        let own: &[Variable] = match a.policy.policy {
            PolicyArg::Rq => &[Variable::ReorderPoint, Variable::OrderQuantity],
            PolicyArg::Pq => &[Variable::Oup],
        };
        own.iter()
            .copied()
            .chain([Variable::SellingPrice, Variable::PurchaseCost, Variable::DemandMean])
            .collect()
    } else {
        a.variables.iter().map(|v| v.parse()).collect::<invsim::Result<_>>()?
    };
    let spec = SensitivitySpec {
        variables,
        deltas: a.deltas.clone(),
        mode: match a.mode {
            ModeArg::Linear => Mode::Linear,
            ModeArg::Resim => Mode::Resimulate,
        },
    };
    let rows: Vec<Vec<String>> = run_sensitivity(catalog, &policies, &cfg, &spec)?
        .into_iter()
        .map(|r| {
            vec![
                r.variable.to_string(),
                num(r.delta, 4),
                r.outputs.product,
                num(r.outputs.profit, 2),
                num(r.outputs.profit_std, 2),
                num(r.outputs.lost_orders, 6),
                num(r.outputs.safety_stock, 2),
                r.requires_resim.to_string(),
            ]
        })
        .collect();
    Ok(Output::new(csv_table(
        &[
            "variable",
            "delta",
            "product",
            "profit",
            "profit_std",
            "lost_orders",
            "safety_stock",
            "requires_resim",
        ],
        &rows,
    )?))
}
