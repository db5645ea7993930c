use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "invsim",
    version,
    about = "Inventory policy analytics, simulation and tuning",
    arg_required_else_help = true
)]
pub struct Cli {
    /// Product catalog CSV (defaults to the built-in reference table).
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Directory for report files, extra artifacts and manifest.json.
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,

    /// Log verbosity on stderr (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// EOQ, cost, safety stock and reorder point per product.
    Eoq(EoqArgs),
    /// Risk metrics per product.
    Risk(RiskArgs),
    /// Monte-Carlo replication of one policy family.
    Simulate(SimulateArgs),
    /// Profit curve over a range of order-up-to levels.
    Sweep(SweepArgs),
    /// Periodic versus continuous review across the catalog.
    Compare(CompareArgs),
    /// Bayesian optimization of catalog policy parameters.
    Optimize(OptimizeArgs),
    /// One-at-a-time sensitivity analysis.
    Sensitivity(SensitivityArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Eoq(_) => "eoq",
            Command::Risk(_) => "risk",
            Command::Simulate(_) => "simulate",
            Command::Sweep(_) => "sweep",
            Command::Compare(_) => "compare",
            Command::Optimize(_) => "optimize",
            Command::Sensitivity(_) => "sensitivity",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EoqArgs {
    #[arg(long, default_value_t = 0.95)]
    pub service_level: f64,
    /// Use two-decimal z-scores (1.65 at 95%).
    #[arg(long)]
    pub legacy_z: bool,
    /// Review interval (days) added to the lead time for safety stock.
    #[arg(long, default_value_t = 0.0)]
    pub review_time: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RiskArgs {
    #[arg(long, default_value_t = 1.0)]
    pub holding_cost_rate: f64,
    #[arg(long, default_value_t = 1.0)]
    pub backorder_cost: f64,
    /// Safety stock in standard deviations of lead-time demand.
    #[arg(long, default_value_t = 1.0)]
    pub safety_sigmas: f64,
    #[arg(long, default_value_t = 0.0)]
    pub scheduled_receipts: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyArg {
    /// Continuous review (r, Q).
    Rq,
    /// Periodic review (p, OUP).
    Pq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LeadTimeArg {
    Deterministic,
    /// Meet-or-delay with each product's catalog on-time probability.
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnmetArg {
    Lost,
    Backorder,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimArgs {
    #[arg(long, default_value_t = 365)]
    pub horizon: u32,
    /// Replications per policy evaluation (default 10000; 200 for optimize).
    #[arg(long)]
    pub replications: Option<u32>,
    #[arg(long, value_enum, default_value_t = LeadTimeArg::Deterministic)]
    pub lead_time: LeadTimeArg,
    /// Same on-time probability for every product (implies meet-or-delay).
    #[arg(long)]
    pub p_meet: Option<f64>,
    #[arg(long, default_value_t = 1.5)]
    pub delay_factor: f64,
    #[arg(long, value_enum, default_value_t = UnmetArg::Lost)]
    pub unmet: UnmetArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PolicyArgs {
    #[arg(long, value_enum, default_value_t = PolicyArg::Rq)]
    pub policy: PolicyArg,
    /// JSON object (inline or a file path) mapping product names to
    /// parameters, e.g. {"PrA": {"r": 812, "q": 2002}} or
    /// {"PrA": {"oup": 2071, "p": 30}}. Missing products use analytic defaults.
    #[arg(long)]
    pub params: Option<String>,
    /// Review period in days for periodic policies without an explicit `p`.
    #[arg(long, default_value_t = 30)]
    pub review_period: u32,
    /// z-score used by the analytic defaults.
    #[arg(long, default_value_t = 1.6449)]
    pub z: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[command(flatten)]
    pub sim: SimArgs,
    /// Restrict to these products (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub products: Vec<String>,
    /// Write the day-by-day trajectory of replication 0 per product.
    #[arg(long)]
    pub emit_trajectory: bool,
    /// Write profit and lost-fraction histograms with this many bins.
    #[arg(long)]
    pub emit_histogram: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, default_value = "PrA")]
    pub product: String,
    #[arg(long, default_value_t = 1000)]
    pub start: u64,
    #[arg(long, default_value_t = 3000)]
    pub end: u64,
    #[arg(long, default_value_t = 100)]
    pub step: u64,
    #[arg(long, default_value_t = 30)]
    pub review_period: u32,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TuningArg {
    /// Closed-form starting policies.
    Analytic,
    /// OUP sweep for periodic review, BO over (r, Q) for continuous.
    Tuned,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long, value_enum, default_value_t = TuningArg::Tuned)]
    pub tuning: TuningArg,
    /// Replications used while tuning.
    #[arg(long, default_value_t = 500)]
    pub search_replications: u32,
    /// BO evaluations per product when tuning (r, Q).
    #[arg(long, default_value_t = 40)]
    pub bo_budget: usize,
    #[arg(long, default_value_t = 30)]
    pub review_period: u32,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObjectiveArg {
    /// One order quantity per product, reorder points analytic.
    Rq,
    /// One order-up-to level per product.
    Pq,
    /// A separate one-dimensional search per product.
    OupPerProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AcquisitionArg {
    Ei,
    Pi,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OptimizeArgs {
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Rq)]
    pub objective: ObjectiveArg,
    /// JSON file with one [lo, hi] pair per dimension.
    #[arg(long)]
    pub bounds: Option<PathBuf>,
    #[arg(long, default_value_t = 80)]
    pub budget: usize,
    #[arg(long)]
    pub initial_design: Option<usize>,
    #[arg(long, value_enum, default_value_t = AcquisitionArg::Ei)]
    pub acquisition: AcquisitionArg,
    /// JSON file with alpha, centers, widths and weights.
    #[arg(long)]
    pub conditioning: Option<PathBuf>,
    #[arg(long, default_value_t = 30)]
    pub review_period: u32,
    #[arg(long, default_value_t = 1.6449)]
    pub z: f64,
    #[command(flatten)]
    pub sim: SimArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Linear,
    Resim,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SensitivityArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Linear)]
    pub mode: ModeArg,
    #[arg(
        long,
        value_delimiter = ',',
        allow_negative_numbers = true,
        default_value = "0.10,-0.05"
    )]
    pub deltas: Vec<f64>,
    /// Variables to perturb (default: the policy's own parameters plus
    /// selling_price, purchase_cost and demand_mean).
    #[arg(long, value_delimiter = ',')]
    pub variables: Vec<String>,
    #[command(flatten)]
    pub policy: PolicyArgs,
    #[command(flatten)]
    pub sim: SimArgs,
}
