//! Product catalog: the per-product economic, demand and lead-time inputs.
//!
//! A [`ProductSpec`] can only be obtained through validation, so every spec
//! held by a [`Catalog`] satisfies its invariants. Money is stored as `f64`;
//! holding cost is per unit per *year* (the simulator divides by 365).

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Days in the simulated year. Order probability is read per calendar day.
pub const DAYS_PER_YEAR: f64 = 365.0;

/// Relative gap between implied and declared annual demand above which
/// loading logs a warning.
pub const RECONCILIATION_TOLERANCE: f64 = 0.05;

/// Column order of the catalog CSV.
pub const CSV_HEADER: [&str; 13] = [
    "name",
    "purchase_cost",
    "lead_time",
    "size",
    "selling_price",
    "starting_stock",
    "mean",
    "std_dev",
    "order_cost",
    "holding_cost",
    "probability",
    "demand_lead",
    "annual_demand",
];

const REFERENCE_CSV: &str = include_str!("../data/table1.csv");

/// Unvalidated catalog row, one field per CSV column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub name: String,
    pub purchase_cost: f64,
    pub lead_time: u32,
    pub size: f64,
    pub selling_price: f64,
    pub starting_stock: u64,
    pub mean: f64,
    pub std_dev: f64,
    pub order_cost: f64,
    pub holding_cost: f64,
    pub probability: f64,
    pub demand_lead: f64,
    pub annual_demand: f64,
}

/// A validated product.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductSpec {
    name: String,
    purchase_cost: f64,
    lead_time: u32,
    unit_size: f64,
    selling_price: f64,
    starting_stock: u64,
    daily_order_size_mean: f64,
    daily_order_size_std: f64,
    order_cost: f64,
    holding_cost: f64,
    order_probability: f64,
    lead_time_demand: f64,
    annual_demand: f64,
}

impl TryFrom<ProductRecord> for ProductSpec {
    type Error = Error;

    fn try_from(r: ProductRecord) -> Result<Self> {
        let fail = |field: &'static str, message: String| Error::Validation {
            product: r.name.clone(),
            field,
            message,
        };
        if r.name.trim().is_empty() {
            return Err(fail("name", "empty product name".into()));
        }
        let positive = [
            ("purchase_cost", r.purchase_cost),
            ("selling_price", r.selling_price),
            ("order_cost", r.order_cost),
            ("holding_cost", r.holding_cost),
        ];
        for (field, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(fail(field, format!("must be > 0, got {v}")));
            }
        }
        let non_negative = [
            ("size", r.size),
            ("mean", r.mean),
            ("std_dev", r.std_dev),
            ("demand_lead", r.demand_lead),
            ("annual_demand", r.annual_demand),
        ];
        for (field, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(fail(field, format!("must be >= 0, got {v}")));
            }
        }
        if !(0.0..=1.0).contains(&r.probability) {
            return Err(fail(
                "probability",
                format!("must lie in [0, 1], got {}", r.probability),
            ));
        }
        if r.probability > 0.0 && r.mean <= 0.0 {
            return Err(fail("mean", "order size mean must be > 0 when orders can occur".into()));
        }
        Ok(ProductSpec {
            name: r.name,
            purchase_cost: r.purchase_cost,
            lead_time: r.lead_time,
            unit_size: r.size,
            selling_price: r.selling_price,
            starting_stock: r.starting_stock,
            daily_order_size_mean: r.mean,
            daily_order_size_std: r.std_dev,
            order_cost: r.order_cost,
            holding_cost: r.holding_cost,
            order_probability: r.probability,
            lead_time_demand: r.demand_lead,
            annual_demand: r.annual_demand,
        })
    }
}

impl ProductSpec {
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn purchase_cost(&self) -> f64 {
        self.purchase_cost
    }
    pub fn lead_time(&self) -> u32 {
        self.lead_time
    }
    pub fn unit_size(&self) -> f64 {
        self.unit_size
    }
    pub fn selling_price(&self) -> f64 {
        self.selling_price
    }
    pub fn starting_stock(&self) -> u64 {
        self.starting_stock
    }
    /// Mean size of an order on days an order occurs.
    pub fn daily_order_size_mean(&self) -> f64 {
        self.daily_order_size_mean
    }
    pub fn daily_order_size_std(&self) -> f64 {
        self.daily_order_size_std
    }
    pub fn order_cost(&self) -> f64 {
        self.order_cost
    }
    /// Holding cost per unit per year.
    pub fn holding_cost(&self) -> f64 {
        self.holding_cost
    }
    /// Probability that a customer order occurs on a given day. The same
    /// column doubles as the supplier on-time probability for lead-time
    /// models that ask for it.
    pub fn order_probability(&self) -> f64 {
        self.order_probability
    }
    /// Lead-time demand as declared in the catalog (stored, not derived).
    pub fn lead_time_demand(&self) -> f64 {
        self.lead_time_demand
    }
    pub fn annual_demand(&self) -> f64 {
        self.annual_demand
    }

    pub fn to_record(&self) -> ProductRecord {
        ProductRecord {
            name: self.name.clone(),
            purchase_cost: self.purchase_cost,
            lead_time: self.lead_time,
            size: self.unit_size,
            selling_price: self.selling_price,
            starting_stock: self.starting_stock,
            mean: self.daily_order_size_mean,
            std_dev: self.daily_order_size_std,
            order_cost: self.order_cost,
            holding_cost: self.holding_cost,
            probability: self.order_probability,
            demand_lead: self.lead_time_demand,
            annual_demand: self.annual_demand,
        }
    }

    /// Returns a copy with some fields changed, re-validated.
    pub fn modified(&self, edit: impl FnOnce(&mut ProductRecord)) -> Result<ProductSpec> {
        let mut record = self.to_record();
        edit(&mut record);
        ProductSpec::try_from(record)
    }
}

/// Implied vs declared annual demand for one product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reconciliation {
    pub implied_annual_demand: f64,
    pub declared_annual_demand: f64,
    pub relative_error: f64,
}

impl Reconciliation {
    pub fn within_tolerance(&self) -> bool {
        self.relative_error <= RECONCILIATION_TOLERANCE
    }
}

/// Compares `365 · p · mean` against the declared annual demand.
pub fn reconcile(spec: &ProductSpec) -> Reconciliation {
    let implied = DAYS_PER_YEAR * spec.order_probability * spec.daily_order_size_mean;
    let declared = spec.annual_demand;
    let relative_error = if declared > 0.0 {
        (implied - declared).abs() / declared
    } else if implied == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Reconciliation {
        implied_annual_demand: implied,
        declared_annual_demand: declared,
        relative_error,
    }
}

/// An ordered, non-empty set of products with unique names.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    products: Vec<ProductSpec>,
    source_path: String,
}

impl Catalog {
    pub fn new(products: Vec<ProductSpec>, source_path: impl Into<String>) -> Result<Self> {
        if products.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty catalog".into(),
            });
        }
        let mut seen = HashSet::new();
        for p in &products {
            if !seen.insert(p.name.as_str()) {
                return Err(Error::Validation {
                    product: p.name.clone(),
                    field: "name",
                    message: "duplicate product name".into(),
                });
            }
        }
        for p in &products {
            let rec = reconcile(p);
            if !rec.within_tolerance() {
                log::warn!(
                    "{}: implied annual demand {:.1} differs from declared {:.1} by {:.1}%",
                    p.name,
                    rec.implied_annual_demand,
                    rec.declared_annual_demand,
                    100.0 * rec.relative_error
                );
            }
        }
        Ok(Catalog {
            products,
            source_path: source_path.into(),
        })
    }

    /// The four-product reference data set shipped with the crate.
    pub fn reference() -> Catalog {
        Self::from_reader(REFERENCE_CSV.as_bytes(), "<builtin:table1>").expect("embedded catalog is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Catalog> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)?;
        Self::from_reader(file, path.display().to_string())
    }

    pub fn from_reader(reader: impl Read, source: impl Into<String>) -> Result<Catalog> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut records = rdr.records();
        let header = match records.next() {
            None => {
                return Err(Error::Parse {
                    line: 1,
                    message: "empty catalog".into(),
                })
            }
            Some(h) => h.map_err(csv_error)?,
        };
        let found: Vec<&str> = header.iter().collect();
        if found != CSV_HEADER {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header `{}`", CSV_HEADER.join(",")),
            });
        }
        let headers = csv::StringRecord::from(CSV_HEADER.to_vec());
        let mut products = Vec::new();
        for row in records {
            let row = row.map_err(csv_error)?;
            let line = row.position().map_or(0, |p| p.line());
            if row.iter().all(|f| f.is_empty()) {
                continue;
            }
            let record: ProductRecord = row.deserialize(Some(&headers)).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
            products.push(ProductSpec::try_from(record)?);
        }
        Catalog::new(products, source)
    }

    /// Serializes to the catalog CSV format. Floats use the shortest
    /// representation that parses back to the same value.
    pub fn to_csv(&self) -> String {
        let mut out = CSV_HEADER.join(",");
        out.push('\n');
        for p in &self.products {
            let r = p.to_record();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.name,
                r.purchase_cost,
                r.lead_time,
                r.size,
                r.selling_price,
                r.starting_stock,
                r.mean,
                r.std_dev,
                r.order_cost,
                r.holding_cost,
                r.probability,
                r.demand_lead,
                r.annual_demand
            );
        }
        out
    }

    pub fn products(&self) -> &[ProductSpec] {
        &self.products
    }

    pub fn source_path(&self) -> &str {
        &self.source_path
    }

    pub fn len(&self) -> usize {
        self.products.len()
    }

    pub fn is_empty(&self) -> bool {
        self.products.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&ProductSpec> {
        self.products.iter().find(|p| p.name == name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.products.iter().position(|p| p.name == name)
    }
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_str(s: &str) -> Result<Catalog> {
        Catalog::from_reader(s.as_bytes(), "test")
    }

    #[test]
    fn reference_catalog_matches_table() {
        let cat = Catalog::reference();
        assert_eq!(cat.len(), 4);
        let a = cat.get("PrA").unwrap();
        assert_eq!(a.purchase_cost(), 12.0);
        assert_eq!(a.lead_time(), 9);
        assert_eq!(a.order_probability(), 0.76);
        assert_eq!(cat.get("PrD").unwrap().annual_demand(), 13_056.0);
    }

    #[test]
    fn empty_input_is_rejected() {
        let err = load_str("").unwrap_err();
        assert!(err.to_string().contains("empty catalog"), "{err}");
        let err = load_str(&format!("{}\n", CSV_HEADER.join(","))).unwrap_err();
        assert!(err.to_string().contains("empty catalog"), "{err}");
    }

    #[test]
    fn probability_out_of_range_names_product_and_field() {
        let csv = format!(
            "{}\nPrX,12,9,0.57,16.10,2750,103.50,37.32,1000,20,1.3,705,28670\n",
            CSV_HEADER.join(",")
        );
        match load_str(&csv).unwrap_err() {
            Error::Validation { product, field, .. } => {
                assert_eq!(product, "PrX");
                assert_eq!(field, "probability");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_error_reports_line() {
        let csv = format!(
            "{}\nPrA,12,9,0.57,16.10,2750,103.50,37.32,1000,20,0.76,705,28670\nPrB,seven,6,0.05,8.6,22500,648.55,26.45,1200,20,1,3891,237370\n",
            CSV_HEADER.join(",")
        );
        match load_str(&csv).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_header_is_rejected() {
        let err = load_str("name,cost\nPrA,1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let row = "PrA,12,9,0.57,16.10,2750,103.50,37.32,1000,20,0.76,705,28670";
        let csv = format!("{}\n{row}\n{row}\n", CSV_HEADER.join(","));
        assert!(matches!(
            load_str(&csv).unwrap_err(),
            Error::Validation { field: "name", .. }
        ));
    }

    #[test]
    fn nonpositive_costs_are_rejected() {
        let a = Catalog::reference().get("PrA").unwrap().clone();
        assert!(a.modified(|r| r.selling_price = 0.0).is_err());
        assert!(a.modified(|r| r.holding_cost = -1.0).is_err());
        assert!(a.modified(|r| r.std_dev = -0.1).is_err());
        assert!(a.modified(|r| r.selling_price = 20.0).is_ok());
    }

    #[test]
    fn reconcile_table_products() {
        let cat = Catalog::reference();
        let a = reconcile(cat.get("PrA").unwrap());
        assert!((a.implied_annual_demand - 28_710.9).abs() < 0.05);
        assert!((a.relative_error - 0.0014).abs() < 1e-4);
        let d = reconcile(cat.get("PrD").unwrap());
        assert!((d.implied_annual_demand - 12_597.537).abs() < 0.01);
        assert!((d.relative_error - 0.035).abs() < 1e-3);
        for p in cat.products() {
            assert!(reconcile(p).within_tolerance(), "{}", p.name());
        }
    }

    #[test]
    fn reconcile_zero_probability() {
        let a = Catalog::reference().get("PrA").unwrap().clone();
        let z = a.modified(|r| r.probability = 0.0).unwrap();
        let rec = reconcile(&z);
        assert_eq!(rec.implied_annual_demand, 0.0);
        assert_eq!(rec.relative_error, 1.0);
    }
}
