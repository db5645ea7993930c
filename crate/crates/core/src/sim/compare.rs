use std::collections::HashMap;

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::stochastic::DemandModel;

use super::replicate::{replicate, ReplicationStats};
use super::{PolicyParams, SimConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct ProductComparison {
    pub product: String,
    pub periodic: PolicyParams,
    pub continuous: PolicyParams,
    pub periodic_stats: ReplicationStats,
    pub continuous_stats: ReplicationStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyComparison {
    pub products: Vec<ProductComparison>,
    pub total_periodic: f64,
    pub total_continuous: f64,
    /// `(continuous − periodic) / periodic`.
    pub relative_difference: f64,
}

/// Replicates both policy sets on every product and totals the expected
/// profits. Both sides of a product share its random streams.
pub fn compare_policies(
    catalog: &Catalog,
    cfg: &SimConfig,
    periodic: &HashMap<String, PolicyParams>,
    continuous: &HashMap<String, PolicyParams>,
) -> Result<PolicyComparison> {
    let mut products = Vec::with_capacity(catalog.len());
    for (slot, product) in catalog.products().iter().enumerate() {
        let lookup = |side: &HashMap<String, PolicyParams>, label: &str| {
            side.get(product.name())
                .copied()
                .ok_or_else(|| Error::config(format!("no {label} policy parameters for product {}", product.name())))
        };
        let pq = lookup(periodic, "periodic")?;
        let rq = lookup(continuous, "continuous")?;
        let demand = DemandModel::for_product(product)?;
        let product_cfg = cfg.for_product(slot);
        products.push(ProductComparison {
            product: product.name().to_string(),
            periodic: pq,
            continuous: rq,
            periodic_stats: replicate(product, &demand, &pq, &product_cfg)?,
            continuous_stats: replicate(product, &demand, &rq, &product_cfg)?,
        });
    }
    let total_periodic: f64 = products.iter().map(|p| p.periodic_stats.mean_profit).sum();
    let total_continuous: f64 = products.iter().map(|p| p.continuous_stats.mean_profit).sum();
    Ok(PolicyComparison {
        products,
        total_periodic,
        total_continuous,
        relative_difference: (total_continuous - total_periodic) / total_periodic,
    })
}
