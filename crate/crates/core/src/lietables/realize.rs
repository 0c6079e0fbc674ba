//! Comparison of row data with groups built as permutation groups.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use super::{sylow_exponent_from_orders, tables};
use crate::builders::{build, GroupSpec};
use crate::chartab::character_table;
use crate::config::Config;
use crate::error::Result;

/// Row data against a concrete group.
#[derive(Clone, Debug, Serialize)]
pub struct Fidelity {
    pub family: String,
    pub param: u64,
    pub row: String,
    pub realization: String,
    pub formula_order: String,
    pub group_order: String,
    pub order_matches: bool,
    pub alpha_degree: String,
    pub alpha_in_degrees: bool,
    pub p: u64,
    pub sylow_exponent: u64,
    pub sylow_bound: Option<u64>,
    pub sylow_bound_holds: bool,
    pub group_exponent: u64,
    pub product: String,
    pub exponent_divides_product: bool,
    pub passed: bool,
}

/// The builder spec realizing a row at a small parameter, if there is one.
pub fn default_realization(family: &str, param: u64) -> Result<Option<GroupSpec>> {
    let inst = tables().resolve(family, param)?;
    Ok(match inst.entry.id.as_str() {
        "A1-sl2" => Some(GroupSpec::Sl2(param)),
        "A1-psl2" => Some(GroupSpec::Psl2(param)),
        "A2" if param <= 4 => Some(GroupSpec::Psl3(param)),
        _ => None,
    })
}

/// Small instances that can be built and tabulated. `PSL2(5)` stands in for
/// the isomorphic `PSL2(4)`, so it is checked against the `A1(4)` row.
pub fn constructible_instances() -> Vec<(&'static str, u64, GroupSpec)> {
    vec![
        ("A1", 4, GroupSpec::Psl2(4)),
        ("A1", 4, GroupSpec::Psl2(5)),
        ("A1", 8, GroupSpec::Sl2(8)),
        ("A1", 9, GroupSpec::Psl2(9)),
        ("A2", 3, GroupSpec::Psl3(3)),
    ]
}

/// Builds `realization`, computes its character table and compares it with
/// the row for `family` at `param`.
pub fn fidelity_check(
    family: &str,
    param: u64,
    realization: &GroupSpec,
    config: &Config,
) -> Result<Fidelity> {
    let inst = tables().resolve(family, param)?;
    inst.check_invariants()?;
    let order = inst.order()?;
    let alpha = inst.alpha_degree()?;
    let beta = inst.beta_degree()?;
    let group = build(realization)?;
    let table = character_table(&group, config)?;
    let classes = table.classes();
    let sylow = sylow_exponent_from_orders(&classes.element_orders, inst.p);
    let bound = inst.sylow_bound()?;
    let product = (&order / &alpha) * (&order / &beta);
    let order_matches = group.order() == &order;
    let alpha_in_degrees = table.degrees().iter().any(|&d| BigUint::from(d) == alpha);
    let sylow_bound_holds = bound.is_none_or(|b| b % sylow == 0);
    let exponent_divides_product = (&product % classes.exponent).is_zero();
    Ok(Fidelity {
        family: inst.family.to_string(),
        param,
        row: inst.entry.id.clone(),
        realization: realization.to_string(),
        formula_order: order.to_string(),
        group_order: group.order().to_string(),
        order_matches,
        alpha_degree: alpha.to_string(),
        alpha_in_degrees,
        p: inst.p,
        sylow_exponent: sylow,
        sylow_bound: bound,
        sylow_bound_holds,
        group_exponent: classes.exponent,
        product: product.to_string(),
        exponent_divides_product,
        passed: order_matches && alpha_in_degrees && sylow_bound_holds && exponent_divides_product,
    })
}
