use serde::Serialize;

use super::gamma;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::table::{Attr, DecisionTable};

/// Upper bound on condition attributes for the exhaustive reduct search.
pub const MAX_REDUCT_ATTRS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductReport {
    /// Sorted by size, then lexicographically by attribute names. Each
    /// reduct lists its attributes in table column order.
    pub reducts: Vec<Vec<String>>,
    /// Intersection of all reducts.
    pub core: Vec<String>,
    /// Dependency degree of the full condition set.
    pub baseline_gamma: Fraction,
}

fn mask_attrs(mask: u32, n: usize) -> Vec<Attr> {
    (0..n)
        .filter(|&c| mask & (1 << c) != 0)
        .map(Attr::Condition)
        .collect()
}

/// All minimal condition subsets that preserve the dependency degree of the
/// full condition set, found by enumerating every subset.
pub fn find_reducts(table: &DecisionTable) -> Result<ReductReport> {
    let n = table.num_conditions();
    if n > MAX_REDUCT_ATTRS {
        return Err(Error::TooManyAttributes {
            found: n,
            limit: MAX_REDUCT_ATTRS,
        });
    }
    let full = (1u32 << n) - 1;
    let gammas: Vec<Fraction> = (0..=full).map(|m| gamma(table, &mask_attrs(m, n))).collect();
    let baseline = gammas[full as usize];

    // gamma is monotone, so checking single-attribute removals suffices
    let minimal = |m: u32| {
        (0..n)
            .filter(|&c| m & (1 << c) != 0)
            .all(|c| gammas[(m & !(1 << c)) as usize] < baseline)
    };
    let names = |m: u32| -> Vec<String> {
        (0..n)
            .filter(|&c| m & (1 << c) != 0)
            .map(|c| table.condition_attrs()[c].clone())
            .collect()
    };

    let masks: Vec<u32> = (0..=full)
        .filter(|&m| gammas[m as usize] == baseline && minimal(m))
        .collect();
    let core_mask = masks.iter().fold(full, |acc, m| acc & m);
    let mut reducts: Vec<Vec<String>> = masks.into_iter().map(names).collect();
    reducts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    Ok(ReductReport {
        reducts,
        core: names(core_mask),
        baseline_gamma: baseline,
    })
}

/// Drop in dependency degree when `attr` is removed from the full condition set.
pub fn significance(table: &DecisionTable, attr: &str) -> Result<Fraction> {
    let col = table.condition_index(attr)?;
    let all: Vec<Attr> = (0..table.num_conditions()).map(Attr::Condition).collect();
    let without: Vec<Attr> = all.iter().copied().filter(|&a| a != Attr::Condition(col)).collect();
    Ok(gamma(table, &all) - gamma(table, &without))
}

/// Significance of every condition attribute, in column order.
pub fn significances(table: &DecisionTable) -> Vec<(String, Fraction)> {
    table
        .condition_attrs()
        .iter()
        .map(|a| (a.clone(), significance(table, a).expect("own attribute")))
        .collect()
}
