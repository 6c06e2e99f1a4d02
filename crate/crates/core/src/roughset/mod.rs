//! Indiscernibility partitions and the approximation operators built on them.

mod reduct;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::rowset::RowSet;
use crate::table::{Attr, DecisionTable};

pub use reduct::{find_reducts, significance, significances, ReductReport, MAX_REDUCT_ATTRS};

/// Equivalence classes of the indiscernibility relation over `attrs`.
///
/// Blocks are disjoint, non-empty, cover the universe and are ordered by
/// their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub attrs: Vec<String>,
    pub blocks: Vec<RowSet>,
}

impl Partition {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(RowSet::len).collect()
    }

    /// The block containing `row`.
    pub fn block_of(&self, row: usize) -> Option<&RowSet> {
        self.blocks.iter().find(|b| b.contains(row))
    }
}

/// Lower/upper approximation of a target set with its boundary and accuracy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproximationReport {
    pub lower: RowSet,
    pub upper: RowSet,
    pub boundary: RowSet,
    /// `|lower| / |upper|`, or 1 when `upper` is empty.
    pub accuracy: Fraction,
    pub is_crisp: bool,
}

fn resolve_attrs<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<Vec<Attr>> {
    attrs.iter().map(|a| table.resolve(a.as_ref())).collect()
}

fn resolve_conditions<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<Vec<Attr>> {
    attrs
        .iter()
        .map(|a| table.condition_index(a.as_ref()).map(Attr::Condition))
        .collect()
}

/// Groups rows by their values on `attrs`, blocks in order of first member.
pub(crate) fn blocks(table: &DecisionTable, attrs: &[Attr]) -> Vec<Vec<usize>> {
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for row in 0..table.len() {
        let key: Vec<u8> = attrs.iter().map(|&a| table.code(row, a)).collect();
        let next = out.len();
        let slot = *index.entry(key).or_insert(next);
        if slot == next {
            out.push(Vec::new());
        }
        out[slot].push(row);
    }
    out
}

/// Number of rows whose block is pure in the decision.
pub(crate) fn positive_count(table: &DecisionTable, attrs: &[Attr]) -> usize {
    blocks(table, attrs)
        .into_iter()
        .filter(|b| b.iter().all(|&r| table.decision(r) == table.decision(b[0])))
        .map(|b| b.len())
        .sum()
}

pub(crate) fn gamma(table: &DecisionTable, attrs: &[Attr]) -> Fraction {
    Fraction::of(positive_count(table, attrs), table.len())
}

pub fn partition<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<Partition> {
    let resolved = resolve_attrs(table, attrs)?;
    Ok(Partition {
        attrs: attrs.iter().map(|a| a.as_ref().to_string()).collect(),
        blocks: blocks(table, &resolved)
            .into_iter()
            .map(RowSet::from_iter)
            .collect(),
    })
}

fn check_target(table: &DecisionTable, target: &RowSet) -> Result<()> {
    match target.max() {
        Some(m) if m >= table.len() => Err(Error::SchemaMismatch(format!(
            "target row {} outside a universe of {} rows",
            m + 1,
            table.len()
        ))),
        _ => Ok(()),
    }
}

fn lower_of(blocks: &[RowSet], target: &RowSet) -> RowSet {
    blocks
        .iter()
        .filter(|b| b.is_subset(target))
        .flat_map(RowSet::iter)
        .collect()
}

fn upper_of(blocks: &[RowSet], target: &RowSet) -> RowSet {
    blocks
        .iter()
        .filter(|b| !b.is_disjoint(target))
        .flat_map(RowSet::iter)
        .collect()
}

/// Union of the blocks wholly contained in `target`.
pub fn lower_approx<S: AsRef<str>>(
    table: &DecisionTable,
    attrs: &[S],
    target: &RowSet,
) -> Result<RowSet> {
    check_target(table, target)?;
    Ok(lower_of(&partition(table, attrs)?.blocks, target))
}

/// Union of the blocks that meet `target`.
pub fn upper_approx<S: AsRef<str>>(
    table: &DecisionTable,
    attrs: &[S],
    target: &RowSet,
) -> Result<RowSet> {
    check_target(table, target)?;
    Ok(upper_of(&partition(table, attrs)?.blocks, target))
}

pub fn approximation_report<S: AsRef<str>>(
    table: &DecisionTable,
    attrs: &[S],
    target: &RowSet,
) -> Result<ApproximationReport> {
    check_target(table, target)?;
    let p = partition(table, attrs)?;
    let lower = lower_of(&p.blocks, target);
    let upper = upper_of(&p.blocks, target);
    let boundary = upper.difference(&lower);
    let accuracy = if upper.is_empty() {
        Fraction::ONE
    } else {
        Fraction::of(lower.len(), upper.len())
    };
    Ok(ApproximationReport {
        is_crisp: boundary.is_empty(),
        lower,
        upper,
        boundary,
        accuracy,
    })
}

/// Rows that `attrs` classify unambiguously into one decision class: the
/// union of the lower approximations of every decision class.
pub fn positive_region<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<RowSet> {
    let resolved = resolve_conditions(table, attrs)?;
    let blocks: Vec<RowSet> = blocks(table, &resolved)
        .into_iter()
        .map(RowSet::from_iter)
        .collect();
    Ok(table
        .decision_values()
        .into_iter()
        .flat_map(|d| lower_of(&blocks, &table.decision_class(d)))
        .collect())
}

/// `|positive_region| / |U|`, exact.
pub fn dependency_degree<S: AsRef<str>>(table: &DecisionTable, attrs: &[S]) -> Result<Fraction> {
    Ok(Fraction::of(positive_region(table, attrs)?.len(), table.len()))
}
