//! Detection-rate evaluation of the rule classifier against the ID3 tree.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::autopilot::training_fixture;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::id3::{build_tree, tree_classify};
use crate::level::Level;
use crate::rules::{classify, induce_rules, row_object};
use crate::table::DecisionTable;

pub const ROUGH_SET_APPROACH: &str = "Rough Set based Decision algorithm";
pub const ID3_APPROACH: &str = "ID3 based Decision Tree";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub approach: String,
    pub training_size: usize,
    pub testing_size: usize,
    pub matched: usize,
    pub detection_rate: Fraction,
    /// Abstentions; only the rule classifier can abstain.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unknown: Option<usize>,
}

impl EvalReport {
    /// `96%` style rendering, rounded half-up.
    pub fn rate_percent(&self) -> String {
        format!("{}%", self.detection_rate.percent_half_up())
    }
}

pub fn detection_rate(matched: usize, total: usize) -> Result<Fraction> {
    if total == 0 || matched > total {
        return Err(Error::InvalidRate { matched, total });
    }
    Ok(Fraction::of(matched, total))
}

fn check_schema(train: &DecisionTable, test: &DecisionTable) -> Result<()> {
    if train.condition_attrs() != test.condition_attrs() {
        return Err(Error::SchemaMismatch(format!(
            "condition attributes differ: {:?} vs {:?}",
            train.condition_attrs(),
            test.condition_attrs()
        )));
    }
    if train.decision_attr() != test.decision_attr() {
        return Err(Error::SchemaMismatch(format!(
            "decision attributes differ: {:?} vs {:?}",
            train.decision_attr(),
            test.decision_attr()
        )));
    }
    Ok(())
}

/// Trains both classifiers on `train` and scores them on `test`.
/// Unknown rule verdicts count as misses. Returns `(rough set, ID3)`.
pub fn compare(train: &DecisionTable, test: &DecisionTable) -> Result<(EvalReport, EvalReport)> {
    check_schema(train, test)?;
    let rules = induce_rules(train)?;
    let tree = build_tree(train);

    let (mut rule_hits, mut unknown, mut tree_hits) = (0, 0, 0);
    for row in 0..test.len() {
        let object = row_object(test, row);
        let expected = test.decision(row);
        match classify(&rules, &object)?.decision.decided() {
            Some(d) if d == expected => rule_hits += 1,
            Some(_) => {}
            None => unknown += 1,
        }
        if tree_classify(&tree, &object)? == expected {
            tree_hits += 1;
        }
    }
    let report = |approach: &str, matched, unknown| -> Result<EvalReport> {
        Ok(EvalReport {
            approach: approach.to_string(),
            training_size: train.len(),
            testing_size: test.len(),
            matched,
            detection_rate: detection_rate(matched, test.len())?,
            unknown,
        })
    };
    Ok((
        report(ROUGH_SET_APPROACH, rule_hits, Some(unknown))?,
        report(ID3_APPROACH, tree_hits, None)?,
    ))
}

/// Synthetic test set over the schema of `train`.
///
/// Levels come from a ChaCha8 stream seeded with `seed_from_u64(seed)`:
/// one `next_u32()` per cell in row-major order, level index = low two bits
/// (high, moderate, low, extremely_low). Each row is labelled by the rule
/// classifier induced from `train`, or by the ID3 tree where the rules
/// abstain.
pub fn synth_test_set_from(train: &DecisionTable, seed: u64, n: usize) -> Result<DecisionTable> {
    if n == 0 {
        return Err(Error::ZeroRows);
    }
    let rules = induce_rules(train)?;
    let tree = build_tree(train);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = train.num_conditions();

    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let levels: Vec<Level> = (0..width)
            .map(|_| Level::ALL[(rng.next_u32() & 3) as usize])
            .collect();
        let object = train
            .condition_attrs()
            .iter()
            .cloned()
            .zip(levels.iter().copied())
            .collect();
        let decision = match classify(&rules, &object)?.decision.decided() {
            Some(d) => d,
            None => tree_classify(&tree, &object)?,
        };
        rows.push((levels, decision));
    }
    DecisionTable::new(
        train.condition_attrs().to_vec(),
        train.decision_attr(),
        rows,
    )
}

/// Synthetic test set labelled by classifiers trained on the 30-row
/// training table.
pub fn synth_test_set(seed: u64, n: usize) -> Result<DecisionTable> {
    synth_test_set_from(&training_fixture(), seed, n)
}

/// Aligned text table with the columns approach, training size, testing
/// size, matched count and detection rate.
pub fn render_table(reports: &[EvalReport]) -> String {
    let header = [
        "Approach",
        "Training Data set",
        "Testing Data set",
        "Matched Content",
        "Detection Rate",
    ];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.approach.clone(),
                r.training_size.to_string(),
                r.testing_size.to_string(),
                r.matched.to_string(),
                r.rate_percent(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| -> String {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            if i == 0 {
                s.push_str(&format!("{cell:<w$}"));
            } else {
                s.push_str(&format!("{cell:>w$}"));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(&header);
    for row in &rows {
        out.push_str(&line(&row.each_ref().map(String::as_str)));
    }
    out
}
