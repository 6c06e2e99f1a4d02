//! ID3 decision trees over categorical tables, used as the comparison
//! baseline for the rule classifier.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::level::{Decision, Level};
use crate::rowset::RowSet;
use crate::table::DecisionTable;

// Gains closer than this are treated as tied.
const GAIN_EPS: f64 = 1e-12;

/// Serialized as `{"leaf": d}` or `{"split": attr, "fallback": d, "branches": {level: node}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TreeNode {
    Leaf {
        #[serde(rename = "leaf")]
        decision: Decision,
    },
    Split {
        #[serde(rename = "split")]
        attribute: String,
        /// Majority decision of the node's training rows, used for levels
        /// that never reached this node during training.
        fallback: Decision,
        branches: BTreeMap<Level, TreeNode>,
    },
}

impl TreeNode {
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { branches, .. } => {
                1 + branches.values().map(TreeNode::depth).max().unwrap_or(0)
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { branches, .. } => branches.values().map(TreeNode::leaf_count).sum(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable tree")
    }

    pub fn from_json(source: &str) -> Result<Self> {
        serde_json::from_str(source).map_err(|e| Error::TreeFile(e.to_string()))
    }
}

/// Shannon entropy in bits of a class distribution, `0 log 0 = 0`.
pub fn entropy(class_counts: &[usize]) -> Result<f64> {
    let total: usize = class_counts.iter().sum();
    if total == 0 {
        return Err(Error::EmptyDistribution);
    }
    let total = total as f64;
    let h = class_counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum::<f64>();
    // -0.0 for pure sets
    Ok(h.max(0.0))
}

fn decision_counts(table: &DecisionTable, rows: &[usize]) -> [usize; 2] {
    let mut counts = [0; 2];
    for &r in rows {
        counts[table.decision(r) as usize] += 1;
    }
    counts
}

fn split_by(table: &DecisionTable, rows: &[usize], col: usize) -> BTreeMap<Level, Vec<usize>> {
    let mut parts: BTreeMap<Level, Vec<usize>> = BTreeMap::new();
    for &r in rows {
        parts.entry(table.level(r, col)).or_default().push(r);
    }
    parts
}

fn gain_of(table: &DecisionTable, rows: &[usize], col: usize) -> f64 {
    let n = rows.len() as f64;
    let parent = entropy(&decision_counts(table, rows)).expect("nonempty rows");
    let children: f64 = split_by(table, rows, col)
        .values()
        .map(|part| {
            part.len() as f64 / n * entropy(&decision_counts(table, part)).expect("nonempty part")
        })
        .sum();
    (parent - children).max(0.0)
}

/// Entropy reduction of the decision obtained by splitting `rows` on `attr`.
pub fn information_gain(table: &DecisionTable, rows: &RowSet, attr: &str) -> Result<f64> {
    let col = table.condition_index(attr)?;
    if rows.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let rows: Vec<usize> = rows.iter().collect();
    Ok(gain_of(table, &rows, col))
}

fn majority(counts: [usize; 2]) -> Decision {
    // ties go to the lexicographically smaller value
    if counts[Decision::Inconsistent as usize] > counts[Decision::Consistent as usize] {
        Decision::Inconsistent
    } else {
        Decision::Consistent
    }
}

fn grow(table: &DecisionTable, rows: &[usize], available: &[usize]) -> TreeNode {
    let counts = decision_counts(table, rows);
    let fallback = majority(counts);
    if counts.iter().filter(|&&c| c > 0).count() <= 1 {
        return TreeNode::Leaf { decision: fallback };
    }

    let mut best: Option<(usize, f64)> = None;
    for &col in available {
        let first = table.level(rows[0], col);
        if rows.iter().all(|&r| table.level(r, col) == first) {
            continue;
        }
        let g = gain_of(table, rows, col);
        if best.is_none_or(|(_, bg)| g > bg + GAIN_EPS) {
            best = Some((col, g));
        }
    }
    let Some((col, _)) = best else {
        return TreeNode::Leaf { decision: fallback };
    };

    let rest: Vec<usize> = available.iter().copied().filter(|&c| c != col).collect();
    let branches = split_by(table, rows, col)
        .into_iter()
        .map(|(level, part)| (level, grow(table, &part, &rest)))
        .collect();
    TreeNode::Split {
        attribute: table.condition_attrs()[col].clone(),
        fallback,
        branches,
    }
}

/// Greedy top-down ID3. Each node splits on the attribute of maximum
/// information gain among those not constant on its rows (earlier columns
/// win ties). Pure nodes, and nodes with no such attribute left, become
/// majority leaves.
pub fn build_tree(table: &DecisionTable) -> TreeNode {
    let rows: Vec<usize> = (0..table.len()).collect();
    let attrs: Vec<usize> = (0..table.num_conditions()).collect();
    grow(table, &rows, &attrs)
}

pub fn tree_classify(tree: &TreeNode, object: &BTreeMap<String, Level>) -> Result<Decision> {
    let mut node = tree;
    loop {
        match node {
            TreeNode::Leaf { decision } => return Ok(*decision),
            TreeNode::Split {
                attribute,
                fallback,
                branches,
            } => {
                let level = object
                    .get(attribute)
                    .ok_or_else(|| Error::MissingAttribute(attribute.clone()))?;
                match branches.get(level) {
                    Some(child) => node = child,
                    None => return Ok(*fallback),
                }
            }
        }
    }
}
