//! Categorical decision tables: ingestion, canonical CSV output and
//! consistency validation.

use std::collections::HashSet;
use std::io::Read;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::level::{canonicalize_decision, canonicalize_level, Decision, Level};
use crate::rowset::{serialize_pairs, RowSet};

/// Reference to a column of a [`DecisionTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attr {
    /// Condition attribute by column position.
    Condition(usize),
    Decision,
}

/// A universe of rows over named condition attributes plus one decision
/// attribute. Immutable once built; every value is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionTable {
    condition_attrs: Vec<String>,
    decision_attr: String,
    conditions: Vec<Vec<Level>>,
    decisions: Vec<Decision>,
}

impl DecisionTable {
    pub fn new(
        condition_attrs: Vec<String>,
        decision_attr: impl Into<String>,
        rows: Vec<(Vec<Level>, Decision)>,
    ) -> Result<Self> {
        let decision_attr = decision_attr.into();
        if condition_attrs.is_empty() {
            return Err(Error::NoConditionAttributes);
        }
        let mut seen = HashSet::new();
        for name in condition_attrs.iter().chain(std::iter::once(&decision_attr)) {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateAttribute(name.clone()));
            }
        }
        if rows.is_empty() {
            return Err(Error::EmptyBody);
        }
        let width = condition_attrs.len();
        let mut conditions = Vec::with_capacity(rows.len());
        let mut decisions = Vec::with_capacity(rows.len());
        for (i, (levels, decision)) in rows.into_iter().enumerate() {
            if levels.len() != width {
                return Err(Error::RowArity {
                    row: i + 1,
                    expected: width,
                    found: levels.len(),
                });
            }
            conditions.push(levels);
            decisions.push(decision);
        }
        Ok(DecisionTable {
            condition_attrs,
            decision_attr,
            conditions,
            decisions,
        })
    }

    /// Parses CSV text; see [`parse_table`].
    pub fn from_csv_str(source: &str, decision_attr: Option<&str>) -> Result<Self> {
        parse_table(source.as_bytes(), decision_attr)
    }

    pub fn len(&self) -> usize {
        self.decisions.len()
    }

    /// Always false for a constructed table; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.decisions.is_empty()
    }

    pub fn condition_attrs(&self) -> &[String] {
        &self.condition_attrs
    }

    pub fn decision_attr(&self) -> &str {
        &self.decision_attr
    }

    pub fn num_conditions(&self) -> usize {
        self.condition_attrs.len()
    }

    pub fn conditions(&self, row: usize) -> &[Level] {
        &self.conditions[row]
    }

    pub fn level(&self, row: usize, column: usize) -> Level {
        self.conditions[row][column]
    }

    pub fn decision(&self, row: usize) -> Decision {
        self.decisions[row]
    }

    pub fn universe(&self) -> RowSet {
        RowSet::universe(self.len())
    }

    /// Rows whose decision equals `decision`.
    pub fn decision_class(&self, decision: Decision) -> RowSet {
        (0..self.len())
            .filter(|&r| self.decisions[r] == decision)
            .collect()
    }

    /// Decision values present in the table, in canonical order.
    pub fn decision_values(&self) -> Vec<Decision> {
        Decision::ALL
            .into_iter()
            .filter(|d| self.decisions.contains(d))
            .collect()
    }

    pub fn resolve(&self, name: &str) -> Result<Attr> {
        if name == self.decision_attr {
            return Ok(Attr::Decision);
        }
        self.condition_index(name).map(Attr::Condition)
    }

    pub fn condition_index(&self, name: &str) -> Result<usize> {
        self.condition_attrs
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAttribute(name.to_string()))
    }

    /// Resolves a list of condition attribute names to column positions.
    pub fn condition_indices<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| self.condition_index(n.as_ref()))
            .collect()
    }

    pub fn attr_name(&self, attr: Attr) -> &str {
        match attr {
            Attr::Condition(c) => &self.condition_attrs[c],
            Attr::Decision => &self.decision_attr,
        }
    }

    pub(crate) fn code(&self, row: usize, attr: Attr) -> u8 {
        match attr {
            Attr::Condition(c) => self.conditions[row][c].code(),
            Attr::Decision => self.decisions[row].code(),
        }
    }

    /// Serializes the table as CSV with canonical tokens.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = self
            .condition_attrs
            .iter()
            .map(String::as_str)
            .chain(std::iter::once(self.decision_attr.as_str()));
        w.write_record(header).expect("in-memory write");
        for (levels, decision) in self.conditions.iter().zip(&self.decisions) {
            let rec = levels
                .iter()
                .map(|l| l.as_str())
                .chain(std::iter::once(decision.as_str()));
            w.write_record(rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 tokens")
    }

    /// Copy of the table restricted to `rows`, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Result<DecisionTable> {
        let body = rows
            .iter()
            .map(|&r| (self.conditions[r].clone(), self.decisions[r]))
            .collect();
        DecisionTable::new(self.condition_attrs.clone(), self.decision_attr.clone(), body)
    }
}

fn is_index_column(name: &str) -> bool {
    name.trim().eq_ignore_ascii_case("s no.")
}

/// Parses a comma-separated decision table.
///
/// The first record is the header. A column named `S no.` (any case) is
/// treated as a row index and dropped. The decision column defaults to the
/// last remaining column.
pub fn parse_table<R: Read>(source: R, decision_attr: Option<&str>) -> Result<DecisionTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec.map_err(|e| Error::Csv(e.to_string()))?,
        None => return Err(Error::MissingHeader),
    };
    if header.iter().all(str::is_empty) {
        return Err(Error::MissingHeader);
    }
    let width = header.len();
    let kept: Vec<usize> = (0..width).filter(|&i| !is_index_column(&header[i])).collect();
    let names: Vec<String> = kept.iter().map(|&i| header[i].to_string()).collect();

    let decision_pos = match decision_attr {
        Some(name) => names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::DecisionAttrNotFound(name.to_string()))?,
        None => names.len().checked_sub(1).ok_or(Error::MissingHeader)?,
    };
    let decision_name = names[decision_pos].clone();
    let condition_names: Vec<String> = names
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != decision_pos)
        .map(|(_, n)| n.clone())
        .collect();

    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        if rec.len() != width {
            return Err(Error::RaggedRow {
                line,
                expected: width,
                found: rec.len(),
            });
        }
        let mut levels = Vec::with_capacity(condition_names.len());
        let mut decision = None;
        for (pos, &col) in kept.iter().enumerate() {
            let raw = &rec[col];
            if pos == decision_pos {
                decision = Some(canonicalize_decision(raw).map_err(|_| Error::UnknownDecision {
                    token: raw.to_string(),
                    line: Some(line),
                })?);
            } else {
                levels.push(canonicalize_level(raw).map_err(|_| Error::UnknownLevel {
                    token: raw.to_string(),
                    line: Some(line),
                })?);
            }
        }
        rows.push((levels, decision.expect("decision column present")));
    }
    if rows.is_empty() {
        return Err(Error::EmptyBody);
    }
    DecisionTable::new(condition_names, decision_name, rows)
}

/// Conflicting and duplicate row pairs of a table, ordered by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// Pairs with equal condition values but different decisions.
    #[serde(serialize_with = "serialize_pairs")]
    pub conflicting_pairs: Vec<(usize, usize)>,
    /// Pairs of identical full rows.
    #[serde(serialize_with = "serialize_pairs")]
    pub duplicate_pairs: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_consistent(&self) -> bool {
        self.conflicting_pairs.is_empty()
    }
}

pub fn validate(table: &DecisionTable) -> ValidationReport {
    let mut conflicting_pairs = Vec::new();
    let mut duplicate_pairs = Vec::new();
    for i in 0..table.len() {
        for j in i + 1..table.len() {
            if table.conditions(i) != table.conditions(j) {
                continue;
            }
            if table.decision(i) == table.decision(j) {
                duplicate_pairs.push((i, j));
            } else {
                conflicting_pairs.push((i, j));
            }
        }
    }
    ValidationReport {
        conflicting_pairs,
        duplicate_pairs,
    }
}
