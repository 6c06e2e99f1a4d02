//! Autopilot consistency case study: five payload lookup tables over
//! seventeen fault factors, the 30-row training table, and the end-to-end
//! pipeline from faults to a consistency verdict.
//!
//! The mapping is kept exactly as published, including its inverted reading:
//! every fault present yields payload level `high` and an overall
//! `consistent` verdict, while no faults yields `inconsistent`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::level::{canonicalize_level, Level};
use crate::rules::{classify, RuleSet, Verdict};
use crate::table::DecisionTable;

/// Condition attribute names used by the training table and rule file.
pub const PAYLOAD_ATTRS: [&str; 5] = ["Payload I", "Payload II", "Payload III", "Payload IV", "Payload V"];
pub const DECISION_ATTR: &str = "Consistency Factor";

/// Embedded data files, keyed by their path relative to the data directory.
pub const EMBEDDED_FILES: [(&str, &str); 7] = [
    ("fixtures/table_1.csv", include_str!("../../../fixtures/table_1.csv")),
    ("fixtures/table_2.csv", include_str!("../../../fixtures/table_2.csv")),
    ("fixtures/table_3.csv", include_str!("../../../fixtures/table_3.csv")),
    ("fixtures/table_4.csv", include_str!("../../../fixtures/table_4.csv")),
    ("fixtures/table_5.csv", include_str!("../../../fixtures/table_5.csv")),
    ("fixtures/table_6.csv", include_str!("../../../fixtures/table_6.csv")),
    ("rules/paper_sec4g.json", include_str!("../../../rules/paper_sec4g.json")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PayloadId {
    I,
    II,
    III,
    IV,
    V,
}

impl PayloadId {
    pub const ALL: [PayloadId; 5] = [PayloadId::I, PayloadId::II, PayloadId::III, PayloadId::IV, PayloadId::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn arity(self) -> usize {
        match self {
            PayloadId::I | PayloadId::II | PayloadId::III => 3,
            PayloadId::IV | PayloadId::V => 4,
        }
    }

    pub fn roman(self) -> &'static str {
        ["I", "II", "III", "IV", "V"][self.index()]
    }

    pub fn attr_name(self) -> &'static str {
        PAYLOAD_ATTRS[self.index()]
    }

    pub fn parse(raw: &str) -> Option<PayloadId> {
        let raw = raw.trim();
        let raw = raw
            .strip_prefix("Payload ")
            .or_else(|| raw.strip_prefix("payload "))
            .unwrap_or(raw);
        match raw.to_ascii_uppercase().as_str() {
            "I" | "1" => Some(PayloadId::I),
            "II" | "2" => Some(PayloadId::II),
            "III" | "3" => Some(PayloadId::III),
            "IV" | "4" => Some(PayloadId::IV),
            "V" | "5" => Some(PayloadId::V),
            _ => None,
        }
    }

    fn first_factor(self) -> usize {
        [0, 3, 6, 9, 13][self.index()]
    }
}

impl fmt::Display for PayloadId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.attr_name())
    }
}

/// One fault factor: snake_case identifier, printed label, owning payload.
#[derive(Debug, Clone, Copy)]
pub struct Factor {
    pub name: &'static str,
    pub label: &'static str,
    pub payload: PayloadId,
}

const fn factor(name: &'static str, label: &'static str, payload: PayloadId) -> Factor {
    Factor { name, label, payload }
}

/// The seventeen factors, grouped by payload in table column order.
pub const FACTORS: [Factor; 17] = [
    factor("roll_inconsistency", "Roll inconsistency", PayloadId::I),
    factor("pitch_inconsistency", "Pitch inconsistency", PayloadId::I),
    factor("yaw_inconsistency", "Yaw inconsistency", PayloadId::I),
    factor("altitude_inconsistency", "Altitude inconsistency", PayloadId::II),
    factor("longitude_inconsistency", "Longitude inconsistency", PayloadId::II),
    factor("latitude_inconsistency", "Latitude inconsistency", PayloadId::II),
    factor("dme_fault", "Distance Measuring equipment fault.", PayloadId::III),
    factor("vor_fault", "VHF Omnidirectional range fault.", PayloadId::III),
    factor("irs_fault", "Inertial reference systems fault.", PayloadId::III),
    factor("gyroscope_failure", "Gyroscope instrument Failure", PayloadId::IV),
    factor("accelerometer_failure", "Accelerometers instrument Failure", PayloadId::IV),
    factor("altimeter_failure", "Altimeters instrument Failure", PayloadId::IV),
    factor("compass_failure", "Compass instrument Failure", PayloadId::IV),
    factor("route_change", "Flight Route Change", PayloadId::V),
    factor("flaps_failure", "Flaps Failure", PayloadId::V),
    factor("fuel_inconsistency", "Fuel consumption inconsistency", PayloadId::V),
    factor("inflight_icing", "Inflight Icing", PayloadId::V),
];

/// Boolean-input lookup table for one payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayloadTable {
    pub id: PayloadId,
    pub input_names: Vec<String>,
    pub output_name: String,
    /// Rows in file order; covers every input tuple exactly once.
    pub entries: Vec<(Vec<bool>, Level)>,
}

fn parse_yes_no(raw: &str) -> Option<bool> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "yes" | "y" | "true" | "1" => Some(true),
        "no" | "n" | "false" | "0" => Some(false),
        _ => None,
    }
}

impl PayloadTable {
    /// Parses a payload table CSV: one column per factor, then the level.
    pub fn from_csv(id: PayloadId, source: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(source.as_bytes());
        let mut records = reader.records();
        let header = match records.next() {
            Some(r) => r.map_err(|e| Error::Csv(e.to_string()))?,
            None => return Err(Error::MissingHeader),
        };
        let k = id.arity();
        if header.len() != k + 1 {
            return Err(Error::PayloadArity {
                payload: id.roman(),
                expected: k,
                found: header.len().saturating_sub(1),
            });
        }
        let mut entries = Vec::new();
        for rec in records {
            let rec = rec.map_err(|e| Error::Csv(e.to_string()))?;
            let line = rec.position().map(|p| p.line()).unwrap_or(0);
            let inputs = (0..k)
                .map(|i| {
                    parse_yes_no(&rec[i])
                        .ok_or_else(|| Error::Csv(format!("line {line}: expected yes/no, got {:?}", &rec[i])))
                })
                .collect::<Result<Vec<_>>>()?;
            let level = canonicalize_level(&rec[k]).map_err(|_| Error::UnknownLevel {
                token: rec[k].to_string(),
                line: Some(line),
            })?;
            entries.push((inputs, level));
        }
        if entries.is_empty() {
            return Err(Error::EmptyBody);
        }
        Ok(PayloadTable {
            id,
            input_names: (0..k).map(|i| header[i].to_string()).collect(),
            output_name: header[k].to_string(),
            entries,
        })
    }

    pub fn lookup(&self, inputs: &[bool]) -> Option<Level> {
        self.entries
            .iter()
            .find(|(key, _)| key.as_slice() == inputs)
            .map(|&(_, level)| level)
    }

    /// True when every one of the `2^k` input tuples has exactly one entry.
    pub fn is_total(&self) -> bool {
        let k = self.id.arity();
        self.entries.len() == 1 << k
            && (0..1u32 << k).all(|bits| {
                let tuple: Vec<bool> = (0..k).map(|i| bits & (1 << (k - 1 - i)) != 0).collect();
                self.entries.iter().filter(|(key, _)| *key == tuple).count() == 1
            })
    }
}

static PAYLOAD_TABLES: LazyLock<Vec<PayloadTable>> = LazyLock::new(|| {
    PayloadId::ALL
        .iter()
        .map(|&id| {
            PayloadTable::from_csv(id, EMBEDDED_FILES[id.index()].1).expect("embedded payload table")
        })
        .collect()
});

static TRAINING: LazyLock<DecisionTable> = LazyLock::new(|| {
    DecisionTable::from_csv_str(EMBEDDED_FILES[5].1, None).expect("embedded training table")
});

/// The embedded lookup table of one payload.
pub fn payload_table(id: PayloadId) -> &'static PayloadTable {
    &PAYLOAD_TABLES[id.index()]
}

/// Exact lookup of a payload's consistency level.
pub fn payload_level(id: PayloadId, inputs: &[bool]) -> Result<Level> {
    if inputs.len() != id.arity() {
        return Err(Error::PayloadArity {
            payload: id.roman(),
            expected: id.arity(),
            found: inputs.len(),
        });
    }
    Ok(payload_table(id).lookup(inputs).expect("payload tables are total"))
}

/// The 30-row training table, canonicalized.
pub fn training_fixture() -> DecisionTable {
    TRAINING.clone()
}

/// The published 13-rule decision algorithm, verbatim.
pub fn published_rules() -> RuleSet {
    RuleSet::from_json(EMBEDDED_FILES[6].1).expect("embedded rule file")
}

/// Presence of each of the seventeen faults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaultVector([bool; 17]);

impl FaultVector {
    pub fn new(values: [bool; 17]) -> Self {
        FaultVector(values)
    }

    pub fn all(present: bool) -> Self {
        FaultVector([present; 17])
    }

    /// Parses 17 comma-separated yes/no values in factor order.
    pub fn from_list(raw: &str) -> Result<Self> {
        let parts: Vec<&str> = raw.split(',').collect();
        if parts.len() != 17 {
            return Err(Error::FaultVector(format!("expected 17 values, got {}", parts.len())));
        }
        let mut values = [false; 17];
        for (slot, part) in values.iter_mut().zip(&parts) {
            *slot = parse_yes_no(part)
                .ok_or_else(|| Error::FaultVector(format!("expected yes/no, got {:?}", part.trim())))?;
        }
        Ok(FaultVector(values))
    }

    /// Parses `name = yes|no` lines, one per factor. Blank lines and lines
    /// starting with `#` are skipped. All 17 factors must appear once.
    pub fn from_key_values(raw: &str) -> Result<Self> {
        let mut values: [Option<bool>; 17] = [None; 17];
        for line in raw.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::FaultVector(format!("expected key=value, got {line:?}")))?;
            let key = key.trim();
            let idx = FACTORS
                .iter()
                .position(|f| f.name == key)
                .ok_or_else(|| Error::FaultVector(format!("unknown factor {key:?}")))?;
            let v = parse_yes_no(value)
                .ok_or_else(|| Error::FaultVector(format!("{key}: expected yes/no, got {:?}", value.trim())))?;
            if values[idx].replace(v).is_some() {
                return Err(Error::FaultVector(format!("factor {key:?} given twice")));
            }
        }
        let mut out = [false; 17];
        for (i, v) in values.iter().enumerate() {
            out[i] = v.ok_or_else(|| Error::FaultVector(format!("missing factor {:?}", FACTORS[i].name)))?;
        }
        Ok(FaultVector(out))
    }

    pub fn values(&self) -> &[bool; 17] {
        &self.0
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        FACTORS.iter().position(|f| f.name == name).map(|i| self.0[i])
    }

    /// The inputs feeding one payload table, in column order.
    pub fn payload_inputs(&self, id: PayloadId) -> &[bool] {
        let start = id.first_factor();
        &self.0[start..start + id.arity()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PayloadLevel {
    pub payload: &'static str,
    pub level: Level,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineOutcome {
    pub levels: Vec<PayloadLevel>,
    pub verdict: Verdict,
}

pub fn levels_object(levels: &[Level; 5]) -> BTreeMap<String, Level> {
    PAYLOAD_ATTRS
        .iter()
        .map(|a| a.to_string())
        .zip(levels.iter().copied())
        .collect()
}

/// Classifies a payload level quintuple.
pub fn classify_levels(levels: [Level; 5], rules: &RuleSet) -> Result<PipelineOutcome> {
    let verdict = classify(rules, &levels_object(&levels))?;
    Ok(PipelineOutcome {
        levels: PayloadId::ALL
            .iter()
            .zip(levels)
            .map(|(id, level)| PayloadLevel {
                payload: id.attr_name(),
                level,
            })
            .collect(),
        verdict,
    })
}

/// Looks up all five payload levels, then classifies the quintuple.
pub fn full_pipeline(faults: &FaultVector, rules: &RuleSet) -> Result<PipelineOutcome> {
    let mut levels = [Level::High; 5];
    for id in PayloadId::ALL {
        levels[id.index()] = payload_level(id, faults.payload_inputs(id))?;
    }
    classify_levels(levels, rules)
}
