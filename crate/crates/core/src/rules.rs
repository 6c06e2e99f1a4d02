//! Decision rules: induction of minimal certain rules from a consistent
//! table, auditing of arbitrary rule sets against a table, and
//! support-weighted classification.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::level::{Decision, Level};
use crate::rowset::{serialize_one_based, RowSet};
use crate::table::{validate, DecisionTable};

/// One `attribute = level` test.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub attr: String,
    pub value: Level,
}

/// Counts of a rule measured against a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleStats {
    /// Rows matching the antecedent.
    pub support: usize,
    /// Matching rows that also carry the consequent.
    pub hits: usize,
    /// Rows carrying the consequent.
    pub class_size: usize,
}

impl RuleStats {
    /// `None` when nothing matches.
    pub fn confidence(&self) -> Option<Fraction> {
        (self.support > 0).then(|| Fraction::of(self.hits, self.support))
    }

    pub fn coverage(&self) -> Option<Fraction> {
        (self.class_size > 0).then(|| Fraction::of(self.hits, self.class_size))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub antecedent: Vec<Condition>,
    pub consequent: Decision,
    pub stats: Option<RuleStats>,
}

impl Rule {
    pub fn new(antecedent: Vec<Condition>, consequent: Decision) -> Self {
        Rule {
            antecedent,
            consequent,
            stats: None,
        }
    }

    fn resolve(&self, table: &DecisionTable) -> Result<Vec<(usize, Level)>> {
        self.antecedent
            .iter()
            .map(|c| Ok((table.condition_index(&c.attr)?, c.value)))
            .collect()
    }

    /// Rows of `table` satisfying the antecedent.
    pub fn matching_rows(&self, table: &DecisionTable) -> Result<RowSet> {
        let tests = self.resolve(table)?;
        Ok((0..table.len())
            .filter(|&r| tests.iter().all(|&(c, v)| table.level(r, c) == v))
            .collect())
    }

    pub fn measure(&self, table: &DecisionTable) -> Result<RuleStats> {
        let matched = self.matching_rows(table)?;
        Ok(RuleStats {
            support: matched.len(),
            hits: matched
                .iter()
                .filter(|&r| table.decision(r) == self.consequent)
                .count(),
            class_size: table.decision_class(self.consequent).len(),
        })
    }

    /// Evaluates the antecedent against an object. Every referenced
    /// attribute must be assigned.
    pub fn fires(&self, object: &BTreeMap<String, Level>) -> Result<bool> {
        let mut all = true;
        for c in &self.antecedent {
            let v = object
                .get(&c.attr)
                .ok_or_else(|| Error::MissingAttribute(c.attr.clone()))?;
            all &= *v == c.value;
        }
        Ok(all)
    }

    /// `(a = high) & (b = low) => (d = consistent)`.
    pub fn describe(&self, decision_attr: &str) -> String {
        let lhs = if self.antecedent.is_empty() {
            "(true)".to_string()
        } else {
            self.antecedent
                .iter()
                .map(|c| format!("({} = {})", c.attr, c.value))
                .collect::<Vec<_>>()
                .join(" & ")
        };
        format!("{lhs} => ({decision_attr} = {})", self.consequent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSource {
    Induced,
    File,
}

/// An ordered decision algorithm with no repeated rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<Rule>,
    source: RuleSource,
}

#[derive(Deserialize)]
struct RuleEntry {
    #[serde(rename = "if")]
    antecedent: Vec<Condition>,
    #[serde(rename = "then")]
    consequent: Decision,
}

#[derive(Serialize)]
struct RuleRecord {
    #[serde(rename = "if")]
    antecedent: Vec<Condition>,
    #[serde(rename = "then")]
    consequent: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    support: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    confidence: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<Fraction>,
}

impl RuleSet {
    pub fn new(rules: Vec<Rule>, source: RuleSource) -> Result<Self> {
        let mut seen = HashSet::new();
        for (i, rule) in rules.iter().enumerate() {
            let mut attrs = HashSet::new();
            for c in &rule.antecedent {
                if !attrs.insert(c.attr.as_str()) {
                    return Err(Error::RepeatedRuleAttribute(c.attr.clone()));
                }
            }
            if !seen.insert((&rule.antecedent, rule.consequent)) {
                return Err(Error::DuplicateRule(i + 1));
            }
        }
        Ok(RuleSet { rules, source })
    }

    /// Parses the JSON rule file format:
    /// `[{"if": [{"attr": .., "value": ..}, ..], "then": ..}, ..]`.
    /// Level and decision tokens go through the usual canonicalization.
    /// Extra statistic fields written by [`RuleSet::to_json`] are ignored.
    pub fn from_json(source: &str) -> Result<Self> {
        let records: Vec<RuleEntry> =
            serde_json::from_str(source).map_err(|e| Error::RuleFile(e.to_string()))?;
        let rules = records
            .into_iter()
            .map(|r| Rule::new(r.antecedent, r.consequent))
            .collect();
        RuleSet::new(rules, RuleSource::File)
    }

    /// Rule file JSON, including statistics for measured rules.
    pub fn to_json(&self) -> String {
        let records: Vec<RuleRecord> = self
            .rules
            .iter()
            .map(|r| RuleRecord {
                antecedent: r.antecedent.clone(),
                consequent: r.consequent,
                support: r.stats.map(|s| s.support),
                hits: r.stats.map(|s| s.hits),
                confidence: r.stats.and_then(|s| s.confidence()),
                coverage: r.stats.and_then(|s| s.coverage()),
            })
            .collect();
        serde_json::to_string_pretty(&records).expect("serializable rules")
    }

    /// Attaches statistics measured against `table` to every rule.
    pub fn measured(mut self, table: &DecisionTable) -> Result<Self> {
        for rule in &mut self.rules {
            rule.stats = Some(rule.measure(table)?);
        }
        Ok(self)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn source(&self) -> RuleSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

fn consistent_on(table: &DecisionTable, row: usize, kept: &[bool]) -> bool {
    let target = table.decision(row);
    (0..table.len()).all(|r| {
        table.decision(r) == target
            || kept
                .iter()
                .enumerate()
                .any(|(c, &k)| k && table.level(r, c) != table.level(row, c))
    })
}

/// Value reduct of one row: starting from the full row description, drop
/// conditions from the last column backwards whenever the shortened rule
/// still has confidence 1 on the table. Returns the kept column mask.
pub fn value_reduct(table: &DecisionTable, row: usize) -> Vec<bool> {
    let mut kept = vec![true; table.num_conditions()];
    for c in (0..kept.len()).rev() {
        kept[c] = false;
        if !consistent_on(table, row, &kept) {
            kept[c] = true;
        }
    }
    kept
}

/// Induces one minimal certain rule per row (value reducts), deduplicated
/// and sorted by support (descending), antecedent length, then antecedent
/// contents in column order.
pub fn induce_rules(table: &DecisionTable) -> Result<RuleSet> {
    let report = validate(table);
    if !report.is_consistent() {
        return Err(Error::InconsistentTable(report.conflicting_pairs.len()));
    }
    let mut seen = HashSet::new();
    let mut keyed = Vec::new();
    for row in 0..table.len() {
        let kept = value_reduct(table, row);
        let key: Vec<(usize, Level)> = (0..kept.len())
            .filter(|&c| kept[c])
            .map(|c| (c, table.level(row, c)))
            .collect();
        let decision = table.decision(row);
        if !seen.insert((key.clone(), decision)) {
            continue;
        }
        let rule = Rule::new(
            key.iter()
                .map(|&(c, value)| Condition {
                    attr: table.condition_attrs()[c].clone(),
                    value,
                })
                .collect(),
            decision,
        );
        let stats = rule.measure(table)?;
        keyed.push((key, Rule { stats: Some(stats), ..rule }));
    }
    keyed.sort_by(|(ka, ra), (kb, rb)| {
        let (sa, sb) = (ra.stats.unwrap().support, rb.stats.unwrap().support);
        sb.cmp(&sa)
            .then(ka.len().cmp(&kb.len()))
            .then_with(|| ka.cmp(kb))
            .then(ra.consequent.cmp(&rb.consequent))
    });
    RuleSet::new(keyed.into_iter().map(|(_, r)| r).collect(), RuleSource::Induced)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleAuditEntry {
    /// 1-based position in the rule set.
    pub rule: usize,
    pub text: String,
    pub support: usize,
    pub hits: usize,
    pub confidence: Option<Fraction>,
    pub coverage: Option<Fraction>,
    pub matched_rows: RowSet,
    /// Matching rows whose decision differs from the consequent.
    pub counterexamples: RowSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleAudit {
    pub rules: Vec<RuleAuditEntry>,
}

impl RuleAudit {
    pub fn total_counterexamples(&self) -> usize {
        self.rules.iter().map(|e| e.counterexamples.len()).sum()
    }
}

pub fn audit_rules(table: &DecisionTable, rules: &RuleSet) -> Result<RuleAudit> {
    let entries = rules
        .rules()
        .iter()
        .enumerate()
        .map(|(i, rule)| {
            let matched = rule.matching_rows(table)?;
            let counterexamples: RowSet = matched
                .iter()
                .filter(|&r| table.decision(r) != rule.consequent)
                .collect();
            let stats = rule.measure(table)?;
            Ok(RuleAuditEntry {
                rule: i + 1,
                text: rule.describe(table.decision_attr()),
                support: stats.support,
                hits: stats.hits,
                confidence: stats.confidence(),
                coverage: stats.coverage(),
                matched_rows: matched,
                counterexamples,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RuleAudit { rules: entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictDecision {
    Consistent,
    Inconsistent,
    Unknown,
}

impl From<Decision> for VerdictDecision {
    fn from(d: Decision) -> Self {
        match d {
            Decision::Consistent => VerdictDecision::Consistent,
            Decision::Inconsistent => VerdictDecision::Inconsistent,
        }
    }
}

impl VerdictDecision {
    pub fn decided(self) -> Option<Decision> {
        match self {
            VerdictDecision::Consistent => Some(Decision::Consistent),
            VerdictDecision::Inconsistent => Some(Decision::Inconsistent),
            VerdictDecision::Unknown => None,
        }
    }
}

impl fmt::Display for VerdictDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictDecision::Consistent => "consistent",
            VerdictDecision::Inconsistent => "inconsistent",
            VerdictDecision::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub decision: VerdictDecision,
    /// Indices (0-based; reported 1-based) of the rules that fired.
    #[serde(serialize_with = "serialize_one_based")]
    pub matched_rules: Vec<usize>,
    /// Raised exactly when the decision is inconsistent.
    pub override_alert: bool,
}

/// Fires every rule whose antecedent holds and takes a support-weighted
/// vote over the firing consequents. Rules without statistics weigh 1.
/// No firing rule or a tied vote yields `unknown`.
pub fn classify(rules: &RuleSet, object: &BTreeMap<String, Level>) -> Result<Verdict> {
    let mut matched = Vec::new();
    let mut votes: BTreeMap<Decision, usize> = BTreeMap::new();
    for (i, rule) in rules.rules().iter().enumerate() {
        if rule.fires(object)? {
            matched.push(i);
            let weight = rule.stats.map_or(1, |s| s.support);
            *votes.entry(rule.consequent).or_default() += weight;
        }
    }
    let decision = match votes.len() {
        0 => VerdictDecision::Unknown,
        1 => (*votes.keys().next().unwrap()).into(),
        _ => {
            let best = *votes.values().max().unwrap();
            let mut leaders = votes.iter().filter(|(_, &w)| w == best);
            match (leaders.next(), leaders.next()) {
                (Some((&d, _)), None) => d.into(),
                _ => VerdictDecision::Unknown,
            }
        }
    };
    Ok(Verdict {
        override_alert: decision == VerdictDecision::Inconsistent,
        decision,
        matched_rules: matched,
    })
}

/// Number of rules mentioning each attribute. `attrs` fixes the reported
/// attributes and their order (zero counts included); attributes found only
/// in the rules follow in first-mention order.
pub fn attribute_frequency<S: AsRef<str>>(rules: &RuleSet, attrs: &[S]) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = attrs.iter().map(|a| (a.as_ref().to_string(), 0)).collect();
    for rule in rules.rules() {
        for c in &rule.antecedent {
            match out.iter_mut().find(|(a, _)| *a == c.attr) {
                Some((_, n)) => *n += 1,
                None => out.push((c.attr.clone(), 1)),
            }
        }
    }
    out
}

/// The object described by one table row.
pub fn row_object(table: &DecisionTable, row: usize) -> BTreeMap<String, Level> {
    table
        .condition_attrs()
        .iter()
        .cloned()
        .zip(table.conditions(row).iter().copied())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cond(attr: &str, value: Level) -> Condition {
        Condition {
            attr: attr.into(),
            value,
        }
    }

    fn table(csv: &str) -> DecisionTable {
        DecisionTable::from_csv_str(csv, None).unwrap()
    }

    #[test]
    fn one_row_table_yields_empty_antecedent() {
        let t = table("a,b,d\nhigh,low,consistent\n");
        let rs = induce_rules(&t).unwrap();
        assert_eq!(rs.len(), 1);
        let r = &rs.rules()[0];
        assert!(r.antecedent.is_empty());
        assert_eq!(r.stats.unwrap().support, 1);
        assert_eq!(r.stats.unwrap().confidence(), Some(Fraction::ONE));
    }

    #[test]
    fn decision_follows_one_attribute() {
        let t = table(
            "a,b,d\nhigh,low,consistent\nlow,low,inconsistent\nhigh,high,consistent\nlow,high,inconsistent\n",
        );
        let rs = induce_rules(&t).unwrap();
        let got: Vec<_> = rs.rules().iter().map(|r| (r.antecedent.clone(), r.consequent)).collect();
        assert_eq!(
            got,
            vec![
                (vec![cond("a", Level::High)], Decision::Consistent),
                (vec![cond("a", Level::Low)], Decision::Inconsistent),
            ]
        );
        assert!(rs.rules().iter().all(|r| r.stats.unwrap().confidence() == Some(Fraction::ONE)));
    }

    #[test]
    fn inconsistent_table_is_rejected() {
        let t = table("a,d\nhigh,consistent\nhigh,inconsistent\n");
        assert_eq!(induce_rules(&t), Err(Error::InconsistentTable(1)));
    }

    #[test]
    fn rule_file_parsing() {
        let rs = RuleSet::from_json(
            r#"[{"if":[{"attr":"a","value":"Medium"}],"then":"Inconsistent"},{"if":[],"then":"consistent"}]"#,
        )
        .unwrap();
        assert_eq!(rs.rules()[0].antecedent, vec![cond("a", Level::Moderate)]);
        assert_eq!(rs.source(), RuleSource::File);
        assert!(RuleSet::from_json(r#"[{"if":[{"attr":"a","value":"Banana"}],"then":"consistent"}]"#).is_err());
        assert!(matches!(
            RuleSet::from_json(r#"[{"if":[],"then":"consistent"},{"if":[],"then":"consistent"}]"#),
            Err(Error::DuplicateRule(2))
        ));
        assert!(matches!(
            RuleSet::from_json(
                r#"[{"if":[{"attr":"a","value":"low"},{"attr":"a","value":"high"}],"then":"consistent"}]"#
            ),
            Err(Error::RepeatedRuleAttribute(_))
        ));
        let back = RuleSet::from_json(&rs.to_json()).unwrap();
        assert_eq!(back, rs);
    }

    #[test]
    fn audit_reports_counterexamples_and_null_confidence() {
        let t = table("a,d\nhigh,consistent\nhigh,inconsistent\nlow,consistent\n");
        let rs = RuleSet::new(
            vec![
                Rule::new(vec![cond("a", Level::High)], Decision::Consistent),
                Rule::new(vec![cond("a", Level::Moderate)], Decision::Consistent),
            ],
            RuleSource::File,
        )
        .unwrap();
        let audit = audit_rules(&t, &rs).unwrap();
        assert_eq!(audit.rules[0].support, 2);
        assert_eq!(audit.rules[0].confidence, Some(Fraction::new(1, 2)));
        assert_eq!(audit.rules[0].counterexamples.to_one_based(), vec![2]);
        assert_eq!(audit.rules[1].support, 0);
        assert_eq!(audit.rules[1].confidence, None);

        let bad = RuleSet::new(
            vec![Rule::new(vec![cond("zz", Level::High)], Decision::Consistent)],
            RuleSource::File,
        )
        .unwrap();
        assert_eq!(audit_rules(&t, &bad), Err(Error::UnknownAttribute("zz".into())));
    }

    #[test]
    fn classify_votes_by_support() {
        let mut heavy = Rule::new(vec![cond("a", Level::High)], Decision::Consistent);
        heavy.stats = Some(RuleStats { support: 3, hits: 3, class_size: 3 });
        let mut light = Rule::new(vec![cond("b", Level::Low)], Decision::Inconsistent);
        light.stats = Some(RuleStats { support: 1, hits: 1, class_size: 1 });
        let rs = RuleSet::new(vec![heavy.clone(), light.clone()], RuleSource::Induced).unwrap();

        let obj: BTreeMap<String, Level> =
            [("a".to_string(), Level::High), ("b".to_string(), Level::Low)].into();
        let v = classify(&rs, &obj).unwrap();
        assert_eq!(v.decision, VerdictDecision::Consistent);
        assert_eq!(v.matched_rules, vec![0, 1]);
        assert!(!v.override_alert);

        light.stats = Some(RuleStats { support: 3, hits: 3, class_size: 3 });
        let tied = RuleSet::new(vec![heavy, light], RuleSource::Induced).unwrap();
        assert_eq!(classify(&tied, &obj).unwrap().decision, VerdictDecision::Unknown);

        let none: BTreeMap<String, Level> =
            [("a".to_string(), Level::Low), ("b".to_string(), Level::High)].into();
        let v = classify(&rs, &none).unwrap();
        assert_eq!(v.decision, VerdictDecision::Unknown);
        assert!(v.matched_rules.is_empty());

        let partial: BTreeMap<String, Level> = [("a".to_string(), Level::High)].into();
        assert_eq!(classify(&rs, &partial), Err(Error::MissingAttribute("b".into())));
    }

    #[test]
    fn inconsistent_verdict_raises_alert() {
        let rs = RuleSet::new(
            vec![Rule::new(vec![cond("a", Level::Low)], Decision::Inconsistent)],
            RuleSource::File,
        )
        .unwrap();
        let obj: BTreeMap<String, Level> = [("a".to_string(), Level::Low)].into();
        let v = classify(&rs, &obj).unwrap();
        assert_eq!(v.decision, VerdictDecision::Inconsistent);
        assert!(v.override_alert);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"decision":"inconsistent","matched_rules":[1],"override_alert":true}"#);
    }

    #[test]
    fn frequency_counts() {
        let empty = RuleSet::new(vec![], RuleSource::File).unwrap();
        assert_eq!(
            attribute_frequency(&empty, &["a", "b"]),
            vec![("a".to_string(), 0), ("b".to_string(), 0)]
        );
        let one = RuleSet::new(
            vec![Rule::new(
                vec![cond("a", Level::Low), cond("c", Level::High)],
                Decision::Consistent,
            )],
            RuleSource::File,
        )
        .unwrap();
        assert_eq!(
            attribute_frequency(&one, &["a", "b"]),
            vec![("a".to_string(), 1), ("b".to_string(), 0), ("c".to_string(), 1)]
        );
    }
}
