//! Facts about the 30-row training table, each checked against the
//! brute-force oracle or a hand count.

#[path = "support/oracle.rs"]
mod oracle;

use std::collections::{BTreeMap, BTreeSet};

use roughset_core::autopilot::{published_rules, training_fixture, PAYLOAD_ATTRS};
use roughset_core::eval::compare;
use roughset_core::id3::{build_tree, entropy, information_gain, tree_classify};
use roughset_core::roughset::{
    approximation_report, dependency_degree, find_reducts, lower_approx, partition,
    positive_region, significance, upper_approx,
};
use roughset_core::rules::{
    attribute_frequency, audit_rules, classify, induce_rules, row_object, VerdictDecision,
};
use roughset_core::{validate, Decision, Fraction, Level, RowSet};

const CONSISTENT_ROWS: [usize; 15] = [1, 3, 4, 5, 8, 9, 10, 12, 13, 15, 21, 22, 24, 26, 29];

#[test]
fn fixture_matches_hand_transcription() {
    let t = training_fixture();
    let by_hand = oracle::table_six_by_hand();
    assert_eq!(t.len(), by_hand.len());
    for (row, (levels, decision)) in by_hand.iter().enumerate() {
        assert_eq!(t.conditions(row), levels, "row {}", row + 1);
        assert_eq!(t.decision(row), *decision, "row {}", row + 1);
    }
    assert_eq!(t.decision_class(Decision::Consistent), RowSet::from_one_based(CONSISTENT_ROWS));
    assert_eq!(t.decision_class(Decision::Inconsistent).len(), 15);
}

#[test]
fn validation_finds_the_single_duplicate() {
    let report = validate(&training_fixture());
    assert!(report.conflicting_pairs.is_empty());
    assert_eq!(report.duplicate_pairs, vec![(19, 27)]);
}

#[test]
fn partitions() {
    let t = training_fixture();
    let none = partition::<&str>(&t, &[]).unwrap();
    assert_eq!(none.blocks, vec![t.universe()]);

    let by_a = partition(&t, &["Payload I"]).unwrap();
    assert_eq!(by_a.block_sizes(), vec![21, 3, 3, 3]);
    assert_eq!(by_a.blocks[1].to_one_based(), vec![2, 7, 17]);

    let all = partition(&t, &PAYLOAD_ATTRS).unwrap();
    assert_eq!(all.blocks.len(), 29);
    assert_eq!(all.block_of(19).unwrap().to_one_based(), vec![20, 28]);
    let oracle_classes = oracle::classes(&t, &[0, 1, 2, 3, 4]);
    assert_eq!(oracle_classes.len(), 29);
}

#[test]
fn consistent_class_is_crisp() {
    let t = training_fixture();
    let target = RowSet::from_one_based(CONSISTENT_ROWS);
    assert_eq!(lower_approx(&t, &PAYLOAD_ATTRS, &target).unwrap(), target);
    assert_eq!(upper_approx(&t, &PAYLOAD_ATTRS, &target).unwrap(), target);
    let r = approximation_report(&t, &PAYLOAD_ATTRS, &target).unwrap();
    assert!(r.boundary.is_empty());
    assert!(r.is_crisp);
    assert_eq!(r.accuracy, Fraction::ONE);
}

#[test]
fn dependency_degrees() {
    let t = training_fixture();
    assert_eq!(positive_region(&t, &PAYLOAD_ATTRS).unwrap(), t.universe());
    assert_eq!(dependency_degree(&t, &PAYLOAD_ATTRS).unwrap(), Fraction::ONE);
    assert_eq!(dependency_degree::<&str>(&t, &[]).unwrap(), Fraction::ZERO);

    // only the three non-high blocks of Payload I are pure
    let gamma_a = dependency_degree(&t, &["Payload I"]).unwrap();
    assert_eq!(gamma_a, Fraction::new(9, 30));
    assert_eq!(oracle::gamma(&t, &[0]), (9, 30));
}

#[test]
fn reducts_and_core() {
    let t = training_fixture();
    let report = find_reducts(&t).unwrap();
    let all: Vec<String> = PAYLOAD_ATTRS.iter().map(|s| s.to_string()).collect();
    assert_eq!(report.reducts, vec![all.clone()]);
    assert_eq!(report.core, all);
    assert_eq!(report.baseline_gamma, Fraction::ONE);
    assert_eq!(oracle::reducts(&t), BTreeSet::from([vec![0, 1, 2, 3, 4]]));
}

#[test]
fn significance_of_each_payload() {
    let t = training_fixture();
    let expected = [
        Fraction::new(7, 30),
        Fraction::new(2, 15),
        Fraction::new(1, 6),
        Fraction::new(1, 15),
        Fraction::new(7, 30),
    ];
    for (col, (attr, want)) in PAYLOAD_ATTRS.iter().zip(expected).enumerate() {
        let rest: Vec<usize> = (0..5).filter(|&c| c != col).collect();
        let (num, den) = oracle::gamma(&t, &rest);
        assert_eq!(Fraction::ONE - Fraction::new(num as u64, den as u64), want);
        assert_eq!(significance(&t, attr).unwrap(), want, "{attr}");
    }
    // Payload I ties Payload V for the largest drop; Payload IV has the smallest.
}

#[test]
fn induced_rules() {
    let t = training_fixture();
    let rules = induce_rules(&t).unwrap();

    let expected: BTreeSet<(Vec<(usize, Level)>, Decision)> = (0..t.len())
        .map(|row| {
            let cols = oracle::greedy_value_reduct(&t, row);
            (cols.iter().map(|&c| (c, t.level(row, c))).collect(), t.decision(row))
        })
        .collect();
    let got: BTreeSet<(Vec<(usize, Level)>, Decision)> = rules
        .rules()
        .iter()
        .map(|r| {
            let key = r
                .antecedent
                .iter()
                .map(|c| (t.condition_index(&c.attr).unwrap(), c.value))
                .collect();
            (key, r.consequent)
        })
        .collect();
    assert_eq!(got, expected);
    assert_eq!(rules.len(), expected.len());
    assert_eq!(rules.len(), 16);

    let mut covered = RowSet::new();
    for rule in rules.rules() {
        let stats = rule.stats.unwrap();
        assert_eq!(stats.confidence(), Some(Fraction::ONE));
        covered = covered.union(&rule.matching_rows(&t).unwrap());
        for drop in 0..rule.antecedent.len() {
            let mut shorter = rule.clone();
            shorter.antecedent.remove(drop);
            assert!(shorter.measure(&t).unwrap().confidence() < Some(Fraction::ONE));
        }
    }
    assert_eq!(covered, t.universe());
    for w in rules.rules().windows(2) {
        let (a, b) = (w[0].stats.unwrap().support, w[1].stats.unwrap().support);
        assert!(a >= b);
    }

    for row in 0..t.len() {
        let v = classify(&rules, &row_object(&t, row)).unwrap();
        assert_eq!(v.decision, VerdictDecision::from(t.decision(row)), "row {}", row + 1);
    }
}

#[test]
fn published_rule_audit() {
    let t = training_fixture();
    let audit = audit_rules(&t, &published_rules()).unwrap();
    assert_eq!(audit.rules.len(), 13);

    let r7 = &audit.rules[6];
    assert_eq!(r7.support, 3);
    assert_eq!(r7.confidence, Some(Fraction::ONE));
    assert_eq!(r7.matched_rows.to_one_based(), vec![2, 7, 17]);

    let r2 = &audit.rules[1];
    assert_eq!((r2.support, r2.hits), (5, 4));
    assert_eq!(r2.confidence, Some(Fraction::new(4, 5)));
    assert_eq!(r2.counterexamples.to_one_based(), vec![23]);
    assert_eq!(r2.matched_rows.to_one_based(), vec![1, 5, 8, 22, 23]);

    let r8 = &audit.rules[7];
    assert_eq!(r8.support, 0);
    assert_eq!(r8.confidence, None);
}

#[test]
fn classification_examples() {
    let t = training_fixture();
    let induced = induce_rules(&t).unwrap();
    let obj = |levels: [Level; 5]| -> BTreeMap<String, Level> {
        PAYLOAD_ATTRS.iter().map(|a| a.to_string()).zip(levels).collect()
    };
    use Level::{ExtremelyLow as E, High as H, Moderate as M};

    assert_eq!(classify(&induced, &obj([H; 5])).unwrap().decision, VerdictDecision::Consistent);
    let v = classify(&induced, &obj([E; 5])).unwrap();
    assert_eq!(v.decision, VerdictDecision::Inconsistent);
    assert!(v.override_alert);

    let published = published_rules();
    let v = classify(&published, &obj([H, H, H, M, M])).unwrap();
    assert_eq!(v.decision, VerdictDecision::Unknown);
    assert!(v.matched_rules.is_empty());
    assert!(!v.override_alert);
}

#[test]
fn published_rule_frequency() {
    let freq = attribute_frequency(&published_rules(), &PAYLOAD_ATTRS);
    let counts: Vec<usize> = freq.iter().map(|(_, n)| *n).collect();
    assert_eq!(counts, vec![8, 5, 3, 6, 4]);
}

#[test]
fn id3_on_table_six() {
    let t = training_fixture();
    assert_eq!(entropy(&[15, 15]).unwrap(), 1.0);

    // Payload I tallies: high 15/6, every other level 0/3
    let expected_a = 1.0 - 0.7 * oracle::entropy_bits(&[15, 6]);
    let gain_a = information_gain(&t, &t.universe(), "Payload I").unwrap();
    assert!((gain_a - expected_a).abs() < 1e-12);
    for attr in PAYLOAD_ATTRS {
        assert!(information_gain(&t, &t.universe(), attr).unwrap() >= 0.0);
    }

    let tree = build_tree(&t);
    for row in 0..t.len() {
        assert_eq!(tree_classify(&tree, &row_object(&t, row)).unwrap(), t.decision(row));
    }
    assert_eq!(tree_classify(&tree, &row_object(&t, 0)).unwrap(), Decision::Consistent);
    assert!(tree.depth() <= 5);
}

#[test]
fn resubstitution_comparison() {
    let t = training_fixture();
    let (rough, id3) = compare(&t, &t).unwrap();
    assert_eq!(rough.detection_rate, Fraction::ONE);
    assert_eq!(id3.detection_rate, Fraction::ONE);
    assert_eq!(rough.unknown, Some(0));

    let one = t.select_rows(&[0]).unwrap();
    let (rough, id3) = compare(&t, &one).unwrap();
    assert_eq!((rough.matched, id3.matched), (1, 1));
}
