use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use roughset_core::autopilot::{
    classify_levels, full_pipeline, published_rules, payload_level, training_fixture, FaultVector,
    PayloadId, PipelineOutcome, EMBEDDED_FILES, FACTORS, PAYLOAD_ATTRS,
};
use roughset_core::eval::{compare, render_table, synth_test_set_from, EvalReport};
use roughset_core::id3::{build_tree, entropy, information_gain, tree_classify, TreeNode};
use roughset_core::roughset::{
    approximation_report, dependency_degree, find_reducts, partition, positive_region,
    significances, ApproximationReport,
};
use roughset_core::rules::{
    attribute_frequency, audit_rules, classify, induce_rules, RuleSet, Verdict,
};
use roughset_core::{
    canonicalize_decision, canonicalize_level, validate, DecisionTable, Fraction, Level, RowSet,
};
use serde::Serialize;

use crate::args::{
    AutopilotArgs, Command, FixturesCommand, Id3Command, ObjectArgs, OptionalTableArg,
    RulesCommand, TableArg,
};
use crate::error::{CliError, CliResult};
use crate::paths;

/// A command's report in both renderings.
pub struct Output {
    pub json: String,
    pub text: String,
}

fn output<T: Serialize>(value: &T, text: String) -> CliResult<Output> {
    let json = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(Output { json: json + "\n", text })
}

fn load_table(arg: &TableArg) -> CliResult<DecisionTable> {
    let source = paths::read(&arg.table)?;
    Ok(DecisionTable::from_csv_str(&source, arg.decision.as_deref())?)
}

fn load_optional_table(arg: &OptionalTableArg) -> CliResult<DecisionTable> {
    match &arg.table {
        Some(path) => load_table(&TableArg {
            table: path.clone(),
            decision: arg.decision.clone(),
        }),
        None => Ok(training_fixture()),
    }
}

fn load_path_table(path: Option<&Path>) -> CliResult<DecisionTable> {
    match path {
        Some(p) => Ok(DecisionTable::from_csv_str(&paths::read(p)?, None)?),
        None => Ok(training_fixture()),
    }
}

fn load_rules(path: &Path) -> CliResult<RuleSet> {
    Ok(RuleSet::from_json(&paths::read(path)?)?)
}

fn split_list(raw: &str) -> Vec<String> {
    if raw.trim().is_empty() {
        return Vec::new();
    }
    raw.split(',').map(|s| s.trim().to_string()).collect()
}

/// `None` selects every condition attribute; an empty string selects none.
fn attr_list(table: &DecisionTable, raw: Option<&str>) -> Vec<String> {
    match raw {
        Some(r) => split_list(r),
        None => table.condition_attrs().to_vec(),
    }
}

fn build_object(args: &ObjectArgs, default_attrs: &[String]) -> CliResult<BTreeMap<String, Level>> {
    let mut object = BTreeMap::new();
    if let Some(levels) = &args.levels {
        let attrs = match &args.attrs {
            Some(a) => split_list(a),
            None => default_attrs.to_vec(),
        };
        let levels = split_list(levels);
        if levels.len() != attrs.len() {
            return Err(CliError::Usage(format!(
                "--levels has {} values for {} attributes",
                levels.len(),
                attrs.len()
            )));
        }
        for (attr, raw) in attrs.into_iter().zip(levels) {
            object.insert(attr, canonicalize_level(&raw)?);
        }
    }
    for assignment in &args.set {
        let (attr, raw) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects attribute=level, got {assignment:?}")))?;
        object.insert(attr.trim().to_string(), canonicalize_level(raw)?);
    }
    if object.is_empty() {
        return Err(CliError::Usage("no object given: use --levels or --set".into()));
    }
    Ok(object)
}

fn payload_names() -> Vec<String> {
    PAYLOAD_ATTRS.iter().map(|s| s.to_string()).collect()
}

fn rows_text(set: &RowSet) -> String {
    let rows = set.to_one_based();
    if rows.is_empty() {
        return "{}".into();
    }
    let parts: Vec<String> = rows.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn frac_text(f: Fraction) -> String {
    format!("{f} ({:.4})", f.to_f64())
}

fn opt_frac_text(f: Option<Fraction>) -> String {
    f.map_or_else(|| "null".to_string(), frac_text)
}

fn attrs_text(attrs: &[String]) -> String {
    format!("{{{}}}", attrs.join(", "))
}

fn object_text(object: &BTreeMap<String, Level>) -> String {
    object
        .iter()
        .map(|(a, l)| format!("{a}={l}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn run(command: &Command) -> CliResult<Output> {
    match command {
        Command::Validate(t) => cmd_validate(t),
        Command::Canonicalize(t) => {
            let table = load_table(t)?;
            let csv = table.to_csv();
            #[derive(Serialize)]
            struct Csv<'a> {
                csv: &'a str,
            }
            output(&Csv { csv: &csv }, csv.clone())
        }
        Command::Partition { table, attrs } => cmd_partition(table, attrs.as_deref()),
        Command::Approx {
            table,
            attrs,
            target,
            rows,
        } => cmd_approx(table, attrs.as_deref(), target.as_deref(), rows.as_deref()),
        Command::Dependency { table, attrs } => cmd_dependency(table, attrs.as_deref()),
        Command::Reducts(t) => cmd_reducts(t),
        Command::Significance(t) => cmd_significance(t),
        Command::Rules(r) => run_rules(r),
        Command::Id3(c) => run_id3(c),
        Command::Evaluate {
            train,
            test,
            synthetic,
            n,
        } => cmd_evaluate(train.as_deref(), test.as_deref(), *synthetic, *n),
        Command::Synth { seed, n, train } => {
            let train = load_path_table(train.as_deref())?;
            let table = synth_test_set_from(&train, *seed, *n)?;
            let csv = table.to_csv();
            #[derive(Serialize)]
            struct Synth<'a> {
                seed: u64,
                n: usize,
                csv: &'a str,
            }
            output(&Synth { seed: *seed, n: *n, csv: &csv }, csv.clone())
        }
        Command::Autopilot(a) => cmd_autopilot(a),
        Command::Fixtures(FixturesCommand::Export { out }) => cmd_export(out),
    }
}

fn cmd_validate(arg: &TableArg) -> CliResult<Output> {
    let table = load_table(arg)?;
    let report = validate(&table);
    #[derive(Serialize)]
    struct Validation<'a> {
        rows: usize,
        condition_attrs: &'a [String],
        decision_attr: &'a str,
        consistent: bool,
        #[serde(flatten)]
        report: &'a roughset_core::ValidationReport,
    }
    let pairs = |ps: &[(usize, usize)]| {
        ps.iter()
            .map(|(i, j)| format!("({}, {})", i + 1, j + 1))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let text = format!(
        "rows: {}\nconsistent: {}\nconflicting pairs: {}\nduplicate pairs: {}\n",
        table.len(),
        report.is_consistent(),
        pairs(&report.conflicting_pairs),
        pairs(&report.duplicate_pairs),
    );
    output(
        &Validation {
            rows: table.len(),
            condition_attrs: table.condition_attrs(),
            decision_attr: table.decision_attr(),
            consistent: report.is_consistent(),
            report: &report,
        },
        text,
    )
}

fn cmd_partition(arg: &TableArg, attrs: Option<&str>) -> CliResult<Output> {
    let table = load_table(arg)?;
    let attrs = attr_list(&table, attrs);
    let p = partition(&table, &attrs)?;
    let mut text = format!("attrs: {}\nblocks: {}\n", attrs_text(&attrs), p.blocks.len());
    for b in &p.blocks {
        let _ = writeln!(text, "  {}", rows_text(b));
    }
    output(&p, text)
}

fn parse_rows(table: &DecisionTable, list: &str) -> CliResult<RowSet> {
    let mut set = RowSet::new();
    for raw in split_list(list) {
        let n: usize = raw
            .parse()
            .map_err(|_| CliError::Usage(format!("--rows expects 1-based integers, got {raw:?}")))?;
        if n == 0 || n > table.len() {
            return Err(CliError::Usage(format!("row {n} outside 1..={}", table.len())));
        }
        set.insert(n - 1);
    }
    Ok(set)
}

fn cmd_approx(
    arg: &TableArg,
    attrs: Option<&str>,
    target: Option<&str>,
    rows: Option<&str>,
) -> CliResult<Output> {
    let table = load_table(arg)?;
    let attrs = attr_list(&table, attrs);
    let targets: Vec<(Option<String>, RowSet)> = match (target, rows) {
        (Some(class), _) => {
            let d = canonicalize_decision(class)?;
            vec![(Some(d.to_string()), table.decision_class(d))]
        }
        (None, Some(list)) => vec![(None, parse_rows(&table, list)?)],
        (None, None) => table
            .decision_values()
            .into_iter()
            .map(|d| (Some(d.to_string()), table.decision_class(d)))
            .collect(),
    };

    #[derive(Serialize)]
    struct Approximation {
        #[serde(skip_serializing_if = "Option::is_none")]
        target_class: Option<String>,
        target: RowSet,
        #[serde(flatten)]
        report: ApproximationReport,
    }
    #[derive(Serialize)]
    struct Approx<'a> {
        attrs: &'a [String],
        approximations: Vec<Approximation>,
    }
    let mut approximations = Vec::new();
    let mut text = format!("attrs: {}\n", attrs_text(&attrs));
    for (target_class, target) in targets {
        let report = approximation_report(&table, &attrs, &target)?;
        let _ = write!(
            text,
            "target: {}{}\n  lower: {}\n  upper: {}\n  boundary: {}\n  accuracy: {}\n  set is {}\n",
            target_class.as_deref().map(|c| format!("{c} ")).unwrap_or_default(),
            rows_text(&target),
            rows_text(&report.lower),
            rows_text(&report.upper),
            rows_text(&report.boundary),
            frac_text(report.accuracy),
            if report.is_crisp { "crisp" } else { "rough" },
        );
        approximations.push(Approximation {
            target_class,
            target,
            report,
        });
    }
    output(
        &Approx {
            attrs: &attrs,
            approximations,
        },
        text,
    )
}

fn cmd_dependency(arg: &TableArg, attrs: Option<&str>) -> CliResult<Output> {
    let table = load_table(arg)?;
    let attrs = attr_list(&table, attrs);
    let pos = positive_region(&table, &attrs)?;
    let gamma = dependency_degree(&table, &attrs)?;
    #[derive(Serialize)]
    struct Dependency<'a> {
        attrs: &'a [String],
        decision_attr: &'a str,
        positive_region: &'a RowSet,
        gamma: Fraction,
    }
    let text = format!(
        "attrs: {}\npositive region: {}\ngamma: {}\n",
        attrs_text(&attrs),
        rows_text(&pos),
        frac_text(gamma)
    );
    output(
        &Dependency {
            attrs: &attrs,
            decision_attr: table.decision_attr(),
            positive_region: &pos,
            gamma,
        },
        text,
    )
}

fn cmd_reducts(arg: &TableArg) -> CliResult<Output> {
    let table = load_table(arg)?;
    let report = find_reducts(&table)?;
    let mut text = format!("baseline gamma: {}\nreducts:\n", frac_text(report.baseline_gamma));
    for r in &report.reducts {
        let _ = writeln!(text, "  {}", attrs_text(r));
    }
    let _ = writeln!(text, "core: {}", attrs_text(&report.core));
    output(&report, text)
}

fn cmd_significance(arg: &TableArg) -> CliResult<Output> {
    let table = load_table(arg)?;
    #[derive(Serialize)]
    struct Entry {
        attr: String,
        significance: Fraction,
    }
    #[derive(Serialize)]
    struct Significance {
        baseline_gamma: Fraction,
        attributes: Vec<Entry>,
        /// Attribute names ordered by decreasing significance, column order on ties.
        ranking: Vec<String>,
    }
    let entries: Vec<Entry> = significances(&table)
        .into_iter()
        .map(|(attr, significance)| Entry { attr, significance })
        .collect();
    let mut ranking: Vec<&Entry> = entries.iter().collect();
    ranking.sort_by_key(|r| std::cmp::Reverse(r.significance));
    let ranking: Vec<String> = ranking.into_iter().map(|e| e.attr.clone()).collect();
    let baseline = dependency_degree(&table, table.condition_attrs())?;
    let mut text = format!("baseline gamma: {}\n", frac_text(baseline));
    for e in &entries {
        let _ = writeln!(text, "  {}: {}", e.attr, frac_text(e.significance));
    }
    let _ = writeln!(text, "ranking: {}", ranking.join(" > "));
    output(
        &Significance {
            baseline_gamma: baseline,
            attributes: entries,
            ranking,
        },
        text,
    )
}

fn rules_text(rules: &RuleSet, decision_attr: &str) -> String {
    let mut text = String::new();
    for (i, r) in rules.rules().iter().enumerate() {
        let _ = write!(text, "rule {}. {}", i + 1, r.describe(decision_attr));
        if let Some(s) = r.stats {
            let _ = write!(
                text,
                "  [support {}, confidence {}, coverage {}]",
                s.support,
                opt_frac_text(s.confidence()),
                opt_frac_text(s.coverage())
            );
        }
        text.push('\n');
    }
    text
}

fn verdict_text(v: &Verdict) -> String {
    let rules: Vec<String> = v.matched_rules.iter().map(|i| (i + 1).to_string()).collect();
    format!(
        "verdict: {}\nmatched rules: {}\noverride alert: {}\n",
        v.decision,
        if rules.is_empty() { "none".to_string() } else { rules.join(", ") },
        v.override_alert
    )
}

fn run_rules(command: &RulesCommand) -> CliResult<Output> {
    match command {
        RulesCommand::Induce(t) => {
            let table = load_table(t)?;
            let rules = induce_rules(&table)?;
            let text = rules_text(&rules, table.decision_attr());
            Ok(Output {
                json: rules.to_json() + "\n",
                text,
            })
        }
        RulesCommand::Audit { table, rules } => {
            let table = load_table(table)?;
            let rules = load_rules(rules)?;
            let audit = audit_rules(&table, &rules)?;
            let mut text = String::new();
            for e in &audit.rules {
                let _ = writeln!(
                    text,
                    "rule {}. {}\n    support {}, hits {}, confidence {}, coverage {}, counterexamples {}",
                    e.rule,
                    e.text,
                    e.support,
                    e.hits,
                    opt_frac_text(e.confidence),
                    opt_frac_text(e.coverage),
                    rows_text(&e.counterexamples)
                );
            }
            output(&audit, text)
        }
        RulesCommand::Classify {
            rules,
            table,
            object,
        } => {
            let (rule_set, default_attrs) = match rules {
                Some(path) => {
                    let set = load_rules(path)?;
                    match &table.table {
                        Some(_) => {
                            let t = load_optional_table(table)?;
                            let attrs = t.condition_attrs().to_vec();
                            (set.measured(&t)?, attrs)
                        }
                        None => (set, payload_names()),
                    }
                }
                None => {
                    let t = load_optional_table(table)?;
                    (induce_rules(&t)?, t.condition_attrs().to_vec())
                }
            };
            let object = build_object(object, &default_attrs)?;
            let verdict = classify(&rule_set, &object)?;
            #[derive(Serialize)]
            struct Classified<'a> {
                object: &'a BTreeMap<String, Level>,
                verdict: &'a Verdict,
            }
            let text = format!("object: {}\n{}", object_text(&object), verdict_text(&verdict));
            output(
                &Classified {
                    object: &object,
                    verdict: &verdict,
                },
                text,
            )
        }
        RulesCommand::Frequency { rules, attrs } => {
            let set = load_rules(rules)?;
            let attrs = attrs.as_deref().map_or_else(payload_names, split_list);
            let freq = attribute_frequency(&set, &attrs);
            #[derive(Serialize)]
            struct Entry<'a> {
                attr: &'a str,
                rules: usize,
            }
            let entries: Vec<Entry> = freq
                .iter()
                .map(|(a, n)| Entry { attr: a, rules: *n })
                .collect();
            let mut text = String::new();
            for (a, n) in &freq {
                let _ = writeln!(text, "{a}: {n}");
            }
            output(&entries, text)
        }
    }
}

fn tree_text(node: &TreeNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match node {
        TreeNode::Leaf { decision } => {
            let _ = writeln!(out, "{pad}=> {decision}");
        }
        TreeNode::Split {
            attribute,
            fallback,
            branches,
        } => {
            let _ = writeln!(out, "{pad}split on {attribute} (fallback {fallback})");
            for (level, child) in branches {
                let _ = writeln!(out, "{pad}  {attribute} = {level}:");
                tree_text(child, depth + 2, out);
            }
        }
    }
}

fn run_id3(command: &Id3Command) -> CliResult<Output> {
    match command {
        Id3Command::Gains(t) => {
            let table = load_table(t)?;
            let counts: Vec<usize> = roughset_core::Decision::ALL
                .iter()
                .map(|&d| table.decision_class(d).len())
                .collect();
            let h = entropy(&counts)?;
            #[derive(Serialize)]
            struct Gain {
                attr: String,
                gain: f64,
            }
            #[derive(Serialize)]
            struct Gains {
                entropy: f64,
                gains: Vec<Gain>,
            }
            let gains = table
                .condition_attrs()
                .iter()
                .map(|a| {
                    Ok(Gain {
                        attr: a.clone(),
                        gain: information_gain(&table, &table.universe(), a)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let mut text = format!("entropy: {h:.6}\n");
            for g in &gains {
                let _ = writeln!(text, "  {}: {:.6}", g.attr, g.gain);
            }
            output(&Gains { entropy: h, gains }, text)
        }
        Id3Command::Train(t) => {
            let table = load_table(t)?;
            let tree = build_tree(&table);
            let mut text = String::new();
            tree_text(&tree, 0, &mut text);
            Ok(Output {
                json: tree.to_json() + "\n",
                text,
            })
        }
        Id3Command::Classify {
            tree,
            table,
            object,
        } => {
            let (tree, default_attrs) = match tree {
                Some(path) => (TreeNode::from_json(&paths::read(path)?)?, payload_names()),
                None => {
                    let t = load_optional_table(table)?;
                    (build_tree(&t), t.condition_attrs().to_vec())
                }
            };
            let object = build_object(object, &default_attrs)?;
            let decision = tree_classify(&tree, &object)?;
            #[derive(Serialize)]
            struct Classified<'a> {
                object: &'a BTreeMap<String, Level>,
                decision: roughset_core::Decision,
            }
            let text = format!("object: {}\ndecision: {decision}\n", object_text(&object));
            output(
                &Classified {
                    object: &object,
                    decision,
                },
                text,
            )
        }
    }
}

fn cmd_evaluate(
    train: Option<&Path>,
    test: Option<&Path>,
    synthetic: Option<u64>,
    n: usize,
) -> CliResult<Output> {
    let train_table = load_path_table(train)?;
    let test_table = match (test, synthetic) {
        (Some(p), _) => DecisionTable::from_csv_str(&paths::read(p)?, None)?,
        (None, Some(seed)) => synth_test_set_from(&train_table, seed, n)?,
        (None, None) => return Err(CliError::Usage("give --test or --synthetic".into())),
    };
    let (rough, id3) = compare(&train_table, &test_table)?;
    #[derive(Serialize)]
    struct Evaluation<'a> {
        #[serde(skip_serializing_if = "Option::is_none")]
        synthetic_seed: Option<u64>,
        reports: [&'a EvalReport; 2],
    }
    let mut text = render_table(&[rough.clone(), id3.clone()]);
    let _ = writeln!(
        text,
        "rule classifier abstained on {} of {} test rows",
        rough.unknown.unwrap_or(0),
        rough.testing_size
    );
    output(
        &Evaluation {
            synthetic_seed: if test.is_none() { synthetic } else { None },
            reports: [&rough, &id3],
        },
        text,
    )
}

fn parse_levels5(raw: &str) -> CliResult<[Level; 5]> {
    let parts = split_list(raw);
    if parts.len() != 5 {
        return Err(CliError::Usage(format!("--levels expects 5 values, got {}", parts.len())));
    }
    let mut levels = [Level::High; 5];
    for (slot, p) in levels.iter_mut().zip(&parts) {
        *slot = canonicalize_level(p)?;
    }
    Ok(levels)
}

fn cmd_autopilot(args: &AutopilotArgs) -> CliResult<Output> {
    let training = training_fixture();
    let rules = if args.induced {
        induce_rules(&training)?
    } else {
        match &args.rules {
            Some(path) => load_rules(path)?.measured(&training)?,
            None => published_rules().measured(&training)?,
        }
    };

    let faults = match (&args.faults, &args.faults_file) {
        (Some(list), _) => Some(FaultVector::from_list(list)?),
        (None, Some(path)) => Some(FaultVector::from_key_values(&paths::read(path)?)?),
        (None, None) => None,
    };
    let outcome: PipelineOutcome = match (&faults, &args.levels) {
        (Some(f), _) => full_pipeline(f, &rules)?,
        (None, Some(levels)) => classify_levels(parse_levels5(levels)?, &rules)?,
        (None, None) => return Err(CliError::Usage("give --faults, --faults-file or --levels".into())),
    };

    #[derive(Serialize)]
    struct PayloadInputs {
        payload: &'static str,
        inputs: BTreeMap<&'static str, bool>,
    }
    #[derive(Serialize)]
    struct Autopilot<'a> {
        rules: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        faults: Option<Vec<PayloadInputs>>,
        #[serde(flatten)]
        outcome: &'a PipelineOutcome,
    }
    let fault_view = faults.map(|f| {
        PayloadId::ALL
            .iter()
            .map(|&id| PayloadInputs {
                payload: id.attr_name(),
                inputs: FACTORS
                    .iter()
                    .filter(|fa| fa.payload == id)
                    .map(|fa| (fa.name, f.get(fa.name).expect("known factor")))
                    .collect(),
            })
            .collect()
    });
    let source = if args.induced {
        "induced"
    } else if args.rules.is_some() {
        "file"
    } else {
        "published"
    };

    let mut text = String::new();
    if let Some(f) = &faults {
        for id in PayloadId::ALL {
            let inputs: Vec<&str> = f
                .payload_inputs(id)
                .iter()
                .map(|&b| if b { "yes" } else { "no" })
                .collect();
            let level = payload_level(id, f.payload_inputs(id))?;
            let _ = writeln!(text, "{id}: ({}) -> {level}", inputs.join(", "));
        }
    } else {
        for pl in &outcome.levels {
            let _ = writeln!(text, "{}: {}", pl.payload, pl.level);
        }
    }
    let _ = writeln!(text, "rules: {source}");
    text.push_str(&verdict_text(&outcome.verdict));
    if outcome.verdict.override_alert {
        text.push_str("MANUAL OVERRIDE ADVISED\n");
    }
    output(
        &Autopilot {
            rules: source,
            faults: fault_view,
            outcome: &outcome,
        },
        text,
    )
}

fn cmd_export(out: &Path) -> CliResult<Output> {
    let mut written = Vec::new();
    for (rel, contents) in EMBEDDED_FILES {
        let path = out.join(rel);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| CliError::Internal(format!("{}: {e}", parent.display())))?;
        }
        std::fs::write(&path, contents).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))?;
        written.push(rel);
    }
    #[derive(Serialize)]
    struct Exported<'a> {
        written: &'a [&'static str],
    }
    let text = written.iter().map(|w| format!("{w}\n")).collect();
    output(&Exported { written: &written }, text)
}
