//! Direct-from-definition reference implementations. Nothing here calls the
//! partition or approximation code under test; only raw table accessors.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use roughset_core::{Decision, DecisionTable, Level};

pub type Rows = BTreeSet<usize>;

/// x and y agree on every column in `cols`.
pub fn indiscernible(t: &DecisionTable, cols: &[usize], x: usize, y: usize) -> bool {
    cols.iter().all(|&c| t.level(x, c) == t.level(y, c))
}

/// {x : every y indiscernible from x lies in X}
pub fn lower(t: &DecisionTable, cols: &[usize], target: &Rows) -> Rows {
    (0..t.len())
        .filter(|&x| (0..t.len()).all(|y| !indiscernible(t, cols, x, y) || target.contains(&y)))
        .collect()
}

/// {x : some y indiscernible from x lies in X}
pub fn upper(t: &DecisionTable, cols: &[usize], target: &Rows) -> Rows {
    (0..t.len())
        .filter(|&x| (0..t.len()).any(|y| indiscernible(t, cols, x, y) && target.contains(&y)))
        .collect()
}

/// {x : every y indiscernible from x has x's decision}
pub fn positive(t: &DecisionTable, cols: &[usize]) -> Rows {
    (0..t.len())
        .filter(|&x| {
            (0..t.len()).all(|y| !indiscernible(t, cols, x, y) || t.decision(y) == t.decision(x))
        })
        .collect()
}

/// (|POS|, |U|), unreduced.
pub fn gamma(t: &DecisionTable, cols: &[usize]) -> (usize, usize) {
    (positive(t, cols).len(), t.len())
}

pub fn gamma_eq(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 * b.1 == b.0 * a.1
}

pub fn mask_cols(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&c| mask & (1 << c) != 0).collect()
}

/// Indiscernibility classes as sets, keyed by member.
pub fn classes(t: &DecisionTable, cols: &[usize]) -> BTreeSet<Rows> {
    (0..t.len())
        .map(|x| (0..t.len()).filter(|&y| indiscernible(t, cols, x, y)).collect())
        .collect()
}

/// All reducts by full enumeration: preserving subsets none of whose proper
/// subsets preserve. Each reduct as a sorted column list.
pub fn reducts(t: &DecisionTable) -> BTreeSet<Vec<usize>> {
    let n = t.num_conditions();
    let full = (1u32 << n) - 1;
    let base = gamma(t, &mask_cols(full, n));
    let preserves = |m: u32| gamma_eq(gamma(t, &mask_cols(m, n)), base);
    (0..=full)
        .filter(|&m| preserves(m))
        .filter(|&m| (0..m).filter(|&s| s & m == s && s != m).all(|s| !preserves(s)))
        .map(|m| mask_cols(m, n))
        .collect()
}

/// Rule `row restricted to cols => decision(row)` has confidence 1.
pub fn certain(t: &DecisionTable, row: usize, cols: &[usize]) -> bool {
    (0..t.len()).all(|y| !indiscernible(t, cols, row, y) || t.decision(y) == t.decision(row))
}

/// Re-execution of the reverse-column greedy value reduct.
pub fn greedy_value_reduct(t: &DecisionTable, row: usize) -> Vec<usize> {
    let mut kept: Vec<usize> = (0..t.num_conditions()).collect();
    for c in (0..t.num_conditions()).rev() {
        let trial: Vec<usize> = kept.iter().copied().filter(|&k| k != c).collect();
        if certain(t, row, &trial) {
            kept = trial;
        }
    }
    kept
}

/// Every minimal certain sub-description of a row, by enumeration.
pub fn minimal_value_reducts(t: &DecisionTable, row: usize) -> BTreeSet<Vec<usize>> {
    let n = t.num_conditions();
    let full = (1u32 << n) - 1;
    let ok = |m: u32| certain(t, row, &mask_cols(m, n));
    (0..=full)
        .filter(|&m| ok(m))
        .filter(|&m| (0..m).filter(|&s| s & m == s && s != m).all(|s| !ok(s)))
        .map(|m| mask_cols(m, n))
        .collect()
}

pub fn entropy_bits(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * p.log2()
        })
        .sum()
}

/// Random table with up to `max_rows` rows, `max_attrs` attributes and
/// `max_values` distinct levels per attribute.
pub fn random_table(
    rng: &mut ChaCha8Rng,
    max_rows: usize,
    max_attrs: usize,
    max_values: usize,
) -> DecisionTable {
    let pick = |rng: &mut ChaCha8Rng, k: usize| (rng.next_u32() as usize) % k;
    let rows = 1 + pick(rng, max_rows);
    let attrs = 1 + pick(rng, max_attrs);
    let values: Vec<usize> = (0..attrs).map(|_| 1 + pick(rng, max_values)).collect();
    let body = (0..rows)
        .map(|_| {
            let levels = values.iter().map(|&v| Level::ALL[pick(rng, v)]).collect();
            (levels, Decision::ALL[pick(rng, 2)])
        })
        .collect();
    DecisionTable::new((0..attrs).map(|i| format!("a{i}")).collect(), "d", body).unwrap()
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random subset of the universe.
pub fn random_rows(rng: &mut ChaCha8Rng, n: usize) -> Rows {
    (0..n).filter(|_| rng.next_u32() & 1 == 1).collect()
}

/// Transcription of the 30-row training table with the level aliases
/// resolved by hand (Medium -> Moderate, Very low -> ExtremelyLow).
pub fn table_six_by_hand() -> Vec<([Level; 5], Decision)> {
    use Decision::{Consistent as C, Inconsistent as I};
    use Level::{ExtremelyLow as E, High as H, Low as L, Moderate as M};
    vec![
        ([H, H, H, H, H], C),
        ([M, H, H, H, H], I),
        ([H, M, H, M, H], C),
        ([H, H, H, M, H], C),
        ([H, H, M, H, H], C),
        ([L, H, M, M, M], I),
        ([M, H, H, M, M], I),
        ([H, H, M, H, M], C),
        ([H, H, M, M, H], C),
        ([H, H, M, M, M], C),
        ([E, H, H, H, H], I),
        ([H, L, H, H, M], C),
        ([H, M, L, H, M], C),
        ([H, L, H, E, E], I),
        ([H, M, L, H, H], C),
        ([L, M, H, M, M], I),
        ([M, M, L, M, H], I),
        ([L, L, M, H, M], I),
        ([H, H, E, M, E], I),
        ([H, H, E, M, M], I),
        ([H, M, H, M, M], C),
        ([H, H, E, H, E], C),
        ([H, H, M, H, E], I),
        ([H, M, M, H, E], C),
        ([E, E, H, M, L], I),
        ([H, H, E, M, H], C),
        ([H, L, L, H, H], I),
        ([H, H, E, M, M], I),
        ([H, E, M, M, H], C),
        ([E, E, E, E, E], I),
    ]
}
