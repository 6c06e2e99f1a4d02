//! Seeded table generators for the benchmarks.

use std::collections::HashMap;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use roughset_core::{Decision, DecisionTable, Level};

/// `rows` x `attrs` table of uniform levels. With `consistent` set, rows
/// that repeat an earlier condition vector copy its decision.
pub fn random_table(seed: u64, rows: usize, attrs: usize, consistent: bool) -> DecisionTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashMap<Vec<Level>, Decision> = HashMap::new();
    let body = (0..rows)
        .map(|_| {
            let levels: Vec<Level> = (0..attrs)
                .map(|_| Level::ALL[(rng.next_u32() & 3) as usize])
                .collect();
            let mut decision = Decision::ALL[(rng.next_u32() & 1) as usize];
            if consistent {
                decision = *seen.entry(levels.clone()).or_insert(decision);
            }
            (levels, decision)
        })
        .collect();
    DecisionTable::new((0..attrs).map(|i| format!("a{i}")).collect(), "d", body)
        .expect("generated table is well formed")
}
