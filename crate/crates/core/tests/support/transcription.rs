//! Hand transcription of the payload lookup tables.

use roughset_core::autopilot::PayloadId;
use roughset_core::Level;

pub const THREE: [(&str, Level); 8] = [
    ("YYY", Level::High),
    ("YYN", Level::Moderate),
    ("YNY", Level::Moderate),
    ("YNN", Level::Low),
    ("NYY", Level::Moderate),
    ("NYN", Level::Moderate),
    ("NNY", Level::Low),
    ("NNN", Level::ExtremelyLow),
];

pub const FOUR: [(&str, Level); 16] = [
    ("YYYY", Level::High),
    ("YYYN", Level::Moderate),
    ("YYNY", Level::Moderate),
    ("YYNN", Level::Low),
    ("YNYY", Level::Moderate),
    ("YNYN", Level::Low),
    ("YNNY", Level::Low),
    ("YNNN", Level::ExtremelyLow),
    ("NYYY", Level::Moderate),
    ("NYYN", Level::Low),
    ("NYNY", Level::Low),
    ("NYNN", Level::ExtremelyLow),
    ("NNYY", Level::Low),
    ("NNYN", Level::ExtremelyLow),
    ("NNNY", Level::ExtremelyLow),
    ("NNNN", Level::ExtremelyLow),
];

pub fn expected(id: PayloadId) -> Vec<(Vec<bool>, Level)> {
    let rows: &[(&str, Level)] = if id.arity() == 3 { &THREE } else { &FOUR };
    rows.iter()
        .map(|(key, level)| (key.chars().map(|c| c == 'Y').collect(), *level))
        .collect()
}
