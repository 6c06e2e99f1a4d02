//! Rough-set analysis of categorical decision tables.
//!
//! The crate covers indiscernibility partitions and approximations,
//! dependency degrees and reducts, minimal rule induction and auditing, an
//! ID3 baseline, and the autopilot consistency case study that ties them
//! together.

pub mod autopilot;
pub mod error;
pub mod eval;
pub mod fraction;
pub mod id3;
pub mod level;
pub mod roughset;
pub mod rowset;
pub mod rules;
pub mod table;

pub use error::{Error, Result};
pub use fraction::Fraction;
pub use level::{canonicalize_decision, canonicalize_level, Decision, Level};
pub use rowset::RowSet;
pub use table::{parse_table, validate, Attr, DecisionTable, ValidationReport};
