//! Closed vocabularies for condition levels and decision values.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Canonical consistency level of a payload (condition attribute value).
///
/// Raw tokens are mapped case-insensitively:
///
/// | raw token                       | level           |
/// |---------------------------------|-----------------|
/// | `high`                          | `high`          |
/// | `moderate`, `medium`            | `moderate`      |
/// | `low`                           | `low`           |
/// | `extremely low`, `very low`     | `extremely_low` |
///
/// The canonical spelling (`extremely_low`) is also accepted, which makes
/// canonicalization idempotent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    High,
    Moderate,
    Low,
    ExtremelyLow,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::High, Level::Moderate, Level::Low, Level::ExtremelyLow];

    pub fn as_str(self) -> &'static str {
        match self {
            Level::High => "high",
            Level::Moderate => "moderate",
            Level::Low => "low",
            Level::ExtremelyLow => "extremely_low",
        }
    }

    pub(crate) fn code(self) -> u8 {
        self as u8
    }
}

/// Maps a raw level token onto the closed vocabulary.
pub fn canonicalize_level(raw: &str) -> Result<Level> {
    let norm = normalize(raw);
    let level = match norm.as_str() {
        "high" => Level::High,
        "moderate" | "medium" => Level::Moderate,
        "low" => Level::Low,
        "extremely low" | "very low" => Level::ExtremelyLow,
        _ => {
            return Err(Error::UnknownLevel {
                token: raw.to_string(),
                line: None,
            })
        }
    };
    Ok(level)
}

/// Decision attribute value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decision {
    Consistent,
    Inconsistent,
}

impl Decision {
    pub const ALL: [Decision; 2] = [Decision::Consistent, Decision::Inconsistent];

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Consistent => "consistent",
            Decision::Inconsistent => "inconsistent",
        }
    }

    pub(crate) fn code(self) -> u8 {
        self as u8
    }
}

pub fn canonicalize_decision(raw: &str) -> Result<Decision> {
    match normalize(raw).as_str() {
        "consistent" => Ok(Decision::Consistent),
        "inconsistent" => Ok(Decision::Inconsistent),
        _ => Err(Error::UnknownDecision {
            token: raw.to_string(),
            line: None,
        }),
    }
}

// Lowercase, trim, and treat '_' and runs of whitespace as a single space.
fn normalize(raw: &str) -> String {
    raw.trim()
        .to_lowercase()
        .replace('_', " ")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

macro_rules! token_impls {
    ($ty:ty, $parse:ident) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                $parse(s)
            }
        }

        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(self.as_str())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let raw = String::deserialize(d)?;
                $parse(&raw).map_err(serde::de::Error::custom)
            }
        }
    };
}

token_impls!(Level, canonicalize_level);
token_impls!(Decision, canonicalize_decision);
