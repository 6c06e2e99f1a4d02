use thiserror::Error;

/// Errors produced by table ingestion and the analysis operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("missing header row")]
    MissingHeader,
    #[error("empty body: the table has a header but no data rows")]
    EmptyBody,
    #[error("ragged row at line {line}: expected {expected} fields, found {found}")]
    RaggedRow {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("unknown level token {token:?}{}", at_line(*.line))]
    UnknownLevel { token: String, line: Option<u64> },
    #[error("unknown decision token {token:?}{}", at_line(*.line))]
    UnknownDecision { token: String, line: Option<u64> },
    #[error("decision attribute {0:?} not found in header")]
    DecisionAttrNotFound(String),
    #[error("duplicate attribute name {0:?}")]
    DuplicateAttribute(String),
    #[error("unknown attribute {0:?}")]
    UnknownAttribute(String),
    #[error("table must have at least one condition attribute")]
    NoConditionAttributes,
    #[error("row {row} has {found} condition values, expected {expected}")]
    RowArity {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("malformed csv: {0}")]
    Csv(String),
    #[error("too many condition attributes for exhaustive reduct search: {found} > {limit}")]
    TooManyAttributes { found: usize, limit: usize },
    #[error("table is inconsistent: {0} conflicting row pair(s)")]
    InconsistentTable(usize),
    #[error("class counts sum to zero")]
    EmptyDistribution,
    #[error("total must be positive and matched must not exceed it ({matched}/{total})")]
    InvalidRate { matched: usize, total: usize },
    #[error("object does not assign a level to attribute {0:?}")]
    MissingAttribute(String),
    #[error("attribute {0:?} appears twice in one rule")]
    RepeatedRuleAttribute(String),
    #[error("duplicate rule at position {0}")]
    DuplicateRule(usize),
    #[error("malformed rule file: {0}")]
    RuleFile(String),
    #[error("malformed tree file: {0}")]
    TreeFile(String),
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("payload {payload} takes {expected} inputs, got {found}")]
    PayloadArity {
        payload: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid fault vector: {0}")]
    FaultVector(String),
    #[error("row count must be positive")]
    ZeroRows,
}

fn at_line(line: Option<u64>) -> String {
    match line {
        Some(l) => format!(" at line {l}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
