use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "roughset", version, about = "Rough-set decision analysis over categorical decision tables")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct TableArg {
    /// Decision table CSV (header row first; an `S no.` column is ignored).
    #[arg(long)]
    pub table: PathBuf,
    /// Decision column; defaults to the last column.
    #[arg(long)]
    pub decision: Option<String>,
}

#[derive(Debug, Args)]
pub struct OptionalTableArg {
    /// Decision table CSV; defaults to the bundled 30-row training table.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub decision: Option<String>,
}

#[derive(Debug, Args)]
pub struct ObjectArgs {
    /// Comma-separated levels, assigned in order to `--attrs` (default: the
    /// table's condition attributes, or Payload I..V).
    #[arg(long, conflicts_with = "set")]
    pub levels: Option<String>,
    /// Attribute names for `--levels`, comma-separated.
    #[arg(long, requires = "levels")]
    pub attrs: Option<String>,
    /// `attribute=level` assignment; repeatable.
    #[arg(long)]
    pub set: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report conflicting and duplicate rows.
    Validate(TableArg),
    /// Print the table with canonical tokens.
    Canonicalize(TableArg),
    /// Indiscernibility classes over an attribute subset.
    Partition {
        #[command(flatten)]
        table: TableArg,
        /// Comma-separated attributes; defaults to all condition attributes.
        #[arg(long)]
        attrs: Option<String>,
    },
    /// Lower/upper approximation, boundary and accuracy of a row set.
    Approx {
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        attrs: Option<String>,
        /// Decision class to approximate, e.g. `consistent`. Without
        /// `--target` or `--rows` every decision class is approximated.
        #[arg(long, conflicts_with = "rows")]
        target: Option<String>,
        /// Explicit target rows, 1-based, comma-separated.
        #[arg(long)]
        rows: Option<String>,
    },
    /// Positive region and dependency degree of the decision on an attribute subset.
    Dependency {
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        attrs: Option<String>,
    },
    /// All reducts and the core.
    Reducts(TableArg),
    /// Dependency drop caused by removing each condition attribute.
    Significance(TableArg),
    #[command(subcommand)]
    Rules(RulesCommand),
    #[command(subcommand)]
    Id3(Id3Command),
    /// Rule classifier vs ID3 detection rates.
    Evaluate {
        /// Training table; defaults to the bundled training table.
        #[arg(long)]
        train: Option<PathBuf>,
        #[arg(long, required_unless_present = "synthetic", conflicts_with = "synthetic")]
        test: Option<PathBuf>,
        /// Generate the test set from this seed instead of reading one.
        #[arg(long)]
        synthetic: Option<u64>,
        /// Synthetic test set size.
        #[arg(long, default_value_t = 50)]
        n: usize,
    },
    /// Generate a seeded synthetic test table (CSV).
    Synth {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long)]
        train: Option<PathBuf>,
    },
    /// Autopilot consistency pipeline: faults -> payload levels -> verdict.
    Autopilot(AutopilotArgs),
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Debug, Subcommand)]
pub enum RulesCommand {
    /// Induce minimal certain rules from a consistent table.
    Induce(TableArg),
    /// Support, confidence and counterexamples of each rule on a table.
    Audit {
        #[command(flatten)]
        table: TableArg,
        #[arg(long)]
        rules: PathBuf,
    },
    /// Classify one object.
    Classify {
        /// Rule file; when absent, rules are induced from the table.
        #[arg(long)]
        rules: Option<PathBuf>,
        #[command(flatten)]
        table: OptionalTableArg,
        #[command(flatten)]
        object: ObjectArgs,
    },
    /// How many rules mention each attribute.
    Frequency {
        #[arg(long)]
        rules: PathBuf,
        /// Attributes to report, in order (default: Payload I..V).
        #[arg(long)]
        attrs: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Id3Command {
    /// Decision entropy and root information gain of every attribute.
    Gains(TableArg),
    /// Build the ID3 tree (JSON).
    Train(TableArg),
    /// Classify one object with a saved tree or a tree trained on a table.
    Classify {
        #[arg(long, conflicts_with = "table")]
        tree: Option<PathBuf>,
        #[command(flatten)]
        table: OptionalTableArg,
        #[command(flatten)]
        object: ObjectArgs,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true)))]
pub struct AutopilotArgs {
    /// Seventeen comma-separated yes/no values in factor order.
    #[arg(long, group = "input")]
    pub faults: Option<String>,
    /// File of `factor=yes|no` lines.
    #[arg(long, group = "input")]
    pub faults_file: Option<PathBuf>,
    /// Five comma-separated payload levels, skipping the lookup tables.
    #[arg(long, group = "input")]
    pub levels: Option<String>,
    /// Rule file; defaults to the bundled published rule set.
    #[arg(long, conflicts_with = "induced")]
    pub rules: Option<PathBuf>,
    /// Use rules induced from the training table instead.
    #[arg(long)]
    pub induced: bool,
}

#[derive(Debug, Subcommand)]
pub enum FixturesCommand {
    /// Write the bundled data files into a directory.
    Export {
        #[arg(long)]
        out: PathBuf,
    },
}
