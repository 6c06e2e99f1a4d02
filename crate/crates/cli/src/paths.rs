use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Environment variable naming the data directory holding `fixtures/` and `rules/`.
pub const DATA_DIR_ENV: &str = "ROUGHSET_FIXTURES";

pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../..")),
    }
}

/// A path as given if it exists, otherwise relative to the data directory.
pub fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let candidate = data_dir().join(path);
    if candidate.exists() {
        candidate
    } else {
        path.to_path_buf()
    }
}

pub fn read(path: &Path) -> CliResult<String> {
    let resolved = resolve(path);
    std::fs::read_to_string(&resolved).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}
