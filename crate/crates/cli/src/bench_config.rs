//! TOML configuration for `factorq bench`. Every key is optional and any
//! matching command-line flag takes precedence.
//!
//! ```toml
//! graph = "synthetic:0.998"
//! n = 6
//! k = 4
//! instances = 30
//! shots = 1000
//! top_window = 10
//! seed = 7
//! oracle = "gamma"
//! ```

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::{Failure, OracleArg};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchFile {
    pub graph: Option<String>,
    pub one_based: Option<bool>,
    pub header: Option<bool>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub instances: Option<usize>,
    pub shots: Option<usize>,
    pub top_window: Option<usize>,
    pub seed: Option<u64>,
    pub oracle: Option<OracleArg>,
    pub max_qubits: Option<usize>,
}

impl BenchFile {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}
