use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cosets,
    Stabilizers,
    KronProps,
    Gj,
    LocalIdentity,
    ArchIwasawa,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 6] = [
        Suite::Cosets,
        Suite::Stabilizers,
        Suite::KronProps,
        Suite::Gj,
        Suite::LocalIdentity,
        Suite::ArchIwasawa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cosets => "cosets",
            Suite::Stabilizers => "stabilizers",
            Suite::KronProps => "kron-props",
            Suite::Gj => "gj",
            Suite::LocalIdentity => "local-identity",
            Suite::ArchIwasawa => "arch-iwasawa",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> CliResult<Suite> {
        Suite::CONCRETE
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown suite `{s}`")))
    }

    /// The concrete suites this one expands to, in canonical order.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::CONCRETE.to_vec(),
            s => vec![s],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl Format {
    pub fn parse(s: &str) -> CliResult<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            other => Err(CliError::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// The parameter grid shared by every suite. Each suite uses the parts
/// that apply to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grid {
    /// `(m, n)` pairs with `1 ≤ n ≤ m`.
    pub shapes: Vec<(usize, usize)>,
    /// Primes `q`.
    pub fields: Vec<u64>,
    /// Random samples per grid point (α-tuples, matrices, torus points).
    pub samples: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { shapes: vec![(2, 1), (2, 2), (3, 2), (3, 3)], fields: vec![2, 3], samples: 5 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub suite: Suite,
    pub grid: Grid,
    /// Series truncation order `N`.
    pub order: usize,
    pub seed: u64,
    /// Cap on exhaustive enumerations.
    pub budget: u64,
    /// Relative tolerance of floating-point checks.
    pub tolerance: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Include wall times in emitted reports; off keeps output byte-stable.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suite: Suite::All,
            grid: Grid::default(),
            order: 10,
            seed: 1,
            budget: 10_000_000,
            tolerance: 1e-10,
            out: None,
            format: Format::Json,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> CliResult<RunConfig> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> CliResult<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::from_toml_str(&text)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.budget == 0 {
            return bad("budget must be positive".into());
        }
        if self.order == 0 {
            return bad("order must be positive".into());
        }
        if self.grid.samples == 0 {
            return bad("grid.samples must be positive".into());
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance {} must be positive", self.tolerance));
        }
        if self.grid.shapes.is_empty() || self.grid.fields.is_empty() {
            return bad("grid needs at least one shape and one field".into());
        }
        if let Some(&(m, n)) = self.grid.shapes.iter().find(|&&(m, n)| n == 0 || n > m) {
            return bad(format!("shape ({m}, {n}) needs 1 <= n <= m"));
        }
        if let Some(q) = self.grid.fields.iter().find(|&&q| !eisenkron::exact_algebra::is_prime(q)) {
            return bad(format!("field size {q} is not prime"));
        }
        Ok(())
    }
}
