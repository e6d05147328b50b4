//! Run configuration: `ordspec.toml` plus `ORDSPEC_BUDGET_OVERRIDE`.
//!
//! ```toml
//! seed = 7
//! format = "json"
//!
//! [cone]
//! radius = 3
//! budget = 1
//! max_pairs = 40
//!
//! [stone]
//! maxJ = 12
//! maxN = 12
//!
//! [fnl]
//! level = 4
//! box = 1
//! ```
//!
//! The override variable holds comma separated `section.key=value` pairs,
//! for example `stone.maxJ=6,cone.budget=2`, applied after the file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

pub const OVERRIDE_VAR: &str = "ORDSPEC_BUDGET_OVERRIDE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConeBudgets {
    pub radius: usize,
    pub budget: usize,
    pub max_pairs: usize,
}

impl Default for ConeBudgets {
    fn default() -> Self {
        ConeBudgets { radius: 3, budget: 1, max_pairs: ordspec::precone::DEFAULT_MAX_PAIRS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StoneBudgets {
    #[serde(rename = "maxJ")]
    pub max_j: usize,
    #[serde(rename = "maxN")]
    pub max_n: usize,
}

impl Default for StoneBudgets {
    fn default() -> Self {
        StoneBudgets { max_j: ordspec::stone::DEFAULT_MAX_J, max_n: 12 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FnlBudgets {
    pub level: u64,
    #[serde(rename = "box")]
    pub bound: i64,
}

impl Default for FnlBudgets {
    fn default() -> Self {
        FnlBudgets { level: 4, bound: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub format: Format,
    pub cone: ConeBudgets,
    pub stone: StoneBudgets,
    pub fnl: FnlBudgets,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 7,
            format: Format::Json,
            cone: ConeBudgets::default(),
            stone: StoneBudgets::default(),
            fnl: FnlBudgets::default(),
        }
    }
}

impl RunConfig {
    /// Reads `path` if given, else `./ordspec.toml` when present, then applies
    /// the override string.
    pub fn load(path: Option<&Path>, overrides: Option<&str>) -> Result<Self> {
        let mut cfg = match path {
            Some(p) => Self::from_file(p)?,
            None if Path::new("ordspec.toml").exists() => Self::from_file(Path::new("ordspec.toml"))?,
            None => RunConfig::default(),
        };
        if let Some(o) = overrides {
            cfg.apply_overrides(o)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn from_file(p: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))
    }

    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').with_context(|| format!("override `{item}` is not key=value"))?;
            let value = value.trim();
            let num = || value.parse::<u64>().with_context(|| format!("override `{item}` needs a nonnegative integer"));
            match key.trim() {
                "seed" => self.seed = num()?,
                "cone.radius" => self.cone.radius = num()? as usize,
                "cone.budget" => self.cone.budget = num()? as usize,
                "cone.max_pairs" => self.cone.max_pairs = num()? as usize,
                "stone.maxJ" => self.stone.max_j = num()? as usize,
                "stone.maxN" => self.stone.max_n = num()? as usize,
                "fnl.level" => self.fnl.level = num()?,
                "fnl.box" => self.fnl.bound = num()? as i64,
                other => bail!("unknown override key `{other}`"),
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let budgets = [
            ("cone.radius", self.cone.radius as u64),
            ("cone.budget", self.cone.budget as u64),
            ("cone.max_pairs", self.cone.max_pairs as u64),
            ("stone.maxJ", self.stone.max_j as u64),
            ("stone.maxN", self.stone.max_n as u64),
            ("fnl.level", self.fnl.level),
            ("fnl.box", self.fnl.bound.max(0) as u64),
        ];
        for (name, v) in budgets {
            if v == 0 {
                bail!("budget {name} must be positive");
            }
        }
        if self.stone.max_j > ordspec::stone::MAX_ELEMENTS || self.stone.max_n > ordspec::stone::MAX_ELEMENTS {
            bail!("stone budgets are capped at {}", ordspec::stone::MAX_ELEMENTS);
        }
        Ok(())
    }
}
