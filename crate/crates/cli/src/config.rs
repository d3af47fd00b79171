//! Run configuration: an optional TOML file overridden by flags.

use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::Args;
use foaut::emptiness::{Solver, DEFAULT_K_MAX, SOLVER_ENV};
use serde::Deserialize;

/// Keys of the configuration file; every key is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub solver: Option<String>,
    pub logic: Option<String>,
    /// Seconds per solver call.
    pub timeout: Option<u64>,
    pub kmax: Option<usize>,
    pub dump_smt: Option<PathBuf>,
    pub domain_bound: Option<usize>,
    pub exactly_one_action: Option<bool>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Overrides {
    /// TOML file with defaults for the options below.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Solver command line, e.g. "z3 -in". Falls back to $FOAUT_SOLVER.
    #[arg(long, global = true, value_name = "CMD")]
    pub solver: Option<String>,
    /// SMT-LIB logic, overriding the theory file.
    #[arg(long, global = true)]
    pub logic: Option<String>,
    /// Seconds per solver call.
    #[arg(long, global = true, value_name = "SECS")]
    pub timeout: Option<u64>,
    /// Largest unrolling depth.
    #[arg(long, global = true, value_name = "K")]
    pub kmax: Option<usize>,
    /// Directory receiving every emitted SMT-LIB script.
    #[arg(long, global = true, value_name = "DIR")]
    pub dump_smt: Option<PathBuf>,
    /// Largest domain per sort for bounded checks and for state-only sorts.
    #[arg(long, global = true, value_name = "N")]
    pub domain_bound: Option<usize>,
    /// Require exactly one DMT action per step.
    #[arg(long, global = true, value_name = "BOOL")]
    pub exactly_one_action: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub solver: String,
    pub logic: Option<String>,
    pub timeout: Duration,
    pub kmax: usize,
    pub dump_smt: Option<PathBuf>,
    pub domain_bound: usize,
    pub exactly_one_action: bool,
}

pub const DEFAULT_TIMEOUT_SECS: u64 = 30;
pub const DEFAULT_DOMAIN_BOUND: usize = 2;

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

impl Config {
    pub fn resolve(o: &Overrides) -> Result<Config> {
        let file = match &o.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let solver = o
            .solver
            .clone()
            .or(file.solver)
            .or_else(|| std::env::var(SOLVER_ENV).ok())
            .unwrap_or_else(|| foaut::emptiness::DEFAULT_SOLVER.to_string());
        let timeout = o.timeout.or(file.timeout).unwrap_or(DEFAULT_TIMEOUT_SECS);
        if timeout == 0 {
            bail!("timeout must be positive");
        }
        let domain_bound = o.domain_bound.or(file.domain_bound).unwrap_or(DEFAULT_DOMAIN_BOUND);
        if domain_bound == 0 {
            bail!("domain bound must be positive");
        }
        Ok(Config {
            solver,
            logic: o.logic.clone().or(file.logic),
            timeout: Duration::from_secs(timeout),
            kmax: o.kmax.or(file.kmax).unwrap_or(DEFAULT_K_MAX),
            dump_smt: o.dump_smt.clone().or(file.dump_smt),
            domain_bound,
            exactly_one_action: o.exactly_one_action.or(file.exactly_one_action).unwrap_or(true),
        })
    }

    pub fn solver(&self) -> Result<Solver> {
        Ok(Solver::new(&self.solver, self.timeout)?)
    }
}
