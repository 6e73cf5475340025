//! Name-keyed registries of boxed strategies.

use num_bigint::BigInt;
use serde::Serialize;
use spinsec::weyl::{Decomposition, RootDatum, Weight};

use crate::config::Config;
use crate::report::Timed;

pub struct SuiteContext {
    pub max_rank: usize,
    pub trials: usize,
    pub seed: u64,
    pub quartic_max_rank: usize,
}

pub trait VerifySuite: Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// Checks in a fixed order, so reports with the same seed compare equal.
    fn run(&self, ctx: &SuiteContext) -> Vec<Timed>;
}

pub trait DecomposeTarget: Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// How many highest weights the target takes.
    fn arity(&self) -> usize;
    fn run(&self, datum: &RootDatum, weights: &[Weight]) -> spinsec::Result<Decomposition>;
    /// Dimension the result must have, when it is known independently.
    fn expected_dim(
        &self,
        datum: &RootDatum,
        weights: &[Weight],
    ) -> spinsec::Result<Option<BigInt>>;
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DiffEntry {
    pub cell: String,
    pub fixture: String,
    pub computed: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// `None` when no fixture exists for this table.
    pub diff: Option<Vec<DiffEntry>>,
    pub notes: Vec<String>,
}

pub trait TableGenerator: Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn default_rank(&self) -> usize;
    fn generate(&self, rank: usize, cfg: &Config) -> spinsec::Result<Table>;
}

pub struct Registry {
    pub suites: Vec<Box<dyn VerifySuite>>,
    pub targets: Vec<Box<dyn DecomposeTarget>>,
    pub tables: Vec<Box<dyn TableGenerator>>,
}

impl Registry {
    pub fn standard() -> Self {
        Registry {
            suites: crate::suites::all(),
            targets: crate::targets::all(),
            tables: crate::tables::all(),
        }
    }

    pub fn suite(&self, name: &str) -> Option<&dyn VerifySuite> {
        self.suites
            .iter()
            .find(|s| s.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn target(&self, name: &str) -> Option<&dyn DecomposeTarget> {
        self.targets
            .iter()
            .find(|s| s.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn table(&self, name: &str) -> Option<&dyn TableGenerator> {
        self.tables
            .iter()
            .find(|s| s.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn listing(&self) -> String {
        let mut out = String::from("verify suites:\n");
        for s in &self.suites {
            out += &format!("  {:<14}{}\n", s.name(), s.summary());
        }
        out += "  all           every suite above\ndecompose targets:\n";
        for t in &self.targets {
            out += &format!("  {:<14}{}\n", t.name(), t.summary());
        }
        out += "tables:\n";
        for t in &self.tables {
            out += &format!("  {:<14}{}\n", t.name(), t.summary());
        }
        out
    }
}
