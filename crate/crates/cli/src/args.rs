use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinsec::weyl::Family;

#[derive(Parser, Debug)]
#[command(name = "spinsec", version, about = "Exact spinor-variety computations")]
pub struct Cli {
    /// TOML file with default settings; flags win over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads. Falls back to the config file, then SPINSEC_THREADS, then the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a module built from one or two irreducibles.
    Decompose(DecomposeArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print a computed table, diffed against the shipped fixture when there is one.
    Table(TableArgs),
    /// List registered suites, targets and tables.
    List,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub family: FamilyArg,
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub target: String,
    /// Highest weights such as `w3` or `w1+2w4`.
    #[arg(long, num_args = 0..)]
    pub weights: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long)]
    pub max_rank: Option<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    pub name: String,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Exit with status 1 when the table differs from its fixture.
    #[arg(long)]
    pub expect_match: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    A,
    B,
    C,
    D,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
            FamilyArg::C => Family::C,
            FamilyArg::D => Family::D,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}
