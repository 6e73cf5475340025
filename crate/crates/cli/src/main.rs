mod args;
mod config;
mod error;
mod registry;
mod render;
mod report;
mod suites;
mod tables;
mod targets;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use spinsec::weyl::RootDatum;

use args::{Cli, Command, DecomposeArgs, Format, TableArgs, VerifyArgs};
use config::Config;
use error::CliError;
use registry::{Registry, SuiteContext};
use report::{timed, Check, RunReport};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("spinsec: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

struct Sink {
    path: Option<std::path::PathBuf>,
}

impl Sink {
    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.path {
            Some(p) => std::fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn json(&self, report: &RunReport) -> Result<(), CliError> {
        self.emit(&(serde_json::to_string_pretty(report)? + "\n"))
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let cfg = Config::load(cli.config.as_deref())?;
    let threads = cfg.thread_count(cli.threads)?;
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let registry = Registry::standard();
    let sink = Sink { path: cli.output };
    let command: Vec<String> = std::env::args().skip(1).collect();
    match cli.command {
        Command::List => {
            sink.emit(&registry.listing())?;
            Ok(0)
        }
        Command::Decompose(a) => decompose(&registry, &cfg, a, command, &sink),
        Command::Verify(a) => verify(&registry, cfg, a, command, &sink),
        Command::Table(a) => table(&registry, &cfg, a, command, &sink),
    }
}

fn decompose(
    registry: &Registry,
    cfg: &Config,
    a: DecomposeArgs,
    command: Vec<String>,
    sink: &Sink,
) -> Result<u8, CliError> {
    if a.rank > cfg.decompose_max_rank {
        return Err(CliError::Usage(format!(
            "rank {} above the configured bound {}",
            a.rank, cfg.decompose_max_rank
        )));
    }
    let target = registry.target(&a.target).ok_or_else(|| {
        let names: Vec<_> = registry.targets.iter().map(|t| t.name()).collect();
        CliError::Usage(format!("unknown target {:?}; one of {names:?}", a.target))
    })?;
    if a.weights.len() != target.arity() {
        return Err(CliError::Usage(format!(
            "target {} takes {} weight(s), got {}",
            target.name(),
            target.arity(),
            a.weights.len()
        )));
    }
    let datum = RootDatum::new(a.family.into(), a.rank)?;
    let weights = a
        .weights
        .iter()
        .map(|w| {
            let w = datum.parse_weight(w)?;
            datum.check_dominant(&w)?;
            Ok(w)
        })
        .collect::<spinsec::Result<Vec<_>>>()?;
    let dec = target.run(&datum, &weights)?;

    let mut report = RunReport::new(command, None, serde_json::to_value(cfg)?);
    let expected = target.expected_dim(&datum, &weights)?;
    report.push(timed(|| match expected {
        Some(d) => Check::new(
            "dimension",
            dec.dim() == d,
            format!("components sum to {}, expected {d}", dec.dim()),
        ),
        None => Check::skipped("dimension", "no independent dimension"),
    }));
    let records = dec.records();
    report.payload = json!({
        "group": datum.name(),
        "target": target.name(),
        "weights": weights.iter().map(|w| datum.format_weight(w)).collect::<Vec<_>>(),
        "dimension": dec.dim().to_string(),
        "components": records,
    });
    match a.format {
        Format::Json => sink.json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    let dynkin: Vec<String> = r.dynkin.iter().map(i64::to_string).collect();
                    vec![
                        r.weight.clone(),
                        dynkin.join(" "),
                        r.multiplicity.to_string(),
                        r.dimension.clone(),
                    ]
                })
                .collect();
            sink.emit(&render::csv_rows(
                &["weight", "dynkin", "multiplicity", "dimension"].map(String::from),
                &rows,
            )?)?
        }
        Format::Text => sink.emit(&format!(
            "{} {} = {}\n{} components, dimension {}\n",
            datum.name(),
            target.name(),
            dec.format(),
            dec.len(),
            dec.dim()
        ))?,
    }
    Ok(report.exit_code())
}

fn verify(
    registry: &Registry,
    mut cfg: Config,
    a: VerifyArgs,
    command: Vec<String>,
    sink: &Sink,
) -> Result<u8, CliError> {
    let suites: Vec<_> = if a.suite == "all" {
        registry.suites.iter().map(|s| s.as_ref()).collect()
    } else {
        vec![registry.suite(&a.suite).ok_or_else(|| {
            let names: Vec<_> = registry.suites.iter().map(|s| s.name()).collect();
            CliError::Usage(format!(
                "unknown suite {:?}; one of {names:?} or all",
                a.suite
            ))
        })?]
    };
    cfg.max_rank = a.max_rank.unwrap_or(cfg.max_rank);
    cfg.trials = a.trials.unwrap_or(cfg.trials);
    cfg.seed = a.seed.unwrap_or(cfg.seed);
    let ctx = SuiteContext {
        max_rank: cfg.max_rank,
        trials: cfg.trials,
        seed: cfg.seed,
        quartic_max_rank: cfg.quartic_max_rank,
    };
    let mut report = RunReport::new(command, Some(cfg.seed), serde_json::to_value(&cfg)?);
    for s in &suites {
        for t in s.run(&ctx) {
            report.push(t);
        }
    }
    report.payload = json!({
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "summary": report.summary(),
    });
    match a.format {
        Format::Json => sink.json(&report)?,
        Format::Csv => sink.emit(&render::checks_csv(&report)?)?,
        Format::Text => sink.emit(&render::checks_text(&report))?,
    }
    Ok(report.exit_code())
}

fn table(
    registry: &Registry,
    cfg: &Config,
    a: TableArgs,
    command: Vec<String>,
    sink: &Sink,
) -> Result<u8, CliError> {
    let generator = registry.table(&a.name).ok_or_else(|| {
        let names: Vec<_> = registry.tables.iter().map(|t| t.name()).collect();
        CliError::Usage(format!("unknown table {:?}; one of {names:?}", a.name))
    })?;
    let rank = a.rank.unwrap_or(generator.default_rank());
    let t = generator.generate(rank, cfg)?;
    let mut report = RunReport::new(command, None, serde_json::to_value(cfg)?);
    report.push(timed(|| match (&t.diff, a.expect_match) {
        (None, _) => Check::skipped("fixture-match", "no fixture for this table"),
        (Some(d), true) => Check::new(
            "fixture-match",
            d.is_empty(),
            format!("{} cells differ from the fixture", d.len()),
        ),
        (Some(d), false) => Check::skipped(
            "fixture-match",
            format!(
                "{} cells differ; --expect-match enforces a clean diff",
                d.len()
            ),
        ),
    }));
    report.payload = serde_json::to_value(&t)?;
    match a.format {
        Format::Json => sink.json(&report)?,
        Format::Csv => {
            sink.emit(&render::csv_rows(&t.header, &t.rows)?)?;
            eprint!("{}", render::diff_text(&t));
        }
        Format::Text => sink.emit(&render::table_text(&t))?,
    }
    Ok(report.exit_code())
}
