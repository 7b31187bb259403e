//! `coxdes`: run experiment specs, print exact laws, measure distances and
//! run the inequality audits.
//!
//! Exit status is 0 on success, 1 for invalid input and 2 for failures
//! while running.

use clap::{Parser, Subcommand, ValueEnum};
use coxdes::charfn::audit;
use coxdes::distribution::{product_t_distribution, DistributionJson};
use coxdes::enumerate::DEFAULT_CAP;
use coxdes::harness::{emit_report, parse_spec, run_experiment_with, Format, Mode, RunOptions};
use coxdes::ks::ks_to_normal;
use coxdes::wasserstein::d2_to_normal;
use coxdes::{CoxeterGroup, DiscreteDistribution, Error, Result};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "coxdes", version, about = "Two-sided descent statistics on finite Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment spec and write a report.
    Run(RunArgs),
    /// Print the exact law of t for one group, e.g. "A4xI2(5)".
    Dist {
        group: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        /// Print the law as JSON (readable by `d2`).
        #[arg(long)]
        json: bool,
        /// Standardize before printing.
        #[arg(long)]
        standardize: bool,
    },
    /// Wasserstein-2 and Kolmogorov–Smirnov distance of a JSON law to N(0,1).
    D2 {
        law: PathBuf,
        /// Standardize the law by its own moments first.
        #[arg(long)]
        standardize: bool,
    },
    /// Run the characteristic-function inequality audits.
    Audit {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Montecarlo,
    Auto,
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,
    /// Directory for cached exceptional element tables.
    #[arg(long, env = coxdes::enumerate::TABLE_CACHE_ENV)]
    table_cache: Option<PathBuf>,
    /// Record per-row wall time (reports are then not reproducible).
    #[arg(long)]
    wall_time: bool,
}

fn run(args: RunArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.spec)?;
    let mut spec = parse_spec(&text)?;
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(samples) = args.samples {
        spec.samples = samples;
    }
    if let Some(cap) = args.cap {
        spec.cap = cap;
    }
    if let Some(mode) = args.mode {
        spec.mode = match mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Montecarlo => Mode::Montecarlo,
            ModeArg::Auto => Mode::Auto,
        };
    }
    spec.validate()?;
    let opts = RunOptions {
        threads: args.threads.map(usize::from),
        table_dir: args.table_cache,
        record_wall_time: args.wall_time,
    };
    let report = run_experiment_with(&spec, &opts)?;
    if let Some(w) = &report.warning {
        eprintln!("warning: {w}");
    }
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    emit_report(&report, format, args.out.as_deref())
}

fn print_law(d: &DiscreteDistribution, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string(&d.to_json())?);
        return Ok(());
    }
    let values = d.real_support();
    for ((x, p), v) in d.support().iter().zip(d.probs()).zip(values) {
        if d.view().is_some() {
            println!("{v}\t{p}\t(t = {x})");
        } else {
            println!("{x}\t{p}");
        }
    }
    let m = d.moments();
    println!("mean\t{}", m.mean);
    println!("variance\t{}", m.variance);
    Ok(())
}

fn dist(group: &str, cap: u64, json: bool, standardize: bool) -> Result<()> {
    let group: CoxeterGroup = group.parse()?;
    let law = product_t_distribution(&group, cap)?;
    let law = if standardize { law.standardize()? } else { law };
    print_law(&law, json)
}

fn d2(path: &PathBuf, standardize: bool) -> Result<()> {
    let json: DistributionJson = serde_json::from_str(&std::fs::read_to_string(path)?)
        .map_err(|e| Error::Parse { position: e.column(), message: format!("line {}: {e}", e.line()) })?;
    let law = DiscreteDistribution::from_json(&json)?;
    let law = if standardize { law.standardize()? } else { law };
    println!("d2\t{}", d2_to_normal(&law));
    println!("ks\t{}", ks_to_normal(&law));
    Ok(())
}

fn run_audit(json: bool) -> Result<bool> {
    let outcomes = audit::run_all()?;
    if json {
        println!("{}", serde_json::to_string_pretty(&outcomes)?);
    } else {
        for o in &outcomes {
            println!(
                "{:<18} {}  checks {:>7}  violations {}  worst lhs-rhs {:.3e}",
                o.name,
                if o.passed() { "PASS" } else { "FAIL" },
                o.checks,
                o.violations,
                o.worst_excess
            );
        }
    }
    Ok(outcomes.iter().all(|o| o.passed()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Dist { group, cap, json, standardize } => dist(&group, cap, json, standardize),
        Command::D2 { law, standardize } => d2(&law, standardize),
        Command::Audit { json } => match run_audit(json) {
            Ok(true) => Ok(()),
            Ok(false) => {
                eprintln!("error: audit found violations");
                return ExitCode::from(2);
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
