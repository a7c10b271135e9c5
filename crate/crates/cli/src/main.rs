use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use mestre_cli::commands::{cmd_family, cmd_reproduce, cmd_verify, parse_t_range, FamilyArgs};
use mestre_cli::{acceptance, Format, Options, ReportDoc};
use mestre_core::exactalg::rat::parse_rat;
use mestre_core::exactalg::FactorBudget;
use num_bigint::BigUint;

#[derive(Parser)]
#[command(name = "mestre", version, about = "Elliptic curves of large rank from Mestre's families over Q(t)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Working precision in bits for heights.
    #[arg(long, default_value_t = 128, global = true)]
    prec: usize,
    /// Pollard rho iterations per composite cofactor.
    #[arg(long, global = true)]
    factor_budget: Option<u64>,
    /// Known divisors to try first, comma separated.
    #[arg(long, value_delimiter = ',', global = true)]
    factor_hint: Vec<BigUint>,
    /// Print the report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Write family tables as CSV regardless of the output extension.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute a printed t = 1 determinant (j1728 or j0).
    Reproduce { case: String },
    /// Specialize and certify a family over a range of integers t.
    Family {
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        /// Inclusive integer range a..b.
        #[arg(long, allow_hyphen_values = true)]
        t_range: String,
        #[arg(long)]
        out: PathBuf,
        /// Use the 4-point (j = 1728) or 6-point (j = 0) family.
        #[arg(long)]
        max_points: bool,
    },
    /// Run a symbolic check suite.
    Verify { suite: String },
    /// Evaluate all acceptance criteria.
    Acceptance,
}

fn options(g: &Global) -> Options {
    let mut budget = FactorBudget::default();
    if let Some(n) = g.factor_budget {
        budget.rho_iterations = n;
    }
    budget.hints = g.factor_hint.clone();
    Options { prec_bits: g.prec, budget }
}

fn emit(doc: &ReportDoc, json: bool) {
    if json {
        println!("{}", doc.to_json());
    } else {
        print!("{}", doc.to_text());
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let opts = options(&cli.global);
    let json = cli.global.json;
    let doc = match cli.command {
        Command::Reproduce { case } => cmd_reproduce(&case, &opts)?,
        Command::Verify { suite } => cmd_verify(&suite)?,
        Command::Acceptance => acceptance::run(&opts),
        Command::Family { j, t_range, out, max_points } => {
            let j = parse_rat(&j).context("--j")?;
            let ts = parse_t_range(&t_range)?;
            let format = if cli.global.csv { Format::Csv } else { Format::from_path(&out) };
            let args = FamilyArgs { j, ts, out: &out, format, max_points };
            let (doc, sweep) = cmd_family(&args, &opts)?;
            eprintln!("{}", sweep.summary());
            doc
        }
    };
    emit(&doc, json);
    Ok(doc.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
