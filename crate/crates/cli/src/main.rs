use std::path::PathBuf;
use std::process::ExitCode;

use arcbie::config::Config;
use arcbie::experiments;
use arcbie::report::Report;
use arcbie::CliError;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arcbie", version, about = "Helmholtz screen problems on open arcs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON configuration; defaults are used for missing fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Directory for report.csv, report.json and matrix dumps.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Laplace diagonals on the segment and coefficient-map identities.
    VerifyLaplace(Common),
    /// Numerical order probes of the preconditioning identities.
    VerifyOrders(Common),
    /// Symbol coefficients and symbolic orders.
    VerifySymbols(Common),
    /// One preconditioned GMRES solve.
    Solve(Common),
    /// Iteration counts over wavenumbers, sizes and preconditioners.
    Bench(Common),
    /// Print symbols to the configured depth.
    PrintSymbol(Common),
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("ARCBIE_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Config(format!("ARCBIE_THREADS={v} is not a count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Report, CliError> {
    init_threads()?;
    let (Command::VerifyLaplace(c)
    | Command::VerifyOrders(c)
    | Command::VerifySymbols(c)
    | Command::Solve(c)
    | Command::Bench(c)
    | Command::PrintSymbol(c)) = &cli.command;
    let cfg = match &c.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    cfg.validate()?;
    let report = match &cli.command {
        Command::VerifyLaplace(_) => experiments::verify_laplace(&cfg)?,
        Command::VerifyOrders(_) => experiments::verify_orders(&cfg)?,
        Command::VerifySymbols(_) => experiments::verify_symbols(&cfg)?,
        Command::Solve(_) => experiments::solve(&cfg, Some(&c.out))?,
        Command::Bench(_) => experiments::bench(&cfg)?,
        Command::PrintSymbol(_) => experiments::print_symbol(&cfg)?,
    };
    report.write(&c.out)?;
    Ok(report)
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok(report) => {
            eprintln!("{}", report.summary());
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
