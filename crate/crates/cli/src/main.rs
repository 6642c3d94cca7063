use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dirfib::{dump, explain, run_scenario, Report, RunOptions, Scenario};

#[derive(Parser)]
#[command(name = "dirfib", version, about = "Certify directed weak fibration constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and print the JSON report.
    Run(RunArgs),
    /// Run a scenario and narrate every certificate.
    Explain(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    scenario: PathBuf,
    /// Grid resolution (uniform points before mandatory ones).
    #[arg(long)]
    grid: Option<usize>,
    /// Tolerance for every task.
    #[arg(long)]
    tol: Option<f64>,
    /// Run tasks in parallel; report order is unchanged.
    #[arg(long)]
    parallel: bool,
    /// Write per-task CSV samples into this directory.
    #[arg(long)]
    dump: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, narrate) = match cli.command {
        Command::Run(a) => (a, false),
        Command::Explain(a) => (a, true),
    };
    let usage = |e: anyhow::Error| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    };
    let scenario = match Scenario::load(&args.scenario) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let opts = RunOptions { grid: args.grid, tol: args.tol, parallel: args.parallel };
    let results = match run_scenario(&scenario, &opts) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if let Some(dir) = &args.dump {
        if let Err(e) = dump::dump_samples(&results, dir) {
            return usage(e);
        }
    }
    let report = Report::new(&results);
    if narrate {
        for r in &results {
            println!("{}", explain::explain(r));
        }
        println!("{} tasks, {} unexpected", report.summary.total, report.summary.unexpected);
    } else {
        println!("{}", report.to_json());
    }
    if report.all_expected() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
