use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use g2verify::config::{Config, OrderName, Overrides};
use g2verify::report::EXIT_USAGE;
use g2verify::runner::run_suite;
use g2verify::tasks::REGISTRY;

/// Run verification tasks and write a JSON report.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Args {
    /// Task names, or `all`.
    tasks: Vec<String>,
    #[arg(long)]
    prime: Option<u32>,
    #[arg(long)]
    second_prime: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    order: Option<OrderName>,
    /// Per-task budget in seconds.
    #[arg(long)]
    timeout: Option<u64>,
    /// Budget for the whole run in seconds.
    #[arg(long)]
    global_timeout: Option<u64>,
    #[arg(long)]
    jobs: Option<usize>,
    /// TOML file with any of the settings above.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Leave out wall times so identical runs give identical reports.
    #[arg(long)]
    omit_timings: bool,
    /// List the task registry and exit.
    #[arg(long)]
    list: bool,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("verify: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    if args.list {
        for t in &REGISTRY {
            println!("{:<20} {}", t.name, t.claim);
        }
        return ExitCode::SUCCESS;
    }
    let file = match args.config.as_deref().map(Overrides::from_file).transpose() {
        Ok(f) => f,
        Err(e) => return usage(e),
    };
    let flags = Overrides {
        prime: args.prime,
        second_prime: args.second_prime,
        seed: args.seed,
        order: args.order,
        timeout: args.timeout,
        global_timeout: args.global_timeout,
        jobs: args.jobs,
    };
    let config = match Config::resolve(file.as_ref(), &flags) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let report = match run_suite(&args.tasks, &config, !args.omit_timings) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    let json = report.to_json();
    match &args.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("verify: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
            for t in &report.tasks {
                println!("{:<20} {}", t.name, t.status.as_str());
            }
        }
        None => println!("{json}"),
    }
    ExitCode::from(report.summary.exit_code as u8)
}
