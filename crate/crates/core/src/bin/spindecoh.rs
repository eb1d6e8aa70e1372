use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use spin_decoherence::runner::{
    run_config, run_fig1, run_fig2, run_validate, write_atomic, CurveTable, ScenarioConfig,
};
use spin_decoherence::Error;

#[derive(Parser)]
#[command(
    name = "spindecoh",
    version,
    about = "Gravitational spin decoherence of a wave packet on a circular Schwarzschild orbit"
)]
struct Cli {
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add a `# timestamp` header line (unix seconds).
    #[arg(long, global = true)]
    timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropy against proper time at the default operating point.
    Fig1,
    /// Decoherence rate against r_s/r.
    Fig2,
    /// Run a scenario config file.
    Run { config: PathBuf },
    /// Check the closed forms against the numeric pipeline.
    Validate,
}

fn emit(cli: &Cli, text: &str) -> Result<(), ExitCode> {
    match &cli.out {
        Some(path) => write_atomic(path, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(1)
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let table: Result<CurveTable, Error> = match &cli.command {
        Command::Fig1 => run_fig1(&ScenarioConfig::fig1()),
        Command::Fig2 => run_fig2(&ScenarioConfig::fig2()),
        Command::Run { config } => match std::fs::read_to_string(config) {
            Ok(text) => ScenarioConfig::parse(&text).and_then(|cfg| run_config(&cfg)),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", config.display());
                return ExitCode::from(1);
            }
        },
        Command::Validate => {
            let report = run_validate();
            if let Err(code) = emit(&cli, &report.render()) {
                return code;
            }
            return ExitCode::from(report.exit_code() as u8);
        }
    };
    let table = match table {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    let stamp = cli.timestamp.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    match emit(&cli, &table.to_csv(stamp)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
