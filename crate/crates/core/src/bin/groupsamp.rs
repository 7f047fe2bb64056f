use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use groupsamp::config::{parse_configs, LeftInverseKind, ScenarioConfig};
use groupsamp::error::{Error, Result};
use groupsamp::harness::{bundled_configs, run, to_json, Command, RunOptions, RunSummary, REPORT_DIR_ENV};

#[derive(Parser)]
#[command(name = "groupsamp", version, about = "Sampling and reconstruction scenarios over finite abelian groups")]
struct Cli {
    /// Absolute threshold on delta_A for the frame verdict.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    left_inverse: Option<Dual>,
    /// Report path; defaults to $GROUPSAMP_REPORT_DIR/<command>.json, else stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Include wall-clock timings (reports are then not reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dual {
    Mp,
    Family,
    Square,
}

#[derive(Subcommand)]
enum Cmd {
    /// Frame diagnostics; exit 0 iff the system is a frame.
    Analyze { config: PathBuf },
    /// Sample and reconstruct random inputs.
    Roundtrip {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The full check suite.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        config: Option<PathBuf>,
        /// Run every bundled scenario.
        #[arg(long)]
        all: bool,
        /// Perturb B so the left-inverse check must fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

fn load(path: &Path) -> Result<Vec<ScenarioConfig>> {
    parse_configs(&std::fs::read_to_string(path)?)
}

fn execute(cli: &Cli) -> Result<RunSummary> {
    let mut opts = RunOptions {
        tol: cli.tol,
        left_inverse: cli.left_inverse.map(|d| match d {
            Dual::Mp => LeftInverseKind::MoorePenrose,
            Dual::Family => LeftInverseKind::Family,
            Dual::Square => LeftInverseKind::Square,
        }),
        timings: cli.timings,
        ..RunOptions::default()
    };
    let (command, configs) = match &cli.command {
        Cmd::Analyze { config } => (Command::Analyze, load(config)?),
        Cmd::Roundtrip { config, seed } => {
            opts.seed = *seed;
            (Command::Roundtrip, load(config)?)
        }
        Cmd::Verify {
            config,
            all,
            inject_fault,
        } => {
            opts.inject_fault = *inject_fault;
            let configs = match config {
                Some(c) if !*all => load(c)?,
                _ => bundled_configs(),
            };
            (Command::Verify, configs)
        }
    };
    run(command, &configs, &opts)
}

fn report_path(cli: &Cli, command: Command) -> Option<PathBuf> {
    cli.report.clone().or_else(|| {
        let name = match command {
            Command::Analyze => "analyze.json",
            Command::Roundtrip => "roundtrip.json",
            Command::Verify => "verify.json",
        };
        std::env::var_os(REPORT_DIR_ENV).map(|d| PathBuf::from(d).join(name))
    })
}

fn emit(cli: &Cli, summary: &RunSummary) -> Result<()> {
    let json = to_json(summary)?;
    match report_path(cli, summary.command) {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(&path, json)?;
            for r in &summary.reports {
                let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
                match (&r.error, failed.is_empty()) {
                    (Some(e), _) => println!("{}: error: {e}", r.scenario),
                    (None, true) => println!("{}: pass", r.scenario),
                    (None, false) => println!("{}: FAIL {}", r.scenario, failed.join(", ")),
                }
            }
            eprintln!("report written to {}", path.display());
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let summary = match execute(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(e) = emit(&cli, &summary) {
        eprintln!("error: {e}");
        return ExitCode::from(match e {
            Error::Io(_) => 2,
            other => other.exit_code() as u8,
        });
    }
    ExitCode::from(summary.exit_code as u8)
}
