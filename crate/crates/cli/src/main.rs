use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gifpsi_cli::{load, run, CliError, Overrides, TaskKind};

#[derive(Parser)]
#[command(name = "gifpsi", version, about = "Batch checks for generalized intuitionistic fuzzy psi-normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task in the config.
    Run(Common),
    /// Run only the validate-axioms tasks.
    ValidateAxioms(Common),
    /// Run only the alpha-norm tasks.
    AlphaNorm(Common),
    /// Run only the analyze-sequence tasks.
    AnalyzeSequence(Common),
    /// Run only the check-continuity tasks.
    CheckContinuity(Common),
    /// Run only the check-compact tasks.
    CheckCompact(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    config: PathBuf,
    /// Replace the seed of every sampled task.
    #[arg(long)]
    seed_override: Option<u64>,
    /// Report path; overrides the config's `output`. Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run independent tasks concurrently.
    #[arg(long)]
    parallel: bool,
    /// Use the original (1 − β, β, 1 − α, α) implication form for IFC.
    #[arg(long)]
    compat_def51: bool,
}

fn execute(args: Common, only: Option<TaskKind>) -> Result<i32, CliError> {
    let overrides = Overrides {
        seed: args.seed_override,
        compat_def51: args.compat_def51,
        only,
    };
    let config = load(&args.config, &overrides)?;
    let report = run(&config, args.parallel);
    let json = report.to_json();
    match args.output.or_else(|| config.output.as_ref().map(PathBuf::from)) {
        Some(path) => std::fs::write(&path, json).map_err(|source| CliError::Write { path, source })?,
        None => print!("{json}"),
    }
    for t in &report.payload.tasks {
        for v in &t.violations {
            eprintln!("{}: {v}", t.id);
        }
        if let Some(e) = &t.error {
            eprintln!("{}: error: {e}", t.id);
        }
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (args, only) = match cli.command {
        Command::Run(a) => (a, None),
        Command::ValidateAxioms(a) => (a, Some(TaskKind::ValidateAxioms)),
        Command::AlphaNorm(a) => (a, Some(TaskKind::AlphaNorm)),
        Command::AnalyzeSequence(a) => (a, Some(TaskKind::AnalyzeSequence)),
        Command::CheckContinuity(a) => (a, Some(TaskKind::CheckContinuity)),
        Command::CheckCompact(a) => (a, Some(TaskKind::CheckCompact)),
    };
    let code = match execute(args, only) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
