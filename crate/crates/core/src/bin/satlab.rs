use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use satlab::runner::{run, Command, RunRequest};

#[derive(Parser)]
#[command(name = "satlab", version, about = "Saturated Schrödinger equation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// TOML experiment file (merged over the preset when both are given).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Named preset.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Halve the grid spacing K times.
    #[arg(long, global = true, default_value_t = 0)]
    refine: u32,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Existence and uniqueness conditions for the coefficients.
    Classify,
    /// Solve the saturated equation.
    Solve,
    /// Solve, then ball profiles and localization checks around the configured centres.
    Profile,
    /// Schrödinger–Poisson alternation.
    Sp,
    /// Stationary soliton profile and its time-periodic residual.
    Soliton,
    /// Admissibility scan over (a, b) slices.
    Scan,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Classify => Command::Classify,
        Cmd::Solve => Command::Solve,
        Cmd::Profile => Command::Profile,
        Cmd::Sp => Command::Sp,
        Cmd::Soliton => Command::Soliton,
        Cmd::Scan => Command::Scan,
    };
    let outcome = run(&RunRequest {
        command,
        config: cli.config,
        preset: cli.preset,
        out: cli.out,
        refine: cli.refine,
    });
    // a closed pipe on either stream is not an error worth reporting
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    for line in &outcome.summary {
        let _ = if outcome.code == 0 { writeln!(out, "{line}") } else { writeln!(err, "{line}") };
    }
    if let Some(dir) = &outcome.out_dir {
        let _ = writeln!(out, "artifacts in {}", dir.display());
    }
    ExitCode::from(outcome.code as u8)
}
