//! Drives a built-in preset through the same pipeline as the `satlab`
//! binary and lists the artifacts it wrote.
//!
//! ```text
//! cargo run --example run_preset -- compact_support profile
//! ```

use satlab::runner::{artifact_paths, run, Command, RunRequest};

fn main() {
    let mut args = std::env::args().skip(1);
    let preset = args.next().unwrap_or_else(|| "compact_support".into());
    let command = match args.next().as_deref().unwrap_or("solve") {
        "classify" => Command::Classify,
        "profile" => Command::Profile,
        "sp" => Command::Sp,
        "soliton" => Command::Soliton,
        "scan" => Command::Scan,
        _ => Command::Solve,
    };
    let out = std::env::temp_dir().join("satlab-example").join(&preset);
    let outcome = run(&RunRequest {
        command,
        config: None,
        preset: Some(preset),
        out: Some(out),
        refine: 0,
    });
    for line in &outcome.summary {
        println!("{line}");
    }
    for path in artifact_paths(&outcome) {
        println!("  {}", path.display());
    }
    std::process::exit(outcome.code);
}
