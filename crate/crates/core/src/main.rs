use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;
use tiltkit::battery;
use tiltkit::session::{RunOptions, Session, Status};

#[derive(Parser)]
#[command(name = "tiltkit", version, about = "Exact Koszul, Ext/Tor and tilting-class computations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the commands of a session file.
    Run {
        file: PathBuf,
        /// JSON output (the default).
        #[arg(long, conflicts_with = "pretty")]
        json: bool,
        /// Human-readable output.
        #[arg(long)]
        pretty: bool,
        #[arg(long, default_value_t = 6)]
        max_degree: i64,
        #[arg(long, default_value_t = 4)]
        tower_depth: usize,
        #[arg(long, default_value_t = 8)]
        resolution_length: usize,
    },
    /// Run the acceptance battery.
    TestBattery {
        #[arg(long, default_value_t = battery::DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Cmd::Run { file, pretty, max_degree, tower_depth, resolution_length, .. } => {
            let opts = RunOptions { max_degree, tower_depth, resolution_length };
            run(&file, pretty, &opts)
        }
        Cmd::TestBattery { seed } => {
            let report = battery::run_battery(seed);
            for c in &report.criteria {
                eprintln!("[{}] {:>2} {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.title);
            }
            emit(&report.to_json());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(file: &PathBuf, pretty: bool, opts: &RunOptions) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("tiltkit: cannot read {}: {e}", file.display());
            return ExitCode::from(1);
        }
    };
    let session = match Session::parse(&text) {
        Ok(s) => s,
        Err(e) => {
            if pretty {
                eprintln!("{}:{e}", file.display());
            } else {
                emit(&serde_json::to_string_pretty(&e.to_json()).expect("serializable"));
            }
            return ExitCode::from(2);
        }
    };
    let results = session.run_all(opts);
    let failed = results.iter().any(|r| r.status == Status::Error);
    if pretty {
        for r in &results {
            emit(&format!("{}\n  {}", r.command, r.summary));
        }
    } else {
        let out = json!({
            "status": if failed { "error" } else { "ok" },
            "seed": session.seed(),
            "results": results,
        });
        emit(&serde_json::to_string_pretty(&out).expect("serializable"));
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}
