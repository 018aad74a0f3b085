use clap::{Parser, Subcommand};
use reesolve::scenario::{diff_reports, run_scenario, Scenario};
use reesolve::{builtin_scenario, golden_report, BUILTIN_NAMES};
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Weighted Rees algebras and monoidal transformations over small
/// positive-characteristic fields.
#[derive(Parser)]
#[command(name = "reesolve", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and print (or write) its report.
    Run {
        /// Path to a scenario JSON file.
        file: PathBuf,
        /// Override the scenario's coefficient field, as p or p,k.
        #[arg(long)]
        field: Option<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Echo the report to stdout even when --report is given.
        #[arg(long)]
        verbose: bool,
    },
    /// Re-run a built-in scenario and diff against its golden report.
    Repro {
        /// One of: hauser, txyz.
        name: String,
    },
    /// Interactive stepping loop.
    Repl {
        /// Coefficient field for manual construction, as p or p,k.
        #[arg(long)]
        field: Option<String>,
    },
}

fn parse_field(text: &str) -> Result<(u32, u32), String> {
    let mut parts = text.split(',');
    let p = parts
        .next()
        .and_then(|s| s.trim().parse().ok())
        .ok_or("expected p or p,k")?;
    let k = match parts.next() {
        Some(s) => s.trim().parse().map_err(|_| "bad extension degree")?,
        None => 1,
    };
    if parts.next().is_some() {
        return Err("expected p or p,k".into());
    }
    Ok((p, k))
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            file,
            field,
            report,
            verbose,
        } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("cannot read {}: {e}", file.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let mut scenario = match Scenario::from_json(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            if let Some(f) = field {
                match parse_field(&f) {
                    Ok((p, k)) => {
                        scenario.field.p = p;
                        scenario.field.k = k;
                    }
                    Err(e) => {
                        eprintln!("--field: {e}");
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
            }
            let out = run_scenario(&scenario);
            let text = out.report.text();
            match &report {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE);
                    }
                    if verbose {
                        print!("{text}");
                    }
                }
                None => print!("{text}"),
            }
            if out.report.error.is_some() {
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::Repro { name } => {
            let (scenario, golden) = match (builtin_scenario(&name), golden_report(&name)) {
                (Some(s), Some(g)) => (s, g),
                _ => {
                    eprintln!(
                        "unknown reproduction {name}; available: {}",
                        BUILTIN_NAMES.join(", ")
                    );
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let out = run_scenario(&scenario);
            let actual = out.report.text();
            let diff = diff_reports(golden, &actual);
            if diff.is_empty() {
                println!("repro {name}: ok ({} lines)", golden.lines().count());
                ExitCode::SUCCESS
            } else {
                println!("repro {name}: MISMATCH");
                print!("{diff}");
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Command::Repl { field } => {
            if let Some(f) = &field {
                if let Err(e) = parse_field(f) {
                    eprintln!("--field: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            let stdin = std::io::stdin();
            let stdout = std::io::stdout();
            let reader = BufReader::new(stdin.lock());
            let mut out = stdout.lock();
            if let Err(e) = reesolve::repl::run_repl(reader, &mut out) {
                let _ = writeln!(out, "io error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            ExitCode::SUCCESS
        }
    }
}
