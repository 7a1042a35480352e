use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use koszulab::report::{run_scenario, to_json, to_text};
use koszulab::scenario::{builtin, Overrides, Scenario, BUILTINS};
use koszulab::Error;

const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "koszulab", version, about = "Homology checks for Koszul complexes of projective-dimension-one modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file or a built-in scenario.
    Run {
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        scenario: Option<PathBuf>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        degree_bound: Option<i64>,
        #[arg(long = "char")]
        characteristic: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated subset of the check names; empty for none.
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in scenarios.
    ListBuiltins,
}

fn load(scenario: Option<PathBuf>, builtin_name: Option<String>) -> Result<(String, Scenario), Error> {
    match (scenario, builtin_name) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(&path)?;
            Ok((path.display().to_string(), Scenario::from_json(&text)?))
        }
        (None, Some(name)) => {
            let s = builtin(&name).ok_or_else(|| Error::InvalidArgument(format!("unknown builtin `{name}`")))?;
            Ok((name, s))
        }
        (None, None) => Err(Error::InvalidArgument("need --scenario or --builtin".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListBuiltins => {
            for (name, about) in BUILTINS {
                println!("{name:<18} {about}");
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            scenario,
            builtin,
            degree_bound,
            characteristic,
            seed,
            checks,
            format,
            out,
        } => {
            let overrides = Overrides {
                degree_bound,
                characteristic,
                seed,
                checks: checks.map(|s| {
                    s.split(',')
                        .map(str::trim)
                        .filter(|c| !c.is_empty())
                        .map(String::from)
                        .collect()
                }),
            };
            let result = load(scenario, builtin).and_then(|(name, mut sc)| {
                sc.apply(&overrides);
                run_scenario(&name, &sc)
            });
            let report = match result {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INPUT);
                }
            };
            let body = match format {
                Format::Json => to_json(&report),
                Format::Text => to_text(&report),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_INPUT);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
