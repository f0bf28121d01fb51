use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gorsum_cli::report::{json_int, Report};
use gorsum_cli::suite::{run_suite, SUITES};
use gorsum_cli::{parse_session, run, Command, Limits, Status, SEED_VAR};
use gorsum_core::random::DEFAULT_SEED;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "gorsum", version, about = "Fiber products, connected sums and their homological invariants")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Series truncation order.
    #[arg(long, global = true, default_value_t = 6)]
    order: usize,
    /// Largest free module a resolution may build, in k-dimensions.
    #[arg(long, global = true, default_value_t = gorsum_core::DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Invariants of every algebra a session defines.
    Analyze { session: PathBuf },
    /// Runs the `check` items of a session.
    Verify { session: PathBuf },
    /// Betti numbers of a module over an algebra of the session.
    Resolve {
        session: PathBuf,
        /// Algebra to resolve over; defaults to the last one declared.
        #[arg(long)]
        ring: Option<String>,
        /// `k`, `regular` or a declared module.
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Golod test for a map, or for the socle quotient of an algebra.
    Golod {
        session: PathBuf,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Gorenstein colength bounds.
    Colength {
        session: PathBuf,
        #[arg(long)]
        ring: Option<String>,
    },
    /// Randomized property suites.
    RandomSuite {
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Defaults to $GORSUM_SEED, then to a fixed seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Run only the named suites.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
}

fn emit(report: &Report, format: Format) {
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    // a closed pipe is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits { order: cli.order, budget: cli.budget };
    let (path, command) = match cli.command {
        Cmd::Analyze { session } => (session, Command::Analyze),
        Cmd::Verify { session } => (session, Command::Verify),
        Cmd::Resolve { session, ring, module, steps } => (session, Command::Resolve { ring, module, steps }),
        Cmd::Golod { session, map, ring } => (session, Command::Golod { map, ring, order: None }),
        Cmd::Colength { session, ring } => (session, Command::Colength { ring }),
        Cmd::RandomSuite { count, seed, suites } => return random_suite(count, seed, suites, cli.format),
    };
    let label = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut report = Report::new(command.name(), &label);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            report.error("session", label.clone(), format!("cannot read {}: {e}", path.display()));
            emit(&report, cli.format);
            return ExitCode::from(2);
        }
    };
    let report = match parse_session(&text) {
        Ok(s) => run(&s, &command, limits, &label),
        Err(e) => {
            report.error("session", format!("{label}:{}", e.pos().line), e.to_string());
            report
        }
    };
    emit(&report, cli.format);
    ExitCode::from(report.exit_code() as u8)
}

fn random_suite(count: usize, seed: Option<u64>, only: Vec<String>, format: Format) -> ExitCode {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var(SEED_VAR) {
            Ok(v) => match v.parse() {
                Ok(s) => s,
                Err(_) => {
                    eprintln!("{SEED_VAR} must be an unsigned integer, got `{v}`");
                    return ExitCode::from(2);
                }
            },
            Err(_) => DEFAULT_SEED,
        },
    };
    let names: Vec<&str> = if only.is_empty() { SUITES.to_vec() } else { only.iter().map(String::as_str).collect() };
    let mut report = Report::new("random-suite", "random");
    report.set("seed", json_int(seed as i128));
    report.set("count", count);
    for name in names {
        let Some(res) = run_suite(name, count, seed) else {
            report.error(name, "random", format!("unknown suite; available: {}", SUITES.join(", ")));
            continue;
        };
        let mut message: Vec<String> = res.failures.iter().take(3).cloned().collect();
        message.extend(res.notes.iter().cloned());
        message.push(format!("{:.1} s", res.seconds));
        report.records.push(gorsum_cli::Record {
            name: name.to_string(),
            status: if res.passed() { Status::Pass } else { Status::Fail },
            expected: Some(format!("{} cases", res.cases)),
            actual: Some(format!("{} failures", res.failures.len())),
            source: format!("seed {seed}"),
            message: Some(message.join("; ")),
        });
    }
    emit(&report, format);
    ExitCode::from(report.exit_code() as u8)
}
