//! `betalab`: beta-shifts, edge shifts, direct-product conjugacies and
//! cellular automata from the command line.
//!
//! Output is JSON on stdout (`--text` for people). Each run also writes a
//! one-line JSON manifest to stderr with the parsed inputs and a SHA-256 of
//! stdout. Exit status: 0 success, 1 usage or input error, 2 a verification
//! failed (the counterexample is in the output).

mod ca;
mod commands;
mod input;
mod reproduce;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use commands::*;

#[derive(Parser, Debug, Serialize)]
#[command(name = "betalab", version, about = "Beta-shifts, edge shifts and cellular automata")]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Expansion of 1 (or of --xi) in base beta
    Expand(ExpandArgs),
    /// SFT / sofic classification of the beta-shift
    Classify(ClassifyArgs),
    /// Code words of length at most L
    CodeWords(CodeWordsArgs),
    /// Whether a word occurs in the beta-shift
    Admissible(AdmissibleArgs),
    /// Factor an admissible word into code words
    Parse(ParseArgs),
    /// Zeta denominator det(I - tA)
    Zeta(ZetaArgs),
    /// Numbers of points of period p = 1..P
    PeriodicCounts(PeriodicCountsArgs),
    /// Kronecker product of two edge shifts
    Product(ProductArgs),
    /// Is the shift of n*gamma conjugate to S_n times the shift of gamma?
    ScaleTest(ScaleTestArgs),
    /// Try to split an edge shift as a direct product
    PrimeCheck(PrimeCheckArgs),
    /// Build and verify the conjugacy S_n x X_C -> X_B
    Conjugacy(ConjugacyArgs),
    /// Cellular automata
    Ca {
        #[command(subcommand)]
        command: ca::CaCommand,
    },
    /// Re-run a worked example with all its checks
    Reproduce {
        #[arg(value_enum)]
        example: reproduce::Example,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Expand(_) => "expand",
            Command::Classify(_) => "classify",
            Command::CodeWords(_) => "code-words",
            Command::Admissible(_) => "admissible",
            Command::Parse(_) => "parse",
            Command::Zeta(_) => "zeta",
            Command::PeriodicCounts(_) => "periodic-counts",
            Command::Product(_) => "product",
            Command::ScaleTest(_) => "scale-test",
            Command::PrimeCheck(_) => "prime-check",
            Command::Conjugacy(_) => "conjugacy",
            Command::Ca { command } => match command {
                ca::CaCommand::Run(_) => "ca run",
                ca::CaCommand::Blocking(_) => "ca blocking",
                ca::CaCommand::Candidate(_) => "ca candidate",
                ca::CaCommand::Probe(_) => "ca probe",
            },
            Command::Reproduce { .. } => "reproduce",
        }
    }

    fn run(&self) -> Result<Report, String> {
        match self {
            Command::Expand(a) => a.run(),
            Command::Classify(a) => a.run(),
            Command::CodeWords(a) => a.run(),
            Command::Admissible(a) => a.run(),
            Command::Parse(a) => a.run(),
            Command::Zeta(a) => a.run(),
            Command::PeriodicCounts(a) => a.run(),
            Command::Product(a) => a.run(),
            Command::ScaleTest(a) => a.run(),
            Command::PrimeCheck(a) => a.run(),
            Command::Conjugacy(a) => a.run(),
            Command::Ca { command } => command.run(),
            Command::Reproduce { example } => reproduce::run(*example),
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::Ca { command } => command.seed(),
            _ => None,
        }
    }
}

/// Everything needed to rerun a command and check its output.
#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    inputs: &'a Command,
    text: bool,
    seed: Option<u64>,
    version: &'a str,
    threads: usize,
    wall_clock_ms: f64,
    exit_code: u8,
    outputs_sha256: String,
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("BETALAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("BETALAB_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let started = Instant::now();
    let (stdout, code) = match cli.command.run() {
        Ok(report) => {
            let body = if cli.text {
                report.text
            } else {
                let mut s = serde_json::to_string_pretty(&report.json).expect("json");
                s.push('\n');
                s
            };
            match report.failure {
                Some(f) => {
                    eprintln!("verification failed: {f}");
                    (body, 2)
                }
                None => (body, 0),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            (String::new(), 1)
        }
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(1);
    }
    let manifest = RunManifest {
        command: cli.command.name(),
        inputs: &cli.command,
        text: cli.text,
        seed: cli.command.seed(),
        version: env!("CARGO_PKG_VERSION"),
        threads: rayon::current_num_threads(),
        wall_clock_ms: started.elapsed().as_secs_f64() * 1e3,
        exit_code: code,
        outputs_sha256: hex::encode(Sha256::digest(stdout.as_bytes())),
    };
    eprintln!("{}", serde_json::to_string(&manifest).expect("manifest"));
    ExitCode::from(code)
}
