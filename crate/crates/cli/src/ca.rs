//! `ca` subcommands: space-time diagrams, blocking checks, direction probes.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use betalab::ca::{
    blocking_candidate_from_expansion, sensitivity_probe, space_time, verify_blocking, BlockingStatus,
    EXTENSION_BUDGET,
};
use betalab::config::Configuration;
use betalab::shift::Ambient;
use clap::{Args, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::commands::{to_json, Report};
use crate::input::{self, BaseArgs};

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaCommand {
    /// Space-time diagram of a configuration
    Run(RunArgs),
    /// Check that a word fixes a window of every orbit for N steps
    Blocking(BlockingArgs),
    /// Blocking-word candidate read off the expansion of 1
    Candidate(CandidateArgs),
    /// Spread of one-site perturbations along a direction
    Probe(ProbeArgs),
}

impl CaCommand {
    pub fn run(&self) -> Result<Report, String> {
        match self {
            CaCommand::Run(a) => a.run(),
            CaCommand::Blocking(a) => a.run(),
            CaCommand::Candidate(a) => a.run(),
            CaCommand::Probe(a) => a.run(),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            CaCommand::Probe(a) => Some(a.seed),
            _ => None,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct RunArgs {
    /// JSON rule file
    #[arg(long, value_name = "FILE")]
    pub rule: PathBuf,
    /// Configuration, e.g. "(0)^inf 1 . 0,1 (1,0)^inf"
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    pub config: String,
    /// Number of rows, including the initial configuration
    #[arg(long, value_name = "T")]
    pub steps: usize,
    /// Columns L:R (inclusive)
    #[arg(long, value_name = "L:R", value_parser = input::window, allow_hyphen_values = true)]
    pub window: (i64, i64),
    /// Also write the diagram as a binary PGM
    #[arg(long, value_name = "FILE")]
    pub pgm: Option<PathBuf>,
}

fn configuration(expr: &str, amb: &Ambient) -> Result<Configuration, String> {
    let x = Configuration::parse(expr, Some(amb)).map_err(|e| e.to_string())?;
    x.check_admissible(amb).map_err(|e| e.to_string())?;
    Ok(x)
}

impl RunArgs {
    pub fn run(&self) -> Result<Report, String> {
        let (_, f) = input::rule(&self.rule)?;
        let x = configuration(&self.config, f.input())?;
        let (l, r) = self.window;
        let d = space_time(&f, &x, self.steps, l, r).map_err(|e| e.to_string())?;
        if let Some(path) = &self.pgm {
            fs::write(path, d.to_pgm()).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        let mut json = to_json(&d);
        json["rule"] = json!(f.to_string());
        json["config"] = json!(x.to_string());
        Ok(Report::ok(json, d.to_ascii()))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct BlockingArgs {
    #[arg(long, value_name = "FILE")]
    pub rule: PathBuf,
    /// The word, placed at coordinates [0, |w|)
    #[arg(long, value_name = "W", value_parser = input::symbols)]
    pub word: input::Symbols,
    /// Window length
    #[arg(long, value_name = "E")]
    pub e: usize,
    /// Window start
    #[arg(long, value_name = "P")]
    pub p: usize,
    /// Steps checked
    #[arg(long, value_name = "N")]
    pub n: usize,
    /// Most extensions enumerated at one step
    #[arg(long, default_value_t = EXTENSION_BUDGET)]
    pub budget: usize,
}

impl BlockingArgs {
    pub fn run(&self) -> Result<Report, String> {
        let (_, f) = input::rule(&self.rule)?;
        let c = verify_blocking(&f, &self.word.0, self.e, self.p, self.n, self.budget).map_err(|e| e.to_string())?;
        let mut text = String::new();
        let window = format!("[{}, {}]", self.p, self.p + self.e - 1);
        let failure = match &c.status {
            BlockingStatus::VerifiedUpTo { n } => {
                let _ = writeln!(text, "window {window} is fixed for every n <= {n}");
                None
            }
            BlockingStatus::Refuted { step, span_start, first, second } => {
                let show = |w: &[u32]| w.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                let _ = writeln!(
                    text,
                    "refuted at n = {step}: extensions starting at {span_start}\n  {}\n  {}\ngive different windows {window}",
                    show(first),
                    show(second)
                );
                let _ = writeln!(text, "witness re-simulates: {}", c.recheck(&f));
                Some(format!("window {window} not fixed at step {step}"))
            }
        };
        if !c.meets_definition {
            let _ = writeln!(text, "note: window shorter than the rule's radius + 1");
        }
        let mut json = to_json(&c);
        json["rechecked"] = json!(c.recheck(&f));
        Ok(Report { json, text, failure })
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CandidateArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// Rule radius r; the repeated word has length 3r
    #[arg(long, value_name = "R")]
    pub r: usize,
    /// Digits of the expansion scanned
    #[arg(long, value_name = "S", default_value_t = 2000)]
    pub scan: usize,
}

impl CandidateArgs {
    pub fn run(&self) -> Result<Report, String> {
        let mut base = self.base.clone();
        base.horizon = base.horizon.min(self.scan.max(1));
        let desc = base.descriptor()?;
        let c = blocking_candidate_from_expansion(&desc, self.r, self.scan).map_err(|e| e.to_string())?;
        let text = format!(
            "word {}\n  u = {} is followed by {} here and by {} elsewhere\n  window length {} at offset {}\n",
            c.word, c.u, c.b, c.a, c.e, c.offset
        );
        Ok(Report::ok(to_json(&c), text))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ProbeArgs {
    #[arg(long, value_name = "FILE")]
    pub rule: PathBuf,
    /// Direction P/Q: follow sigma^P o F^Q
    #[arg(long = "dir", value_name = "P/Q", value_parser = input::direction, allow_hyphen_values = true)]
    pub direction: (i64, i64),
    #[arg(long, value_name = "K", default_value_t = 100)]
    pub trials: usize,
    #[arg(long, value_name = "T", default_value_t = 32)]
    pub steps: usize,
    #[arg(long, value_name = "S", default_value_t = 0)]
    pub seed: u64,
}

impl ProbeArgs {
    pub fn run(&self) -> Result<Report, String> {
        let (_, f) = input::rule(&self.rule)?;
        let (p, q) = self.direction;
        let r = sensitivity_probe(&f, p, q, self.trials, self.steps, self.seed).map_err(|e| e.to_string())?;
        let text = format!(
            "direction {p}/{q}: radius median {} after {} steps, {} after {} (min {}, max {})\nflag: {:?}\n",
            r.half.median,
            self.steps / 2,
            r.full.median,
            self.steps,
            r.full.min,
            r.full.max,
            r.flag
        );
        Ok(Report::ok(to_json(&r), text))
    }
}
