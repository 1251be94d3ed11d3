//! Subcommands over beta-shifts, edge shifts and conjugacies.

use std::fmt::Write as _;

use betalab::algebraic::FieldElement;
use betalab::beta::{
    classify, code_words, expand, membership, parse_code, Beta, BetaError, BetaExpansion, ShiftClass, Tail,
};
use betalab::conjugacy::{verify_conjugacy, Conjugacy};
use betalab::factorization::{integer_split_test, primeness_obstruction, PrimenessVerdict, Refutation};
use betalab::sft::EdgeSFT;
use clap::Args;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, BaseArgs};

/// What a subcommand produced. A `failure` means a verification did not
/// hold; the counterexample is part of `json` and `text`.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub failure: Option<String>,
}

impl Report {
    pub fn ok(json: Value, text: String) -> Self {
        Report { json, text, failure: None }
    }
}

pub fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn class_of(tail: &Tail) -> ShiftClass {
    match tail {
        Tail::Finite => ShiftClass::Sft,
        Tail::Periodic { .. } => ShiftClass::Sofic,
        Tail::Unknown { horizon } => ShiftClass::NotSoficUpTo { horizon: *horizon },
    }
}

fn rational(s: &str) -> Result<BigRational, String> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator `{n}`"))?;
    let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator `{d}`"))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Args, Debug, Serialize)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    /// Number to expand, as p/q in [0, 1]; defaults to 1
    #[arg(long, value_name = "P/Q")]
    pub xi: Option<String>,
}

impl ExpandArgs {
    pub fn run(&self) -> Result<Report, String> {
        let beta = self.base.beta()?;
        let result = match (&beta, &self.xi) {
            (Beta::Exact(b), Some(xi)) => {
                let x = FieldElement::from_rational(b, rational(xi)?);
                expand(&beta, &x, self.base.horizon)
            }
            (_, Some(_)) => return Err("--xi needs an exact base".into()),
            _ => betalab::beta::expand_one(&beta, self.base.horizon),
        };
        match result {
            Ok(e) => {
                let class = class_of(&e.tail);
                let json = json!({
                    "beta": beta.to_string(),
                    "exact": true,
                    "digits": e.head,
                    "tail": e.tail,
                    "class": class,
                });
                Ok(Report::ok(json, format!("d = {}\nclass: {class}\n", render(&e))))
            }
            Err(BetaError::ApproximateModeInconclusive { digits }) => {
                let json = json!({
                    "beta": beta.to_string(),
                    "exact": false,
                    "digits": digits,
                    "tail": { "kind": "approximate" },
                });
                let text = format!(
                    "d = {} ... ({} certain digits; approximate base, no verdict)\n",
                    join(&digits),
                    digits.len()
                );
                Ok(Report::ok(json, text))
            }
            Err(e) => Err(e.to_string()),
        }
    }
}

fn join(d: &[u64]) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// `3,1,1`, `(1)^inf`, or a long prefix cut short.
fn render(e: &BetaExpansion) -> String {
    let head = |n: usize| {
        if e.head.len() > n {
            format!("{},...", join(&e.head.0[..n]))
        } else {
            e.head.to_string()
        }
    };
    match &e.tail {
        Tail::Finite => head(e.head.len()),
        Tail::Periodic { period } if e.head.is_empty() => format!("({period})^inf"),
        Tail::Periodic { period } => format!("{} ({period})^inf", head(e.head.len())),
        Tail::Unknown { horizon } => format!("{} (no termination or cycle in {horizon} digits)", head(40)),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub base: BaseArgs,
}

impl ClassifyArgs {
    pub fn run(&self) -> Result<Report, String> {
        let beta = self.base.beta()?;
        let desc = classify(&beta, self.base.horizon).map_err(|e| e.to_string())?;
        let json = json!({
            "beta": beta.to_string(),
            "digits": desc.expansion.head,
            "tail": desc.expansion.tail,
            "class": desc.class,
            "dstar": desc.dstar,
            "alphabet_size": desc.alphabet_size(),
        });
        let mut text = format!("d     = {}\nclass = {}\n", render(&desc.expansion), desc.class);
        if desc.is_exact() {
            let _ = writeln!(text, "d*    = {}", render_stream(&desc));
        }
        Ok(Report::ok(json, text))
    }
}

fn render_stream(desc: &betalab::beta::BetaShiftDescriptor) -> String {
    let s = &desc.dstar;
    match &s.period {
        Some(period) if s.head.is_empty() => format!("({})^inf", join(period)),
        Some(period) => format!("{} ({})^inf", join(&s.head), join(period)),
        None => format!("{},...", join(&s.head)),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct CodeWordsArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long, value_name = "L")]
    pub max_len: usize,
}

impl CodeWordsArgs {
    pub fn run(&self) -> Result<Report, String> {
        let desc = self.base.descriptor()?;
        let words = code_words(&desc, self.max_len);
        let text: String = words.iter().map(|w| format!("{w}\n")).collect();
        Ok(Report::ok(json!({ "words": words, "exact": desc.is_exact() }), text))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct AdmissibleArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long, value_name = "W", value_parser = input::word)]
    pub word: input::Digits,
}

impl AdmissibleArgs {
    pub fn run(&self) -> Result<Report, String> {
        let desc = self.base.descriptor()?;
        let m = membership(&desc, &self.word);
        let mut text = format!("{}\n", m.admissible);
        if !m.exact {
            text.push_str("(best effort: decided on a truncated d*)\n");
        }
        Ok(Report::ok(
            json!({ "word": self.word, "admissible": m.admissible, "exact": m.exact }),
            text,
        ))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ParseArgs {
    #[command(flatten)]
    pub base: BaseArgs,
    #[arg(long, value_name = "W", value_parser = input::word)]
    pub word: input::Digits,
}

impl ParseArgs {
    pub fn run(&self) -> Result<Report, String> {
        let desc = self.base.descriptor()?;
        let p = parse_code(&desc, &self.word).map_err(|e| e.to_string())?;
        let mut text: String = p.words.iter().map(|w| format!("{w}\n")).collect();
        if !p.remainder.is_empty() {
            let _ = writeln!(text, "remainder {}", p.remainder);
        }
        Ok(Report::ok(to_json(&p), text))
    }
}

/// Matrix given directly or as the companion matrix of a digit word.
#[derive(Args, Debug, Serialize)]
pub struct MatrixArgs {
    /// Companion matrix of d(beta) = W
    #[arg(long, value_name = "W", value_parser = input::word, conflicts_with = "matrix")]
    pub digits: Option<input::Digits>,
    /// digits:W, full:N, inline JSON, or a file (JSON or text grid)
    #[arg(long, value_name = "SRC")]
    pub matrix: Option<String>,
}

impl MatrixArgs {
    pub fn load(&self) -> Result<EdgeSFT, String> {
        match (&self.digits, &self.matrix) {
            (Some(d), _) => input::matrix_source(&format!("digits:{}", join(d))),
            (None, Some(src)) => input::matrix_source(src),
            (None, None) => Err("give --digits or --matrix".into()),
        }
    }
}

fn matrix_summary(x: &EdgeSFT) -> Value {
    let z = x.zeta_denominator();
    json!({
        "matrix": x.adjacency(),
        "zeta": z.to_string(),
        "coefficients": z.poly,
        "spectral_radius": x.spectral_radius().ok(),
        "entropy": x.entropy().ok(),
    })
}

#[derive(Args, Debug, Serialize)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
}

impl ZetaArgs {
    pub fn run(&self) -> Result<Report, String> {
        let x = self.matrix.load()?;
        let z = x.zeta_denominator();
        let mut text = format!("{z}\n");
        if let Ok(r) = x.spectral_radius() {
            let _ = writeln!(text, "spectral radius {r:.12}\nentropy         {:.12}", r.ln());
        }
        Ok(Report::ok(matrix_summary(&x), text))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct PeriodicCountsArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_name = "P")]
    pub max_p: u32,
}

impl PeriodicCountsArgs {
    pub fn run(&self) -> Result<Report, String> {
        let x = self.matrix.load()?;
        let counts: Vec<String> = x.periodic_counts(self.max_p).iter().map(|c| c.to_string()).collect();
        let text: String = counts.iter().enumerate().map(|(i, c)| format!("{:>3}  {c}\n", i + 1)).collect();
        Ok(Report::ok(json!({ "matrix": x.adjacency(), "counts": counts }), text))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ProductArgs {
    /// Left factor (digits:W, full:N, inline JSON or file)
    #[arg(long, value_name = "SRC")]
    pub left: String,
    /// Right factor
    #[arg(long, value_name = "SRC")]
    pub right: String,
}

impl ProductArgs {
    pub fn run(&self) -> Result<Report, String> {
        let a = input::matrix_source(&self.left)?;
        let b = input::matrix_source(&self.right)?;
        let ab = a.product(&b);
        let mut json = matrix_summary(&ab);
        json["left_zeta"] = json!(a.zeta_denominator().to_string());
        json["right_zeta"] = json!(b.zeta_denominator().to_string());
        let text = format!(
            "{} states\nzeta denominator {}\n(factors: {} and {})\n",
            ab.size(),
            ab.zeta_denominator(),
            a.zeta_denominator(),
            b.zeta_denominator()
        );
        Ok(Report::ok(json, text))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ScaleTestArgs {
    #[arg(long, value_name = "N")]
    pub n: u64,
    /// d(gamma) as comma-separated digits
    #[arg(long, value_name = "W", value_parser = input::word)]
    pub digits: input::Digits,
    #[arg(long, default_value_t = betalab::beta::DEFAULT_HORIZON)]
    pub horizon: usize,
}

impl ScaleTestArgs {
    pub fn run(&self) -> Result<Report, String> {
        let v = integer_split_test(self.n, &self.digits, self.horizon).map_err(|e| e.to_string())?;
        let mut text = format!("scaled word {}\n{v}\n", v.scaled_word);
        if let Some(e) = &v.scaled_expansion {
            let _ = writeln!(text, "d(n gamma) = {}", render(e));
        }
        Ok(Report::ok(to_json(&v), text))
    }
}

#[derive(Args, Debug, Serialize)]
pub struct PrimeCheckArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_name = "P", default_value_t = 8)]
    pub max_period: u32,
}

pub fn describe_refutation(r: &Refutation) -> String {
    match r {
        Refutation::OnePointFactor => "factor would be a single point".into(),
        Refutation::Divisibility { p, modulus, count } => {
            format!("{modulus} does not divide the {count} points of period {p}")
        }
        Refutation::NonInteger { p, value } => format!("factor would have {value} points of period {p}"),
        Refutation::ProductMismatch { p } => format!("factor counts do not multiply to the count at period {p}"),
    }
}

impl PrimeCheckArgs {
    pub fn run(&self) -> Result<Report, String> {
        let x = self.matrix.load()?;
        let report = primeness_obstruction(&x, self.max_period).map_err(|e| e.to_string())?;
        let mut text = format!("zeta denominator {}\n", report.zeta);
        let mut bad = None;
        for (i, a) in report.attempted_splits.iter().enumerate() {
            match &a.refutation {
                Some(r) => {
                    let _ = writeln!(text, "split {}: {} refuted: {}", i + 1, a.candidate.description, describe_refutation(r));
                    if !r.recheck(&x, &a.candidate) {
                        bad = Some(format!("refutation of split {} does not recheck", i + 1));
                    }
                }
                None => {
                    let _ = writeln!(text, "split {}: {} survives", i + 1, a.candidate.description);
                }
            }
        }
        let verdict = match &report.verdict {
            PrimenessVerdict::NoSplitFound { exact: true } => "no direct split (every candidate refuted exactly)".to_string(),
            PrimenessVerdict::NoSplitFound { exact: false } => "no direct split (some refutations numeric)".to_string(),
            PrimenessVerdict::CandidateSplit { description, .. } => format!("candidate split survives: {description}"),
            PrimenessVerdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
        };
        let _ = writeln!(text, "verdict: {verdict}");
        Ok(Report { json: to_json(&report), text, failure: bad })
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ConjugacyArgs {
    #[arg(long, value_name = "N")]
    pub n: u32,
    /// d(gamma) as comma-separated digits
    #[arg(long, value_name = "W", value_parser = input::word)]
    pub digits: input::Digits,
    #[arg(long, value_name = "P", default_value_t = 6)]
    pub max_period: usize,
    /// Include the local rules of both codes, with edge labels
    #[arg(long)]
    pub emit_rule_table: bool,
}

impl ConjugacyArgs {
    pub fn run(&self) -> Result<Report, String> {
        let r = verify_conjugacy(self.n, &self.digits, self.max_period).map_err(|e| e.to_string())?;
        let mut json = to_json(&r);
        json["passed"] = json!(r.passed());
        if self.emit_rule_table {
            let c = Conjugacy::build(self.n, &self.digits).map_err(|e| e.to_string())?;
            json["phi_table"] = to_json(&c.phi_table());
            json["psi_table"] = to_json(&c.psi_table());
        }
        let mut text = format!(
            "S_{} x X_C  ->  X_B   (C from {}, B from {})\nphi window {:?}, {} rules; psi window {:?}, {} rules\n",
            r.n, r.word, r.scaled, r.phi_window, r.phi_entries, r.psi_window, r.psi_entries
        );
        text.push_str("  p  points       n^p tr(C^p)  tr(B^p)\n");
        for row in &r.census {
            let _ = writeln!(
                text,
                "{:>3}  {:<12} {:<12} {}",
                row.p, row.source_points, row.product_count, row.trace_b
            );
        }
        let failure = r.witness.as_ref().map(|w| {
            let msg = format!(
                "{:?} at period {}: point {} maps to {}",
                w.check,
                w.period,
                w.point.join(" "),
                w.image.join(" ")
            );
            let _ = writeln!(text, "FAILED: {msg}");
            msg
        });
        if failure.is_none() {
            let _ = writeln!(text, "verified on all periodic points of period <= {}", r.max_period);
        }
        Ok(Report { json, text, failure })
    }
}
