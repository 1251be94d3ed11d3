//! Worked examples run end to end, with every claimed number checked.

use std::fmt::Write as _;

use betalab::beta::{expand_one, Beta, Tail, DEFAULT_HORIZON};
use betalab::conjugacy::verify_conjugacy;
use betalab::factorization::{integer_split_test, primeness_obstruction, PrimenessVerdict, ScaleKind};
use betalab::poly::IntPolynomial;
use betalab::sft::{companion_matrix, EdgeSFT};
use clap::ValueEnum;
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use crate::commands::{describe_refutation, to_json, Report};

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Example {
    /// The base-6 shift split as the full 2-shift times the full 3-shift
    IntegerNm,
    /// The shift of gamma^2, gamma the tribonacci constant, has no direct split
    GammaCubed,
}

#[derive(Default)]
struct Checks {
    rows: Vec<Value>,
    text: String,
    failed: Vec<String>,
}

impl Checks {
    fn check(&mut self, what: &str, ok: bool) {
        self.rows.push(json!({ "check": what, "ok": ok }));
        let _ = writeln!(self.text, "[{}] {what}", if ok { "ok" } else { "FAILED" });
        if !ok {
            self.failed.push(what.to_string());
        }
    }

    fn report(self, example: Example, details: Value) -> Report {
        let failure = (!self.failed.is_empty()).then(|| self.failed.join("; "));
        Report {
            json: json!({ "example": example, "checks": self.rows, "details": details }),
            text: self.text,
            failure,
        }
    }
}

pub fn run(example: Example) -> Result<Report, String> {
    match example {
        Example::IntegerNm => integer_nm(),
        Example::GammaCubed => gamma_cubed(),
    }
}

fn integer_nm() -> Result<Report, String> {
    let mut c = Checks::default();
    let v = integer_split_test(2, &[3], DEFAULT_HORIZON).map_err(|e| e.to_string())?;
    c.check("2 * 3 = 6 is greater than its shifts: S_6 is conjugate to S_2 x S_3", v.kind == ScaleKind::Conjugate);
    let r = verify_conjugacy(2, &[3], 5).map_err(|e| e.to_string())?;
    c.check("phi and psi are mutually inverse on every point of period <= 5", r.passed());
    for row in &r.census {
        let six = BigUint::from(6u32).pow(row.p as u32).to_string();
        c.check(
            &format!("period {}: {} points on both sides = 6^{}", row.p, row.trace_b, row.p),
            row.trace_b == six && row.product_count == six && row.source_points.to_string() == six,
        );
    }
    Ok(c.report(Example::IntegerNm, json!({ "scale_test": to_json(&v), "conjugacy": to_json(&r) })))
}

fn gamma_cubed() -> Result<Report, String> {
    let mut c = Checks::default();
    let mut details = serde_json::Map::new();
    for (name, eq, expected) in [("gamma", "x^3-x^2-x-1", [1u64, 1, 1]), ("gamma^2", "x^3-3x^2-x-1", [3, 1, 1])] {
        let p: IntPolynomial = eq.parse().map_err(|e| format!("{e}"))?;
        let beta = Beta::from_equation(&p).map_err(|e| e.to_string())?;
        let e = expand_one(&beta, DEFAULT_HORIZON).map_err(|e| e.to_string())?;
        c.check(
            &format!("d({name}) = {}", e.head),
            e.tail == Tail::Finite && e.head.0 == expected,
        );
        details.insert(format!("d({name})"), to_json(&e));
    }
    let a = companion_matrix(&[3, 1, 1]);
    c.check(
        "A = [[3,1,0],[1,0,1],[1,0,0]]",
        a == vec![vec![3, 1, 0], vec![1, 0, 1], vec![1, 0, 0]],
    );
    let x = EdgeSFT::new(a).map_err(|e| e.to_string())?;
    c.check("tr(A) = 3", x.periodic_count(1) == BigUint::from(3u32));
    c.check("tr(A^2) = 11", x.periodic_count(2) == BigUint::from(11u32));
    let report = primeness_obstruction(&x, 8).map_err(|e| e.to_string())?;
    for (i, attempt) in report.attempted_splits.iter().enumerate() {
        let what = match &attempt.refutation {
            Some(r) => format!("split {}: {} refuted, {}", i + 1, attempt.candidate.description, describe_refutation(r)),
            None => format!("split {}: {} is refuted", i + 1, attempt.candidate.description),
        };
        let ok = attempt.refutation.as_ref().is_some_and(|r| r.recheck(&x, &attempt.candidate));
        c.check(&what, ok);
    }
    c.check(
        "no direct split survives",
        report.verdict == PrimenessVerdict::NoSplitFound { exact: true },
    );
    details.insert("primeness".into(), to_json(&report));
    Ok(c.report(Example::GammaCubed, Value::Object(details)))
}
