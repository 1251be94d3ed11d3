//! Parsing of command-line values: digit words, bases, matrices, rules.

use std::fs;
use std::ops::Deref;
use std::path::Path;

use betalab::beta::{Beta, BetaShiftDescriptor};
use betalab::code::{RuleSpec, SlidingBlockCode};
use betalab::poly::IntPolynomial;
use betalab::sft::{companion_matrix, EdgeSFT};
use clap::Args;
use serde::Serialize;

/// Comma-separated nonnegative integers; digits may exceed 9.
pub fn digits(s: &str) -> Result<Vec<u64>, String> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{p}` is not a digit (digits are comma-separated integers)"))
        })
        .collect()
}

/// A digit word given on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Digits(pub Vec<u64>);

impl Deref for Digits {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

pub fn word(s: &str) -> Result<Digits, String> {
    digits(s).map(Digits)
}

/// A word over the `u32` symbols used by sliding block codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Symbols(pub Vec<u32>);

pub fn symbols(s: &str) -> Result<Symbols, String> {
    digits(s)?
        .into_iter()
        .map(|d| u32::try_from(d).map_err(|_| format!("symbol {d} too large")))
        .collect::<Result<_, _>>()
        .map(Symbols)
}

/// `L:R`, both inclusive.
pub fn window(s: &str) -> Result<(i64, i64), String> {
    let (l, r) = s.split_once(':').ok_or("window is L:R")?;
    let l: i64 = l.trim().parse().map_err(|_| format!("bad left end `{l}`"))?;
    let r: i64 = r.trim().parse().map_err(|_| format!("bad right end `{r}`"))?;
    if l > r {
        return Err(format!("empty window {l}:{r}"));
    }
    Ok((l, r))
}

/// `P/Q` with `Q > 0`; a bare `P` means `P/1`.
pub fn direction(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i64 = p.trim().parse().map_err(|_| format!("bad numerator `{p}`"))?;
    let q: i64 = q.trim().parse().map_err(|_| format!("bad denominator `{q}`"))?;
    if q <= 0 {
        return Err("direction denominator must be positive".into());
    }
    Ok((p, q))
}

/// Polynomial as `x^3-x^2-x-1` or a descending coefficient list `1,-1,-1,-1`.
pub fn polynomial(s: &str) -> Result<IntPolynomial, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Which base a beta command works in. Exactly one source must be given.
#[derive(Args, Debug, Clone, Serialize)]
pub struct BaseArgs {
    /// d(beta) as comma-separated digits (must be a finite expansion)
    #[arg(long = "digits-of-beta", value_name = "W", value_parser = word)]
    pub digits_of_beta: Option<Digits>,
    /// Defining polynomial of beta, e.g. x^3-x^2-x-1 or 1,-1,-1,-1
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    pub equation: Option<String>,
    /// Integer base
    #[arg(long, value_name = "N")]
    pub integer: Option<u64>,
    /// Floating-point base (inexact; digits are trusted only while certain)
    #[arg(long, value_name = "X")]
    pub approx: Option<f64>,
    /// Digits computed before giving up on termination or a cycle
    #[arg(long, default_value_t = betalab::beta::DEFAULT_HORIZON)]
    pub horizon: usize,
}

impl BaseArgs {
    pub fn beta(&self) -> Result<Beta, String> {
        let given = [
            self.digits_of_beta.is_some(),
            self.equation.is_some(),
            self.integer.is_some(),
            self.approx.is_some(),
        ];
        match given.iter().filter(|&&g| g).count() {
            1 => {}
            0 => return Err("give one of --digits-of-beta, --equation, --integer, --approx".into()),
            _ => return Err("give only one of --digits-of-beta, --equation, --integer, --approx".into()),
        }
        if let Some(d) = &self.digits_of_beta {
            return Ok(BetaShiftDescriptor::from_digits(d).map_err(|e| e.to_string())?.beta);
        }
        if let Some(eq) = &self.equation {
            return Beta::from_equation(&polynomial(eq)?).map_err(|e| e.to_string());
        }
        if let Some(n) = self.integer {
            if n < 2 {
                return Err("integer base must be at least 2".into());
            }
            return Ok(Beta::integer(n));
        }
        let x = self.approx.unwrap_or_default();
        if !(x > 1.0 && x.is_finite()) {
            return Err("beta must exceed 1".into());
        }
        Ok(Beta::approximate(x))
    }

    pub fn descriptor(&self) -> Result<BetaShiftDescriptor, String> {
        if let Some(d) = &self.digits_of_beta {
            if self.equation.is_none() && self.integer.is_none() && self.approx.is_none() {
                return BetaShiftDescriptor::from_digits(d).map_err(|e| e.to_string());
            }
        }
        betalab::beta::classify(&self.beta()?, self.horizon).map_err(|e| e.to_string())
    }
}

/// A matrix source: `digits:W` (companion matrix of d(beta) = W),
/// `full:N`, inline JSON `[[..],[..]]`, or a file holding JSON or a text grid.
pub fn matrix_source(s: &str) -> Result<EdgeSFT, String> {
    let t = s.trim();
    if let Some(w) = t.strip_prefix("digits:") {
        let w = digits(w)?;
        if w.is_empty() {
            return Err("empty digit word".into());
        }
        return EdgeSFT::new(companion_matrix(&w)).map_err(|e| e.to_string());
    }
    if let Some(n) = t.strip_prefix("full:") {
        let n: u64 = n.parse().map_err(|_| format!("bad size `{n}`"))?;
        return Ok(EdgeSFT::full(n));
    }
    if t.starts_with('[') {
        return EdgeSFT::parse(t).map_err(|e| e.to_string());
    }
    let text = fs::read_to_string(Path::new(t)).map_err(|e| format!("{t}: {e}"))?;
    EdgeSFT::parse(&text).map_err(|e| format!("{t}: {e}"))
}

/// Load a JSON rule file.
pub fn rule(path: &Path) -> Result<(RuleSpec, SlidingBlockCode), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let spec: RuleSpec = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let code = spec.build().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((spec, code))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_are_comma_separated_integers() {
        assert_eq!(digits("3,1,1").unwrap(), vec![3, 1, 1]);
        assert_eq!(digits("11").unwrap(), vec![11]);
        assert_eq!(digits("").unwrap(), Vec::<u64>::new());
        assert!(digits("1,a").is_err());
    }

    #[test]
    fn windows_and_directions() {
        assert_eq!(window("-20:20").unwrap(), (-20, 20));
        assert!(window("3:1").is_err());
        assert_eq!(direction("-1/2").unwrap(), (-1, 2));
        assert_eq!(direction("2").unwrap(), (2, 1));
        assert!(direction("1/0").is_err());
    }

    #[test]
    fn matrix_sources() {
        let a = matrix_source("digits:3,1,1").unwrap();
        assert_eq!(a.adjacency(), &[vec![3, 1, 0], vec![1, 0, 1], vec![1, 0, 0]]);
        assert_eq!(matrix_source("full:2").unwrap().adjacency(), &[vec![2]]);
        assert_eq!(matrix_source("[[1,1],[1,0]]").unwrap().size(), 2);
    }
}
