//! Direct-product questions for SFT beta-shifts.
//!
//! [`integer_split_test`] decides whether `S_{n*gamma}` is conjugate to
//! `S_n x S_gamma` for an SFT base `gamma`: it is exactly when the scaled digit
//! word `(n a_{d-1}) (n^2 a_{d-2}) ... (n^d a_0)` is greater than all its
//! shifts; otherwise `S_{n*gamma}` is either not an SFT or has a different
//! zeta function.
//!
//! [`primeness_obstruction`] looks for ways to write the nonzero spectrum of
//! a mixing SFT as a pairwise product `{mu_i nu_j}` and refutes each
//! candidate with integer periodic-point constraints: the periodic counts
//! `f(p) = sum mu^p` and `g(p) = sum nu^p` of the would-be factors must be
//! nonnegative integers with `f(p) g(p) = tr(A^p)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::beta::{classify, Beta, BetaError, BetaExpansion, ShiftClass};
use crate::poly::IntPolynomial;
use crate::sft::{companion_edge_sft, lex_greater_all_shifts, EdgeSFT, SftError, ZetaDenominator};
use crate::word::DigitWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactorError {
    #[error("scale factor must be at least 2, got {0}")]
    BadScale(u64),
    #[error("digit overflow while scaling")]
    Overflow,
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error(transparent)]
    Beta(#[from] BetaError),
    #[error("matrix is not mixing")]
    NotMixing,
    #[error("max period must be at least 2")]
    BadMaxPeriod,
    #[error("scaled base is an SFT with the product's zeta function but a different expansion; this contradicts the zeta argument and indicates a bug")]
    ZetaAgreement,
}

/// `(n a_0, n^2 a_1, ..., n^d a_{d-1})` for `w = a_0 .. a_{d-1}` (most
/// significant first).
pub fn scaled_digit_word(n: u64, w: &[u64]) -> Result<DigitWord, FactorError> {
    let mut pow = 1u64;
    let mut out = Vec::with_capacity(w.len());
    for &a in w {
        pow = pow.checked_mul(n).ok_or(FactorError::Overflow)?;
        out.push(a.checked_mul(pow).ok_or(FactorError::Overflow)?);
    }
    Ok(DigitWord(out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScaleKind {
    /// The scaled word is greater than all its shifts.
    Conjugate,
    /// `S_{n*gamma}` is an SFT whose zeta function differs from the product's.
    NotConjugateZetaMismatch,
    /// `S_{n*gamma}` is sofic with an eventually periodic, non-finite `d`.
    NotSft,
    /// `d(n*gamma)` neither terminated nor cycled within the horizon.
    #[serde(rename = "not_sft_up_to")]
    NotSftUpTo { horizon: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ScaleVerdict {
    #[serde(flatten)]
    pub kind: ScaleKind,
    pub n: u64,
    pub digits: DigitWord,
    pub scaled_word: DigitWord,
    /// `d(n*gamma)` as computed, when the lex test failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaled_expansion: Option<BetaExpansion>,
    /// Zeta denominator of `S_{n*gamma}` (when it is an SFT).
    pub zeta_left: Option<ZetaDenominator>,
    /// Zeta denominator of `S_n x S_gamma`.
    pub zeta_right: Option<ZetaDenominator>,
}

impl fmt::Display for ScaleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = |o: &Option<ZetaDenominator>| o.as_ref().map(|z| z.to_string()).unwrap_or("-".into());
        match &self.kind {
            ScaleKind::Conjugate => write!(f, "conjugate (scaled word {})", self.scaled_word),
            ScaleKind::NotConjugateZetaMismatch => write!(
                f,
                "not conjugate: zeta denominators differ ({} vs {})",
                z(&self.zeta_left),
                z(&self.zeta_right)
            ),
            ScaleKind::NotSft => write!(f, "not conjugate: scaled beta-shift is sofic but not an SFT"),
            ScaleKind::NotSftUpTo { horizon } => {
                write!(f, "not conjugate unless the scaled expansion is finite beyond {horizon} digits")
            }
        }
    }
}

/// Test whether `S_{n*gamma}` is conjugate to `S_n x S_gamma` where
/// `d(gamma) = w`.
pub fn integer_split_test(n: u64, w: &[u64], horizon: usize) -> Result<ScaleVerdict, FactorError> {
    if n < 2 {
        return Err(FactorError::BadScale(n));
    }
    let c = companion_edge_sft(w)?;
    let scaled = scaled_digit_word(n, w)?;
    let zeta_right = EdgeSFT::full(n).product(&c).zeta_denominator();
    let mut verdict = ScaleVerdict {
        kind: ScaleKind::Conjugate,
        n,
        digits: DigitWord(w.to_vec()),
        scaled_word: scaled.clone(),
        scaled_expansion: None,
        zeta_left: None,
        zeta_right: Some(zeta_right.clone()),
    };
    if lex_greater_all_shifts(&scaled) {
        verdict.zeta_left = Some(companion_edge_sft(&scaled)?.zeta_denominator());
        return Ok(verdict);
    }
    let beta = Beta::from_equation(&IntPolynomial::from_digit_equation(&scaled))?;
    let desc = classify(&beta, horizon)?;
    verdict.scaled_expansion = Some(desc.expansion.clone());
    verdict.kind = match desc.class {
        ShiftClass::Sft => {
            let left = companion_edge_sft(&desc.expansion.head)?.zeta_denominator();
            let differ = left != zeta_right;
            verdict.zeta_left = Some(left);
            if !differ {
                return Err(FactorError::ZetaAgreement);
            }
            ScaleKind::NotConjugateZetaMismatch
        }
        ShiftClass::Sofic => ScaleKind::NotSft,
        ShiftClass::NotSoficUpTo { horizon } => ScaleKind::NotSftUpTo { horizon },
    };
    Ok(verdict)
}

/// Why a candidate split cannot come from an actual direct factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// The factor would have exactly one periodic point of every period; a
    /// mixing factor with dense periodic points is then a single point.
    OnePointFactor,
    /// `modulus` (= `f(p)`) does not divide the `p`-periodic count.
    Divisibility {
        p: u32,
        #[serde(serialize_with = "decimal")]
        modulus: BigUint,
        #[serde(serialize_with = "decimal")]
        count: BigUint,
    },
    /// `f(p)` or `g(p)` is not a nonnegative integer.
    NonInteger { p: u32, value: String },
    /// Integer counts exist but `f(p) g(p) != tr(A^p)`.
    ProductMismatch { p: u32 },
}

impl Refutation {
    /// Recompute the obstruction from the matrix alone.
    pub fn recheck(&self, x: &EdgeSFT, candidate: &SplitCandidate) -> bool {
        match self {
            Refutation::OnePointFactor => {
                x.is_mixing() && candidate.left_counts.iter().all(|c| c == "1")
            }
            Refutation::Divisibility { p, modulus, count } => {
                let tr = x.periodic_count(*p);
                &tr == count && !modulus.is_zero() && !(tr % modulus).is_zero()
            }
            Refutation::NonInteger { p, .. } => {
                // recompute both power sums from a fresh numeric spectrum
                let spec = x.zeta_denominator().nonzero_spectrum();
                let scale = candidate.scale;
                let (m, nu) = candidate.materialize(&spec);
                let f = power_sum(&m, *p) * scale.powi(*p as i32);
                let g = power_sum(&nu, *p) / scale.powi(*p as i32);
                near_nonneg_integer(f).is_none() || near_nonneg_integer(g).is_none()
            }
            Refutation::ProductMismatch { p } => {
                let tr = x.periodic_count(*p);
                let f: BigUint = candidate.left_counts[*p as usize - 1].parse().unwrap_or_default();
                let g: BigUint = candidate.right_counts[*p as usize - 1].parse().unwrap_or_default();
                f * g != tr
            }
        }
    }

    /// Whether the refutation is pure integer arithmetic.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Refutation::NonInteger { .. })
    }
}

/// A proposed split of the nonzero spectrum into `mu` (size `left_size`) and
/// `nu` (size `right_size`), with the grid assignment that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct SplitCandidate {
    pub left_size: usize,
    pub right_size: usize,
    /// `grid[i][j]` is the spectrum index assigned to `mu_i nu_j`.
    pub grid: Vec<Vec<usize>>,
    /// Positive `s` with `mu_i = s * l(i,0)` and `nu_j = l(0,j) / (s * l(0,0))`,
    /// where `l(i,j)` is the eigenvalue at grid cell `(i,j)`.
    pub scale: f64,
    /// `f(p)` for `p = 1..` as decimal strings (exact when integral).
    pub left_counts: Vec<String>,
    pub right_counts: Vec<String>,
    pub description: String,
}

impl SplitCandidate {
    /// Raw (unscaled) `mu` and `nu` from the grid: `mu_i = lambda[i][0]`,
    /// `nu_j = lambda[0][j] / lambda[0][0]`.
    fn materialize(&self, spec: &[Complex64]) -> (Vec<Complex64>, Vec<Complex64>) {
        let l = |i: usize, j: usize| spec.get(self.grid[i][j]).copied().unwrap_or_default();
        let mu = (0..self.left_size).map(|i| l(i, 0)).collect();
        let nu = (0..self.right_size).map(|j| l(0, j) / l(0, 0)).collect();
        (mu, nu)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Attempt {
    pub candidate: SplitCandidate,
    /// `None` when the candidate survived every check.
    pub refutation: Option<Refutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PrimenessVerdict {
    /// Every candidate split was refuted.
    NoSplitFound { exact: bool },
    /// At least one candidate passed all integer checks.
    CandidateSplit { index: usize, description: String },
    /// Some split shapes were too large to search.
    Inconclusive { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimenessReport {
    pub matrix: EdgeSFT,
    pub zeta: ZetaDenominator,
    pub spectral_radius: f64,
    pub entropy: f64,
    #[serde(serialize_with = "decimals")]
    pub periodic_counts: Vec<BigUint>,
    pub attempted_splits: Vec<Attempt>,
    pub verdict: PrimenessVerdict,
}

/// Largest spectrum for which two-sided grid splits are searched.
pub const MAX_GRID_SPECTRUM: usize = 8;

fn power_sum(v: &[Complex64], p: u32) -> f64 {
    v.iter().map(|z| z.powu(p)).sum::<Complex64>().re
}

// counts go out as decimal strings rather than digit vectors
fn decimal<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

fn decimals<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(BigUint::to_string))
}

fn near_nonneg_integer(x: f64) -> Option<BigUint> {
    let r = x.round();
    if r < -0.5 || (x - r).abs() > 1e-6 * (1.0 + r.abs()) {
        return None;
    }
    BigUint::from_f64(r.max(0.0))
}

fn positive_divisors(n: &BigUint) -> Vec<BigUint> {
    let Some(v) = n.to_u64() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            out.push(BigUint::from(i));
            if i * i != v {
                out.push(BigUint::from(v / i));
            }
        }
        i += 1;
    }
    out.sort();
    out
}

fn integer_nth_root_candidates(n: &BigUint, p: u32) -> Vec<BigUint> {
    // all m >= 1 with m^p | n
    let root = n.nth_root(p);
    let mut out = Vec::new();
    let mut m = BigUint::one();
    while m <= root {
        if (n % m.pow(p)).is_zero() {
            out.push(m.clone());
        }
        m += 1u32;
    }
    out
}

/// Check a one-eigenvalue factor `mu` (exact: `f(p) = mu^p`).
fn check_scalar_side(mu: &BigUint, counts: &[BigUint], k: usize) -> (Vec<String>, Vec<String>, Option<Refutation>) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut refutation = None;
    for (i, tr) in counts.iter().enumerate() {
        let p = i as u32 + 1;
        let f = mu.pow(p);
        left.push(f.to_string());
        if refutation.is_none() {
            if !(tr % &f).is_zero() {
                refutation = Some(Refutation::Divisibility {
                    p,
                    modulus: f.clone(),
                    count: tr.clone(),
                });
            } else {
                right.push((tr / &f).to_string());
            }
        }
    }
    if refutation.is_none() && mu.is_one() {
        refutation = Some(Refutation::OnePointFactor);
    }
    if refutation.is_none() && k == 1 && right.iter().all(|g| g == "1") {
        // the other side is the one-point factor
        refutation = Some(Refutation::OnePointFactor);
        std::mem::swap(&mut left, &mut right);
    }
    (left, right, refutation)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn heap(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..n - 1 {
            heap(n - 1, cur, out);
            if n % 2 == 0 {
                cur.swap(i, n - 1);
            } else {
                cur.swap(0, n - 1);
            }
        }
        heap(n - 1, cur, out);
    }
    heap(k, &mut cur, &mut out);
    out.sort();
    out
}

fn grid_candidates(
    spec: &[Complex64],
    a: usize,
    b: usize,
    counts: &[BigUint],
) -> Vec<Attempt> {
    let k = spec.len();
    let tol = 1e-6;
    let perms = permutations(k);
    // rank-one grids, deduplicated by their sorted mu / nu multisets
    let grids: Vec<Vec<Vec<usize>>> = perms
        .par_iter()
        .filter_map(|perm| {
            let grid: Vec<Vec<usize>> = (0..a).map(|i| (0..b).map(|j| perm[i * b + j]).collect()).collect();
            let l = |i: usize, j: usize| spec[grid[i][j]];
            let ok = (1..a).all(|i| {
                (1..b).all(|j| {
                    let lhs = l(i, j) * l(0, 0);
                    let rhs = l(i, 0) * l(0, j);
                    (lhs - rhs).norm() <= tol * (1.0 + lhs.norm())
                })
            });
            ok.then_some(grid)
        })
        .collect();
    let key = |v: &[Complex64]| {
        let mut ks: Vec<(i64, i64)> = v
            .iter()
            .map(|z| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64))
            .collect();
        ks.sort();
        ks
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // scale from the first nonzero periodic count
    let p0 = counts.iter().position(|c| !c.is_zero());
    for grid in grids {
        let probe = SplitCandidate {
            left_size: a,
            right_size: b,
            grid: grid.clone(),
            scale: 1.0,
            left_counts: vec![],
            right_counts: vec![],
            description: String::new(),
        };
        let (mu, nu) = probe.materialize(spec);
        let Some(p0) = p0 else { continue };
        let p0u = p0 as u32 + 1;
        let s_raw = mu.iter().map(|z| z.powu(p0u)).sum::<Complex64>();
        if s_raw.norm() < 1e-9 || s_raw.im.abs() > 1e-6 * (1.0 + s_raw.norm()) || s_raw.re <= 0.0 {
            continue;
        }
        for f0 in positive_divisors(&counts[p0]) {
            // s^{p0} * S_raw = f0 with s > 0
            let s = (f0.to_f64().unwrap_or(0.0) / s_raw.re).powf(1.0 / p0u as f64);
            let smu: Vec<Complex64> = mu.iter().map(|z| z * s).collect();
            let snu: Vec<Complex64> = nu.iter().map(|z| z / s).collect();
            let mut dedupe = (key(&smu), key(&snu));
            if a == b && dedupe.1 < dedupe.0 {
                dedupe = (dedupe.1, dedupe.0);
            }
            if !seen.insert(dedupe) {
                continue;
            }
            let mut left_counts = Vec::new();
            let mut right_counts = Vec::new();
            let mut refutation = None;
            for (i, tr) in counts.iter().enumerate() {
                let p = i as u32 + 1;
                let f = power_sum(&smu, p);
                let g = power_sum(&snu, p);
                left_counts.push(format!("{f:.6}"));
                right_counts.push(format!("{g:.6}"));
                if refutation.is_some() {
                    continue;
                }
                match (near_nonneg_integer(f), near_nonneg_integer(g)) {
                    (Some(fi), Some(gi)) => {
                        *left_counts.last_mut().unwrap() = fi.to_string();
                        *right_counts.last_mut().unwrap() = gi.to_string();
                        if !fi.is_zero() && !(tr % &fi).is_zero() {
                            refutation = Some(Refutation::Divisibility {
                                p,
                                modulus: fi,
                                count: tr.clone(),
                            });
                        } else if &(fi * gi) != tr {
                            refutation = Some(Refutation::ProductMismatch { p });
                        }
                    }
                    (None, _) => refutation = Some(Refutation::NonInteger { p, value: format!("f({p}) = {f:.9}") }),
                    (_, None) => refutation = Some(Refutation::NonInteger { p, value: format!("g({p}) = {g:.9}") }),
                }
            }
            let description = format!("{a}x{b} grid {:?}, f(1) = {f0}", grid);
            out.push(Attempt {
                candidate: SplitCandidate {
                    left_size: a,
                    right_size: b,
                    grid: grid.clone(),
                    scale: s,
                    left_counts,
                    right_counts,
                    description,
                },
                refutation,
            });
        }
    }
    out
}

/// Search for spectral splits compatible with a direct product and refute
/// them with periodic-point arithmetic up to `max_period`.
pub fn primeness_obstruction(x: &EdgeSFT, max_period: u32) -> Result<PrimenessReport, FactorError> {
    if max_period < 2 {
        return Err(FactorError::BadMaxPeriod);
    }
    if !x.is_mixing() {
        return Err(FactorError::NotMixing);
    }
    let zeta = x.zeta_denominator();
    let spec = zeta.nonzero_spectrum();
    let k = spec.len();
    let counts = x.periodic_counts(max_period);
    let mut attempts = Vec::new();
    let mut inconclusive = None;

    // one side carries a single eigenvalue mu, necessarily a positive integer
    if let Some(p0) = counts.iter().position(|c| !c.is_zero()) {
        let mut seen = BTreeSet::new();
        for mu in integer_nth_root_candidates(&counts[p0], p0 as u32 + 1) {
            if k == 1 {
                // unordered pair {mu, lambda/mu}
                let lambda = counts[0].clone();
                let other = if (&lambda % &mu).is_zero() { &lambda / &mu } else { BigUint::zero() };
                if !seen.insert(mu.clone().min(other.clone())) {
                    continue;
                }
            }
            let (left, right, refutation) = check_scalar_side(&mu, &counts, k);
            attempts.push(Attempt {
                candidate: SplitCandidate {
                    left_size: 1,
                    right_size: k,
                    grid: vec![(0..k).collect()],
                    scale: mu.to_f64().unwrap_or(f64::NAN),
                    left_counts: left,
                    right_counts: right,
                    description: format!("mu = {mu}"),
                },
                refutation,
            });
        }
    }

    for a in 2..=k {
        if k % a != 0 || a > k / a {
            continue;
        }
        let b = k / a;
        if k > MAX_GRID_SPECTRUM {
            inconclusive = Some(format!("{a}x{b} splits of a spectrum of size {k} were not searched"));
            continue;
        }
        attempts.extend(grid_candidates(&spec, a, b, &counts));
    }

    let survivor = attempts.iter().position(|t| t.refutation.is_none());
    let verdict = match (survivor, inconclusive) {
        (Some(i), _) => PrimenessVerdict::CandidateSplit {
            index: i,
            description: describe_survivor(&attempts[i].candidate),
        },
        (None, Some(reason)) => PrimenessVerdict::Inconclusive { reason },
        (None, None) => PrimenessVerdict::NoSplitFound {
            exact: attempts.iter().all(|t| t.refutation.as_ref().is_some_and(Refutation::is_exact)),
        },
    };
    let radius = x.spectral_radius()?;
    Ok(PrimenessReport {
        matrix: x.clone(),
        zeta,
        spectral_radius: radius,
        entropy: radius.ln(),
        periodic_counts: counts,
        attempted_splits: attempts,
        verdict,
    })
}

fn describe_survivor(c: &SplitCandidate) -> String {
    format!(
        "f(p) = {} ; g(p) = {}",
        c.left_counts.join(", "),
        c.right_counts.join(", ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u64> {
        s.parse::<DigitWord>().unwrap().into_vec()
    }

    #[test]
    fn scaled_word_examples() {
        assert_eq!(scaled_digit_word(2, &w("11")).unwrap().0, vec![2, 4]);
        assert_eq!(scaled_digit_word(2, &w("21")).unwrap().0, vec![4, 4]);
        assert_eq!(scaled_digit_word(1, &w("311")).unwrap().0, vec![3, 1, 1]);
        assert_eq!(scaled_digit_word(u64::MAX, &[2]), Err(FactorError::Overflow));
    }

    #[test]
    fn split_test_conjugate_cases() {
        let v = integer_split_test(2, &w("21"), 100).unwrap();
        assert_eq!(v.kind, ScaleKind::Conjugate);
        assert_eq!(v.scaled_word.0, vec![4, 4]);
        assert_eq!(v.zeta_left, v.zeta_right);
        let v = integer_split_test(3, &w("2"), 100).unwrap();
        assert_eq!(v.kind, ScaleKind::Conjugate);
        assert_eq!(v.scaled_word.0, vec![6]);
        assert!(matches!(integer_split_test(1, &w("2"), 10), Err(FactorError::BadScale(1))));
        assert!(matches!(
            integer_split_test(2, &w("24"), 10),
            Err(FactorError::Sft(SftError::NotLexMaximal(_)))
        ));
    }

    #[test]
    fn gamma_squared_is_obstructed() {
        let a = EdgeSFT::new(vec![vec![3, 1, 0], vec![1, 0, 1], vec![1, 0, 0]]).unwrap();
        let r = primeness_obstruction(&a, 2).unwrap();
        assert_eq!(r.verdict, PrimenessVerdict::NoSplitFound { exact: true });
        assert_eq!(r.attempted_splits.len(), 2);
        assert_eq!(r.attempted_splits[0].refutation, Some(Refutation::OnePointFactor));
        assert_eq!(
            r.attempted_splits[1].refutation,
            Some(Refutation::Divisibility {
                p: 2,
                modulus: 9u32.into(),
                count: 11u32.into()
            })
        );
        for t in &r.attempted_splits {
            assert!(t.refutation.as_ref().unwrap().recheck(&a, &t.candidate));
        }
    }

    #[test]
    fn six_splits_as_two_times_three() {
        let r = primeness_obstruction(&EdgeSFT::full(6), 4).unwrap();
        match &r.verdict {
            PrimenessVerdict::CandidateSplit { index, .. } => {
                let c = &r.attempted_splits[*index].candidate;
                assert_eq!(c.left_counts, vec!["2", "4", "8", "16"]);
                assert_eq!(c.right_counts, vec!["3", "9", "27", "81"]);
            }
            v => panic!("{v:?}"),
        }
        // {1,6} refuted, {2,3} survives; {3,2} and {6,1} are not repeated
        assert_eq!(r.attempted_splits.len(), 2);
    }

    #[test]
    fn two_has_no_split() {
        let r = primeness_obstruction(&EdgeSFT::full(2), 4).unwrap();
        assert!(matches!(r.verdict, PrimenessVerdict::NoSplitFound { .. }));
    }

    #[test]
    fn not_mixing_rejected() {
        let c = EdgeSFT::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(matches!(primeness_obstruction(&c, 3), Err(FactorError::NotMixing)));
    }

    #[test]
    fn product_of_golden_shifts_has_candidate() {
        let g = EdgeSFT::new(vec![vec![1, 1], vec![1, 0]]).unwrap();
        let two = EdgeSFT::new(vec![vec![2, 1], vec![1, 1]]).unwrap();
        let r = primeness_obstruction(&g.product(&two), 6).unwrap();
        assert!(matches!(r.verdict, PrimenessVerdict::CandidateSplit { .. }), "{:?}", r.verdict);
    }
}
