//! Beta-expansions, the code `Y_beta`, and the language of the beta-shift.
//!
//! For `beta > 1` the greedy expansion of `xi` is `d_i = floor(beta * T^i(xi))`
//! with `T(x) = frac(beta * x)`. Orbit points are exact field elements, so a
//! repeated state proves eventual periodicity. The beta-shift `S_beta` is the
//! set of sequences all of whose shifts are lexicographically at most
//! `d*(beta)`, where `d*` equals `d(beta)` unless `d(beta) = d_0..d_m` is
//! finite, in which case `d* = (d_0..d_{m-1} (d_m - 1))^inf`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebraic::{AlgebraicError, AlgebraicReal, FieldElement};
use crate::poly::IntPolynomial;
use crate::word::{primitive_root_len, DigitWord};

/// Default number of greedy steps before an expansion is declared unknown.
pub const DEFAULT_HORIZON: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BetaError {
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
    #[error("beta must exceed 1")]
    BetaTooSmall,
    #[error("horizon must be at least 1")]
    BadHorizon,
    #[error("approximate beta: {} trusted digits, no certificate of finiteness or periodicity", digits.len())]
    ApproximateModeInconclusive { digits: Vec<u64> },
    #[error("expansion is unknown beyond {horizon} digits")]
    UnknownTail { horizon: usize },
    #[error("word is not admissible (first violating suffix starts at {position})")]
    NotAdmissible { position: usize },
    #[error("digits {0} are not the expansion of their own root")]
    NotAnExpansion(DigitWord),
}

/// A base: an exact algebraic number, or a rational approximation of an
/// arbitrary real carrying its precision.
#[derive(Clone, Debug)]
pub enum Beta {
    Exact(Arc<AlgebraicReal>),
    Approximate {
        value: BigRational,
        /// `|beta - value| <= 2^-precision_bits`
        precision_bits: u32,
    },
}

impl Beta {
    pub fn exact(a: AlgebraicReal) -> Self {
        Beta::Exact(Arc::new(a))
    }

    /// The unique positive root of a digit equation `x^d - a_{d-1}x^{d-1} - ... - a_0`.
    pub fn from_equation(p: &IntPolynomial) -> Result<Self, BetaError> {
        Ok(Beta::exact(AlgebraicReal::unique_positive_root(p)?))
    }

    pub fn integer(n: u64) -> Self {
        Beta::exact(AlgebraicReal::integer(n as i64))
    }

    /// Rational approximation of a float, accurate to about 52 bits.
    pub fn approximate(x: f64) -> Self {
        let value = BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        Beta::Approximate {
            value,
            precision_bits: 52,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Beta::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Beta::Exact(a) => a.to_f64(),
            Beta::Approximate { value, .. } => value.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Exact(a) => write!(f, "{a}"),
            Beta::Approximate { value, .. } => {
                write!(f, "~{}", value.to_f64().unwrap_or(f64::NAN))
            }
        }
    }
}

/// What follows the head of an expansion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Tail {
    /// The expansion stops (all further digits are 0).
    Finite,
    /// The head is followed by `period` repeated forever.
    Periodic { period: DigitWord },
    /// Neither termination nor a repeat was seen within `horizon` digits.
    Unknown { horizon: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaExpansion {
    pub head: DigitWord,
    pub tail: Tail,
}

impl BetaExpansion {
    /// Eventually periodic expansion with shortest preperiod and primitive period.
    pub fn periodic(head: Vec<u64>, period: Vec<u64>) -> Self {
        let (head, period) = normalize_periodic(head, period);
        BetaExpansion {
            head: DigitWord(head),
            tail: Tail::Periodic {
                period: DigitWord(period),
            },
        }
    }

    pub fn finite(mut head: Vec<u64>) -> Self {
        while head.last() == Some(&0) {
            head.pop();
        }
        BetaExpansion {
            head: DigitWord(head),
            tail: Tail::Finite,
        }
    }

    /// `d*`: for a finite `d_0..d_m` the stream `(d_0..(d_m - 1))^inf`,
    /// otherwise the expansion itself.
    pub fn d_star(&self) -> Result<DigitStream, BetaError> {
        match &self.tail {
            Tail::Finite => {
                let mut p = self.head.0.clone();
                match p.last_mut() {
                    Some(last) => *last -= 1,
                    None => return Ok(DigitStream::periodic(vec![], vec![0])),
                }
                Ok(DigitStream::periodic(vec![], p))
            }
            Tail::Periodic { period } => Ok(DigitStream::periodic(
                self.head.0.clone(),
                period.0.clone(),
            )),
            Tail::Unknown { horizon } => Err(BetaError::UnknownTail { horizon: *horizon }),
        }
    }

    /// Digit `i` of the expansion, if known.
    pub fn digit(&self, i: usize) -> Option<u64> {
        if let Some(&d) = self.head.get(i) {
            return Some(d);
        }
        match &self.tail {
            Tail::Finite => Some(0),
            Tail::Periodic { period } => Some(period[(i - self.head.len()) % period.len()]),
            Tail::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for BetaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head.compact())?;
        match &self.tail {
            Tail::Finite => Ok(()),
            Tail::Periodic { period } => write!(f, "({})^inf", period.compact()),
            Tail::Unknown { horizon } => write!(f, "... (unknown after {horizon})"),
        }
    }
}

fn normalize_periodic(mut head: Vec<u64>, period: Vec<u64>) -> (Vec<u64>, Vec<u64>) {
    let p = primitive_root_len(&period);
    let mut period = period[..p].to_vec();
    while let Some(&h) = head.last() {
        if h != period[period.len() - 1] {
            break;
        }
        head.pop();
        period.rotate_right(1);
    }
    (head, period)
}

/// An eventually periodic digit stream `head period^inf`, or a bare prefix
/// when only finitely many digits are known (`period` is `None`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitStream {
    pub head: Vec<u64>,
    pub period: Option<Vec<u64>>,
}

impl DigitStream {
    pub fn periodic(head: Vec<u64>, period: Vec<u64>) -> Self {
        let (head, period) = normalize_periodic(head, period);
        DigitStream {
            head,
            period: Some(period),
        }
    }

    pub fn prefix_only(head: Vec<u64>) -> Self {
        DigitStream { head, period: None }
    }

    pub fn is_complete(&self) -> bool {
        self.period.is_some()
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        if let Some(&d) = self.head.get(i) {
            return Some(d);
        }
        let p = self.period.as_ref()?;
        Some(p[(i - self.head.len()) % p.len()])
    }

    /// First `n` digits, or as many as are known.
    pub fn prefix(&self, n: usize) -> Vec<u64> {
        (0..n).map_while(|i| self.get(i)).collect()
    }

    /// Number of known digits (`None` if infinite).
    pub fn known_len(&self) -> Option<usize> {
        match self.period {
            Some(_) => None,
            None => Some(self.head.len()),
        }
    }
}

impl fmt::Display for DigitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", DigitWord(self.head.clone()).compact())?;
        match &self.period {
            Some(p) => write!(f, "({})^inf", DigitWord(p.clone()).compact()),
            None => write!(f, "..."),
        }
    }
}

/// Expansion of `xi` in base `beta`. Orbit points are compared exactly, so
/// `Periodic` and `Finite` answers are proofs.
pub fn expand(beta: &Beta, xi: &FieldElement, horizon: usize) -> Result<BetaExpansion, BetaError> {
    if horizon == 0 {
        return Err(BetaError::BadHorizon);
    }
    let base = match beta {
        Beta::Exact(b) => b,
        Beta::Approximate { .. } => {
            return Err(BetaError::ApproximateModeInconclusive {
                digits: approximate_digits(beta, horizon),
            })
        }
    };
    let one = FieldElement::one(base);
    if FieldElement::generator(base).compare(&one)? != std::cmp::Ordering::Greater {
        return Err(BetaError::BetaTooSmall);
    }
    let b = FieldElement::generator(base);
    let mut seen: HashMap<Vec<BigRational>, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut x = xi.with_base(base)?;
    for i in 0..horizon {
        if x.is_zero() {
            return Ok(BetaExpansion::finite(digits));
        }
        if let Some(&j) = seen.get(x.coeffs()) {
            let period = digits[j..].to_vec();
            digits.truncate(j);
            return Ok(BetaExpansion::periodic(digits, period));
        }
        seen.insert(x.coeffs().to_vec(), i);
        // keep the more refined base from the previous floor
        let prod = x.mul(&b.with_base(x.base())?)?;
        let (k, frac) = prod.floor_and_frac();
        digits.push(k.to_u64().expect("digit fits in u64"));
        x = frac;
    }
    if x.is_zero() {
        return Ok(BetaExpansion::finite(digits));
    }
    if let Some(&j) = seen.get(x.coeffs()) {
        let period = digits[j..].to_vec();
        digits.truncate(j);
        return Ok(BetaExpansion::periodic(digits, period));
    }
    Ok(BetaExpansion {
        head: DigitWord(digits),
        tail: Tail::Unknown { horizon },
    })
}

/// `d(beta)`: the expansion of 1.
pub fn expand_one(beta: &Beta, horizon: usize) -> Result<BetaExpansion, BetaError> {
    match beta {
        Beta::Exact(b) => expand(beta, &FieldElement::one(b), horizon),
        Beta::Approximate { .. } => Err(BetaError::ApproximateModeInconclusive {
            digits: approximate_digits(beta, horizon),
        }),
    }
}

/// Digits of `d(beta)` that are certain for every real within the stated
/// precision of an approximate base. Stops early once rounding could flip a
/// digit.
fn approximate_digits(beta: &Beta, horizon: usize) -> Vec<u64> {
    let Beta::Approximate {
        value,
        precision_bits,
    } = beta
    else {
        return Vec::new();
    };
    let eb = BigRational::new(BigInt::one(), BigInt::one() << *precision_bits as usize);
    // x is the computed orbit point, err bounds its distance to the true one
    let mut x = BigRational::one();
    let mut err = BigRational::zero();
    let mut out = Vec::new();
    let bhi = value + &eb;
    for _ in 0..horizon {
        let y = value * &x;
        let e = &bhi * &err + &eb * &x;
        let lo = (&y - &e).floor();
        let hi = (&y + &e).floor();
        if lo != hi || (&y + &e) == hi {
            break;
        }
        let k = lo.to_integer();
        out.push(k.to_u64().unwrap_or(0));
        x = y - BigRational::from_integer(k);
        err = e;
        if x.is_zero() && err.is_zero() {
            break;
        }
        // keep the rational sizes bounded: round x to the error scale
        let scale = BigInt::one() << (*precision_bits as usize + 64);
        let xr = (&x * BigRational::from_integer(scale.clone())).floor() / BigRational::from_integer(scale.clone());
        err += &x - &xr;
        err += BigRational::new(BigInt::one(), scale);
        x = xr;
    }
    out
}

/// SFT / sofic classification of the beta-shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShiftClass {
    Sft,
    Sofic,
    NotSoficUpTo { horizon: usize },
}

impl fmt::Display for ShiftClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftClass::Sft => f.write_str("SFT"),
            ShiftClass::Sofic => f.write_str("sofic"),
            ShiftClass::NotSoficUpTo { horizon } => write!(f, "not sofic up to {horizon}"),
        }
    }
}

/// Everything needed to answer language questions about `S_beta`.
#[derive(Clone, Debug)]
pub struct BetaShiftDescriptor {
    pub beta: Beta,
    pub expansion: BetaExpansion,
    /// `d*(beta)`; a bare prefix when the class is inconclusive.
    pub dstar: DigitStream,
    pub class: ShiftClass,
}

/// Expand 1 and classify: finite `d(beta)` gives an SFT, eventually periodic
/// a sofic shift, anything else is reported as inconclusive at `horizon`.
pub fn classify(beta: &Beta, horizon: usize) -> Result<BetaShiftDescriptor, BetaError> {
    let expansion = expand_one(beta, horizon)?;
    let (dstar, class) = match &expansion.tail {
        Tail::Finite => (expansion.d_star()?, ShiftClass::Sft),
        Tail::Periodic { .. } => (expansion.d_star()?, ShiftClass::Sofic),
        Tail::Unknown { horizon } => (
            DigitStream::prefix_only(expansion.head.0.clone()),
            ShiftClass::NotSoficUpTo { horizon: *horizon },
        ),
    };
    Ok(BetaShiftDescriptor {
        beta: beta.clone(),
        expansion,
        dstar,
        class,
    })
}

impl BetaShiftDescriptor {
    /// The beta-shift whose `d(beta)` is the given finite word. Fails unless
    /// the word really is the expansion of 1 in its own base.
    pub fn from_digits(digits: &[u64]) -> Result<Self, BetaError> {
        let word = DigitWord(digits.to_vec());
        if digits.is_empty() || digits[0] == 0 || *digits.last().unwrap_or(&0) == 0 {
            return Err(BetaError::NotAnExpansion(word));
        }
        let p = IntPolynomial::from_digit_equation(digits);
        let beta = Beta::from_equation(&p).map_err(|_| BetaError::NotAnExpansion(word.clone()))?;
        let desc = classify(&beta, digits.len() + 1)?;
        if desc.expansion.tail != Tail::Finite || desc.expansion.head != word {
            return Err(BetaError::NotAnExpansion(word));
        }
        Ok(desc)
    }

    pub fn is_exact(&self) -> bool {
        self.dstar.is_complete()
    }

    /// Digit `i` of `d(beta)` (0 past a finite expansion), if known.
    pub fn d_digit(&self, i: usize) -> Option<u64> {
        self.expansion.digit(i)
    }

    /// Size of the digit alphabet, `floor(beta) + 1`.
    pub fn alphabet_size(&self) -> u64 {
        self.expansion.head.first().copied().unwrap_or(1) + 1
    }
}

/// Result of a membership query; `exact` is false when the answer relied on
/// a truncated `d*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub admissible: bool,
    pub exact: bool,
}

/// Position of the first suffix of `w` exceeding the equal-length prefix of
/// `d*`, and whether the comparison ran past the known digits.
fn first_violation(dstar: &DigitStream, w: &[u64]) -> (Option<usize>, bool) {
    let mut truncated = false;
    for i in 0..w.len() {
        for (j, &c) in w[i..].iter().enumerate() {
            let Some(d) = dstar.get(j) else {
                truncated = true;
                break;
            };
            if c < d {
                break;
            }
            if c > d {
                return (Some(i), truncated);
            }
        }
    }
    (None, truncated)
}

/// Whether `w` occurs in `S_beta`: every suffix is at most the equal-length
/// prefix of `d*`. Answers for inconclusive classes are best-effort.
pub fn membership(desc: &BetaShiftDescriptor, w: &[u64]) -> Membership {
    let (v, truncated) = first_violation(&desc.dstar, w);
    Membership {
        admissible: v.is_none(),
        exact: desc.dstar.is_complete() || (v.is_none() && !truncated),
    }
}

pub fn is_admissible(desc: &BetaShiftDescriptor, w: &[u64]) -> bool {
    membership(desc, w).admissible
}

/// The code words of `Y_beta = { d_0..d_{n-1} b : 0 <= b < d_n }` of length
/// at most `max_len`, shortest first.
pub fn code_words(desc: &BetaShiftDescriptor, max_len: usize) -> Vec<DigitWord> {
    let mut out = Vec::new();
    for n in 0..max_len {
        let Some(dn) = desc.d_digit(n) else { break };
        let prefix: Vec<u64> = (0..n).map(|i| desc.d_digit(i).unwrap_or(0)).collect();
        for b in 0..dn {
            let mut w = prefix.clone();
            w.push(b);
            out.push(DigitWord(w));
        }
    }
    out
}

/// Greedy factorization into code words plus a trailing remainder that is a
/// proper prefix of a code word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParse {
    pub words: Vec<DigitWord>,
    pub remainder: DigitWord,
}

/// Factor an admissible word into code words. `Y_beta` is a prefix code so
/// the greedy parse is the only one.
pub fn parse_code(desc: &BetaShiftDescriptor, w: &[u64]) -> Result<CodeParse, BetaError> {
    if let (Some(position), _) = first_violation(&desc.dstar, w) {
        return Err(BetaError::NotAdmissible { position });
    }
    let mut words = Vec::new();
    let mut start = 0;
    'outer: while start < w.len() {
        let rest = &w[start..];
        for (n, &c) in rest.iter().enumerate() {
            let dn = desc
                .d_digit(n)
                .ok_or(BetaError::NotAdmissible { position: start })?;
            if c < dn {
                words.push(DigitWord(rest[..=n].to_vec()));
                start += n + 1;
                continue 'outer;
            }
            if c > dn {
                return Err(BetaError::NotAdmissible { position: start });
            }
        }
        break;
    }
    Ok(CodeParse {
        words,
        remainder: DigitWord(w[start..].to_vec()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(eq: &str) -> BetaShiftDescriptor {
        classify(&Beta::from_equation(&eq.parse().unwrap()).unwrap(), DEFAULT_HORIZON).unwrap()
    }

    #[test]
    fn expansions_of_test_bases() {
        for (eq, d) in [
            ("x-2", "2"),
            ("x^2-x-1", "11"),
            ("x^3-x^2-x-1", "111"),
            ("x^3-3x^2-x-1", "311"),
            ("x-4", "4"),
        ] {
            let ds = desc(eq);
            assert_eq!(ds.expansion.head.compact(), d, "{eq}");
            assert_eq!(ds.expansion.tail, Tail::Finite);
            assert_eq!(ds.class, ShiftClass::Sft);
        }
    }

    #[test]
    fn d_star_examples() {
        let e = BetaExpansion::finite(vec![1, 1]);
        assert_eq!(e.d_star().unwrap(), DigitStream::periodic(vec![], vec![1, 0]));
        let e = BetaExpansion::finite(vec![3, 1, 1]);
        assert_eq!(e.d_star().unwrap().prefix(6), vec![3, 1, 0, 3, 1, 0]);
        let e = BetaExpansion::finite(vec![2]);
        assert_eq!(e.d_star().unwrap(), DigitStream::periodic(vec![], vec![1]));
        let u = BetaExpansion {
            head: DigitWord(vec![1]),
            tail: Tail::Unknown { horizon: 5 },
        };
        assert_eq!(u.d_star(), Err(BetaError::UnknownTail { horizon: 5 }));
    }

    #[test]
    fn periodic_normalization() {
        let e = BetaExpansion::periodic(vec![2, 1, 0, 1], vec![0, 1, 0, 1]);
        assert_eq!(e.head.0, vec![2]);
        assert_eq!(e.tail, Tail::Periodic { period: DigitWord(vec![1, 0]) });
    }

    #[test]
    fn sofic_base() {
        // beta = phi^2, root of x^2 - 3x + 1: T(1) = 1/phi is a fixed point
        let b = Beta::exact(
            AlgebraicReal::from_root(
                &"x^2-3x+1".parse().unwrap(),
                &BigRational::from_integer(2.into()),
                &BigRational::from_integer(3.into()),
            )
            .unwrap(),
        );
        let ds = classify(&b, 100).unwrap();
        assert_eq!(ds.class, ShiftClass::Sofic);
        assert_eq!(ds.expansion.to_string(), "2(1)^inf");
        assert_eq!(ds.dstar.prefix(4), vec![2, 1, 1, 1]);
    }

    #[test]
    fn admissibility_examples() {
        let g = desc("x^2-x-1");
        assert!(!is_admissible(&g, &[1, 1]));
        assert!(is_admissible(&g, &[1, 0, 1, 0]));
        assert!(is_admissible(&g, &[]));
        let g2 = desc("x^3-3x^2-x-1");
        assert!(!is_admissible(&g2, &[3, 2]));
        assert!(is_admissible(&g2, &[3, 1, 0, 3]));
    }

    #[test]
    fn code_word_examples() {
        let two = desc("x-2");
        assert_eq!(code_words(&two, 1), vec![DigitWord(vec![0]), DigitWord(vec![1])]);
        let g = desc("x^2-x-1");
        assert_eq!(code_words(&g, 2), vec![DigitWord(vec![0]), DigitWord(vec![1, 0])]);
        let g2 = desc("x^3-3x^2-x-1");
        let ws: Vec<String> = code_words(&g2, 2).iter().map(|w| w.compact()).collect();
        assert_eq!(ws, vec!["0", "1", "2", "30"]);
    }

    #[test]
    fn parse_examples() {
        let g = desc("x^2-x-1");
        let p = parse_code(&g, &[1, 0, 1, 0, 0]).unwrap();
        let ws: Vec<String> = p.words.iter().map(|w| w.compact()).collect();
        assert_eq!(ws, vec!["10", "10", "0"]);
        assert!(p.remainder.is_empty());
        let g2 = desc("x^3-3x^2-x-1");
        assert!(matches!(
            parse_code(&g2, &[3, 1, 3, 0]),
            Err(BetaError::NotAdmissible { .. })
        ));
        let p = parse_code(&g2, &[3, 1, 0, 3, 0]).unwrap();
        let ws: Vec<String> = p.words.iter().map(|w| w.compact()).collect();
        assert_eq!(ws, vec!["310", "30"]);
        let two = desc("x-2");
        assert_eq!(parse_code(&two, &[0, 1, 1, 0]).unwrap().words.len(), 4);
        let p = parse_code(&g, &[0, 1]).unwrap();
        assert_eq!(p.remainder.0, vec![1]);
    }

    #[test]
    fn from_digits_checks_expansion() {
        assert!(BetaShiftDescriptor::from_digits(&[3, 1, 1]).is_ok());
        assert!(matches!(
            BetaShiftDescriptor::from_digits(&[2, 4]),
            Err(BetaError::NotAnExpansion(_))
        ));
    }

    #[test]
    fn approximate_mode_is_inconclusive() {
        let b = Beta::approximate(std::f64::consts::PI);
        match expand_one(&b, 100) {
            Err(BetaError::ApproximateModeInconclusive { digits }) => {
                assert_eq!(&digits[..3], &[3, 0, 1]);
                assert!(digits.len() > 20 && digits.len() < 60);
            }
            other => panic!("{other:?}"),
        }
    }
}
