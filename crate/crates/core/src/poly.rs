//! Univariate integer polynomials, plus the rational-coefficient helpers the
//! algebraic layer needs (Euclidean remainder, gcd, Sturm sequences).
//!
//! Coefficients are stored lowest degree first. Two textual grammars are
//! accepted by [`IntPolynomial::from_str`]: a comma-separated coefficient list
//! written highest degree first (`"1,-1,-1"`) and the usual infix form
//! (`"x^2-x-1"`).

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial expression")]
    Empty,
    #[error("cannot parse polynomial term `{0}`")]
    BadTerm(String),
    #[error("cannot parse coefficient `{0}`")]
    BadCoefficient(String),
}

/// Dense integer polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Build from machine integers, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Build from machine integers, highest degree first.
    pub fn from_descending(coeffs: &[i64]) -> Self {
        let mut v: Vec<i64> = coeffs.to_vec();
        v.reverse();
        Self::from_i64s(&v)
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `x^d - a_{d-1} x^{d-1} - ... - a_0` for the digit word `a_{d-1} ... a_0`.
    pub fn from_digit_equation(digits: &[u64]) -> Self {
        let d = digits.len();
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        for (pos, &a) in digits.iter().enumerate() {
            coeffs[d - 1 - pos] = -BigInt::from(a);
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Coefficients reversed: `t^deg p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Drops factors of `x` from the bottom.
    pub fn strip_low_zeros(&self) -> Self {
        let first = self.coeffs.iter().position(|c| !c.is_zero());
        match first {
            Some(k) => Self::new(self.coeffs[k..].to_vec()),
            None => Self::zero(),
        }
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(num / 2^exp)`, computed in integers.
    pub(crate) fn sign_at_dyadic(&self, num: &BigInt, exp: u64) -> i8 {
        // 2^(exp*deg) p(num/2^exp) = sum c_i num^i 2^(exp (deg - i)), by a
        // homogeneous Horner scheme.
        let Some(deg) = self.degree() else {
            return 0;
        };
        let mut acc = self.coeffs[deg].clone();
        for i in (0..deg).rev() {
            let shift = exp as usize * (deg - i);
            acc = acc * num + (&self.coeffs[i] << shift);
        }
        sign_of(&acc)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// If `self` has the shape `x^d - a_{d-1}x^{d-1} - ... - a_0` with
    /// `a_{d-1}, a_0 >= 1` and all `a_i >= 0`, return `a_{d-1} ... a_0`.
    pub fn digit_equation(&self) -> Option<Vec<u64>> {
        let d = self.degree()?;
        if d == 0 || !self.coeffs[d].is_one() {
            return None;
        }
        let mut digits = Vec::with_capacity(d);
        for i in (0..d).rev() {
            let a = -self.coeffs[i].clone();
            if a.is_negative() {
                return None;
            }
            digits.push(a.to_u64()?);
        }
        if digits[0] == 0 || digits[d - 1] == 0 {
            return None;
        }
        Some(digits)
    }

    /// Numerical complex roots (with multiplicity) from the eigenvalues of the
    /// companion matrix, polished by a few Newton steps where the derivative
    /// is not vanishing.
    pub fn roots_numeric(&self) -> Vec<Complex64> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        if d == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[d].to_f64().unwrap_or(f64::NAN);
        let mut m = DMatrix::<f64>::zeros(d, d);
        for i in 0..d {
            m[(0, i)] = -self.coeffs[d - 1 - i].to_f64().unwrap_or(f64::NAN) / lead;
        }
        for i in 1..d {
            m[(i, i - 1)] = 1.0;
        }
        let eig = m.complex_eigenvalues();
        let deriv = self.derivative();
        eig.iter()
            .map(|&z0| {
                let mut z = z0;
                for _ in 0..8 {
                    let fz = self.eval_complex(z);
                    let dz = deriv.eval_complex(z);
                    if dz.norm() < 1e-8 * (1.0 + fz.norm()) {
                        break;
                    }
                    let step = fz / dz;
                    if !step.re.is_finite() || !step.im.is_finite() {
                        break;
                    }
                    let cand = z - step;
                    if self.eval_complex(cand).norm() > fz.norm() {
                        break;
                    }
                    z = cand;
                    if step.norm() < 1e-15 * (1.0 + z.norm()) {
                        break;
                    }
                }
                z
            })
            .collect()
    }

    /// Rational roots via the rational root theorem (exact).
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let p = self.strip_low_zeros();
        let mut out = Vec::new();
        if p.degree().unwrap_or(0) < self.degree().unwrap_or(0) {
            out.push(BigRational::zero());
        }
        let Some(d) = p.degree() else {
            return out;
        };
        if d == 0 {
            return out;
        }
        let lead = p.coeffs[d].abs();
        let constant = p.coeffs[0].abs();
        let (Some(dl), Some(dc)) = (small_divisors(&lead), small_divisors(&constant)) else {
            return out;
        };
        for q in &dl {
            for r in &dc {
                for sgn in [1i64, -1] {
                    let cand = BigRational::new(r * BigInt::from(sgn), q.clone());
                    if p.eval_rational(&cand).is_zero() && !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Square-free part `p / gcd(p, p')`, made primitive.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) < 1 {
            return self.primitive();
        }
        let p = self.to_rat();
        let g = p.gcd(&self.derivative().to_rat());
        p.div_exact(&g).to_int_primitive()
    }

    /// Render with the given variable, highest degree first.
    pub fn fmt_descending(&self, var: &str) -> String {
        let terms: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        render_terms(&terms, var)
    }

    /// Render with the given variable, lowest degree first.
    pub fn fmt_ascending(&self, var: &str) -> String {
        let terms: Vec<(usize, &BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        render_terms(&terms, var)
    }
}

fn render_terms(terms: &[(usize, &BigInt)], var: &str) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (n, (deg, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if n == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match *deg {
            0 => String::new(),
            1 => var.to_string(),
            k => format!("{var}^{k}"),
        };
        if mono.is_empty() {
            s.push_str(&mag.to_string());
        } else if mag.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{mag}{mono}"));
        }
    }
    s
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 {
        return Some(vec![BigInt::one()]);
    }
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_descending("x"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({})", self)
    }
}

/// Serialized as a list of coefficients, lowest degree first; values outside
/// the `i64` range become decimal strings.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl FromStr for IntPolynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PolyParseError::Empty);
        }
        if !s.contains('x') {
            let mut coeffs = Vec::new();
            for part in s.split(',') {
                let v: BigInt = part
                    .parse()
                    .map_err(|_| PolyParseError::BadCoefficient(part.to_string()))?;
                coeffs.push(v);
            }
            coeffs.reverse();
            return Ok(Self::new(coeffs));
        }
        // split into signed terms
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(PolyParseError::BadTerm(term.clone()));
            }
            let (coef, deg) = match body.find('x') {
                None => (
                    body.parse::<BigInt>()
                        .map_err(|_| PolyParseError::BadTerm(term.clone()))?,
                    0usize,
                ),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let coef = if c.is_empty() {
                        BigInt::one()
                    } else {
                        c.parse::<BigInt>()
                            .map_err(|_| PolyParseError::BadTerm(term.clone()))?
                    };
                    let rest = &body[pos + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else if let Some(e) = rest.strip_prefix('^') {
                        e.parse::<usize>()
                            .map_err(|_| PolyParseError::BadTerm(term.clone()))?
                    } else {
                        return Err(PolyParseError::BadTerm(term.clone()));
                    };
                    (coef, deg)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += coef * BigInt::from(sign);
        }
        Ok(Self::new(coeffs))
    }
}

/// Polynomial with rational coefficients, lowest degree first, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    pub(crate) c: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, v) in self.c.iter().enumerate() {
            out[i] += v;
        }
        for (i, v) in other.c.iter().enumerate() {
            out[i] -= v;
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, v) in self.c.iter().enumerate() {
            out[i] += v;
        }
        for (i, v) in other.c.iter().enumerate() {
            out[i] += v;
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.c.iter().map(|v| v * k).collect())
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = &divisor.c[dd];
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::new(Vec::new()), Self::new(rem));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top / lead;
            for (j, dc) in divisor.c.iter().enumerate() {
                let t = &q * dc;
                rem[k + j] -= t;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub(crate) fn div_exact(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).0
    }

    pub fn monic(&self) -> Self {
        match self.c.last() {
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s)` with `g = gcd(self, m)` monic and `s * self = g (mod m)`.
    pub fn ext_gcd(&self, m: &Self) -> (Self, Self) {
        let mut r0 = m.clone();
        let mut r1 = self.rem(m);
        let mut s0 = Self::new(Vec::new());
        let mut s1 = Self::new(vec![BigRational::one()]);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        let lead = r0.c.last().cloned().unwrap_or_else(BigRational::one);
        let inv = lead.recip();
        (r0.scale(&inv), s0.scale(&inv).rem(m))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for v in self.c.iter().rev() {
            acc = acc * x + v;
        }
        acc
    }

    /// Clear denominators and divide out the content.
    pub fn to_int_primitive(&self) -> IntPolynomial {
        let lcm = self
            .c
            .iter()
            .fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        IntPolynomial::new(
            self.c
                .iter()
                .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive()
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-BigRational::one()));
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let seq = self.sturm_sequence();
        let var = |x: &BigRational| -> usize {
            let mut changes = 0;
            let mut prev = 0i8;
            for p in &seq {
                let v = p.eval(x);
                let s = if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                };
                if s != 0 {
                    if prev != 0 && s != prev {
                        changes += 1;
                    }
                    prev = s;
                }
            }
            changes
        };
        var(lo).saturating_sub(var(hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_both_grammars() {
        let a: IntPolynomial = "x^2-x-1".parse().unwrap();
        let b: IntPolynomial = "1,-1,-1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, IntPolynomial::from_i64s(&[-1, -1, 1]));
        let c: IntPolynomial = "x^3 - 3x^2 - x - 1".parse().unwrap();
        assert_eq!(c, IntPolynomial::from_descending(&[1, -3, -1, -1]));
        let d: IntPolynomial = "2*x^2+3".parse().unwrap();
        assert_eq!(d, IntPolynomial::from_i64s(&[3, 0, 2]));
        assert_eq!("x-2".parse::<IntPolynomial>().unwrap().to_string(), "x - 2");
        assert!("x^^2".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("1,a".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn renders_ascending_for_zeta() {
        let p = IntPolynomial::from_i64s(&[1, -3, -1, -1]);
        assert_eq!(p.fmt_ascending("t"), "1 - 3t - t^2 - t^3");
        assert_eq!(p.fmt_descending("x"), "-x^3 - x^2 - 3x + 1");
    }

    #[test]
    fn digit_equation_shape() {
        let p = IntPolynomial::from_digit_equation(&[3, 1, 1]);
        assert_eq!(p.to_string(), "x^3 - 3x^2 - x - 1");
        assert_eq!(p.digit_equation(), Some(vec![3, 1, 1]));
        assert_eq!(IntPolynomial::from_i64s(&[1, -1, 1]).digit_equation(), None);
        assert_eq!(IntPolynomial::from_i64s(&[0, -1, 1]).digit_equation(), None);
        assert_eq!(IntPolynomial::from_i64s(&[-2, 1]).digit_equation(), Some(vec![2]));
    }

    #[test]
    fn sturm_counts_golden_roots() {
        let p = IntPolynomial::from_i64s(&[-1, -1, 1]).to_rat();
        assert_eq!(p.count_roots(&rat(-10, 1), &rat(10, 1)), 2);
        assert_eq!(p.count_roots(&rat(161, 100), &rat(162, 100)), 1);
        assert_eq!(p.count_roots(&rat(0, 1), &rat(1, 1)), 0);
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2)
        let p = IntPolynomial::from_i64s(&[2, -3, 0, 1]);
        assert_eq!(p.square_free(), IntPolynomial::from_i64s(&[-2, 1, 1]));
        let a = IntPolynomial::from_i64s(&[-1, 0, 1]).to_rat();
        let b = IntPolynomial::from_i64s(&[-1, 1]).to_rat();
        assert_eq!(a.gcd(&b), b);
    }

    #[test]
    fn ext_gcd_gives_inverse() {
        let m = IntPolynomial::from_i64s(&[-1, -1, 1]).to_rat();
        let x = RatPoly::new(vec![rat(0, 1), rat(1, 1)]);
        let (g, s) = x.ext_gcd(&m);
        assert_eq!(g, RatPoly::new(vec![rat(1, 1)]));
        assert_eq!(s.mul(&x).rem(&m), RatPoly::new(vec![rat(1, 1)]));
    }

    #[test]
    fn rational_roots_found() {
        let p = IntPolynomial::from_i64s(&[-2, -1, 1]); // (x-2)(x+1)
        assert_eq!(p.rational_roots(), vec![rat(-1, 1), rat(2, 1)]);
        let q = IntPolynomial::from_i64s(&[-5, 2]);
        assert_eq!(q.rational_roots(), vec![rat(5, 2)]);
        assert!(IntPolynomial::from_i64s(&[-1, -1, 1]).rational_roots().is_empty());
    }

    #[test]
    fn numeric_roots_of_cubic() {
        let p = IntPolynomial::from_descending(&[1, -1, -1, -1]);
        let roots = p.roots_numeric();
        assert_eq!(roots.len(), 3);
        let real = roots.iter().find(|z| z.im.abs() < 1e-12).unwrap();
        assert!((real.re - 1.839286755214161).abs() < 1e-12);
        for z in &roots {
            assert!(p.eval_complex(*z).norm() < 1e-12);
        }
    }

    #[test]
    fn dyadic_sign() {
        let p = IntPolynomial::from_i64s(&[-1, -1, 1]);
        // 1.5 = 3/2 -> p = -0.25
        assert_eq!(p.sign_at_dyadic(&BigInt::from(3), 1), -1);
        // 1.625 = 13/8 -> p > 0
        assert_eq!(p.sign_at_dyadic(&BigInt::from(13), 3), 1);
    }
}
