//! Exact arithmetic in the number field of a real algebraic number.
//!
//! An [`AlgebraicReal`] is a square-free integer polynomial together with an
//! isolating interval. Internally the interval has dyadic endpoints so that
//! sign evaluations and bisection stay in integer arithmetic. A
//! [`FieldElement`] is a rational polynomial in the generator reduced modulo
//! the defining polynomial; signs are decided by an exact zero test followed
//! by interval refinement, so no comparison ever depends on rounding.
//!
//! Values are immutable. Operations that need a tighter isolator produce a
//! refined copy of the base and attach it to the elements they return, so
//! precision accumulates along a computation (e.g. a beta-expansion orbit)
//! without shared mutable state.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{IntPolynomial, RatPoly};

/// Default isolator width target, in bits (width <= 2^-32).
pub const ISOLATOR_BITS: u64 = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraicError {
    #[error("malformed equation `{0}`: expected x^d - a_(d-1) x^(d-1) - ... - a_0 with a_(d-1), a_0 >= 1 and a_i >= 0, root > 1")]
    MalformedEquation(String),
    #[error("field elements live over different bases")]
    BaseMismatch,
    #[error("interval does not isolate exactly one root of {0}")]
    NoIsolatingInterval(String),
    #[error("division by zero in the number field")]
    DivisionByZero,
}

#[derive(Clone, Debug)]
enum Isolator {
    /// Linear defining polynomial: the value itself.
    Exact(BigRational),
    /// Open interval `(lo / 2^exp, hi / 2^exp)` containing exactly one root;
    /// `sign_lo` is the sign of the defining polynomial at the lower end.
    Dyadic {
        lo: BigInt,
        hi: BigInt,
        exp: u64,
        sign_lo: i8,
    },
}

/// A real root of a square-free integer polynomial, pinned by an isolator.
#[derive(Clone, Debug)]
pub struct AlgebraicReal {
    defining: IntPolynomial,
    isolator: Isolator,
    /// Whether `defining` is known to be irreducible over Q.
    irreducible: bool,
}

impl AlgebraicReal {
    pub fn rational(q: BigRational) -> Self {
        let defining = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]).primitive();
        AlgebraicReal {
            defining,
            isolator: Isolator::Exact(q),
            irreducible: true,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The root of `p` lying in `[lo, hi]`, which must contain exactly one
    /// real root. The defining polynomial is reduced to the smallest factor
    /// of `p` that we can certify still vanishes at the root.
    pub fn from_root(
        p: &IntPolynomial,
        lo: &BigRational,
        hi: &BigRational,
    ) -> Result<Self, AlgebraicError> {
        let no_iso = || AlgebraicError::NoIsolatingInterval(p.to_string());
        if p.degree().unwrap_or(0) < 1 || lo > hi {
            return Err(no_iso());
        }
        let sf = p.square_free();
        let rational_roots = sf.rational_roots();
        let inside: Vec<&BigRational> = rational_roots
            .iter()
            .filter(|r| *r >= lo && *r <= hi)
            .collect();
        let mut q = sf.to_rat();
        for r in &rational_roots {
            q = q.div_exact(&RatPoly::new(vec![-r.clone(), BigRational::one()]));
        }
        let q = q.to_int_primitive();
        let irr_count = if q.degree().unwrap_or(0) >= 1 {
            q.to_rat().count_roots(lo, hi)
        } else {
            0
        };
        match (inside.len(), irr_count) {
            (1, 0) => return Ok(Self::rational(inside[0].clone())),
            (0, 1) => {}
            _ => return Err(no_iso()),
        }
        // Enlarge to a dyadic interval that still isolates the root.
        let qr = q.to_rat();
        let mut k = 0u64;
        let (dlo, dhi) = loop {
            let scale = BigRational::from_integer(BigInt::one() << k as usize);
            let l = (lo * &scale).floor().to_integer();
            let h = (hi * &scale).ceil().to_integer();
            let lr = BigRational::new(l.clone(), BigInt::one() << k as usize);
            let hr = BigRational::new(h.clone(), BigInt::one() << k as usize);
            if qr.count_roots(&lr, &hr) == 1 && l != h {
                break (l, h);
            }
            k += 4;
        };
        let sign_lo = q.sign_at_dyadic(&dlo, k);
        let sign_hi = q.sign_at_dyadic(&dhi, k);
        debug_assert!(sign_lo != 0 && sign_hi != 0 && sign_lo != sign_hi);
        let mut out = AlgebraicReal {
            defining: q,
            isolator: Isolator::Dyadic {
                lo: dlo,
                hi: dhi,
                exp: k,
                sign_lo,
            },
            irreducible: false,
        };
        out = out.refined(ISOLATOR_BITS);
        out.reduce_to_minimal_factor();
        Ok(out)
    }

    /// The unique positive root of `x^d = a_{d-1}x^{d-1} + ... + a_0` with
    /// `a_{d-1}, a_0 >= 1` and `a_i >= 0`. Other shapes are rejected.
    pub fn unique_positive_root(p: &IntPolynomial) -> Result<Self, AlgebraicError> {
        let digits = p
            .digit_equation()
            .ok_or_else(|| AlgebraicError::MalformedEquation(p.to_string()))?;
        if digits.len() == 1 {
            if digits[0] < 2 {
                return Err(AlgebraicError::MalformedEquation(p.to_string()));
            }
            return Ok(Self::integer(digits[0] as i64));
        }
        let max = digits.iter().copied().max().unwrap_or(1);
        let lo = BigRational::one();
        let hi = BigRational::from_integer(BigInt::from(max) + 1);
        Self::from_root(p, &lo, &hi)
    }

    pub fn defining(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn degree(&self) -> usize {
        self.defining.degree().unwrap_or(1)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.isolator, Isolator::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.isolator {
            Isolator::Exact(q) => Some(q),
            Isolator::Dyadic { .. } => None,
        }
    }

    pub fn is_known_irreducible(&self) -> bool {
        self.irreducible
    }

    /// Closed isolating interval as rationals.
    pub fn isolator(&self) -> (BigRational, BigRational) {
        match &self.isolator {
            Isolator::Exact(q) => (q.clone(), q.clone()),
            Isolator::Dyadic { lo, hi, exp, .. } => {
                let den = BigInt::one() << *exp as usize;
                (
                    BigRational::new(lo.clone(), den.clone()),
                    BigRational::new(hi.clone(), den),
                )
            }
        }
    }

    /// Binary precision of the isolator (`u64::MAX` when exact).
    pub fn precision_bits(&self) -> u64 {
        match &self.isolator {
            Isolator::Exact(_) => u64::MAX,
            Isolator::Dyadic { lo, hi, exp, .. } => {
                let w = hi - lo;
                exp.saturating_sub(w.bits().saturating_sub(1))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.isolator();
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// A copy whose isolator has width at most `2^-bits`.
    pub fn refined(&self, bits: u64) -> AlgebraicReal {
        let Isolator::Dyadic {
            lo,
            hi,
            exp,
            sign_lo,
        } = &self.isolator
        else {
            return self.clone();
        };
        let (mut lo, mut hi, mut exp) = (lo.clone(), hi.clone(), *exp);
        let sign_lo = *sign_lo;
        loop {
            let width = &hi - &lo;
            // width / 2^exp <= 2^-bits  <=>  width <= 2^(exp - bits)
            if exp >= bits && width.bits() <= exp - bits + 1 && width <= (BigInt::one() << (exp - bits) as usize) {
                break;
            }
            let mid = &lo + &hi;
            lo <<= 1;
            hi <<= 1;
            exp += 1;
            let s = self.defining.sign_at_dyadic(&mid, exp);
            if s == 0 {
                // cannot happen: the defining polynomial has no rational roots
                unreachable!("dyadic root of a polynomial without rational roots");
            }
            if s == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        AlgebraicReal {
            defining: self.defining.clone(),
            isolator: Isolator::Dyadic {
                lo,
                hi,
                exp,
                sign_lo,
            },
            irreducible: self.irreducible,
        }
    }

    /// Same root (same defining polynomial, overlapping isolators).
    pub fn same_number(&self, other: &AlgebraicReal) -> bool {
        if self.defining != other.defining {
            return false;
        }
        let (a0, a1) = self.isolator();
        let (b0, b1) = other.isolator();
        a0 <= b1 && b0 <= a1
    }

    fn reduce_to_minimal_factor(&mut self) {
        let Some(d) = self.defining.degree() else {
            return;
        };
        if d <= 3 {
            // no rational roots and degree <= 3 implies irreducible
            self.irreducible = true;
            return;
        }
        if let Some((f, proven)) = self.search_factor() {
            self.defining = f;
            self.irreducible = proven;
        }
    }

    /// Search for the smallest integer factor of the defining polynomial that
    /// vanishes at this root: numeric roots propose candidates, exact division
    /// and a sign change on the isolator confirm them.
    fn search_factor(&self) -> Option<(IntPolynomial, bool)> {
        let p = &self.defining;
        let d = p.degree()?;
        if d > 20 {
            return None;
        }
        let roots = p.roots_numeric();
        let approx = self.to_f64();
        let me = roots
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let da = (a.1 - approx).norm();
                let db = (b.1 - approx).norm();
                da.partial_cmp(&db).unwrap_or(Ordering::Equal)
            })?
            .0;
        let others: Vec<_> = (0..roots.len()).filter(|&i| i != me).collect();
        let lead = p.leading()?.abs().to_u64()?;
        let lead_divs: Vec<u64> = (1..=lead.min(1 << 16)).filter(|k| lead % k == 0).collect();
        let (lo, hi) = self.isolator();
        for k in 1..d {
            // subsets of `others` of size k-1, plus this root
            let mut found = None;
            for_each_subset(others.len(), k - 1, &mut |subset| {
                if found.is_some() {
                    return;
                }
                let mut poly = vec![num_complex::Complex64::new(1.0, 0.0)];
                let mut chosen = vec![roots[me]];
                chosen.extend(subset.iter().map(|&i| roots[others[i]]));
                for z in chosen {
                    let mut next = vec![num_complex::Complex64::new(0.0, 0.0); poly.len() + 1];
                    for (i, c) in poly.iter().enumerate() {
                        next[i + 1] += c;
                        next[i] -= c * z;
                    }
                    poly = next;
                }
                for &l in &lead_divs {
                    let mut coeffs = Vec::with_capacity(poly.len());
                    let mut ok = true;
                    for c in &poly {
                        let v = c * l as f64;
                        let r = v.re.round();
                        if v.im.abs() > 1e-6 || (v.re - r).abs() > 1e-6 * (1.0 + r.abs()) {
                            ok = false;
                            break;
                        }
                        coeffs.push(BigInt::from(r as i64));
                    }
                    if !ok {
                        continue;
                    }
                    let f = IntPolynomial::new(coeffs).primitive();
                    if f.degree() != Some(k) {
                        continue;
                    }
                    let (_, rem) = p.to_rat().div_rem(&f.to_rat());
                    if rem.is_zero() && f.to_rat().count_roots(&lo, &hi) == 1 {
                        found = Some(f);
                        return;
                    }
                }
            });
            if let Some(f) = found {
                return Some((f, k <= 3));
            }
        }
        // no proper factor: irreducible as far as the numerics can tell
        Some((p.clone(), false))
    }
}

fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), f);
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.isolator {
            Isolator::Exact(q) => write!(f, "{q}"),
            Isolator::Dyadic { .. } => {
                write!(f, "root of {} near {:.12}", self.defining, self.to_f64())
            }
        }
    }
}

/// An element of `Q(beta)`, stored as a polynomial in `beta` of degree less
/// than the defining polynomial.
#[derive(Clone)]
pub struct FieldElement {
    base: Arc<AlgebraicReal>,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:?} ~ {:.6})", self.poly_string(), self.to_f64())
    }
}

impl PartialEq for FieldElement {
    /// Representation equality (exact for irreducible bases).
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.base.same_number(&other.base)
    }
}

impl FieldElement {
    pub fn from_coeffs(base: &Arc<AlgebraicReal>, coeffs: Vec<BigRational>) -> Self {
        let rp = RatPoly::new(coeffs).rem(&base.defining.to_rat());
        FieldElement {
            base: base.clone(),
            coeffs: rp.c,
        }
    }

    pub fn from_rational(base: &Arc<AlgebraicReal>, q: BigRational) -> Self {
        Self::from_coeffs(base, vec![q])
    }

    pub fn from_integer(base: &Arc<AlgebraicReal>, n: i64) -> Self {
        Self::from_rational(base, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(base: &Arc<AlgebraicReal>) -> Self {
        FieldElement {
            base: base.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(base: &Arc<AlgebraicReal>) -> Self {
        Self::from_integer(base, 1)
    }

    /// The generator `beta` itself.
    pub fn generator(base: &Arc<AlgebraicReal>) -> Self {
        match base.as_rational() {
            Some(q) => Self::from_rational(base, q.clone()),
            None => Self::from_coeffs(base, vec![BigRational::zero(), BigRational::one()]),
        }
    }

    pub fn base(&self) -> &Arc<AlgebraicReal> {
        &self.base
    }

    /// Coefficients in the power basis, lowest first, trimmed.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn poly_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*b"),
                _ => format!("{c}*b^{i}"),
            })
            .collect();
        parts.join(" + ")
    }

    fn pick_base(&self, other: &FieldElement) -> Result<Arc<AlgebraicReal>, AlgebraicError> {
        if Arc::ptr_eq(&self.base, &other.base) {
            return Ok(self.base.clone());
        }
        if !self.base.same_number(&other.base) {
            return Err(AlgebraicError::BaseMismatch);
        }
        Ok(if self.base.precision_bits() >= other.base.precision_bits() {
            self.base.clone()
        } else {
            other.base.clone()
        })
    }

    fn rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, AlgebraicError> {
        let base = self.pick_base(other)?;
        Ok(FieldElement {
            base,
            coeffs: self.rat().add(&other.rat()).c,
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, AlgebraicError> {
        let base = self.pick_base(other)?;
        Ok(FieldElement {
            base,
            coeffs: self.rat().sub(&other.rat()).c,
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            base: self.base.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, AlgebraicError> {
        let base = self.pick_base(other)?;
        let prod = self.rat().mul(&other.rat()).rem(&base.defining.to_rat());
        Ok(FieldElement { base, coeffs: prod.c })
    }

    pub fn scale(&self, k: &BigRational) -> FieldElement {
        FieldElement {
            base: self.base.clone(),
            coeffs: RatPoly::new(self.coeffs.iter().map(|c| c * k).collect()).c,
        }
    }

    pub fn add_integer(&self, k: &BigInt) -> FieldElement {
        let mut c = self.coeffs.clone();
        if c.is_empty() {
            c.push(BigRational::zero());
        }
        c[0] += BigRational::from_integer(k.clone());
        FieldElement {
            base: self.base.clone(),
            coeffs: RatPoly::new(c).c,
        }
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut acc = FieldElement::one(&self.base);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).expect("same base");
            }
            b = b.mul(&b).expect("same base");
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<FieldElement, AlgebraicError> {
        if self.is_zero() {
            return Err(AlgebraicError::DivisionByZero);
        }
        let m = self.base.defining.to_rat();
        let a = self.rat();
        let (g, s) = a.ext_gcd(&m);
        if g.degree() == Some(0) {
            return Ok(FieldElement::from_coeffs(&self.base, s.c));
        }
        // The defining polynomial splits as g * h with the root on h.
        let h = m.div_exact(&g);
        let (g2, s2) = a.ext_gcd(&h);
        debug_assert_eq!(g2.degree(), Some(0));
        Ok(FieldElement::from_coeffs(&self.base, s2.c))
    }

    /// Evaluate an integer polynomial at this element.
    pub fn eval_poly(&self, p: &IntPolynomial) -> FieldElement {
        let mut acc = FieldElement::zero(&self.base);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same base").add_integer(c);
        }
        acc
    }

    /// Exact test for the value zero.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.is_empty() {
            return true;
        }
        if self.base.irreducible || self.coeffs.len() == 1 {
            return false;
        }
        // Reducible (or unproven) base: the value vanishes iff the root is a
        // root of gcd(element, defining).
        let g = self.rat().gcd(&self.base.defining.to_rat());
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let (lo, hi) = self.base.isolator();
        g.count_roots(&lo, &hi) == 1
    }

    /// Interval enclosure `[a, b] / scale` of the value at the base's current
    /// precision, in integers.
    fn enclose(&self, base: &AlgebraicReal) -> (BigInt, BigInt, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        match &base.isolator {
            Isolator::Exact(q) => {
                let v = RatPoly::new(self.coeffs.clone()).eval(q);
                let n = v.numer().clone();
                (n.clone(), n, v.denom().clone())
            }
            Isolator::Dyadic { lo, hi, exp, .. } => {
                let Some(d) = nums.len().checked_sub(1) else {
                    return (BigInt::zero(), BigInt::zero(), BigInt::one());
                };
                let mut a = nums[d].clone();
                let mut b = nums[d].clone();
                for i in (0..d).rev() {
                    let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
                    let mn = prods.iter().min().cloned().unwrap_or_default();
                    let mx = prods.iter().max().cloned().unwrap_or_default();
                    let add = &nums[i] << (*exp as usize * (d - i));
                    a = mn + &add;
                    b = mx + add;
                }
                let scale = den << (*exp as usize * d);
                (a, b, scale)
            }
        }
    }

    fn coeff_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().bits() + c.denom().bits())
            .max()
            .unwrap_or(0)
    }

    /// Run `decide` on successively tighter enclosures until it answers.
    /// Returns the answer and the base refinement used.
    fn decide<T>(
        &self,
        mut decide: impl FnMut(&BigInt, &BigInt, &BigInt) -> Option<T>,
    ) -> (T, Arc<AlgebraicReal>) {
        let mut base = self.base.clone();
        let mut bump = 32u64;
        loop {
            let (a, b, s) = self.enclose(&base);
            if let Some(t) = decide(&a, &b, &s) {
                return (t, base);
            }
            let cur = base.precision_bits();
            let target = cur.max(self.coeff_bits() + 16).saturating_add(bump);
            base = Arc::new(base.refined(target));
            bump = bump.saturating_mul(2);
        }
    }

    /// Sign of the value, exactly.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        self.decide(|a, b, _| {
            if a.is_positive() {
                Some(Ordering::Greater)
            } else if b.is_negative() {
                Some(Ordering::Less)
            } else {
                None
            }
        })
        .0
    }

    /// Exact comparison of two elements of the same field.
    pub fn compare(&self, other: &FieldElement) -> Result<Ordering, AlgebraicError> {
        Ok(self.sub(other)?.signum())
    }

    /// `(floor(a), a - floor(a))`, both exact. The returned fractional part
    /// carries whatever base refinement was needed to decide the floor.
    pub fn floor_and_frac(&self) -> (BigInt, FieldElement) {
        let mut integral: Option<BigInt> = None;
        let (k, base) = self.decide(|a, b, s| {
            let fa = a.div_floor(s);
            let fb = b.div_floor(s);
            if fa == fb {
                return Some(fa);
            }
            // the enclosure straddles one integer: the value may equal it
            if &fa + 1 == fb && integral.as_ref() != Some(&fb) {
                integral = Some(fb.clone());
                if self.add_integer(&-&fb).is_zero() {
                    return Some(fb);
                }
            }
            None
        });
        let mut frac = self.add_integer(&-&k);
        frac.base = base;
        (k, frac)
    }

    /// Same value, rebased on a (typically more refined) copy of its base.
    pub fn with_base(&self, base: &Arc<AlgebraicReal>) -> Result<FieldElement, AlgebraicError> {
        if !self.base.same_number(base) {
            return Err(AlgebraicError::BaseMismatch);
        }
        Ok(FieldElement {
            base: base.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b, s) = self.enclose(&self.base);
        let mid = BigRational::new(a + b, s * BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Minimal polynomial over Q (primitive, positive leading coefficient),
    /// from the first linear dependency among the powers of the element.
    /// Minimal whenever the base's defining polynomial is irreducible.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        let n = self.base.degree();
        let mut powers: Vec<Vec<BigRational>> = Vec::new();
        let mut cur = FieldElement::one(&self.base);
        for k in 0..=n {
            let mut v = cur.coeffs.clone();
            v.resize(n, BigRational::zero());
            powers.push(v);
            if let Some(rel) = dependency(&powers) {
                return RatPoly::new(rel).to_int_primitive();
            }
            if k < n {
                cur = cur.mul(self).expect("same base");
            }
        }
        unreachable!("n+1 vectors in dimension n are dependent")
    }

    /// This element as a standalone algebraic real.
    pub fn to_algebraic_real(&self) -> Result<AlgebraicReal, AlgebraicError> {
        let m = self.minimal_polynomial();
        if m.degree() == Some(1) {
            let q = BigRational::new(-m.coeff(0), m.coeff(1));
            return Ok(AlgebraicReal::rational(q));
        }
        let mr = m.to_rat();
        let mut base = self.base.clone();
        loop {
            let (a, b, s) = self.enclose(&base);
            let lo = BigRational::new(a, s.clone());
            let hi = BigRational::new(b, s);
            if lo < hi && mr.count_roots(&lo, &hi) == 1 && !mr.eval(&lo).is_zero() {
                return AlgebraicReal::from_root(&m, &lo, &hi);
            }
            let target = base.precision_bits().saturating_add(32);
            base = Arc::new(base.refined(target));
        }
    }
}

/// If the last vector is a combination of the earlier (independent) ones,
/// return the relation coefficients with the last coefficient 1.
fn dependency(vectors: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let k = vectors.len();
    let n = vectors[0].len();
    // Solve sum_{j<k-1} c_j v_j = -v_{k-1} by elimination on the n x (k-1) system.
    let cols = k - 1;
    let mut rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = (0..cols).map(|j| vectors[j][i].clone()).collect();
            r.push(-vectors[k - 1][i].clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].recip();
        for v in rows[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..=cols {
                    let t = &f * &rows[row][c];
                    rows[r][c] -= t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    // consistent iff no row reads 0 = nonzero
    if rows[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); cols];
    for (r, &c) in pivot_cols.iter().enumerate() {
        sol[c] = rows[r][cols].clone();
    }
    sol.push(BigRational::one());
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Arc<AlgebraicReal> {
        Arc::new(AlgebraicReal::unique_positive_root(&"x^2-x-1".parse().unwrap()).unwrap())
    }

    fn gamma() -> Arc<AlgebraicReal> {
        Arc::new(AlgebraicReal::unique_positive_root(&"x^3-x^2-x-1".parse().unwrap()).unwrap())
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn golden_isolated() {
        let b = golden();
        let (lo, hi) = b.isolator();
        assert!(lo >= r(161, 100) && hi <= r(162, 100));
        assert!(hi - lo <= BigRational::new(BigInt::one(), BigInt::one() << 32));
        // residue of the defining polynomial at beta is zero
        let beta = FieldElement::generator(&b);
        assert!(beta.eval_poly(&"x^2-x-1".parse().unwrap()).is_zero());
    }

    #[test]
    fn gamma_isolated() {
        let g = gamma();
        let (lo, hi) = g.isolator();
        assert!(lo >= r(183, 100) && hi <= r(184, 100));
        assert!(g.is_known_irreducible());
    }

    #[test]
    fn integer_fast_path() {
        let b = AlgebraicReal::unique_positive_root(&"x-2".parse().unwrap()).unwrap();
        assert_eq!(b.as_rational(), Some(&r(2, 1)));
    }

    #[test]
    fn rejects_bad_shapes() {
        for s in ["x^2+x-1", "x^2-x", "2x^2-x-1", "x-1", "x^2-x+1", "7"] {
            let p: IntPolynomial = s.parse().unwrap();
            assert!(
                matches!(
                    AlgebraicReal::unique_positive_root(&p),
                    Err(AlgebraicError::MalformedEquation(_))
                ),
                "{s}"
            );
        }
    }

    #[test]
    fn reducible_shape_finds_rational_root() {
        // x^2 - x - 2 = (x - 2)(x + 1)
        let b = AlgebraicReal::unique_positive_root(&"x^2-x-2".parse().unwrap()).unwrap();
        assert_eq!(b.as_rational(), Some(&r(2, 1)));
    }

    #[test]
    fn reducible_shape_finds_minimal_factor() {
        // x^5 - x^4 - 1 = (x^2 - x + 1)(x^3 - x - 1), root is the plastic number
        let b = AlgebraicReal::unique_positive_root(&"x^5-x^4-1".parse().unwrap()).unwrap();
        assert_eq!(b.defining(), &"x^3-x-1".parse::<IntPolynomial>().unwrap());
        assert!(b.is_known_irreducible());
        assert!((b.to_f64() - 1.324717957244746).abs() < 1e-9);
    }

    #[test]
    fn field_mul_examples() {
        let b = golden();
        let beta = FieldElement::generator(&b);
        let sq = beta.mul(&beta).unwrap();
        assert_eq!(sq.coeffs(), &[r(1, 1), r(1, 1)]); // beta + 1
        let one = FieldElement::one(&b);
        assert_eq!(beta.mul(&one).unwrap(), beta);

        let g = gamma();
        let gm = FieldElement::generator(&g);
        let g2 = gm.mul(&gm).unwrap();
        assert_eq!(g2.coeffs(), &[r(0, 1), r(0, 1), r(1, 1)]);
        assert_eq!(
            g2.minimal_polynomial(),
            "x^3-3x^2-x-1".parse::<IntPolynomial>().unwrap()
        );
    }

    #[test]
    fn base_mismatch_detected() {
        let a = FieldElement::generator(&golden());
        let b = FieldElement::generator(&gamma());
        assert_eq!(a.mul(&b).unwrap_err(), AlgebraicError::BaseMismatch);
        assert_eq!(a.compare(&b).unwrap_err(), AlgebraicError::BaseMismatch);
    }

    #[test]
    fn floor_and_frac_examples() {
        let b = golden();
        let beta = FieldElement::generator(&b);
        let (k, f) = beta.floor_and_frac();
        assert_eq!(k, BigInt::from(1));
        assert_eq!(f.coeffs(), &[r(-1, 1), r(1, 1)]);

        let one = FieldElement::one(&b);
        let (k, f) = one.floor_and_frac();
        assert_eq!(k, BigInt::from(1));
        assert!(f.is_zero());

        let bm1 = beta.sub(&one).unwrap();
        let prod = beta.mul(&bm1).unwrap();
        let (k, f) = prod.floor_and_frac();
        assert_eq!(k, BigInt::from(1));
        assert!(f.is_zero());
    }

    #[test]
    fn compare_examples() {
        let b = golden();
        let beta = FieldElement::generator(&b);
        let one = FieldElement::one(&b);
        assert_eq!(beta.compare(&one).unwrap(), Ordering::Greater);
        let rel = beta.mul(&beta).unwrap().sub(&beta).unwrap().sub(&one).unwrap();
        assert_eq!(rel.compare(&FieldElement::zero(&b)).unwrap(), Ordering::Equal);
        let lhs = beta.sub(&one).unwrap();
        let rhs = beta.inv().unwrap();
        assert_eq!(lhs.compare(&rhs).unwrap(), Ordering::Equal);
    }

    #[test]
    fn gamma_squared_as_algebraic_real() {
        let g = gamma();
        let gm = FieldElement::generator(&g);
        let sq = gm.mul(&gm).unwrap().to_algebraic_real().unwrap();
        assert_eq!(sq.defining(), &"x^3-3x^2-x-1".parse::<IntPolynomial>().unwrap());
        assert!((sq.to_f64() - 3.382975767906237).abs() < 1e-9);
    }

    #[test]
    fn refinement_keeps_root() {
        let g = gamma();
        let fine = g.refined(200);
        assert!(fine.precision_bits() >= 200);
        assert!(fine.same_number(&g));
        let (lo, hi) = fine.isolator();
        let p = g.defining().to_rat();
        assert_eq!(p.count_roots(&lo, &hi), 1);
    }

    #[test]
    fn inverse_in_reducible_ring() {
        // force a non-irreducible-flagged base: x^2-2 times x^2-3 around sqrt(2)
        let p: IntPolynomial = "x^4-5x^2+6".parse().unwrap();
        let a = Arc::new(AlgebraicReal::from_root(&p, &r(14, 10), &r(15, 10)).unwrap());
        let x = FieldElement::generator(&a);
        let x2 = x.mul(&x).unwrap();
        let two = FieldElement::from_integer(&a, 2);
        assert!(x2.sub(&two).unwrap().is_zero());
        let inv = x.inv().unwrap();
        assert!(inv.mul(&x).unwrap().sub(&FieldElement::one(&a)).unwrap().is_zero());
    }
}
