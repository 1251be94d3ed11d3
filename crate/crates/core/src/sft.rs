//! Edge subshifts of finite type given by nonnegative integer matrices.
//!
//! Zeta functions are kept as the integer polynomial `det(I - tA)`, whose
//! reciprocal roots are the nonzero eigenvalues of `A` with multiplicity, so
//! comparing zeta functions is polynomial equality.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebraic::AlgebraicReal;
use crate::poly::IntPolynomial;
use crate::word::{cmp_zero_padded, DigitWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SftError {
    #[error("adjacency matrix must be square and nonempty")]
    NotSquare,
    #[error("`{0}` is not lexicographically greater than all its shifts")]
    NotLexMaximal(DigitWord),
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("cannot parse matrix: {0}")]
    Parse(String),
}

/// An edge shift: bi-infinite paths in the multigraph with adjacency `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSFT {
    adjacency: Vec<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    state_names: Option<Vec<String>>,
}

type BigMat = Vec<Vec<BigUint>>;

fn big_mul(a: &BigMat, b: &BigMat) -> BigMat {
    let n = a.len();
    let mut c = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

impl EdgeSFT {
    pub fn new(adjacency: Vec<Vec<u64>>) -> Result<Self, SftError> {
        let n = adjacency.len();
        if n == 0 || adjacency.iter().any(|r| r.len() != n) {
            return Err(SftError::NotSquare);
        }
        Ok(EdgeSFT {
            adjacency,
            state_names: None,
        })
    }

    pub fn with_state_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.size() {
            self.state_names = Some(names);
        }
        self
    }

    /// The one-state graph with `n` loops.
    pub fn full(n: u64) -> Self {
        EdgeSFT {
            adjacency: vec![vec![n]],
            state_names: None,
        }
    }

    /// Parse a JSON array of arrays, or a text grid with one row per line
    /// (entries separated by spaces or commas).
    pub fn parse(text: &str) -> Result<Self, SftError> {
        let t = text.trim();
        let rows: Vec<Vec<u64>> = if t.starts_with('[') {
            serde_json::from_str(t).map_err(|e| SftError::Parse(e.to_string()))?
        } else {
            t.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| {
                    l.split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse::<u64>().map_err(|_| SftError::Parse(format!("bad entry `{s}`"))))
                        .collect()
                })
                .collect::<Result<_, _>>()?
        };
        EdgeSFT::new(rows)
    }

    pub fn adjacency(&self) -> &[Vec<u64>] {
        &self.adjacency
    }

    pub fn state_names(&self) -> Option<&[String]> {
        self.state_names.as_deref()
    }

    pub fn size(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_zero(&self) -> bool {
        self.adjacency.iter().flatten().all(|&x| x == 0)
    }

    fn big(&self) -> BigMat {
        self.adjacency
            .iter()
            .map(|r| r.iter().map(|&x| BigUint::from(x)).collect())
            .collect()
    }

    /// `A^p`, exactly.
    pub fn power(&self, p: u32) -> Vec<Vec<BigUint>> {
        let n = self.size();
        let mut acc: BigMat = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect())
            .collect();
        let mut base = self.big();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = big_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = big_mul(&base, &base);
            }
        }
        acc
    }

    /// Number of points of period `p` (not necessarily least): `tr(A^p)`.
    pub fn periodic_count(&self, p: u32) -> BigUint {
        let m = self.power(p);
        (0..self.size()).map(|i| m[i][i].clone()).sum()
    }

    /// `tr(A^p)` for `p = 1..=max_p`.
    pub fn periodic_counts(&self, max_p: u32) -> Vec<BigUint> {
        let a = self.big();
        let mut cur = a.clone();
        let mut out = Vec::new();
        for p in 1..=max_p {
            out.push((0..self.size()).map(|i| cur[i][i].clone()).sum());
            if p < max_p {
                cur = big_mul(&cur, &a);
            }
        }
        out
    }

    /// Sum of row `state` of `A^len`: the number of paths of length `len`
    /// leaving `state`.
    pub fn paths_from(&self, state: usize, len: u32) -> BigUint {
        self.power(len)[state].iter().sum()
    }

    /// Boolean reachability closure: `reach[i][j]` iff a path of length >= 1
    /// leads from `i` to `j`.
    fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        let mut r: Vec<Vec<bool>> = self
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&x| x > 0).collect())
            .collect();
        for k in 0..n {
            for i in 0..n {
                if r[i][k] {
                    for j in 0..n {
                        if r[k][j] {
                            r[i][j] = true;
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_irreducible(&self) -> bool {
        self.reachability().iter().flatten().all(|&b| b)
    }

    /// Mixing test: some power of `A` is strictly positive. Checked up to the
    /// Wielandt bound `(n-1)^2 + 1`, beyond which no new exponent can succeed.
    pub fn is_mixing(&self) -> bool {
        let n = self.size();
        let pattern: Vec<Vec<bool>> = self
            .adjacency
            .iter()
            .map(|row| row.iter().map(|&x| x > 0).collect())
            .collect();
        let mut cur = pattern.clone();
        let bound = (n - 1) * (n - 1) + 1;
        for _ in 0..bound {
            if cur.iter().flatten().all(|&b| b) {
                return true;
            }
            let mut next = vec![vec![false; n]; n];
            for i in 0..n {
                for k in 0..n {
                    if cur[i][k] {
                        for j in 0..n {
                            if pattern[k][j] {
                                next[i][j] = true;
                            }
                        }
                    }
                }
            }
            cur = next;
        }
        cur.iter().flatten().all(|&b| b)
    }

    /// `det(I - tA)` by fraction-free elimination over `Z[t]`.
    pub fn zeta_denominator(&self) -> ZetaDenominator {
        ZetaDenominator {
            poly: det_i_minus_ta(&self.adjacency),
        }
    }

    /// Perron root by power iteration on `A + I` (which has the same Perron
    /// vector and is aperiodic), to relative tolerance `1e-10`.
    pub fn spectral_radius(&self) -> Result<f64, SftError> {
        if self.is_zero() {
            return Err(SftError::ZeroMatrix);
        }
        let n = self.size();
        let mut v = vec![1.0f64; n];
        let mut lambda = 0.0;
        for _ in 0..200_000 {
            let mut w = v.clone();
            for i in 0..n {
                for j in 0..n {
                    w[i] += self.adjacency[i][j] as f64 * v[j];
                }
            }
            let norm = w.iter().cloned().fold(0.0, f64::max);
            for x in w.iter_mut() {
                *x /= norm;
            }
            let done = (norm - lambda).abs() <= 1e-13 * norm;
            lambda = norm;
            v = w;
            if done {
                break;
            }
        }
        Ok(lambda - 1.0)
    }

    /// Topological entropy, `log` of the spectral radius.
    pub fn entropy(&self) -> Result<f64, SftError> {
        Ok(self.spectral_radius()?.ln())
    }

    /// Edge shift of the product: the Kronecker product of the matrices.
    /// State `(i, j)` has index `i * |Y| + j`.
    pub fn product(&self, other: &EdgeSFT) -> EdgeSFT {
        let (n, m) = (self.size(), other.size());
        let mut adj = vec![vec![0u64; n * m]; n * m];
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        adj[i * m + j][k * m + l] = self.adjacency[i][k] * other.adjacency[j][l];
                    }
                }
            }
        }
        EdgeSFT {
            adjacency: adj,
            state_names: None,
        }
    }
}

impl fmt::Display for EdgeSFT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .adjacency
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `det(I - tA)` as a polynomial in `t`; constant term 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaDenominator {
    pub poly: IntPolynomial,
}

impl ZetaDenominator {
    /// The reversed polynomial `t^n det(I - A/t)` restricted to the nonzero
    /// spectrum: its roots are the nonzero eigenvalues.
    pub fn reciprocal(&self) -> IntPolynomial {
        self.poly.reversed()
    }

    /// Nonzero eigenvalues, numerically.
    pub fn nonzero_spectrum(&self) -> Vec<num_complex::Complex64> {
        self.reciprocal().roots_numeric()
    }
}

impl fmt::Display for ZetaDenominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.fmt_ascending("t"))
    }
}

type ZPoly = Vec<BigInt>;

fn zp_trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    zp_trim(c)
}

fn zp_sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    zp_trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Exact quotient `a / b` for `b` with constant term 1, computed from the
/// low-degree end.
fn zp_div_exact(a: &ZPoly, b: &ZPoly) -> ZPoly {
    debug_assert!(b.first().is_some_and(|c| c.is_one()));
    if a.is_empty() {
        return Vec::new();
    }
    let qlen = a.len() + 1 - b.len();
    let mut q: ZPoly = Vec::with_capacity(qlen);
    for i in 0..qlen {
        let mut c = a[i].clone();
        for j in 1..b.len().min(i + 1) {
            c -= &b[j] * &q[i - j];
        }
        q.push(c);
    }
    let q = zp_trim(q);
    debug_assert_eq!(zp_mul(&q, b), zp_trim(a.clone()));
    q
}

/// Bareiss elimination on `I - tA`. Leading principal minors of `I - tA` all
/// have constant term 1, so no pivoting is needed and every division is exact.
fn det_i_minus_ta(a: &[Vec<u64>]) -> IntPolynomial {
    let n = a.len();
    let mut m: Vec<Vec<ZPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c0 = if i == j { BigInt::one() } else { BigInt::zero() };
                    zp_trim(vec![c0, -BigInt::from(a[i][j])])
                })
                .collect()
        })
        .collect();
    let mut prev: ZPoly = vec![BigInt::one()];
    for k in 0..n.saturating_sub(1) {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = zp_sub(&zp_mul(&m[k][k], &m[i][j]), &zp_mul(&m[i][k], &m[k][j]));
                m[i][j] = zp_div_exact(&num, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    IntPolynomial::new(m[n - 1][n - 1].clone())
}

/// Whether `w 0^inf` is strictly greater than each of its proper shifts.
pub fn lex_greater_all_shifts(w: &[u64]) -> bool {
    if w.is_empty() || w[0] == 0 {
        return false;
    }
    (1..w.len()).all(|i| cmp_zero_padded(w, &w[i..]) == std::cmp::Ordering::Greater)
}

fn check_expansion_word(w: &[u64]) -> Result<(), SftError> {
    if !lex_greater_all_shifts(w) || w.last() == Some(&0) {
        return Err(SftError::NotLexMaximal(DigitWord(w.to_vec())));
    }
    Ok(())
}

/// The base `beta` with `d(beta) = w`: the positive root of
/// `x^d = w_0 x^{d-1} + ... + w_{d-1}`.
pub fn beta_from_digits(w: &[u64]) -> Result<AlgebraicReal, SftError> {
    check_expansion_word(w)?;
    let p = IntPolynomial::from_digit_equation(w);
    AlgebraicReal::unique_positive_root(&p).map_err(|_| SftError::NotLexMaximal(DigitWord(w.to_vec())))
}

/// Companion matrix of the digit equation of `w`: first column `w`,
/// superdiagonal ones.
pub fn companion_matrix(w: &[u64]) -> Vec<Vec<u64>> {
    let d = w.len();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| match j {
                    0 => w[i],
                    _ if j == i + 1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// The edge SFT presenting `S_beta` for `d(beta) = w`.
pub fn companion_edge_sft(w: &[u64]) -> Result<EdgeSFT, SftError> {
    check_expansion_word(w)?;
    EdgeSFT::new(companion_matrix(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u64]]) -> EdgeSFT {
        EdgeSFT::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn lex_examples() {
        assert!(lex_greater_all_shifts(&[3, 1, 1]));
        assert!(!lex_greater_all_shifts(&[2, 4]));
        assert!(lex_greater_all_shifts(&[4, 4]));
        assert!(lex_greater_all_shifts(&[1]));
        assert!(!lex_greater_all_shifts(&[1, 0, 1, 1]));
        assert!(!lex_greater_all_shifts(&[]));
    }

    #[test]
    fn beta_from_digit_examples() {
        assert!((beta_from_digits(&[1, 1, 1]).unwrap().to_f64() - 1.839286755).abs() < 1e-8);
        assert_eq!(beta_from_digits(&[2]).unwrap().to_f64(), 2.0);
        let b = beta_from_digits(&[4, 4]).unwrap();
        assert!((b.to_f64() - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-9);
        assert_eq!(b.defining(), &"x^2-4x-4".parse::<IntPolynomial>().unwrap());
        assert!(matches!(beta_from_digits(&[2, 4]), Err(SftError::NotLexMaximal(_))));
    }

    #[test]
    fn companion_examples() {
        assert_eq!(
            companion_edge_sft(&[3, 1, 1]).unwrap().adjacency(),
            &[vec![3, 1, 0], vec![1, 0, 1], vec![1, 0, 0]]
        );
        assert_eq!(companion_edge_sft(&[1, 1]).unwrap().adjacency(), &[vec![1, 1], vec![1, 0]]);
        assert_eq!(companion_edge_sft(&[2]).unwrap().adjacency(), &[vec![2]]);
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(m(&[&[1, 1], &[1, 0]]).zeta_denominator().to_string(), "1 - t - t^2");
        assert_eq!(m(&[&[6]]).zeta_denominator().to_string(), "1 - 6t");
        let a = m(&[&[3, 1, 0], &[1, 0, 1], &[1, 0, 0]]);
        assert_eq!(a.zeta_denominator().to_string(), "1 - 3t - t^2 - t^3");
        // nilpotent part disappears
        assert_eq!(m(&[&[0, 1], &[0, 0]]).zeta_denominator().to_string(), "1");
    }

    #[test]
    fn periodic_count_examples() {
        let a = m(&[&[3, 1, 0], &[1, 0, 1], &[1, 0, 0]]);
        assert_eq!(a.periodic_count(2), BigUint::from(11u32));
        assert_eq!(a.periodic_count(1), BigUint::from(3u32));
        assert_eq!(m(&[&[6]]).periodic_count(3), BigUint::from(216u32));
        let counts = a.periodic_counts(5);
        for (p, c) in counts.iter().enumerate() {
            assert_eq!(c, &a.periodic_count(p as u32 + 1));
        }
    }

    #[test]
    fn product_examples() {
        assert_eq!(EdgeSFT::full(2).product(&EdgeSFT::full(3)).adjacency(), &[vec![6]]);
        let p = EdgeSFT::full(2).product(&m(&[&[1, 1], &[1, 0]]));
        assert_eq!(p.adjacency(), &[vec![2, 2], vec![2, 0]]);
    }

    #[test]
    fn spectral_radius_examples() {
        assert!((EdgeSFT::full(6).spectral_radius().unwrap() - 6.0).abs() < 1e-9);
        let g = m(&[&[1, 1], &[1, 0]]).spectral_radius().unwrap();
        assert!((g - 1.6180339887).abs() < 1e-9);
        let a = m(&[&[3, 1, 0], &[1, 0, 1], &[1, 0, 0]]).spectral_radius().unwrap();
        assert!((a - 3.3830).abs() < 1e-4);
        assert_eq!(m(&[&[0]]).spectral_radius(), Err(SftError::ZeroMatrix));
    }

    #[test]
    fn mixing_and_irreducibility() {
        assert!(m(&[&[3, 1, 0], &[1, 0, 1], &[1, 0, 0]]).is_mixing());
        let cycle = m(&[&[0, 1], &[1, 0]]);
        assert!(cycle.is_irreducible());
        assert!(!cycle.is_mixing());
        assert!(!m(&[&[1, 1], &[0, 1]]).is_irreducible());
    }

    #[test]
    fn parse_grids() {
        let a = EdgeSFT::parse("[[3,1,0],[1,0,1],[1,0,0]]").unwrap();
        let b = EdgeSFT::parse("3 1 0\n1 0 1\n1 0 0\n").unwrap();
        assert_eq!(a, b);
        assert!(EdgeSFT::parse("[[1,2],[3]]").is_err());
        assert!(EdgeSFT::parse("1 x").is_err());
    }
}
