//! Independent oracles shared by the integration tests. None of them call
//! the library's algorithms for the quantity they check.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Code words `d_0 .. d_{k-1} b` with `b < d_k` for a finite `d(beta)`.
pub fn code_set(d: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for k in 0..d.len() {
        for b in 0..d[k] {
            let mut w = d[..k].to_vec();
            w.push(b);
            out.push(w);
        }
    }
    out
}

/// Whether `w` is a factor of some concatenation of code words: an infix of
/// one code word, or a suffix of a code word, then whole code words, then a
/// prefix of a code word.
pub fn factor_of_code_star(code: &[Vec<u64>], w: &[u64]) -> bool {
    if code.iter().any(|c| c.windows(w.len().max(1)).any(|x| x == w) || w.is_empty()) {
        return true;
    }
    let n = w.len();
    let mut reach = vec![false; n + 1];
    for (i, r) in reach.iter_mut().enumerate() {
        *r = i == 0 || code.iter().any(|c| c.len() >= i && c.ends_with(&w[..i]));
    }
    for i in 0..=n {
        if !reach[i] {
            continue;
        }
        for c in code {
            if w[i..].starts_with(c) {
                reach[i + c.len()] = true;
            }
        }
    }
    (0..=n).any(|j| reach[j] && code.iter().any(|c| c.starts_with(&w[j..])))
}

/// All words of length `len` over `0..k`.
pub fn all_words(k: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Polynomials in `t`, ascending, integer coefficients.
type P = Vec<i128>;

fn pmul(a: &P, b: &P) -> P {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn padd(a: &P, b: &P, sign: i128) -> P {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += sign * y;
    }
    out
}

fn det_cofactor(m: &[Vec<P>]) -> P {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc: P = vec![0];
    for j in 0..n {
        let minor: Vec<Vec<P>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = pmul(&m[0][j], &det_cofactor(&minor));
        acc = padd(&acc, &term, if j % 2 == 0 { 1 } else { -1 });
    }
    acc
}

/// `det(I - tA)` by Laplace expansion, trailing zeros trimmed.
pub fn det_i_minus_ta(a: &[Vec<u64>]) -> Vec<i128> {
    let n = a.len();
    let m: Vec<Vec<P>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| vec![if i == j { 1 } else { 0 }, -(a[i][j] as i128)])
                .collect()
        })
        .collect();
    let mut d = det_cofactor(&m);
    while d.len() > 1 && d.last() == Some(&0) {
        d.pop();
    }
    d
}

/// `tr(A^p)` by repeated integer multiplication.
pub fn trace_power(a: &[Vec<u64>], p: u32) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect();
    for _ in 0..p {
        m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &m[i][k] * a[k][j]).sum())
                    .collect()
            })
            .collect();
    }
    (0..n).map(|i| m[i][i].clone()).sum()
}

/// Coefficients `c_0 = 1, c_1, ..., c_deg` of `exp(-sum s_p t^p / p)` from
/// power sums `s_1 .. s_deg` (Newton's identities).
pub fn det_from_power_sums(s: &[BigInt]) -> Vec<BigInt> {
    let mut c = vec![BigRational::one()];
    for k in 1..=s.len() {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            acc += BigRational::from_integer(s[i - 1].clone()) * &c[k - i];
        }
        c.push(-acc / BigRational::from_integer(BigInt::from(k)));
    }
    let mut out: Vec<BigInt> = c
        .into_iter()
        .map(|x| {
            assert!(x.is_integer(), "non-integral coefficient");
            x.to_integer()
        })
        .collect();
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// Reduce a rational polynomial (ascending) modulo a monic integer one.
pub fn reduce_mod(mut a: Vec<BigRational>, monic: &[i64]) -> Vec<BigRational> {
    let d = monic.len() - 1;
    while a.len() > d {
        let top = a.pop().expect("nonempty");
        let shift = a.len() - d;
        for (i, &m) in monic[..d].iter().enumerate() {
            a[shift + i] -= &top * BigRational::from_integer(BigInt::from(m));
        }
    }
    a.resize(d, BigRational::zero());
    a
}

pub fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
