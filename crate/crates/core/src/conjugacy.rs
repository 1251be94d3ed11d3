//! The explicit conjugacy `phi : S_n x X_C -> X_B` between a full shift
//! times an SFT beta-shift and the beta-shift of the scaled base, together
//! with its inverse and an exhaustive check on periodic points.
//!
//! `X_C` is the companion graph of `w = a_{d-1} .. a_0`: state `j` has
//! `a_{d-j}` return edges `(j, k)` to state 1 and a star edge `*j` to
//! `j + 1`. `X_B` has the same shape for the scaled word, with return
//! labels `(i_1, .., i_j, k)` carrying `j` digits of the full shift.
//! `phi` reads the window `[i - (d-1), i]`; its inverse reads `[i, i + d - 1]`
//! and recovers the digit under a star from the next return label.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::code::{CodeError, SlidingBlockCode};
use crate::factorization::{scaled_digit_word, FactorError};
use crate::sft::{companion_matrix, lex_greater_all_shifts, EdgeSFT, SftError};
use crate::shift::{Ambient, EdgeGraph};
use crate::word::DigitWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjugacyError {
    #[error("{0} is not greater than all its shifts (or ends in 0)")]
    LexConditionFailed(DigitWord),
    #[error("n must be at least 2")]
    BadN,
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error("graph with {0} edges is too large")]
    TooLarge(u64),
}

/// Edge label of a companion graph. States are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeLabel {
    /// `*j : j -> j + 1`.
    Star { j: usize },
    /// `(i_1, .., i_j, k) : j -> 1`; `digits` is empty in `X_C`.
    Return { j: usize, digits: Vec<u32>, k: u64 },
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Star { j } => write!(f, "*{j}"),
            EdgeLabel::Return { j, digits, k } if digits.is_empty() => write!(f, "({j},{k})"),
            EdgeLabel::Return { digits, k, .. } => {
                write!(f, "(")?;
                for i in digits {
                    write!(f, "{i},")?;
                }
                write!(f, "{k})")
            }
        }
    }
}

/// A companion graph with its labels.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: EdgeGraph,
    pub labels: Vec<EdgeLabel>,
    index: HashMap<EdgeLabel, u32>,
}

/// Cap on the number of edges of a constructed graph.
pub const MAX_EDGES: u64 = 1 << 16;

impl LabeledGraph {
    /// The graph of `X_C` (`n = None`) or of `X_B` for the scaling `n`.
    /// Edges are listed row-major, matching [`EdgeGraph::from_matrix`] on
    /// the companion matrix.
    pub fn companion(w: &[u64], n: Option<u32>) -> Result<Self, ConjugacyError> {
        let d = w.len();
        let mut total = 0u64;
        let mut pow = 1u64;
        for &a in w {
            pow = pow.saturating_mul(n.unwrap_or(1) as u64);
            total = total.saturating_add(a.saturating_mul(pow)).saturating_add(1);
        }
        if total > MAX_EDGES {
            return Err(ConjugacyError::TooLarge(total));
        }
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        for s in 0..d {
            let j = s + 1;
            let digit_words: Vec<Vec<u32>> = match n {
                None => vec![Vec::new()],
                Some(n) => all_words(n, j),
            };
            for digits in &digit_words {
                for k in 0..w[s] {
                    edges.push((s, 0));
                    labels.push(EdgeLabel::Return {
                        j,
                        digits: digits.clone(),
                        k,
                    });
                }
            }
            if j < d {
                edges.push((s, s + 1));
                labels.push(EdgeLabel::Star { j });
            }
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        Ok(LabeledGraph {
            graph: EdgeGraph {
                states: d,
                edges,
                labels: Some(labels.iter().map(EdgeLabel::to_string).collect()),
            },
            labels,
            index,
        })
    }

    pub fn symbol(&self, l: &EdgeLabel) -> Option<u32> {
        self.index.get(l).copied()
    }

    pub fn label(&self, s: u32) -> &EdgeLabel {
        &self.labels[s as usize]
    }
}

/// All words of length `len` over `0..n` in lexicographic order.
fn all_words(n: u32, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |i| {
                    let mut v = w.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// The pair of codes `phi`, `psi` for `(n, w)`.
#[derive(Clone, Debug)]
pub struct Conjugacy {
    pub n: u32,
    pub word: DigitWord,
    pub scaled: DigitWord,
    pub xc: LabeledGraph,
    pub xb: LabeledGraph,
    /// `S_n x X_C`.
    pub source: Ambient,
    /// `X_B`.
    pub target: Ambient,
    pub phi: SlidingBlockCode,
    pub psi: SlidingBlockCode,
}

fn check_word(w: &[u64]) -> bool {
    lex_greater_all_shifts(w) && w.last().is_some_and(|&a| a > 0)
}

impl Conjugacy {
    pub fn build(n: u32, w: &[u64]) -> Result<Self, ConjugacyError> {
        if n < 2 {
            return Err(ConjugacyError::BadN);
        }
        if !check_word(w) {
            return Err(ConjugacyError::LexConditionFailed(DigitWord(w.to_vec())));
        }
        let scaled = scaled_digit_word(n as u64, w)?;
        if !check_word(&scaled) {
            return Err(ConjugacyError::LexConditionFailed(scaled));
        }
        let d = w.len() as i64;
        let xc = LabeledGraph::companion(w, None)?;
        let xb = LabeledGraph::companion(w, Some(n))?;
        let source = Ambient::product(Ambient::full(n), Ambient::edge(xc.graph.clone()));
        let target = Ambient::edge(xb.graph.clone());

        let phi = SlidingBlockCode::from_fn(source.clone(), target.clone(), -(d - 1), 0, |win| {
            let (_, c) = source.split(win[win.len() - 1]).expect("product symbol");
            let out = match xc.label(c) {
                EdgeLabel::Star { j } => EdgeLabel::Star { j: *j },
                EdgeLabel::Return { j, k, .. } => EdgeLabel::Return {
                    j: *j,
                    digits: win[win.len() - j..]
                        .iter()
                        .map(|&s| source.split(s).expect("product symbol").0)
                        .collect(),
                    k: *k,
                },
            };
            xb.symbol(&out).expect("label of X_B")
        })?;

        let psi = SlidingBlockCode::from_fn(target.clone(), source.clone(), 0, d - 1, |win| {
            let (c, digit) = match xb.label(win[0]) {
                EdgeLabel::Star { j } => {
                    // the next return label carries the digit at index j - 1
                    let digit = win[1..]
                        .iter()
                        .find_map(|&s| match xb.label(s) {
                            EdgeLabel::Return { digits, .. } => Some(digits[j - 1]),
                            EdgeLabel::Star { .. } => None,
                        })
                        .expect("a return edge within d - 1 steps");
                    (EdgeLabel::Star { j: *j }, digit)
                }
                EdgeLabel::Return { j, digits, k } => (
                    EdgeLabel::Return {
                        j: *j,
                        digits: Vec::new(),
                        k: *k,
                    },
                    digits[j - 1],
                ),
            };
            source
                .join(digit, xc.symbol(&c).expect("label of X_C"))
                .expect("digit below n")
        })?;

        Ok(Conjugacy {
            n,
            word: DigitWord(w.to_vec()),
            scaled,
            xc,
            xb,
            source,
            target,
            phi,
            psi,
        })
    }

    /// `C` and `B`.
    pub fn matrices(&self) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
        (companion_matrix(&self.word), companion_matrix(&self.scaled))
    }

    /// Rule table of `phi` with symbols written as labels.
    pub fn phi_table(&self) -> Vec<LabeledEntry> {
        labeled_entries(&self.phi)
    }

    pub fn psi_table(&self) -> Vec<LabeledEntry> {
        labeled_entries(&self.psi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledEntry {
    pub window: Vec<String>,
    pub out: String,
}

pub fn labeled_entries(code: &SlidingBlockCode) -> Vec<LabeledEntry> {
    code.entries()
        .into_iter()
        .map(|(w, s)| LabeledEntry {
            window: w.iter().map(|&x| code.input().symbol_name(x)).collect(),
            out: code.output().symbol_name(s),
        })
        .collect()
}

/// Image of the periodic point `u^inf` as one period.
pub fn apply_cyclic(code: &SlidingBlockCode, u: &[u32]) -> Result<Vec<u32>, CodeError> {
    let p = u.len() as i64;
    let (m, a) = (code.memory(), code.anticipation());
    (0..p)
        .map(|i| {
            let win: Vec<u32> = (i + m..=i + a).map(|t| u[t.rem_euclid(p) as usize]).collect();
            code.lookup(&win).ok_or(CodeError::InadmissibleInput(win))
        })
        .collect()
}

/// Periods of the periodic points `u^inf` with `|u| = p`, in lexicographic
/// order of `u`.
pub fn periodic_words(amb: &Ambient, p: usize) -> Result<Vec<Vec<u32>>, CodeError> {
    let words = amb.words(p, crate::code::TABLE_BUDGET).map_err(CodeError::from)?;
    Ok(words
        .into_iter()
        .filter(|u| amb.admissible(&[u.as_slice(), u.as_slice()].concat()))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `phi(u^inf)` is not a point of `X_B`.
    PhiNotClosed,
    /// `psi(phi(x)) != x`.
    PsiPhiNotIdentity,
    /// `phi(psi(y)) != y`.
    PhiPsiNotIdentity,
    /// Two periodic points with the same image.
    NotInjective,
    /// `phi(sigma x) != sigma phi(x)`.
    NotEquivariant,
    /// Point counts disagree.
    Census,
}

/// A failed check with the offending period.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: CheckKind,
    pub period: usize,
    pub point: Vec<String>,
    pub image: Vec<String>,
}

/// Counts of points with `sigma^p x = x` on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub p: usize,
    pub source_points: u64,
    pub target_points: u64,
    /// `n^p tr(C^p)`.
    pub product_count: String,
    /// `tr(B^p)`.
    pub trace_b: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyReport {
    pub n: u32,
    pub word: DigitWord,
    pub scaled: DigitWord,
    pub c: Vec<Vec<u64>>,
    pub b: Vec<Vec<u64>>,
    pub phi_window: (i64, i64),
    pub psi_window: (i64, i64),
    pub phi_entries: usize,
    pub psi_entries: usize,
    pub max_period: usize,
    pub census: Vec<CensusRow>,
    /// First failure, by period and then lexicographically.
    pub witness: Option<Witness>,
}

impl ConjugacyReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn names(amb: &Ambient, w: &[u32]) -> Vec<String> {
    w.iter().map(|&s| amb.symbol_name(s)).collect()
}

fn rotate(u: &[u32]) -> Vec<u32> {
    let mut v = u.to_vec();
    v.rotate_left(1);
    v
}

fn check_period(c: &Conjugacy, p: usize) -> Result<(CensusRow, Option<Witness>), ConjugacyError> {
    let src = &c.source;
    let tgt = &c.target;
    let fail = |check, point: &[u32], pa: &Ambient, image: &[u32], ia: &Ambient| Witness {
        check,
        period: p,
        point: names(pa, point),
        image: names(ia, image),
    };
    let xs = periodic_words(src, p)?;
    let ys = periodic_words(tgt, p)?;
    let cm = EdgeSFT::new(companion_matrix(&c.word))?;
    let bm = EdgeSFT::new(companion_matrix(&c.scaled))?;
    let product_count = BigUint::from(c.n).pow(p as u32) * cm.periodic_count(p as u32);
    let trace_b = bm.periodic_count(p as u32);
    let row = CensusRow {
        p,
        source_points: xs.len() as u64,
        target_points: ys.len() as u64,
        product_count: product_count.to_string(),
        trace_b: trace_b.to_string(),
    };

    let mut images: HashMap<Vec<u32>, &Vec<u32>> = HashMap::new();
    for x in &xs {
        let y = apply_cyclic(&c.phi, x)?;
        if !tgt.admissible(&[y.as_slice(), y.as_slice()].concat()) {
            return Ok((row, Some(fail(CheckKind::PhiNotClosed, x, src, &y, tgt))));
        }
        if apply_cyclic(&c.psi, &y)? != *x {
            return Ok((row, Some(fail(CheckKind::PsiPhiNotIdentity, x, src, &y, tgt))));
        }
        if apply_cyclic(&c.phi, &rotate(x))? != rotate(&y) {
            return Ok((row, Some(fail(CheckKind::NotEquivariant, x, src, &y, tgt))));
        }
        if let Some(prev) = images.insert(y.clone(), x) {
            return Ok((row, Some(fail(CheckKind::NotInjective, prev, src, &y, tgt))));
        }
    }
    let image_set: HashSet<&Vec<u32>> = images.keys().collect();
    for y in &ys {
        let x = apply_cyclic(&c.psi, y)?;
        if apply_cyclic(&c.phi, &x)? != *y || !image_set.contains(y) {
            return Ok((row, Some(fail(CheckKind::PhiPsiNotIdentity, y, tgt, &x, src))));
        }
    }
    let counts_agree = product_count == trace_b
        && BigUint::from(xs.len()) == product_count
        && BigUint::from(ys.len()) == trace_b;
    if !counts_agree {
        let w = Witness {
            check: CheckKind::Census,
            period: p,
            point: Vec::new(),
            image: Vec::new(),
        };
        return Ok((row, Some(w)));
    }
    Ok((row, None))
}

/// Build `phi` and `psi` and check on every periodic point of period
/// `p <= max_period` that they are mutually inverse, injective and
/// shift-commuting, and that both sides have `n^p tr(C^p) = tr(B^p)` points.
pub fn verify_conjugacy(n: u32, w: &[u64], max_period: usize) -> Result<ConjugacyReport, ConjugacyError> {
    let c = Conjugacy::build(n, w)?;
    let rows: Vec<Result<(CensusRow, Option<Witness>), ConjugacyError>> = (1..=max_period)
        .into_par_iter()
        .map(|p| check_period(&c, p))
        .collect();
    let mut census = Vec::new();
    let mut witness = None;
    for r in rows {
        let (row, wit) = r?;
        census.push(row);
        if witness.is_none() {
            witness = wit;
        }
    }
    let (cmat, bmat) = c.matrices();
    Ok(ConjugacyReport {
        n,
        word: c.word.clone(),
        scaled: c.scaled.clone(),
        c: cmat,
        b: bmat,
        phi_window: (c.phi.memory(), c.phi.anticipation()),
        psi_window: (c.psi.memory(), c.psi.anticipation()),
        phi_entries: c.phi.table_len(),
        psi_entries: c.psi.table_len(),
        max_period,
        census,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphs_match_companion_matrices() {
        let c = Conjugacy::build(2, &[2, 1]).unwrap();
        assert_eq!(c.xc.graph.adjacency(), vec![vec![2, 1], vec![1, 0]]);
        assert_eq!(c.xb.graph.adjacency(), vec![vec![4, 1], vec![4, 0]]);
        let (_, b) = c.matrices();
        let from_matrix = EdgeGraph::from_matrix(&EdgeSFT::new(b).unwrap());
        assert_eq!(from_matrix.edges, c.xb.graph.edges);
        let labels: Vec<String> = c.xb.labels.iter().map(|l| l.to_string()).collect();
        assert_eq!(labels[..5], ["(0,0)", "(0,1)", "(1,0)", "(1,1)", "*1"]);
        assert_eq!(labels[5], "(0,0,0)");
    }

    #[test]
    fn phi_case_table_for_two_one() {
        let c = Conjugacy::build(2, &[2, 1]).unwrap();
        assert_eq!((c.phi.memory(), c.phi.anticipation()), (-1, 0));
        assert_eq!((c.psi.memory(), c.psi.anticipation()), (0, 1));
        let sym = |digit: u32, l: EdgeLabel| c.source.join(digit, c.xc.symbol(&l).unwrap()).unwrap();
        let star = EdgeLabel::Star { j: 1 };
        let ret = |j, k| EdgeLabel::Return { j, digits: vec![], k };
        // *1 then (2,0) with bits 1, 0 -> (1,0,0)
        let out = c.phi.lookup(&[sym(1, star.clone()), sym(0, ret(2, 0))]).unwrap();
        assert_eq!(c.xb.label(out).to_string(), "(1,0,0)");
        // (1,1) with bit 1 -> (1,1) regardless of the previous symbol
        let out = c.phi.lookup(&[sym(0, ret(1, 0)), sym(1, ret(1, 1))]).unwrap();
        assert_eq!(c.xb.label(out).to_string(), "(1,1)");
        let out = c.phi.lookup(&[sym(0, ret(2, 0)), sym(1, star)]).unwrap();
        assert_eq!(c.xb.label(out).to_string(), "*1");
    }

    #[test]
    fn one_letter_word_is_a_pairing() {
        let c = Conjugacy::build(2, &[3]).unwrap();
        assert_eq!((c.phi.memory(), c.phi.anticipation()), (0, 0));
        assert_eq!(c.phi.table_len(), 6);
        let r = verify_conjugacy(2, &[3], 3).unwrap();
        assert!(r.passed());
        let counts: Vec<u64> = r.census.iter().map(|c| c.source_points).collect();
        assert_eq!(counts, vec![6, 36, 216]);
    }

    #[test]
    fn lex_failures() {
        assert_eq!(
            Conjugacy::build(2, &[1, 1]).unwrap_err(),
            ConjugacyError::LexConditionFailed(DigitWord(vec![2, 4]))
        );
        assert!(matches!(Conjugacy::build(2, &[1, 2]), Err(ConjugacyError::LexConditionFailed(_))));
        assert_eq!(Conjugacy::build(1, &[2]).unwrap_err(), ConjugacyError::BadN);
    }

    #[test]
    fn two_one_small_periods() {
        let r = verify_conjugacy(2, &[2, 1], 4).unwrap();
        assert!(r.passed(), "{:?}", r.witness);
        assert_eq!(r.census[0].trace_b, "4");
        assert_eq!(r.census[0].product_count, "4");
    }

    #[test]
    fn broken_inverse_is_caught() {
        let mut c = Conjugacy::build(2, &[2, 1]).unwrap();
        c.psi = SlidingBlockCode::from_fn(c.target.clone(), c.source.clone(), 0, 1, |w| {
            // forget the digit
            let good = c.psi.lookup(w).unwrap();
            let (_, e) = c.source.split(good).unwrap();
            c.source.join(0, e).unwrap()
        })
        .unwrap();
        let (_, wit) = check_period(&c, 1).unwrap();
        let wit = wit.unwrap();
        assert_eq!(wit.check, CheckKind::PsiPhiNotIdentity);
        assert_eq!(wit.point, vec!["(1,(1,0))"]);
    }
}
