//! Ambient subshifts for sliding block codes: full shifts, beta-shifts, edge
//! shifts and their products, all over symbols `0..alphabet_size()`.
//!
//! Membership is decided on finite words. For beta-shifts with an
//! inconclusive classification it rests on a finite prefix of `d*` and
//! [`Ambient::is_exact`] reports false.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beta::{classify, membership, Beta, BetaError, BetaShiftDescriptor, DEFAULT_HORIZON};
use crate::poly::IntPolynomial;
use crate::sft::{EdgeSFT, SftError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftError {
    #[error(transparent)]
    Beta(#[from] BetaError),
    #[error(transparent)]
    Sft(#[from] SftError),
    #[error("bad ambient description: {0}")]
    BadSpec(String),
    #[error("more than {budget} admissible words of length {len}")]
    TooMany { len: usize, budget: usize },
}

/// A finite directed multigraph whose edges are the symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGraph {
    pub states: usize,
    /// `(source, target)` per symbol.
    pub edges: Vec<(usize, usize)>,
    pub labels: Option<Vec<String>>,
}

impl EdgeGraph {
    /// Edges in row-major order: all `A[i][j]` parallel edges from `i` to `j`,
    /// for `i`, then `j`, ascending.
    pub fn from_matrix(x: &EdgeSFT) -> Self {
        let mut edges = Vec::new();
        for (i, row) in x.adjacency().iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                for _ in 0..k {
                    edges.push((i, j));
                }
            }
        }
        EdgeGraph {
            states: x.size(),
            edges,
            labels: None,
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<u64>> {
        let mut a = vec![vec![0u64; self.states]; self.states];
        for &(s, t) in &self.edges {
            a[s][t] += 1;
        }
        a
    }

    pub fn label(&self, e: u32) -> String {
        match &self.labels {
            Some(l) => l[e as usize].clone(),
            None => e.to_string(),
        }
    }

    fn follows(&self, a: u32, b: u32) -> bool {
        self.edges[a as usize].1 == self.edges[b as usize].0
    }
}

/// Serializable description of an ambient shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmbientSpec {
    Full {
        n: u32,
    },
    /// Beta-shift given by the digits of `d(beta)` (finite expansion) or by a
    /// digit equation.
    Beta {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        digits: Option<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        equation: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        horizon: Option<usize>,
    },
    Edge {
        matrix: Vec<Vec<u64>>,
    },
    Product {
        left: Box<AmbientSpec>,
        right: Box<AmbientSpec>,
    },
}

#[derive(Clone, Debug)]
pub enum Ambient {
    Full(u32),
    Beta(Arc<BetaShiftDescriptor>),
    Edge(Arc<EdgeGraph>),
    /// Symbol `(a, b)` is encoded as `a * |right| + b`.
    Product(Arc<Ambient>, Arc<Ambient>),
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Ambient::Full(a), Ambient::Full(b)) => a == b,
            (Ambient::Beta(a), Ambient::Beta(b)) => {
                a.expansion == b.expansion && a.dstar == b.dstar
            }
            (Ambient::Edge(a), Ambient::Edge(b)) => a.edges == b.edges && a.states == b.states,
            (Ambient::Product(a, b), Ambient::Product(c, d)) => a == c && b == d,
            _ => false,
        }
    }
}

impl Ambient {
    pub fn full(n: u32) -> Self {
        Ambient::Full(n)
    }

    pub fn beta(desc: BetaShiftDescriptor) -> Self {
        Ambient::Beta(Arc::new(desc))
    }

    pub fn edge(g: EdgeGraph) -> Self {
        Ambient::Edge(Arc::new(g))
    }

    pub fn product(a: Ambient, b: Ambient) -> Self {
        Ambient::Product(Arc::new(a), Arc::new(b))
    }

    pub fn from_spec(spec: &AmbientSpec) -> Result<Self, ShiftError> {
        Ok(match spec {
            AmbientSpec::Full { n } => {
                if *n == 0 {
                    return Err(ShiftError::BadSpec("full shift needs n >= 1".into()));
                }
                Ambient::Full(*n)
            }
            AmbientSpec::Beta {
                digits,
                equation,
                horizon,
            } => {
                let desc = match (digits, equation) {
                    (Some(d), None) => BetaShiftDescriptor::from_digits(d)?,
                    (None, Some(eq)) => {
                        let p: IntPolynomial = eq
                            .parse()
                            .map_err(|e| ShiftError::BadSpec(format!("{e}")))?;
                        classify(&Beta::from_equation(&p)?, horizon.unwrap_or(DEFAULT_HORIZON))?
                    }
                    _ => {
                        return Err(ShiftError::BadSpec(
                            "beta ambient needs exactly one of `digits` or `equation`".into(),
                        ))
                    }
                };
                Ambient::beta(desc)
            }
            AmbientSpec::Edge { matrix } => {
                Ambient::edge(EdgeGraph::from_matrix(&EdgeSFT::new(matrix.clone())?))
            }
            AmbientSpec::Product { left, right } => {
                Ambient::product(Ambient::from_spec(left)?, Ambient::from_spec(right)?)
            }
        })
    }

    pub fn to_spec(&self) -> AmbientSpec {
        match self {
            Ambient::Full(n) => AmbientSpec::Full { n: *n },
            Ambient::Beta(d) => match d.expansion.tail {
                crate::beta::Tail::Finite => AmbientSpec::Beta {
                    digits: Some(d.expansion.head.0.clone()),
                    equation: None,
                    horizon: None,
                },
                _ => AmbientSpec::Beta {
                    digits: None,
                    equation: match &d.beta {
                        Beta::Exact(a) => Some(a.defining().to_string()),
                        Beta::Approximate { .. } => None,
                    },
                    horizon: match d.class {
                        crate::beta::ShiftClass::NotSoficUpTo { horizon } => Some(horizon),
                        _ => None,
                    },
                },
            },
            Ambient::Edge(g) => AmbientSpec::Edge {
                matrix: g.adjacency(),
            },
            Ambient::Product(a, b) => AmbientSpec::Product {
                left: Box::new(a.to_spec()),
                right: Box::new(b.to_spec()),
            },
        }
    }

    pub fn alphabet_size(&self) -> u32 {
        match self {
            Ambient::Full(n) => *n,
            Ambient::Beta(d) => d.alphabet_size() as u32,
            Ambient::Edge(g) => g.edges.len() as u32,
            Ambient::Product(a, b) => a.alphabet_size() * b.alphabet_size(),
        }
    }

    /// False when membership depends on a truncated `d*`.
    pub fn is_exact(&self) -> bool {
        match self {
            Ambient::Beta(d) => d.is_exact(),
            Ambient::Product(a, b) => a.is_exact() && b.is_exact(),
            _ => true,
        }
    }

    pub fn split(&self, s: u32) -> Option<(u32, u32)> {
        match self {
            Ambient::Product(_, b) => {
                let k = b.alphabet_size();
                Some((s / k, s % k))
            }
            _ => None,
        }
    }

    pub fn join(&self, a: u32, b: u32) -> Option<u32> {
        match self {
            Ambient::Product(_, r) => Some(a * r.alphabet_size() + b),
            _ => None,
        }
    }

    /// Project a product word onto its two tracks.
    pub fn tracks(&self, w: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
        let Ambient::Product(_, b) = self else {
            return None;
        };
        let k = b.alphabet_size();
        Some(w.iter().map(|&s| (s / k, s % k)).unzip())
    }

    /// Whether `w` occurs in the shift.
    pub fn admissible(&self, w: &[u32]) -> bool {
        let n = self.alphabet_size();
        if w.iter().any(|&s| s >= n) {
            return false;
        }
        match self {
            Ambient::Full(_) => true,
            Ambient::Beta(d) => {
                let digits: Vec<u64> = w.iter().map(|&s| s as u64).collect();
                membership(d, &digits).admissible
            }
            Ambient::Edge(g) => w.windows(2).all(|p| g.follows(p[0], p[1])),
            Ambient::Product(a, b) => {
                let (x, y) = self.tracks(w).unwrap_or_default();
                a.admissible(&x) && b.admissible(&y)
            }
        }
    }

    /// A symbol `s` such that `s^inf` lies in the shift and `s^inf w s^inf`
    /// does for every admissible `w` (0 for full and beta-shifts).
    pub fn filler(&self) -> Option<u32> {
        match self {
            Ambient::Full(_) | Ambient::Beta(_) => Some(0),
            Ambient::Edge(_) => None,
            Ambient::Product(a, b) => Some(self.join(a.filler()?, b.filler()?)?),
        }
    }

    /// Length of windows whose admissibility characterizes membership of an
    /// eventually periodic point (exact for SFT ambients; a generous bound
    /// for sofic beta-shifts).
    pub fn check_len(&self) -> usize {
        match self {
            Ambient::Full(_) => 1,
            Ambient::Edge(_) => 2,
            Ambient::Beta(d) => {
                d.dstar.head.len() + 2 * d.dstar.period.as_ref().map_or(d.dstar.head.len(), |p| p.len()) + 1
            }
            Ambient::Product(a, b) => a.check_len().max(b.check_len()),
        }
    }

    /// All admissible words of length `len` whose symbol at position `i` is
    /// `fixed(i)` when that is `Some`, in lexicographic order.
    pub fn enumerate(
        &self,
        len: usize,
        fixed: &dyn Fn(usize) -> Option<u32>,
        budget: usize,
    ) -> Result<Vec<Vec<u32>>, ShiftError> {
        let n = self.alphabet_size();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(len);
        fn rec(
            amb: &Ambient,
            n: u32,
            len: usize,
            fixed: &dyn Fn(usize) -> Option<u32>,
            budget: usize,
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) -> Result<(), ShiftError> {
            if cur.len() == len {
                if out.len() >= budget {
                    return Err(ShiftError::TooMany { len, budget });
                }
                out.push(cur.clone());
                return Ok(());
            }
            let pos = cur.len();
            let choices: Vec<u32> = match fixed(pos) {
                Some(s) => vec![s],
                None => (0..n).collect(),
            };
            for s in choices {
                cur.push(s);
                if amb.admissible_tail(cur) {
                    rec(amb, n, len, fixed, budget, cur, out)?;
                }
                cur.pop();
            }
            Ok(())
        }
        rec(self, n, len, fixed, budget, &mut cur, &mut out)?;
        Ok(out)
    }

    /// All admissible words of length `len`.
    pub fn words(&self, len: usize, budget: usize) -> Result<Vec<Vec<u32>>, ShiftError> {
        self.enumerate(len, &|_| None, budget)
    }

    /// Admissibility of `w` given that `w` without its last symbol is
    /// admissible.
    fn admissible_tail(&self, w: &[u32]) -> bool {
        let n = self.alphabet_size();
        let Some(&last) = w.last() else { return true };
        if last >= n {
            return false;
        }
        match self {
            Ambient::Full(_) => true,
            Ambient::Edge(g) => w.len() < 2 || g.follows(w[w.len() - 2], last),
            _ => self.admissible(w),
        }
    }

    /// A random admissible word, built left to right. Returns `None` if the
    /// shift has no word of this length.
    pub fn sample_word<R: Rng>(&self, len: usize, rng: &mut R) -> Option<Vec<u32>> {
        let n = self.alphabet_size();
        'attempt: for _ in 0..64 {
            let mut w = Vec::with_capacity(len);
            while w.len() < len {
                let start = rng.random_range(0..n);
                let ok = (0..n).map(|k| (start + k) % n).find(|&s| {
                    w.push(s);
                    let good = self.admissible_tail(&w);
                    w.pop();
                    good
                });
                match ok {
                    Some(s) => w.push(s),
                    None => continue 'attempt,
                }
            }
            return Some(w);
        }
        None
    }

    /// Render a symbol (pairs for products, labels for labelled graphs).
    pub fn symbol_name(&self, s: u32) -> String {
        match self {
            Ambient::Edge(g) => g.label(s),
            Ambient::Product(a, b) => {
                let (x, y) = self.split(s).unwrap_or((0, 0));
                format!("({},{})", a.symbol_name(x), b.symbol_name(y))
            }
            _ => s.to_string(),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Full(n) => write!(f, "full {n}-shift"),
            Ambient::Beta(d) => write!(f, "beta-shift with d = {}", d.expansion),
            Ambient::Edge(g) => write!(f, "edge shift on {} states, {} edges", g.states, g.edges.len()),
            Ambient::Product(a, b) => write!(f, "({a}) x ({b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn golden() -> Ambient {
        Ambient::from_spec(&AmbientSpec::Beta {
            digits: Some(vec![1, 1]),
            equation: None,
            horizon: None,
        })
        .unwrap()
    }

    #[test]
    fn beta_ambient_membership() {
        let g = golden();
        assert_eq!(g.alphabet_size(), 2);
        assert!(g.admissible(&[1, 0, 1]));
        assert!(!g.admissible(&[0, 1, 1]));
        assert!(!g.admissible(&[2]));
        // Fibonacci counts
        let counts: Vec<usize> = (1..=6).map(|l| g.words(l, 1000).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn product_ambient() {
        let p = Ambient::product(Ambient::full(2), Ambient::full(3));
        assert_eq!(p.alphabet_size(), 6);
        assert_eq!(p.split(5), Some((1, 2)));
        assert_eq!(p.join(1, 2), Some(5));
        assert_eq!(p.words(2, 100).unwrap().len(), 36);
        let q = Ambient::product(Ambient::full(2), golden());
        assert!(!q.admissible(&[1, 1]));
        assert_eq!(q.filler(), Some(0));
    }

    #[test]
    fn edge_ambient() {
        let e = Ambient::from_spec(&AmbientSpec::Edge {
            matrix: vec![vec![1, 1], vec![1, 0]],
        })
        .unwrap();
        assert_eq!(e.alphabet_size(), 3);
        // edges: 0:(0,0) 1:(0,1) 2:(1,0)
        assert!(e.admissible(&[0, 1, 2]));
        assert!(!e.admissible(&[1, 1]));
    }

    #[test]
    fn fixed_positions_respected() {
        let g = golden();
        let ws = g.enumerate(4, &|i| (i == 1).then_some(1), 100).unwrap();
        assert!(ws.iter().all(|w| w[1] == 1 && g.admissible(w)));
        assert_eq!(ws, vec![vec![0, 1, 0, 0], vec![0, 1, 0, 1]]);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            Ambient::full(2).words(10, 100),
            Err(ShiftError::TooMany { .. })
        ));
    }

    #[test]
    fn sampled_words_are_admissible() {
        let g = golden();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let w = g.sample_word(20, &mut rng).unwrap();
            assert!(g.admissible(&w));
        }
    }

    #[test]
    fn spec_round_trip() {
        let spec = AmbientSpec::Product {
            left: Box::new(AmbientSpec::Full { n: 2 }),
            right: Box::new(AmbientSpec::Beta {
                digits: Some(vec![3, 1, 1]),
                equation: None,
                horizon: None,
            }),
        };
        let a = Ambient::from_spec(&spec).unwrap();
        assert_eq!(a.to_spec(), spec);
    }
}
