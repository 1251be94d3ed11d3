//! Spatially eventually periodic configurations `u^inf w v^inf` and the
//! action of sliding block codes on them.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::code::{CodeError, SlidingBlockCode};
use crate::shift::Ambient;
use crate::word::primitive_root_len;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("periodic parts must be nonempty")]
    EmptyPeriod,
    #[error("cannot parse configuration: {0}")]
    Parse(String),
    #[error("configuration contains the inadmissible word {word:?} at {start}")]
    Inadmissible { start: i64, word: Vec<u32> },
}

/// A two-sided point `... u u w v v ...` with `w[0]` at coordinate `start`.
///
/// Positions left of `start` read `u` backwards from its last symbol, so
/// `x[start - 1] = u[|u| - 1]`; positions from `start + |w|` on read `v`
/// forwards. Stored in normal form: primitive periods and a minimal center.
#[derive(Clone, Debug)]
pub struct Configuration {
    left: Vec<u32>,
    center: Vec<u32>,
    right: Vec<u32>,
    start: i64,
}

impl Configuration {
    pub fn new(
        left: Vec<u32>,
        center: Vec<u32>,
        right: Vec<u32>,
        start: i64,
    ) -> Result<Self, ConfigError> {
        if left.is_empty() || right.is_empty() {
            return Err(ConfigError::EmptyPeriod);
        }
        let mut c = Configuration {
            left,
            center,
            right,
            start,
        };
        c.normalize();
        Ok(c)
    }

    /// The constant point `s^inf`.
    pub fn constant(s: u32) -> Self {
        Configuration {
            left: vec![s],
            center: Vec::new(),
            right: vec![s],
            start: 0,
        }
    }

    /// `w^inf` with `w[0]` at the origin.
    pub fn periodic(w: &[u32]) -> Result<Self, ConfigError> {
        Self::new(w.to_vec(), Vec::new(), w.to_vec(), 0)
    }

    /// `s^inf w s^inf` with `w[0]` at `start`.
    pub fn finite(fill: u32, w: &[u32], start: i64) -> Self {
        Self::new(vec![fill], w.to_vec(), vec![fill], start).expect("nonempty periods")
    }

    /// Sample `f` where `f` is `lp`-periodic left of `lo` and `rp`-periodic
    /// from `hi` on.
    pub fn from_fn(lo: i64, hi: i64, lp: usize, rp: usize, f: impl Fn(i64) -> u32) -> Self {
        let left = (lo - lp as i64..lo).map(&f).collect();
        let center = (lo..hi).map(&f).collect();
        let right = (hi..hi + rp as i64).map(&f).collect();
        Self::new(left, center, right, lo).expect("nonempty periods")
    }

    pub fn left_period(&self) -> &[u32] {
        &self.left
    }

    pub fn center(&self) -> &[u32] {
        &self.center
    }

    pub fn right_period(&self) -> &[u32] {
        &self.right
    }

    /// Coordinate of the first center symbol.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// One past the last center coordinate.
    pub fn end(&self) -> i64 {
        self.start + self.center.len() as i64
    }

    pub fn at(&self, i: i64) -> u32 {
        if i < self.start {
            let l = self.left.len() as i64;
            self.left[(i - self.start).rem_euclid(l) as usize]
        } else if i < self.end() {
            self.center[(i - self.start) as usize]
        } else {
            let r = self.right.len() as i64;
            self.right[(i - self.end()).rem_euclid(r) as usize]
        }
    }

    /// `x[lo..hi)`.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u32> {
        (lo..hi).map(|i| self.at(i)).collect()
    }

    /// `sigma^k(x)`, i.e. `y[i] = x[i + k]`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut c = self.clone();
        c.start -= k;
        c.normalize();
        c
    }

    /// Replace `x[i]` by `s`.
    pub fn with_symbol(&self, i: i64, s: u32) -> Self {
        let lo = self.start.min(i);
        let hi = self.end().max(i + 1);
        Self::from_fn(lo, hi, self.left.len(), self.right.len(), |j| {
            if j == i {
                s
            } else {
                self.at(j)
            }
        })
    }

    /// Whether both halves share one period, i.e. `x` is a periodic point.
    pub fn is_periodic(&self) -> bool {
        self.center.is_empty() && self.left == self.right
    }

    /// Positions where `self` and `other` differ, within the span where
    /// they are not both periodic. `None` if they differ on a periodic tail.
    pub fn diff_positions(&self, other: &Configuration) -> Option<Vec<i64>> {
        let lp = self.left.len().lcm(&other.left.len()) as i64;
        let rp = self.right.len().lcm(&other.right.len()) as i64;
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end());
        if (lo - lp..lo).any(|i| self.at(i) != other.at(i))
            || (hi..hi + rp).any(|i| self.at(i) != other.at(i))
        {
            return None;
        }
        Some((lo..hi).filter(|&i| self.at(i) != other.at(i)).collect())
    }

    /// Check every window of the ambient's characteristic length around
    /// the center (exact for SFT ambients, bounded for the others).
    pub fn check_admissible(&self, amb: &Ambient) -> Result<(), ConfigError> {
        let k = amb.check_len() as i64;
        let lp = self.left.len() as i64;
        let rp = self.right.len() as i64;
        let lo = self.start - k - 2 * lp;
        let hi = self.end() + k + 2 * rp;
        let w = self.window(lo, hi);
        if amb.admissible(&w) {
            Ok(())
        } else {
            // report a minimal forbidden factor
            let e = (1..=w.len()).find(|&e| !amb.admissible(&w[..e])).unwrap_or(w.len());
            let s = (0..e).rev().find(|&s| !amb.admissible(&w[s..e])).unwrap_or(0);
            Err(ConfigError::Inadmissible {
                start: lo + s as i64,
                word: w[s..e].to_vec(),
            })
        }
    }

    /// Split a product configuration into its two tracks.
    pub fn tracks(&self, amb: &Ambient) -> Option<(Configuration, Configuration)> {
        let (lp, rp) = (self.left.len(), self.right.len());
        let split = |i| amb.split(self.at(i));
        split(self.start)?;
        let x = Self::from_fn(self.start, self.end(), lp, rp, |i| split(i).map_or(0, |p| p.0));
        let y = Self::from_fn(self.start, self.end(), lp, rp, |i| split(i).map_or(0, |p| p.1));
        Some((x, y))
    }

    /// Pair two configurations into one over a product ambient.
    pub fn zip(amb: &Ambient, x: &Configuration, y: &Configuration) -> Option<Configuration> {
        let lo = x.start.min(y.start);
        let hi = x.end().max(y.end());
        let lp = x.left.len().lcm(&y.left.len());
        let rp = x.right.len().lcm(&y.right.len());
        amb.join(x.at(lo), y.at(lo))?;
        Some(Self::from_fn(lo, hi, lp, rp, |i| amb.join(x.at(i), y.at(i)).unwrap_or(0)))
    }

    fn normalize(&mut self) {
        let l = primitive_root_len(&self.left);
        self.left.truncate(l);
        let r = primitive_root_len(&self.right);
        self.right.truncate(r);
        // absorb center symbols that continue the periodic parts
        let mut skip = 0;
        while skip < self.center.len() && self.center[skip] == self.left[0] {
            self.left.rotate_left(1);
            skip += 1;
        }
        self.center.drain(..skip);
        self.start += skip as i64;
        while let Some(&last) = self.center.last() {
            if last != self.right[self.right.len() - 1] {
                break;
            }
            self.right.rotate_right(1);
            self.center.pop();
        }
        if self.center.is_empty() && self.left.len() == self.right.len() {
            // u^inf v^inf with v a rotation continuing u is periodic
            if self.left == self.right {
                let p = self.left.len() as i64;
                let shift = self.start.rem_euclid(p);
                self.left.rotate_right(shift as usize);
                self.right = self.left.clone();
                self.start -= shift;
                debug_assert_eq!(self.start.rem_euclid(p), 0);
                self.start = 0;
            }
        }
    }

    /// Parse `u^inf w1 . w2 v^inf`. Digits are comma-separated; periods may
    /// be parenthesized, `(1,0)^inf`; the dot marks coordinate 0 (if absent,
    /// the center starts at 0). With a product ambient, a symbol may be
    /// written as a pair `a:b`.
    pub fn parse(text: &str, amb: Option<&Ambient>) -> Result<Self, ConfigError> {
        let spaced = text.replace('.', " . ");
        let tokens: Vec<&str> = spaced.split_whitespace().collect();
        let bad = |m: &str| ConfigError::Parse(format!("{m} in `{text}`"));
        let parse_syms = |tok: &str| -> Result<Vec<u32>, ConfigError> {
            let tok = tok.trim_start_matches('(').trim_end_matches(')');
            tok.split(',')
                .filter(|s| !s.is_empty())
                .map(|s| parse_symbol(s, amb).ok_or_else(|| bad(&format!("bad symbol `{s}`"))))
                .collect()
        };
        fn period(tok: &str) -> Option<&str> {
            tok.strip_suffix("^inf")
        }
        let (first, last) = match (tokens.first(), tokens.last()) {
            (Some(a), Some(b)) if tokens.len() >= 2 => (*a, *b),
            _ => return Err(bad("expected `u^inf ... v^inf`")),
        };
        let left = parse_syms(period(first).ok_or_else(|| bad("left part must end in ^inf"))?)?;
        let right = parse_syms(period(last).ok_or_else(|| bad("right part must end in ^inf"))?)?;
        let mut before = Vec::new();
        let mut after = Vec::new();
        let mut seen_dot = false;
        for tok in &tokens[1..tokens.len() - 1] {
            if *tok == "." {
                if seen_dot {
                    return Err(bad("more than one origin marker"));
                }
                seen_dot = true;
            } else if period(tok).is_some() {
                return Err(bad("periodic part in the middle"));
            } else if seen_dot {
                after.extend(parse_syms(tok)?);
            } else {
                before.extend(parse_syms(tok)?);
            }
        }
        if !seen_dot {
            std::mem::swap(&mut before, &mut after);
        }
        let start = -(before.len() as i64);
        before.extend(after);
        Self::new(left, before, right, start)
    }
}

fn parse_symbol(s: &str, amb: Option<&Ambient>) -> Option<u32> {
    match s.split_once(':') {
        Some((a, b)) => amb?.join(a.trim().parse().ok()?, b.trim().parse().ok()?),
        None => s.trim().parse().ok(),
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.diff_positions(other).is_some_and(|d| d.is_empty())
    }
}

impl Eq for Configuration {}

fn join(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.start.min(0);
        let hi = self.end().max(0);
        write!(f, "({})^inf ", join(&self.left))?;
        let before = self.window(lo, 0);
        if !before.is_empty() {
            write!(f, "{} ", join(&before))?;
        }
        write!(f, ".")?;
        let after = self.window(0, hi);
        if !after.is_empty() {
            write!(f, " {}", join(&after))?;
        }
        write!(f, " ({})^inf", join(&self.right))
    }
}

impl SlidingBlockCode {
    /// Image of an eventually periodic configuration. The periods keep
    /// their lengths (before reduction to primitive roots).
    pub fn apply(&self, x: &Configuration) -> Result<Configuration, CodeError> {
        let (m, a) = (self.memory(), self.anticipation());
        let lo = x.start() - a;
        let hi = x.end() - m;
        let lp = x.left_period().len() as i64;
        let rp = x.right_period().len() as i64;
        let mut ys = Vec::with_capacity((hi - lo + lp + rp) as usize);
        for i in lo - lp..hi + rp {
            let w = x.window(i + m, i + a + 1);
            ys.push(self.lookup(&w).ok_or(CodeError::InadmissibleInput(w))?);
        }
        let left = ys[..lp as usize].to_vec();
        let center = ys[lp as usize..(lp + hi - lo) as usize].to_vec();
        let right = ys[(lp + hi - lo) as usize..].to_vec();
        Ok(Configuration::new(left, center, right, lo).expect("nonempty periods"))
    }

    /// `F^t(x)` for `t = 0..=steps`.
    pub fn orbit(&self, x: &Configuration, steps: usize) -> Result<Vec<Configuration>, CodeError> {
        let mut out = Vec::with_capacity(steps + 1);
        out.push(x.clone());
        for _ in 0..steps {
            let next = self.apply(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let x = Configuration::new(vec![0, 0], vec![0, 1, 0], vec![0], -1).unwrap();
        assert_eq!(x.left_period(), &[0]);
        assert_eq!(x.center(), &[1]);
        assert_eq!(x.start(), 0);
        assert_eq!(x, Configuration::finite(0, &[1], 0));
        let p = Configuration::periodic(&[1, 0]).unwrap();
        assert!(p.is_periodic());
        assert_eq!(p.shifted(2), p);
        assert_ne!(p.shifted(1), p);
        assert_eq!(p.shifted(1), Configuration::periodic(&[0, 1]).unwrap());
    }

    #[test]
    fn indexing() {
        let x = Configuration::new(vec![1, 2], vec![7], vec![3, 4, 5], 10).unwrap();
        assert_eq!(x.window(6, 15), vec![1, 2, 1, 2, 7, 3, 4, 5, 3]);
    }

    #[test]
    fn parse_and_display() {
        let x = Configuration::parse("0^inf . 1 0^inf", None).unwrap();
        assert_eq!(x, Configuration::finite(0, &[1], 0));
        assert_eq!(x.to_string(), "(0)^inf . 1 (0)^inf");
        let y = Configuration::parse("(1,0)^inf 2,2 . 3 (0)^inf", None).unwrap();
        assert_eq!(y.window(-3, 2), vec![0, 2, 2, 3, 0]);
        assert_eq!(Configuration::parse(&y.to_string(), None).unwrap(), y);
        assert!(Configuration::parse("0 1 0^inf", None).is_err());
        let amb = Ambient::product(Ambient::full(2), Ambient::full(3));
        let z = Configuration::parse("0^inf . 1:2 0^inf", Some(&amb)).unwrap();
        assert_eq!(z.at(0), 5);
    }

    #[test]
    fn shift_moves_origin() {
        let amb = Ambient::full(2);
        let s = SlidingBlockCode::shift(&amb);
        let x = Configuration::finite(0, &[1, 1, 0, 1], 3);
        assert_eq!(s.apply(&x).unwrap(), x.shifted(1));
        assert_eq!(s.apply(&x).unwrap().start(), 2);
        let id = SlidingBlockCode::identity(&amb);
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn product_tracks_move_apart() {
        let amb = Ambient::product(Ambient::full(2), Ambient::full(3));
        let f = crate::code::builtin("shift-x-inverse-shift", &amb).unwrap();
        let x = Configuration::finite(0, &[1], 0);
        let y = Configuration::finite(0, &[2], 0);
        let z = Configuration::zip(&amb, &x, &y).unwrap();
        let (a, b) = f.apply(&z).unwrap().tracks(&amb).unwrap();
        assert_eq!(a, Configuration::finite(0, &[1], -1));
        assert_eq!(b, Configuration::finite(0, &[2], 1));
    }

    #[test]
    fn inadmissible_detected() {
        let g = Ambient::from_spec(&crate::shift::AmbientSpec::Beta {
            digits: Some(vec![1, 1]),
            equation: None,
            horizon: None,
        })
        .unwrap();
        assert!(Configuration::finite(0, &[1, 0, 1], 0).check_admissible(&g).is_ok());
        assert!(matches!(
            Configuration::finite(0, &[1, 1], 4).check_admissible(&g),
            Err(ConfigError::Inadmissible { start: 4, .. })
        ));
        assert!(Configuration::periodic(&[1]).unwrap().check_admissible(&g).is_err());
    }
}
