//! Cellular automaton experiments: space-time diagrams, bounded blocking
//! word verification, blocking candidates read off a digit expansion, and
//! a seeded sensitivity probe along directions `p/q`.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::beta::BetaShiftDescriptor;
use crate::code::{CodeError, SlidingBlockCode};
use crate::config::{ConfigError, Configuration};
use crate::shift::{Ambient, ShiftError};
use crate::word::DigitWord;

/// Default cap on the number of extensions enumerated per step.
pub const EXTENSION_BUDGET: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CaError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("rule maps {0} to a different shift; not a cellular automaton")]
    NotCellular(String),
    #[error("need e >= 1 and 0 <= p <= |w| - e (got e = {e}, p = {p}, |w| = {len})")]
    BadBlockingParameters { e: usize, p: usize, len: usize },
    #[error("word {0:?} is not admissible")]
    InadmissibleWord(Vec<u32>),
    #[error("more than {budget} extensions of the word at step {step}")]
    SpanTooLarge { step: usize, budget: usize },
    #[error("no word of length {len} with two continuations in the first {scanned} digits")]
    NoBranchingFound { len: usize, scanned: usize },
    #[error("steps must be positive")]
    NoSteps,
    #[error("could not sample a configuration with an admissible flip at the origin")]
    NoFlip,
}

fn require_ca(f: &SlidingBlockCode) -> Result<(), CaError> {
    if f.is_cellular_automaton() {
        Ok(())
    } else {
        Err(CaError::NotCellular(f.input().to_string()))
    }
}

/// Rows `F^t(x)[left..=right]` for `t = 0..steps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceTime {
    pub left: i64,
    pub right: i64,
    pub alphabet_size: u32,
    pub rows: Vec<Vec<u32>>,
}

pub fn space_time(
    f: &SlidingBlockCode,
    x: &Configuration,
    steps: usize,
    left: i64,
    right: i64,
) -> Result<SpaceTime, CaError> {
    require_ca(f)?;
    if steps == 0 {
        return Err(CaError::NoSteps);
    }
    let orbit = f.orbit(x, steps - 1)?;
    Ok(SpaceTime {
        left,
        right,
        alphabet_size: f.input().alphabet_size(),
        rows: orbit.iter().map(|c| c.window(left, right + 1)).collect(),
    })
}

const GLYPHS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

impl SpaceTime {
    /// One line per row; single characters when the alphabet allows it.
    pub fn to_ascii(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            if (self.alphabet_size as usize) <= GLYPHS.len() {
                out.extend(row.iter().map(|&s| GLYPHS[s as usize] as char));
            } else {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                out.push_str(&cells.join(","));
            }
            out.push('\n');
        }
        out
    }

    /// Binary PGM (P5), symbol 0 white and the largest symbol black.
    pub fn to_pgm(&self) -> Vec<u8> {
        let w = (self.right - self.left + 1).max(0) as usize;
        let h = self.rows.len();
        let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
        let top = self.alphabet_size.saturating_sub(1).max(1);
        for row in &self.rows {
            out.extend(row.iter().map(|&s| (255 - s.min(top) * 255 / top) as u8));
        }
        out
    }
}

/// Outcome of a bounded blocking check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BlockingStatus {
    VerifiedUpTo { n: usize },
    /// Two admissible extensions of the word that disagree on the window
    /// at `step`. Both start at coordinate `span_start`.
    Refuted {
        step: usize,
        span_start: i64,
        first: Vec<u32>,
        second: Vec<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingCertificate {
    pub word: Vec<u32>,
    pub e: usize,
    pub p: usize,
    pub max_steps: usize,
    /// Whether `e >= r + 1`, as a blocking word requires. Narrower windows
    /// are still checked exactly.
    pub meets_definition: bool,
    /// Extensions enumerated at each step.
    pub extensions: Vec<usize>,
    #[serde(flatten)]
    pub status: BlockingStatus,
}

/// Simulate `F^step` on a finite word sitting at `[start, start + |w|)`
/// and return the resulting symbols on `[lo, hi)`.
fn window_after(
    f: &SlidingBlockCode,
    w: &[u32],
    start: i64,
    step: usize,
    lo: i64,
    hi: i64,
) -> Result<Vec<u32>, CodeError> {
    let mut cur = w.to_vec();
    let mut s = start;
    for _ in 0..step {
        cur = f.apply_word(&cur)?;
        s -= f.memory();
    }
    Ok(((lo - s) as usize..(hi - s) as usize).map(|i| cur[i]).collect())
}

impl BlockingCertificate {
    /// Re-run a refutation: both witnesses must contain the word at 0 and
    /// give different windows after `step` steps.
    pub fn recheck(&self, f: &SlidingBlockCode) -> bool {
        let BlockingStatus::Refuted {
            step,
            span_start,
            first,
            second,
        } = &self.status
        else {
            return true;
        };
        let off = (-span_start) as usize;
        let contains = |x: &Vec<u32>| x.get(off..off + self.word.len()) == Some(&self.word[..]);
        if !contains(first) || !contains(second) {
            return false;
        }
        let amb = f.input();
        if !amb.admissible(first) || !amb.admissible(second) {
            return false;
        }
        let lo = self.p as i64;
        let hi = lo + self.e as i64;
        match (
            window_after(f, first, *span_start, *step, lo, hi),
            window_after(f, second, *span_start, *step, lo, hi),
        ) {
            (Ok(a), Ok(b)) => a != b,
            _ => false,
        }
    }
}

/// Check that for every `n <= max_steps` the window `F^n(x)[p, p+e-1]` is
/// the same for all `x` with `x[0, |w|) = w`. Exact for each `n`: the
/// window only depends on `x[p + n m, p + e - 1 + n a]`, and every
/// admissible filling of that span around `w` is enumerated.
pub fn verify_blocking(
    f: &SlidingBlockCode,
    w: &[u32],
    e: usize,
    p: usize,
    max_steps: usize,
    budget: usize,
) -> Result<BlockingCertificate, CaError> {
    require_ca(f)?;
    let r = f.radius() as usize;
    if e == 0 || p + e > w.len() {
        return Err(CaError::BadBlockingParameters { e, p, len: w.len() });
    }
    let meets_definition = e > r;
    let amb = f.input();
    if !amb.admissible(w) {
        return Err(CaError::InadmissibleWord(w.to_vec()));
    }
    let (m, a) = (f.memory(), f.anticipation());
    let (p_i, e_i, len) = (p as i64, e as i64, w.len() as i64);
    let mut extensions = Vec::new();
    for n in 1..=max_steps {
        let ni = n as i64;
        let lo = (p_i + ni * m).min(0);
        let hi = (p_i + e_i - 1 + ni * a).max(len - 1) + 1;
        let fixed = |i: usize| {
            let c = lo + i as i64;
            (0..len).contains(&c).then(|| w[c as usize])
        };
        let exts = amb
            .enumerate((hi - lo) as usize, &fixed, budget)
            .map_err(|err| match err {
                ShiftError::TooMany { budget, .. } => CaError::SpanTooLarge { step: n, budget },
                other => CaError::Code(other.into()),
            })?;
        extensions.push(exts.len());
        let mut reference = None;
        for x in &exts {
            let win = window_after(f, x, lo, n, p_i, p_i + e_i)?;
            let Some((first, first_win)) = &reference else {
                reference = Some((x, win));
                continue;
            };
            if win != *first_win {
                return Ok(BlockingCertificate {
                    word: w.to_vec(),
                    e,
                    p,
                    max_steps,
                    meets_definition,
                    extensions,
                    status: BlockingStatus::Refuted {
                        step: n,
                        span_start: lo,
                        first: (*first).clone(),
                        second: x.clone(),
                    },
                });
            }
        }
    }
    Ok(BlockingCertificate {
        word: w.to_vec(),
        e,
        p,
        max_steps,
        meets_definition,
        extensions,
        status: BlockingStatus::VerifiedUpTo { n: max_steps },
    })
}

/// A prefix `p = p' u b` of the expansion where `u` (length `3r`) is also
/// followed by some `a < b` elsewhere in the scanned digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingCandidate {
    pub word: DigitWord,
    pub u: DigitWord,
    pub a: u64,
    pub b: u64,
    /// Window length `r + 1`.
    pub e: usize,
    /// Window start, chosen so the window ends at `|p| - 2`.
    pub offset: usize,
    pub scanned: usize,
}

/// Scan the first `scan` digits of `d*(beta)` (fewer if only a shorter
/// prefix is known) for a branching word of length `3r`.
pub fn blocking_candidate_from_expansion(
    desc: &BetaShiftDescriptor,
    r: usize,
    scan: usize,
) -> Result<BlockingCandidate, CaError> {
    let len = 3 * r;
    let digits = desc.dstar.prefix(scan);
    let n = digits.len();
    // smallest continuation of each word of length 3r
    let mut least: HashMap<&[u64], u64> = HashMap::new();
    for i in 0..n.saturating_sub(len) {
        let c = digits[i + len];
        least
            .entry(&digits[i..i + len])
            .and_modify(|v| *v = (*v).min(c))
            .or_insert(c);
    }
    for end in len..n {
        let u = &digits[end - len..end];
        let b = digits[end];
        if let Some(&a) = least.get(u) {
            if a < b {
                let word = DigitWord(digits[..=end].to_vec());
                let e = r + 1;
                let offset = (end + 1).saturating_sub(1 + e);
                return Ok(BlockingCandidate {
                    word,
                    u: DigitWord(u.to_vec()),
                    a,
                    b,
                    e,
                    offset,
                    scanned: n,
                });
            }
        }
    }
    Err(CaError::NoBranchingFound { len, scanned: n })
}

/// Heuristic label for a probed direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeFlag {
    EquicontinuityLike,
    SensitiveLike,
    Unclear,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusStats {
    pub min: u64,
    pub median: u64,
    pub max: u64,
}

impl RadiusStats {
    fn of(mut v: Vec<u64>) -> Self {
        v.sort_unstable();
        RadiusStats {
            min: v.first().copied().unwrap_or(0),
            median: v.get(v.len() / 2).copied().unwrap_or(0),
            max: v.last().copied().unwrap_or(0),
        }
    }
}

/// Spread of a one-site perturbation under `sigma^p o F^q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub p: i64,
    pub q: i64,
    pub trials: usize,
    pub steps: usize,
    pub seed: u64,
    /// Difference radius after `steps / 2` steps.
    pub half: RadiusStats,
    /// Difference radius after `steps` steps.
    pub full: RadiusStats,
    pub flag: ProbeFlag,
}

/// Half-width of the random part of sampled configurations.
pub const PROBE_HALF_WIDTH: usize = 16;

/// Random admissible configuration around the origin: a sampled word padded
/// with the filler symbol, or a sampled periodic point if there is none.
fn sample_configuration(amb: &Ambient, rng: &mut ChaCha8Rng) -> Option<Configuration> {
    let len = 2 * PROBE_HALF_WIDTH + 1;
    let start = -(PROBE_HALF_WIDTH as i64);
    if let Some(fill) = amb.filler() {
        let w = amb.sample_word(len, rng)?;
        return Some(Configuration::finite(fill, &w, start));
    }
    for _ in 0..64 {
        let w = amb.sample_word(len, rng)?;
        let x = Configuration::periodic(&w).ok()?.shifted(-start);
        if x.check_admissible(amb).is_ok() {
            return Some(x);
        }
    }
    None
}

/// Symbols that differ from `s` on every track.
fn flips(amb: &Ambient, s: u32) -> Vec<u32> {
    (0..amb.alphabet_size())
        .filter(|&t| differs_everywhere(amb, s, t))
        .collect()
}

fn differs_everywhere(amb: &Ambient, s: u32, t: u32) -> bool {
    match amb {
        Ambient::Product(a, b) => {
            let (Some((s1, s2)), Some((t1, t2))) = (amb.split(s), amb.split(t)) else {
                return false;
            };
            differs_everywhere(a, s1, t1) && differs_everywhere(b, s2, t2)
        }
        _ => s != t,
    }
}

fn perturbed_pair(amb: &Ambient, rng: &mut ChaCha8Rng) -> Option<(Configuration, Configuration)> {
    for _ in 0..64 {
        let x = sample_configuration(amb, rng)?;
        let mut cands = flips(amb, x.at(0));
        cands.shuffle(rng);
        for s in cands {
            let y = x.with_symbol(0, s);
            if y.check_admissible(amb).is_ok() {
                return Some((x, y));
            }
        }
    }
    None
}

fn radius(x: &Configuration, y: &Configuration) -> u64 {
    match x.diff_positions(y) {
        Some(d) => d.iter().map(|i| i.unsigned_abs()).max().unwrap_or(0),
        None => u64::MAX,
    }
}

/// Perturb one site of a random configuration (every track of a product
/// symbol is changed) and follow both orbits under `G = sigma^p o F^q`.
/// The radius of a trial is the largest `|i|` with `G^t(x)[i] != G^t(y)[i]`.
/// Median radius 0 is flagged equicontinuity-like; a positive median that
/// grows from `steps / 2` to `steps` is flagged sensitive-like.
pub fn sensitivity_probe(
    f: &SlidingBlockCode,
    p: i64,
    q: i64,
    trials: usize,
    steps: usize,
    seed: u64,
) -> Result<ProbeReport, CaError> {
    require_ca(f)?;
    if steps == 0 {
        return Err(CaError::NoSteps);
    }
    let g = f.with_shift(p, q)?;
    let amb = f.input();
    let results: Vec<Result<(u64, u64), CaError>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let (mut x, mut y) = perturbed_pair(amb, &mut rng).ok_or(CaError::NoFlip)?;
            let mut half = 0;
            for step in 1..=steps {
                x = g.apply(&x)?;
                y = g.apply(&y)?;
                if step == steps / 2 {
                    half = radius(&x, &y);
                }
            }
            if steps / 2 == 0 {
                half = radius(&x, &y);
            }
            Ok((half, radius(&x, &y)))
        })
        .collect();
    let pairs: Vec<(u64, u64)> = results.into_iter().collect::<Result<_, _>>()?;
    let half = RadiusStats::of(pairs.iter().map(|p| p.0).collect());
    let full = RadiusStats::of(pairs.iter().map(|p| p.1).collect());
    let flag = if full.median == 0 {
        ProbeFlag::EquicontinuityLike
    } else if full.median > half.median {
        ProbeFlag::SensitiveLike
    } else {
        ProbeFlag::Unclear
    };
    Ok(ProbeReport {
        p,
        q,
        trials,
        steps,
        seed,
        half,
        full,
        flag,
    })
}
