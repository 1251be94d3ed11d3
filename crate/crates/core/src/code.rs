//! Sliding block codes `F(x)[i] = f(x[i+m], ..., x[i+a])` between ambient
//! shifts, stored as total tables on the admissible windows of the input.
//!
//! The shift map is `sigma(x)[i] = x[i+1]`, i.e. memory = anticipation = 1.
//! Composition adds windows: `F o G` reads `[m_F + m_G, a_F + a_G]`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shift::{Ambient, AmbientSpec, ShiftError};

/// Default cap on the number of windows in a rule table.
pub const TABLE_BUDGET: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("memory {memory} exceeds anticipation {anticipation}")]
    BadWindow { memory: i64, anticipation: i64 },
    #[error("rule has no entry for admissible window {0:?}")]
    MissingWindow(Vec<u32>),
    #[error("rule output {symbol} is outside the output alphabet")]
    BadOutput { symbol: u32 },
    #[error("window {0:?} is not admissible in the input shift")]
    InadmissibleInput(Vec<u32>),
    #[error("output of the inner code does not live in the input of the outer code")]
    AmbientMismatch,
    #[error("image of admissible block {block:?} is {image:?}, which is not admissible")]
    NotClosed { block: Vec<u32>, image: Vec<u32> },
    #[error("direction {p}/{q} needs q > 0 and gcd(p, q) = 1")]
    BadDirection { p: i64, q: i64 },
    #[error("cannot parse rule: {0}")]
    Parse(String),
}

/// A sliding block code between two ambient shifts.
#[derive(Clone, Debug)]
pub struct SlidingBlockCode {
    input: Ambient,
    output: Ambient,
    memory: i64,
    anticipation: i64,
    table: Arc<HashMap<Vec<u32>, u32>>,
}

impl SlidingBlockCode {
    /// Tabulate `f` on every admissible window of length `a - m + 1`.
    pub fn from_fn(
        input: Ambient,
        output: Ambient,
        memory: i64,
        anticipation: i64,
        mut f: impl FnMut(&[u32]) -> u32,
    ) -> Result<Self, CodeError> {
        if memory > anticipation {
            return Err(CodeError::BadWindow {
                memory,
                anticipation,
            });
        }
        let len = (anticipation - memory + 1) as usize;
        let k = output.alphabet_size();
        let mut table = HashMap::new();
        for w in input.words(len, TABLE_BUDGET)? {
            let s = f(&w);
            if s >= k {
                return Err(CodeError::BadOutput { symbol: s });
            }
            table.insert(w, s);
        }
        Ok(SlidingBlockCode {
            input,
            output,
            memory,
            anticipation,
            table: Arc::new(table),
        })
    }

    /// Build from explicit entries; every admissible window must be covered.
    /// Entries for inadmissible windows are ignored.
    pub fn from_table(
        input: Ambient,
        output: Ambient,
        memory: i64,
        anticipation: i64,
        entries: &HashMap<Vec<u32>, u32>,
    ) -> Result<Self, CodeError> {
        if memory > anticipation {
            return Err(CodeError::BadWindow {
                memory,
                anticipation,
            });
        }
        let len = (anticipation - memory + 1) as usize;
        let k = output.alphabet_size();
        let mut table = HashMap::new();
        for w in input.words(len, TABLE_BUDGET)? {
            let s = *entries.get(&w).ok_or_else(|| CodeError::MissingWindow(w.clone()))?;
            if s >= k {
                return Err(CodeError::BadOutput { symbol: s });
            }
            table.insert(w, s);
        }
        Ok(SlidingBlockCode {
            input,
            output,
            memory,
            anticipation,
            table: Arc::new(table),
        })
    }

    pub fn identity(amb: &Ambient) -> Self {
        Self::shift_power(amb, 0)
    }

    /// `sigma`: `x[i] -> x[i+1]`.
    pub fn shift(amb: &Ambient) -> Self {
        Self::shift_power(amb, 1)
    }

    /// `sigma^p` (negative `p` shifts right).
    pub fn shift_power(amb: &Ambient, p: i64) -> Self {
        let table = (0..amb.alphabet_size()).map(|s| (vec![s], s)).collect();
        SlidingBlockCode {
            input: amb.clone(),
            output: amb.clone(),
            memory: p,
            anticipation: p,
            table: Arc::new(table),
        }
    }

    /// `F x G` acting on the product of the two input shifts.
    pub fn product(f: &SlidingBlockCode, g: &SlidingBlockCode) -> Result<Self, CodeError> {
        let input = Ambient::product(f.input.clone(), g.input.clone());
        let output = Ambient::product(f.output.clone(), g.output.clone());
        let m = f.memory.min(g.memory);
        let a = f.anticipation.max(g.anticipation);
        let k = g.output.alphabet_size();
        let kin = g.input.alphabet_size();
        let (fm, fa, gm, ga) = (f.memory, f.anticipation, g.memory, g.anticipation);
        let mut missing = None;
        let code = Self::from_fn(input, output, m, a, |w| {
            let x: Vec<u32> = w.iter().map(|s| s / kin).collect();
            let y: Vec<u32> = w.iter().map(|s| s % kin).collect();
            let fx = f.lookup(&x[(fm - m) as usize..=(fa - m) as usize]);
            let gy = g.lookup(&y[(gm - m) as usize..=(ga - m) as usize]);
            match (fx, gy) {
                (Some(u), Some(v)) => u * k + v,
                _ => {
                    missing = Some(w.to_vec());
                    0
                }
            }
        })?;
        match missing {
            Some(w) => Err(CodeError::MissingWindow(w)),
            None => Ok(code),
        }
    }

    pub fn input(&self) -> &Ambient {
        &self.input
    }

    pub fn output(&self) -> &Ambient {
        &self.output
    }

    pub fn memory(&self) -> i64 {
        self.memory
    }

    pub fn anticipation(&self) -> i64 {
        self.anticipation
    }

    /// `a - m`.
    pub fn diameter(&self) -> i64 {
        self.anticipation - self.memory
    }

    /// `max(-m, a, 0)`: how far information can travel in one step.
    pub fn radius(&self) -> i64 {
        (-self.memory).max(self.anticipation).max(0)
    }

    pub fn is_cellular_automaton(&self) -> bool {
        self.input == self.output
    }

    pub fn lookup(&self, window: &[u32]) -> Option<u32> {
        self.table.get(window).copied()
    }

    /// Number of table entries.
    pub fn table_len(&self) -> usize {
        self.table.len()
    }

    /// Table entries sorted by window.
    pub fn entries(&self) -> Vec<(Vec<u32>, u32)> {
        let mut v: Vec<_> = self.table.iter().map(|(k, v)| (k.clone(), *v)).collect();
        v.sort();
        v
    }

    /// Image of a finite word. If `w` sits at positions `[s, s + |w|)` the
    /// image sits at `[s - m, s + |w| - 1 - a]`.
    pub fn apply_word(&self, w: &[u32]) -> Result<Vec<u32>, CodeError> {
        let len = (self.anticipation - self.memory + 1) as usize;
        if w.len() < len {
            return Ok(Vec::new());
        }
        w.windows(len)
            .map(|win| self.lookup(win).ok_or_else(|| CodeError::InadmissibleInput(win.to_vec())))
            .collect()
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &SlidingBlockCode) -> Result<SlidingBlockCode, CodeError> {
        if inner.output != self.input {
            return Err(CodeError::AmbientMismatch);
        }
        let m = self.memory + inner.memory;
        let a = self.anticipation + inner.anticipation;
        let len = (a - m + 1) as usize;
        let mut table = HashMap::new();
        for w in inner.input.words(len, TABLE_BUDGET)? {
            let mid = inner.apply_word(&w)?;
            let s = self.lookup(&mid).ok_or_else(|| CodeError::NotClosed {
                block: w.clone(),
                image: mid.clone(),
            })?;
            table.insert(w, s);
        }
        Ok(SlidingBlockCode {
            input: inner.input.clone(),
            output: self.output.clone(),
            memory: m,
            anticipation: a,
            table: Arc::new(table),
        })
    }

    /// `F^q` for a cellular automaton (`q = 0` gives the identity).
    pub fn power(&self, q: u32) -> Result<SlidingBlockCode, CodeError> {
        if !self.is_cellular_automaton() {
            return Err(CodeError::AmbientMismatch);
        }
        let mut acc = SlidingBlockCode::identity(&self.input);
        for _ in 0..q {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `sigma^p o F^q` with `q > 0` and `gcd(p, q) = 1`.
    pub fn with_shift(&self, p: i64, q: i64) -> Result<SlidingBlockCode, CodeError> {
        if q <= 0 || p.gcd(&q) != 1 {
            return Err(CodeError::BadDirection { p, q });
        }
        let fq = self.power(q as u32)?;
        SlidingBlockCode::shift_power(&self.output, p).compose(&fq)
    }

    /// Same map on configurations (compared on a common window).
    pub fn same_map(&self, other: &SlidingBlockCode) -> Result<bool, CodeError> {
        if self.input != other.input || self.output != other.output {
            return Ok(false);
        }
        let m = self.memory.min(other.memory);
        let a = self.anticipation.max(other.anticipation);
        let len = (a - m + 1) as usize;
        for w in self.input.words(len, TABLE_BUDGET)? {
            let x = &w[(self.memory - m) as usize..=(self.anticipation - m) as usize];
            let y = &w[(other.memory - m) as usize..=(other.anticipation - m) as usize];
            if self.lookup(x) != other.lookup(y) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Check that admissible blocks of length `len` map to admissible blocks.
    pub fn check_closure(&self, len: usize) -> Result<(), CodeError> {
        let wlen = len + self.diameter() as usize;
        for w in self.input.words(wlen, TABLE_BUDGET)? {
            let img = self.apply_word(&w)?;
            if !self.output.admissible(&img) {
                return Err(CodeError::NotClosed { block: w, image: img });
            }
        }
        Ok(())
    }

    pub fn to_spec(&self) -> RuleSpec {
        RuleSpec {
            ambient: self.input.to_spec(),
            output: (!self.is_cellular_automaton()).then(|| self.output.to_spec()),
            builtin: None,
            memory: Some(self.memory),
            anticipation: Some(self.anticipation),
            table: Some(
                self.entries()
                    .into_iter()
                    .map(|(window, out)| RuleEntry { window, out })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for SlidingBlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sliding block code on {} -> {}, window [{}, {}], {} entries",
            self.input,
            self.output,
            self.memory,
            self.anticipation,
            self.table.len()
        )
    }
}

/// One rule-table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEntry {
    pub window: Vec<u32>,
    pub out: u32,
}

/// JSON rule file: an ambient plus either a builtin name or an explicit
/// table. Builtins: `identity`, `shift`, `inverse-shift`, and on product
/// ambients `shift-x-inverse-shift` (`(x, y) -> (sigma x, sigma^-1 y)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleSpec {
    pub ambient: AmbientSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<AmbientSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub memory: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anticipation: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<RuleEntry>>,
}

impl RuleSpec {
    pub fn build(&self) -> Result<SlidingBlockCode, CodeError> {
        let input = Ambient::from_spec(&self.ambient)?;
        if let Some(name) = &self.builtin {
            return builtin(name, &input);
        }
        let output = match &self.output {
            Some(o) => Ambient::from_spec(o)?,
            None => input.clone(),
        };
        let (Some(m), Some(a), Some(rows)) = (self.memory, self.anticipation, &self.table) else {
            return Err(CodeError::Parse(
                "rule needs `builtin`, or `memory`, `anticipation` and `table`".into(),
            ));
        };
        let entries: HashMap<Vec<u32>, u32> = rows.iter().map(|r| (r.window.clone(), r.out)).collect();
        SlidingBlockCode::from_table(input, output, m, a, &entries)
    }
}

/// Named rules on an ambient.
pub fn builtin(name: &str, amb: &Ambient) -> Result<SlidingBlockCode, CodeError> {
    match name {
        "identity" => Ok(SlidingBlockCode::identity(amb)),
        "shift" => Ok(SlidingBlockCode::shift(amb)),
        "inverse-shift" => Ok(SlidingBlockCode::shift_power(amb, -1)),
        "shift-x-inverse-shift" => match amb {
            Ambient::Product(a, b) => SlidingBlockCode::product(
                &SlidingBlockCode::shift(a),
                &SlidingBlockCode::shift_power(b, -1),
            ),
            _ => Err(CodeError::Parse(
                "`shift-x-inverse-shift` needs a product ambient".into(),
            )),
        },
        other => Err(CodeError::Parse(format!("unknown builtin `{other}`"))),
    }
}
