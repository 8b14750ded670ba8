use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded Betti numbers `β_{i,j}(I)` of an ideal `I` (not of `S/I`).
/// Absent cells are zero; stored cells are positive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), u64)>) -> Self {
        let mut t = Self::new();
        for ((i, j), b) in entries {
            t.add(i, j, b);
        }
        t
    }

    pub fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    pub fn merge(&mut self, other: &BettiTable) {
        for (&(i, j), &b) in &other.entries {
            self.add(i, j, b);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`.
    pub fn reg(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, j)| j as i64 - i as i64).max()
    }

    /// `max { i : β_{i,j} ≠ 0 }`.
    pub fn pd(&self) -> Option<i64> {
        self.entries.keys().map(|&(i, _)| i as i64).max()
    }

    pub fn num_generators(&self) -> u64 {
        self.entries.iter().filter(|((i, _), _)| *i == 0).map(|(_, b)| b).sum()
    }

    /// True when all generators share one degree `d` and every nonzero
    /// `β_{i,j}` sits at `j = d + i`.
    pub fn is_linear_resolution(&self) -> Result<bool> {
        let mut gen_degrees = self.entries.keys().filter(|(i, _)| *i == 0).map(|&(_, j)| j);
        let d = gen_degrees.next().ok_or(Error::EmptyTable)?;
        if gen_degrees.next().is_some() {
            return Ok(false);
        }
        Ok(self.entries.keys().all(|&(i, j)| j == d + i))
    }

    /// Aligned text grid: one row per homological index `i`, one column per
    /// `j - i`.
    pub fn to_grid(&self) -> String {
        let (Some(pd), Some(reg)) = (self.pd(), self.reg()) else {
            return String::from("(zero table)\n");
        };
        let min_shift = self.entries.keys().map(|&(i, j)| j as i64 - i as i64).min().unwrap_or(0);
        let shifts: Vec<i64> = (min_shift..=reg).collect();
        let cell = |i: i64, s: i64| {
            let b = self.get(i as usize, (i + s) as usize);
            if b == 0 { "-".to_string() } else { b.to_string() }
        };
        let width = shifts
            .iter()
            .flat_map(|&s| (0..=pd).map(move |i| (i, s)))
            .map(|(i, s)| cell(i, s).len())
            .chain(shifts.iter().map(|s| s.to_string().len()))
            .max()
            .unwrap_or(1);
        let label_width = format!("i={pd}").len();
        let mut out = String::new();
        let _ = write!(out, "{:>label_width$}", "j-i");
        for s in &shifts {
            let _ = write!(out, " {s:>width$}");
        }
        out.push('\n');
        for i in 0..=pd {
            let _ = write!(out, "{:>label_width$}", format!("i={i}"));
            for &s in &shifts {
                let _ = write!(out, " {:>width$}", cell(i, s));
            }
            out.push('\n');
        }
        out
    }
}

/// Regularity, projective dimension and depth read off a Betti table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionSummary {
    pub reg: i64,
    pub pd: i64,
    pub depth: i64,
    /// Number of variables of the unpolarized ring.
    pub n: usize,
}

/// Summarizes a table of `I` in a ring of `n` variables; depth is
/// `n - pd(I)` by Auslander–Buchsbaum.
pub fn summarize(table: &BettiTable, n: usize) -> Result<ResolutionSummary> {
    let (reg, pd) = table.reg().zip(table.pd()).ok_or(Error::EmptyTable)?;
    Ok(ResolutionSummary { reg, pd, depth: n as i64 - pd, n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub beta: u64,
}

/// Stable JSON shape of a computed table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub entries: Vec<BettiEntry>,
    pub reg: i64,
    pub pd: i64,
    pub depth: i64,
    pub n: usize,
}

impl BettiReport {
    pub fn new(table: &BettiTable, summary: &ResolutionSummary) -> Self {
        Self {
            entries: table.entries().map(|((i, j), beta)| BettiEntry { i, j, beta }).collect(),
            reg: summary.reg,
            pd: summary.pd,
            depth: summary.depth,
            n: summary.n,
        }
    }

    pub fn table(&self) -> BettiTable {
        BettiTable::from_entries(self.entries.iter().map(|e| ((e.i, e.j), e.beta)))
    }
}
