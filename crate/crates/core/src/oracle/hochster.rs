//! Hochster's formula for squarefree monomial ideals.
//!
//! For the Stanley–Reisner complex `Δ` of `I`,
//! `β_{i,j}(S/I) = Σ_{|W|=j} dim H̃_{j-i-1}(Δ|_W)`, and `β_{i,j}(I)` is
//! `β_{i+1,j}(S/I)`.
//!
//! Only subsets `W` that are unions of generator supports can contribute:
//! any other `W` has a vertex lying in no non-face of `Δ|_W`, which makes
//! `Δ|_W` a cone. Those subsets are skipped when pruning is on.
//!
//! Two exact routes compute the homology of a surviving `Δ|_W`:
//!
//! * [`Route::Direct`] enumerates the faces of `Δ|_W`.
//! * [`Route::Nerve`] uses Alexander duality on `W` followed by the nerve
//!   of the dual's facets `W \ supp(g)`. That nerve is the complex on the
//!   generators `G_W` dividing `x^W` whose faces are the sets with
//!   `lcm ≠ x^W`, and `dim H̃_k(Δ|_W) = dim H̃_{|W|-k-3}(nerve)`, so
//!   `β_{i,|W|}(I) = dim H̃_{i-1}(nerve)`.
//!
//! [`Route::Auto`] picks whichever has fewer vertices.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::oracle::complex::{generator_masks, homology_of, SimplicialComplex, MAX_VERTICES};
use crate::oracle::linalg::Field;
use crate::oracle::table::BettiTable;
use crate::oracle::OracleConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    #[default]
    Auto,
    Direct,
    Nerve,
}

impl std::str::FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Route::Auto),
            "direct" => Ok(Route::Direct),
            "nerve" => Ok(Route::Nerve),
            other => Err(Error::Config(format!("unknown route {other:?}"))),
        }
    }
}

/// Multigraded Betti numbers of a squarefree ideal: `(i, W) -> β_{i,W}(I)`.
pub(crate) type FineTable = BTreeMap<(usize, u64), u64>;

fn contributions(w: u64, gens: &[u64], complex: &SimplicialComplex, cfg: &OracleConfig) -> Vec<(usize, u64)> {
    let inside: Vec<u64> = gens.iter().copied().filter(|&g| g & w == g).collect();
    let covered = inside.iter().fold(0u64, |acc, &g| acc | g);
    if cfg.prune && covered != w {
        return Vec::new();
    }
    let size = w.count_ones() as usize;
    let use_nerve = match cfg.route {
        Route::Direct => false,
        Route::Nerve => true,
        Route::Auto => inside.len() < size,
    };
    let mut out = Vec::new();
    if use_nerve {
        if inside.is_empty() {
            // Δ|_W is the full simplex on W
            return out;
        }
        let vertices = (1u64 << inside.len()) - 1;
        let is_face = |sigma: u64| {
            let mut union = 0u64;
            let mut rest = sigma;
            while rest != 0 {
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                union |= inside[bit as usize];
            }
            union != w
        };
        for (idx, &d) in homology_of(vertices, is_face, cfg.field).iter().enumerate() {
            // idx holds H̃_{idx-1}; it feeds β_{idx, |W|}
            if d > 0 {
                out.push((idx, d as u64));
            }
        }
    } else {
        for (idx, &d) in complex.reduced_homology_dims(w, cfg.field).iter().enumerate() {
            // idx holds H̃_{k} with k = idx-1; it feeds β_{i,|W|} with i = |W|-k-2
            if d > 0 {
                let i = size as i64 - idx as i64 - 1;
                debug_assert!(i >= 0, "nonempty W never contributes below i = 0");
                out.push((i as usize, d as u64));
            }
        }
    }
    out
}

fn check_input(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal("Betti table"));
    }
    let n = ideal.ring().num_vars();
    if n > cfg.budget.min(MAX_VERTICES) {
        return Err(Error::Budget { needed: n, budget: cfg.budget.min(MAX_VERTICES) });
    }
    Ok(())
}

pub(crate) fn fine_betti(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<FineTable> {
    check_input(ideal, cfg)?;
    let gens = generator_masks(ideal)?;
    let complex = SimplicialComplex::from_nonfaces(ideal.ring().num_vars(), gens.iter().copied())?;
    let n = ideal.ring().num_vars();
    let table = (1u64..1u64 << n)
        .into_par_iter()
        .fold(FineTable::new, |mut acc, w| {
            for (i, b) in contributions(w, &gens, &complex, cfg) {
                *acc.entry((i, w)).or_insert(0) += b;
            }
            acc
        })
        .reduce(FineTable::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(table)
}

/// Exact graded Betti table of a nonzero squarefree monomial ideal.
pub fn hochster_betti(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<BettiTable> {
    let fine = fine_betti(ideal, cfg)?;
    Ok(BettiTable::from_entries(
        fine.into_iter().map(|((i, w), b)| ((i, w.count_ones() as usize), b)),
    ))
}

/// Convenience wrapper for the default field.
pub fn hochster_betti_over(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    hochster_betti(ideal, &OracleConfig { field, ..OracleConfig::default() })
}
