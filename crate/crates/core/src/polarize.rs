use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{AmbientRing, Monomial, MonomialIdeal};

/// Variable correspondence of a polarization: source variable `i` becomes
/// the contiguous block `blocks[i]` of target variables, one per unit of
/// its maximal exponent over `G(I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationMap {
    source: Arc<AmbientRing>,
    target: Arc<AmbientRing>,
    blocks: Vec<Range<usize>>,
}

impl PolarizationMap {
    pub fn source(&self) -> &Arc<AmbientRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AmbientRing> {
        &self.target
    }

    pub fn block(&self, source_var: usize) -> Range<usize> {
        self.blocks[source_var].clone()
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    /// `x_1^{a_1}...x_n^{a_n} -> x_{1,1}...x_{1,a_1} ... x_{n,1}...x_{n,a_n}`.
    /// Returns `None` if some exponent exceeds its block.
    pub fn apply(&self, m: &Monomial) -> Option<Monomial> {
        let mut exps = vec![0; self.target.num_vars()];
        for (block, &a) in self.blocks.iter().zip(m.exponents()) {
            if a as usize > block.len() {
                return None;
            }
            for e in &mut exps[block.start..block.start + a as usize] {
                *e = 1;
            }
        }
        Some(Monomial::new(exps))
    }
}

/// Number of variables the polarization of `ideal` lives in.
pub fn polarized_num_vars(ideal: &MonomialIdeal) -> usize {
    ideal.max_exponents().iter().map(|&a| a as usize).sum()
}

/// Polarizes a nonzero monomial ideal into a squarefree one with the same
/// graded Betti numbers.
///
/// Target variables are labelled `<source label>_<k>` for `k = 1..=a_i`.
pub fn polarize(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, PolarizationMap)> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal("polarization"));
    }
    let source = ideal.ring().clone();
    let mut labels = Vec::new();
    let mut blocks = Vec::with_capacity(source.num_vars());
    for (var, &a) in ideal.max_exponents().iter().enumerate() {
        let start = labels.len();
        for k in 1..=a {
            labels.push(format!("{}_{k}", source.label(var)));
        }
        blocks.push(start..labels.len());
    }
    let target = Arc::new(AmbientRing::new(labels)?);
    let map = PolarizationMap { source, target: target.clone(), blocks };
    let gens: Vec<Monomial> = ideal
        .gens()
        .iter()
        .map(|g| map.apply(g).expect("blocks cover every generator exponent"))
        .collect();
    // distinct minimal generators stay mutually non-dividing after polarization
    let polarized = MonomialIdeal::minimalize(gens, target)?;
    debug_assert_eq!(polarized.num_gens(), ideal.num_gens());
    Ok((polarized, map))
}
