use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::oracle::{betti_table, BettiTable, OracleConfig};

/// One cell of `β_{i,j}(I) = β_{i,j}(J) + β_{i,j}(K) + β_{i-1,j}(J ∩ K)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCell {
    pub i: usize,
    pub j: usize,
    pub whole: u64,
    pub parts: u64,
}

impl SplitCell {
    pub fn holds(&self) -> bool {
        self.whole == self.parts
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    /// Every cell where either side is nonzero.
    pub cells: Vec<SplitCell>,
    pub reg: i64,
    /// `max{reg J, reg K, reg(J ∩ K) - 1}`.
    pub reg_from_parts: i64,
    pub pd: i64,
    /// `max{pd J, pd K, pd(J ∩ K) + 1}`.
    pub pd_from_parts: i64,
}

impl SplittingReport {
    pub fn is_splitting(&self) -> bool {
        self.cells.iter().all(SplitCell::holds)
    }

    pub fn failing_cells(&self) -> impl Iterator<Item = &SplitCell> {
        self.cells.iter().filter(|c| !c.holds())
    }

    pub fn max_formulas_hold(&self) -> bool {
        self.reg == self.reg_from_parts && self.pd == self.pd_from_parts
    }
}

/// Checks whether `I = J + K` is a Betti splitting, cell by cell.
///
/// Requires `G(I)` to be the disjoint union of `G(J)` and `G(K)`, with both
/// parts nonempty.
pub fn verify_betti_splitting(
    whole: &MonomialIdeal,
    j_part: &MonomialIdeal,
    k_part: &MonomialIdeal,
    cfg: &OracleConfig,
) -> Result<SplittingReport> {
    if j_part.is_zero() || k_part.is_zero() {
        return Err(Error::Splitting("both parts must have generators".into()));
    }
    let gi: BTreeSet<&Monomial> = whole.gens().iter().collect();
    let gj: BTreeSet<&Monomial> = j_part.gens().iter().collect();
    let gk: BTreeSet<&Monomial> = k_part.gens().iter().collect();
    if !gj.is_disjoint(&gk) {
        return Err(Error::Splitting("the parts share a generator".into()));
    }
    if gj.union(&gk).copied().collect::<BTreeSet<_>>() != gi {
        return Err(Error::Splitting("the parts do not partition G(I)".into()));
    }
    let meet = j_part.intersect(k_part)?;
    let tables: Vec<BettiTable> = [whole, j_part, k_part, &meet]
        .iter()
        .map(|ideal| betti_table(ideal, cfg))
        .collect::<Result<_>>()?;
    let [ti, tj, tk, tm] = &tables[..] else { unreachable!() };

    let mut keys: BTreeSet<(usize, usize)> = BTreeSet::new();
    keys.extend(ti.entries().map(|(k, _)| k));
    keys.extend(tj.entries().map(|(k, _)| k));
    keys.extend(tk.entries().map(|(k, _)| k));
    keys.extend(tm.entries().map(|((i, j), _)| (i + 1, j)));
    let cells = keys
        .into_iter()
        .map(|(i, j)| {
            let shifted = if i == 0 { 0 } else { tm.get(i - 1, j) };
            SplitCell { i, j, whole: ti.get(i, j), parts: tj.get(i, j) + tk.get(i, j) + shifted }
        })
        .collect();

    let reg = |t: &BettiTable| t.reg().expect("nonzero ideal");
    let pd = |t: &BettiTable| t.pd().expect("nonzero ideal");
    Ok(SplittingReport {
        cells,
        reg: reg(ti),
        reg_from_parts: reg(tj).max(reg(tk)).max(reg(tm) - 1),
        pd: pd(ti),
        pd_from_parts: pd(tj).max(pd(tk)).max(pd(tm) + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ideal, parse_ideal_in};

    #[test]
    fn variable_split_with_linear_part() {
        let i = parse_ideal("(x1*x2, x1*x3, x2*x3^2, x3*x4)").unwrap();
        let (j, k) = i.split_by_variable(0);
        assert!(betti_table(&j, &OracleConfig::default()).unwrap().is_linear_resolution().unwrap());
        let report = verify_betti_splitting(&i, &j, &k, &OracleConfig::default()).unwrap();
        assert!(report.is_splitting());
        assert!(report.max_formulas_hold());
    }

    #[test]
    fn empty_part_rejected() {
        let i = parse_ideal("(x1*x2)").unwrap();
        let zero = MonomialIdeal::zero(i.ring().clone());
        assert!(matches!(
            verify_betti_splitting(&i, &i, &zero, &OracleConfig::default()),
            Err(Error::Splitting(_))
        ));
    }

    #[test]
    fn non_partition_rejected() {
        let i = parse_ideal("(x1*x2, x2*x3, x3*x4)").unwrap();
        let r = i.ring().clone();
        let j = parse_ideal_in("(x1*x2, x2*x3)", r.clone()).unwrap();
        let k = parse_ideal_in("(x2*x3, x3*x4)", r.clone()).unwrap();
        assert!(verify_betti_splitting(&i, &j, &k, &OracleConfig::default()).is_err());
        let k = parse_ideal_in("(x1*x4)", r).unwrap();
        assert!(verify_betti_splitting(&i, &j, &k, &OracleConfig::default()).is_err());
    }

    #[test]
    fn four_cycle_diagonal_split_fails() {
        // C4 = (x1x2, x2x3, x3x4, x1x4) split into opposite edges:
        // J = (x1x2, x3x4), K = (x2x3, x1x4): each has a Koszul syzygy in
        // degree 4, so the right side has β_{1,4} = 2 while C4 has none.
        let i = parse_ideal("(x1*x2, x2*x3, x3*x4, x1*x4)").unwrap();
        let r = i.ring().clone();
        let j = parse_ideal_in("(x1*x2, x3*x4)", r.clone()).unwrap();
        let k = parse_ideal_in("(x2*x3, x1*x4)", r).unwrap();
        let report = verify_betti_splitting(&i, &j, &k, &OracleConfig::default()).unwrap();
        assert!(!report.is_splitting());
        let bad: Vec<(usize, usize)> = report.failing_cells().map(|c| (c.i, c.j)).collect();
        assert!(bad.contains(&(1, 4)));
    }
}
