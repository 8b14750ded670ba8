//! Graded Betti numbers of monomial ideals via polarization and Hochster's
//! formula, computed with exact linear algebra.

pub mod complex;
pub mod hochster;
pub mod linalg;
pub mod splitting;
pub mod table;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::polarize::{polarize, polarized_num_vars};

pub use complex::SimplicialComplex;
pub use hochster::{hochster_betti, Route};
pub use linalg::Field;
pub use splitting::{verify_betti_splitting, SplittingReport};
pub use table::{summarize, BettiEntry, BettiReport, BettiTable, ResolutionSummary};

pub const DEFAULT_BUDGET: usize = 22;

/// Knobs for the oracle. The defaults are rational coefficients, cone
/// pruning on, automatic route choice and a 22-variable polarization budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub field: Field,
    pub prune: bool,
    pub route: Route,
    /// Largest number of polarized variables accepted.
    pub budget: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { field: Field::Rational, prune: true, route: Route::Auto, budget: DEFAULT_BUDGET }
    }
}

/// Graded Betti table of a proper nonzero monomial ideal, computed on its
/// polarization.
pub fn betti_table(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<BettiTable> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal("Betti table"));
    }
    let needed = polarized_num_vars(ideal);
    if needed > cfg.budget {
        return Err(Error::Budget { needed, budget: cfg.budget });
    }
    let (polarized, _) = polarize(ideal)?;
    hochster_betti(&polarized, cfg)
}

/// Betti table together with reg, pd and depth in the ideal's own ring.
pub fn resolve(ideal: &MonomialIdeal, cfg: &OracleConfig) -> Result<(BettiTable, ResolutionSummary)> {
    let table = betti_table(ideal, cfg)?;
    let summary = summarize(&table, ideal.ring().num_vars())?;
    Ok((table, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_ideal;

    #[test]
    fn principal_non_squarefree() {
        let (t, s) = resolve(&parse_ideal("(x1*x2^2)").unwrap(), &OracleConfig::default()).unwrap();
        assert_eq!(t, BettiTable::from_entries([((0, 3), 1)]));
        assert_eq!((s.reg, s.pd, s.depth), (3, 0, 2));
    }

    #[test]
    fn budget_counts_polarized_variables() {
        let i = parse_ideal("(x1^12*x2^12)").unwrap();
        assert_eq!(
            betti_table(&i, &OracleConfig::default()).unwrap_err(),
            Error::Budget { needed: 24, budget: 22 }
        );
    }

    #[test]
    fn zero_ideal_rejected() {
        let ring = std::sync::Arc::new(crate::monomial::AmbientRing::with_vars(2).unwrap());
        assert!(matches!(
            betti_table(&MonomialIdeal::zero(ring), &OracleConfig::default()),
            Err(Error::ZeroIdeal(_))
        ));
    }
}
