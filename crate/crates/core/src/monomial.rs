//! Monomials and monomial ideals over a fixed polynomial ring.
//!
//! An ideal always stores its minimal generating set, sorted in graded
//! lexicographic order, so two ideals are equal exactly when their
//! representations are equal. The zero ideal is the empty generator list;
//! the unit ideal cannot be constructed.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// The polynomial ring `k[x_1, ..., x_n]`. Only the variable labels are
/// stored; the coefficient field is chosen by the Betti oracle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AmbientRing {
    labels: Vec<String>,
}

impl AmbientRing {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable label {label}")));
            }
        }
        Ok(Self { labels })
    }

    /// Ring with variables labelled `x1, ..., xn`.
    pub fn with_vars(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("x{i}")))
    }

    pub fn num_vars(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, var: usize) -> &str {
        &self.labels[var]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// A monomial `x_1^{a_1} ... x_n^{a_n}`, stored as its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Self { exps: vec![0; num_vars] }
    }

    /// `x_var^exp` in a ring of `num_vars` variables.
    pub fn power(num_vars: usize, var: usize, exp: u32) -> Self {
        let mut exps = vec![0; num_vars];
        exps[var] = exp;
        Self { exps }
    }

    pub fn var(num_vars: usize, var: usize) -> Self {
        Self::power(num_vars, var, 1)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::min)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.zip_with(other, |a, b| a - b))
    }

    /// `self / gcd(self, other)`.
    pub fn strip(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.saturating_sub(b))
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> BTreeSet<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Renders the monomial with the ring's labels, e.g. `x1^2*x3`.
    pub fn display<'a>(&'a self, ring: &'a AmbientRing) -> impl fmt::Display + 'a {
        DisplayMonomial { mono: self, ring }
    }
}

/// Graded lexicographic: lower degree first, then larger leading exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct DisplayMonomial<'a> {
    mono: &'a Monomial,
    ring: &'a AmbientRing,
}

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (var, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.ring.label(var))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A proper monomial ideal, represented by its minimal generating set `G(I)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<AmbientRing>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero(ring: Arc<AmbientRing>) -> Self {
        Self { ring, gens: Vec::new() }
    }

    /// Reduces `gens` to a minimal generating set in canonical order.
    ///
    /// Fails if a monomial has the wrong number of exponents or if the
    /// generators include `1`.
    pub fn minimalize(gens: impl IntoIterator<Item = Monomial>, ring: Arc<AmbientRing>) -> Result<Self> {
        let n = ring.num_vars();
        let mut sorted: Vec<Monomial> = Vec::new();
        for g in gens {
            if g.num_vars() != n {
                return Err(Error::ArityMismatch { expected: n, got: g.num_vars() });
            }
            if g.is_one() {
                return Err(Error::UnitIdeal);
            }
            sorted.push(g);
        }
        // a divisor never has larger degree, so a degree-ordered sweep only
        // needs to look back at already accepted generators
        sorted.sort();
        sorted.dedup();
        let mut minimal: Vec<Monomial> = Vec::with_capacity(sorted.len());
        for g in sorted {
            if !minimal.iter().any(|m| m.divides(&g)) {
                minimal.push(g);
            }
        }
        Ok(Self { ring, gens: minimal })
    }

    pub fn ring(&self) -> &Arc<AmbientRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Ideal membership of a monomial.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.num_vars(), other.ring.num_vars()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        Self::minimalize(self.gens.iter().chain(&other.gens).cloned(), self.ring.clone())
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let lcms = self
            .gens
            .iter()
            .flat_map(|u| other.gens.iter().map(move |v| u.lcm(v)));
        Self::minimalize(lcms, self.ring.clone())
    }

    /// `(I : m)`. Fails with [`Error::UnitIdeal`] when `m` lies in `I`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        if m.num_vars() != self.ring.num_vars() {
            return Err(Error::ArityMismatch { expected: self.ring.num_vars(), got: m.num_vars() });
        }
        Self::minimalize(self.gens.iter().map(|u| u.strip(m)), self.ring.clone())
    }

    /// The ideal `uI`.
    pub fn scale(&self, u: &Monomial) -> Result<MonomialIdeal> {
        if u.num_vars() != self.ring.num_vars() {
            return Err(Error::ArityMismatch { expected: self.ring.num_vars(), got: u.num_vars() });
        }
        // multiplying by a fixed monomial preserves divisibility, hence minimality
        let mut gens: Vec<Monomial> = self.gens.iter().map(|g| g.mul(u)).collect();
        gens.sort();
        Ok(Self { ring: self.ring.clone(), gens })
    }

    /// Union of the generator supports.
    pub fn support(&self) -> BTreeSet<usize> {
        self.gens.iter().flat_map(|g| g.support()).collect()
    }

    /// Maximum exponent of each variable over `G(I)`.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.ring.num_vars()];
        for g in &self.gens {
            for (o, &e) in out.iter_mut().zip(g.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    /// Generators divisible by the variable `var`, and the rest.
    pub fn split_by_variable(&self, var: usize) -> (MonomialIdeal, MonomialIdeal) {
        let (with, without): (Vec<_>, Vec<_>) =
            self.gens.iter().cloned().partition(|g| g.exponents()[var] > 0);
        (
            Self { ring: self.ring.clone(), gens: with },
            Self { ring: self.ring.clone(), gens: without },
        )
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", g.display(&self.ring))?;
        }
        f.write_str(")")
    }
}
