#![allow(dead_code)]

use std::sync::Arc;

use edgereg::{AmbientRing, Monomial, MonomialIdeal};
use proptest::prelude::*;

pub fn ring(n: usize) -> Arc<AmbientRing> {
    Arc::new(AmbientRing::with_vars(n).unwrap())
}

/// Exponent vector of length `len` with entries in `0..=max_exp`, placed at
/// `offset` inside a ring of `n` variables.
pub fn monomial_in(n: usize, offset: usize, len: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, len).prop_map(move |block| {
        let mut exps = vec![0; n];
        exps[offset..offset + len].copy_from_slice(&block);
        Monomial::new(exps)
    })
}

/// Nonzero proper ideal whose generators only use variables
/// `offset..offset + len`.
pub fn ideal_in(
    ring: Arc<AmbientRing>,
    offset: usize,
    len: usize,
    max_exp: u32,
    max_gens: usize,
) -> impl Strategy<Value = MonomialIdeal> {
    let n = ring.num_vars();
    prop::collection::vec(monomial_in(n, offset, len, max_exp).prop_filter("not 1", |m| !m.is_one()), 1..=max_gens)
        .prop_map(move |gens| MonomialIdeal::minimalize(gens, ring.clone()).unwrap())
}

pub fn ideal(n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    ideal_in(ring(n), 0, n, max_exp, max_gens)
}

/// Possibly-zero ideal, for identities that involve the zero ideal.
pub fn ideal_or_zero(n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    let r = ring(n);
    prop::collection::vec(monomial_in(n, 0, n, max_exp).prop_filter("not 1", |m| !m.is_one()), 0..=max_gens)
        .prop_map(move |gens| MonomialIdeal::minimalize(gens, r.clone()).unwrap())
}

/// Every monomial of degree at most `max_deg` in `n` variables.
pub fn degree_box(n: usize, max_deg: u32) -> Vec<Monomial> {
    fn go(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            go(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_deg, &mut Vec::new(), &mut out);
    out
}
