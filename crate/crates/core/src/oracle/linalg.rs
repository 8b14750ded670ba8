//! Exact rank of sparse integer matrices.
//!
//! Over the rationals the elimination is fraction free: a row is reduced
//! against a pivot row by `b*row - a*pivot` and then divided by the gcd of
//! its entries, so entries stay integral and small. Boundary matrices have
//! entries in {-1, 0, 1}; `i64` arithmetic with overflow checks is tried
//! first and the computation is redone with big integers if it overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field for homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Parses `q` or `p=<prime>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" | "rational" => Ok(Field::Rational),
            other => {
                let p = other
                    .strip_prefix("p=")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::Config(format!("field must be q or p=<prime>, got {other:?}")))?;
                Field::prime(p)
            }
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        // keeps p*p inside u64 during modular products
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::Config(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Rational => f.write_str("q"),
            Field::Prime(p) => write!(f, "p={p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-sparse integer matrix; each row is sorted by column with no zeros.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a row given as `(column, value)` pairs in any order.
    pub fn push_row(&mut self, mut row: Vec<(u32, i64)>) {
        row.retain(|&(_, v)| v != 0);
        row.sort_unstable_by_key(|&(c, _)| c);
        debug_assert!(row.windows(2).all(|w| w[0].0 != w[1].0), "duplicate column");
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rational => rank_integral::<i64>(&self.rows, |v| v)
                .unwrap_or_else(|| rank_integral::<BigInt>(&self.rows, BigInt::from).expect("bigint never overflows")),
            Field::Prime(p) => rank_mod_p(&self.rows, p),
        }
    }
}

type Row<T> = Vec<(u32, T)>;

/// `b*r - a*p` on sorted sparse rows; `None` on overflow.
fn combine<T>(r: &Row<T>, p: &Row<T>, a: &T, b: &T) -> Option<Row<T>>
where
    T: Clone + Zero + CheckedMul + CheckedSub,
{
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (col, val) = match (r.get(i), p.get(j)) {
            (Some((cr, vr)), Some((cp, vp))) if cr == cp => {
                i += 1;
                j += 1;
                (*cr, b.checked_mul(vr)?.checked_sub(&a.checked_mul(vp)?)?)
            }
            (Some((cr, vr)), Some((cp, _))) if cr < cp => {
                i += 1;
                (*cr, b.checked_mul(vr)?)
            }
            (Some((cr, vr)), None) => {
                i += 1;
                (*cr, b.checked_mul(vr)?)
            }
            (_, Some((cp, vp))) => {
                j += 1;
                (*cp, T::zero().checked_sub(&a.checked_mul(vp)?)?)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    Some(out)
}

fn remove_content<T: Integer + Signed + Clone>(row: &mut Row<T>) {
    let Some(mut g) = row.first().map(|(_, v)| v.abs()) else {
        return;
    };
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
}

fn rank_integral<T>(rows: &[Vec<(u32, i64)>], conv: impl Fn(i64) -> T) -> Option<usize>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let mut pivots: HashMap<u32, Row<T>> = HashMap::new();
    for src in rows {
        let mut row: Row<T> = src.iter().map(|&(c, v)| (c, conv(v))).collect();
        while let Some((col, a)) = row.first().cloned() {
            match pivots.get(&col) {
                Some(pivot) => {
                    let b = pivot[0].1.clone();
                    let g = a.gcd(&b);
                    row = combine(&row, pivot, &a.div_floor(&g), &b.div_floor(&g))?;
                    remove_content(&mut row);
                }
                None => {
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn rank_mod_p(rows: &[Vec<(u32, i64)>], p: u64) -> usize {
    let reduce = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut pivots: HashMap<u32, Row<u64>> = HashMap::new();
    for src in rows {
        let mut row: Row<u64> = src
            .iter()
            .map(|&(c, v)| (c, reduce(v)))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(col, a)) = row.first() {
            match pivots.get(&col) {
                Some(pivot) => {
                    // pivot rows are normalised to a leading 1: row -= a * pivot
                    let mut out = Vec::with_capacity(row.len() + pivot.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < pivot.len() {
                        let (c, v) = match (row.get(i), pivot.get(j)) {
                            (Some(&(cr, vr)), Some(&(cp, vp))) if cr == cp => {
                                i += 1;
                                j += 1;
                                (cr, (vr + p - a * vp % p) % p)
                            }
                            (Some(&(cr, vr)), Some(&(cp, _))) if cr < cp => {
                                i += 1;
                                (cr, vr)
                            }
                            (Some(&(cr, vr)), None) => {
                                i += 1;
                                (cr, vr)
                            }
                            (_, Some(&(cp, vp))) => {
                                j += 1;
                                (cp, (p - a * vp % p) % p)
                            }
                            (None, None) => unreachable!(),
                        };
                        if v != 0 {
                            out.push((c, v));
                        }
                    }
                    row = out;
                }
                None => {
                    let inv = inv_mod(a, p);
                    for (_, v) in row.iter_mut() {
                        *v = *v * inv % p;
                    }
                    pivots.insert(col, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
