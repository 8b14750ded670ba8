//! Text syntax for monomials and ideals.
//!
//! ```text
//! ideal    := "(" [ monomial { "," monomial } ] ")"
//! monomial := "1" | factor { "*" factor }
//! factor   := label [ "^" exponent ]
//! label    := [A-Za-z_] [A-Za-z0-9_]*
//! exponent := [0-9]+
//! ```
//!
//! Whitespace is ignored between tokens. Repeated factors multiply, so
//! `x1*x1` is `x1^2`.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{AmbientRing, Monomial, MonomialIdeal};

type Factors = Vec<(String, u32)>;

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if pred(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn factors(&mut self) -> Result<Factors> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
                _ => return Err(self.error("expected a variable")),
            }
            let label = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string();
            let exp = if self.eat('^') {
                self.skip_ws();
                let digits = self.take_while(|c| c.is_ascii_digit());
                digits.parse::<u32>().map_err(|_| self.error("expected an exponent"))?
            } else {
                1
            };
            out.push((label, exp));
            if !self.eat('*') {
                return Ok(out);
            }
        }
    }

    fn ideal(&mut self) -> Result<Vec<Factors>> {
        self.expect('(')?;
        let mut gens = Vec::new();
        if self.eat(')') {
            return Ok(gens);
        }
        loop {
            gens.push(self.factors()?);
            if self.eat(')') {
                return Ok(gens);
            }
            self.expect(',')?;
        }
    }
}

fn build(factors: &Factors, ring: &AmbientRing) -> Result<Monomial> {
    let mut exps = vec![0u32; ring.num_vars()];
    for (label, e) in factors {
        let var = ring
            .index_of(label)
            .ok_or_else(|| Error::Parse(format!("unknown variable {label}")))?;
        exps[var] += e;
    }
    Ok(Monomial::new(exps))
}

/// Orders labels like `x2 < x10 < y1`: alphabetic prefix first, then the
/// numeric suffix by value.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>, &str) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (head, digits) = s.split_at(cut);
        (head, digits.parse().ok(), s)
    }
    split(a).cmp(&split(b))
}

pub fn parse_monomial(src: &str, ring: &AmbientRing) -> Result<Monomial> {
    let mut lx = Lexer::new(src);
    let f = lx.factors()?;
    if !lx.at_end() {
        return Err(lx.error("trailing input"));
    }
    build(&f, ring)
}

/// Parses an ideal whose variables must all belong to `ring`.
pub fn parse_ideal_in(src: &str, ring: Arc<AmbientRing>) -> Result<MonomialIdeal> {
    let mut lx = Lexer::new(src);
    let gens = lx.ideal()?;
    if !lx.at_end() {
        return Err(lx.error("trailing input"));
    }
    let monos = gens.iter().map(|f| build(f, &ring)).collect::<Result<Vec<_>>>()?;
    MonomialIdeal::minimalize(monos, ring)
}

/// Parses an ideal and infers its ring from the labels it mentions, in
/// natural order (`x2` before `x10`).
pub fn parse_ideal(src: &str) -> Result<MonomialIdeal> {
    let mut lx = Lexer::new(src);
    let gens = lx.ideal()?;
    if !lx.at_end() {
        return Err(lx.error("trailing input"));
    }
    let mut labels: Vec<&str> = gens.iter().flatten().map(|(l, _)| l.as_str()).collect();
    labels.sort_by(|a, b| natural_cmp(a, b));
    labels.dedup();
    let ring = Arc::new(AmbientRing::new(labels)?);
    let monos = gens.iter().map(|f| build(f, &ring)).collect::<Result<Vec<_>>>()?;
    MonomialIdeal::minimalize(monos, ring)
}
