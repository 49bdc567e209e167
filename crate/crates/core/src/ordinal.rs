//! Ordinal notations below ε₀ in Cantor normal form.
//!
//! A notation is a list of `(exponent, coefficient)` terms with strictly
//! decreasing exponents and positive coefficients; the empty list is 0.
//! Alongside comparison and the successor/limit split this module provides
//! the fixed fundamental sequences used at limit levels, a canonical
//! computable copy `n ↦ i_n` of every notation, and Kleene–Brouwer ranking of
//! finite trees.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::seq::FinSeq;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Zero,
    Successor { predecessor: Ordinal },
    Limit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    pub fn omega() -> Self {
        Ordinal::omega_pow(Ordinal::finite(1))
    }

    /// `ω^e`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Ordinal {
            terms: vec![(exponent, 1)],
        }
    }

    /// Builds a notation from CNF terms, rejecting non-normal input.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self> {
        for (i, (e, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(Error::Notation(format!("term {i} has coefficient 0")));
            }
            if i > 0 && terms[i - 1].0 <= *e {
                return Err(Error::Notation(format!(
                    "exponents not strictly decreasing at term {i}"
                )));
            }
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    /// The finite remainder `m` in `λ + m`.
    pub fn finite_part(&self) -> u64 {
        match self.terms.last() {
            Some((e, c)) if e.is_zero() => *c,
            _ => 0,
        }
    }

    /// The limit part `λ` in `λ + m` (0 for finite notations).
    pub fn limit_part(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if matches!(terms.last(), Some((e, _)) if e.is_zero()) {
            terms.pop();
        }
        Ordinal { terms }
    }

    pub fn classify(&self) -> Kind {
        match self.terms.last() {
            None => Kind::Zero,
            Some((e, c)) if e.is_zero() => {
                let mut terms = self.terms.clone();
                if *c == 1 {
                    terms.pop();
                } else {
                    terms.last_mut().unwrap().1 -= 1;
                }
                Kind::Successor {
                    predecessor: Ordinal { terms },
                }
            }
            Some(_) => Kind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == Kind::Limit
    }

    pub fn parity(&self) -> Parity {
        if self.finite_part().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn succ(&self) -> Ordinal {
        self.plus_finite(1)
    }

    pub fn plus_finite(&self, n: u64) -> Ordinal {
        if n == 0 {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((e, c)) if e.is_zero() => *c += n,
            _ => terms.push((Ordinal::zero(), n)),
        }
        Ordinal { terms }
    }

    /// The `k`-th element of the fixed fundamental sequence of a limit:
    /// `(β+ω^{γ+1})[k] = β+ω^γ·(k+1)` and `(β+ω^γ)[k] = β+ω^{γ[k]}` for limit γ.
    pub fn fund_seq(&self, k: u64) -> Result<Ordinal> {
        if !self.is_limit() {
            return Err(Error::NotLimit(self.to_string()));
        }
        let mut terms = self.terms.clone();
        let (gamma, c) = terms.pop().unwrap();
        if c > 1 {
            terms.push((gamma.clone(), c - 1));
        }
        match gamma.classify() {
            Kind::Successor { predecessor } => terms.push((predecessor, k + 1)),
            Kind::Limit => terms.push((gamma.fund_seq(k)?, 1)),
            Kind::Zero => unreachable!("limit notations have a positive last exponent"),
        }
        Ok(Ordinal { terms })
    }

    /// Nesting depth of the term tree.
    pub fn height(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| 1 + e.height())
            .max()
            .unwrap_or(0)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            match ea.cmp(eb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn ord_compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    a.cmp(b)
}

// ---------------------------------------------------------------------------
// Rendering and parsing

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            f.write_str("w")?;
            if e.as_finite() != Some(1) {
                f.write_str("^")?;
                write_exponent(e, f)?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

fn write_exponent(e: &Ordinal, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let bare = e.is_finite() || matches!(e.terms.as_slice(), [(_, 1)]);
    if bare {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return self.err("expected a natural number");
        }
        let digits = &self.src[start..self.pos];
        if digits.len() > 1 && digits[0] == b'0' {
            self.pos = start;
            return self.err("leading zero");
        }
        std::str::from_utf8(digits).unwrap().parse().or_else(|_| {
            self.pos = start;
            self.err("natural number overflows")
        })
    }

    fn expr(&mut self) -> Result<Ordinal> {
        let start = self.pos;
        let mut terms = vec![];
        loop {
            let at = self.pos;
            let (e, c) = self.term()?;
            if c == 0 {
                if !terms.is_empty() || self.peek() == Some(b'+') {
                    self.pos = at;
                    return self.err("0 may only appear alone");
                }
                return Ok(Ordinal::zero());
            }
            if let Some((prev, _)) = terms.last() {
                if *prev <= e {
                    self.pos = at;
                    return self.err("exponents must strictly decrease");
                }
            }
            terms.push((e, c));
            if !self.eat(b'+') {
                break;
            }
        }
        debug_assert!(self.pos > start);
        Ok(Ordinal { terms })
    }

    fn term(&mut self) -> Result<(Ordinal, u64)> {
        if self.eat(b'w') {
            let e = if self.eat(b'^') {
                self.exponent()?
            } else {
                Ordinal::finite(1)
            };
            if e.is_zero() {
                return self.err("w^0 is written as 1");
            }
            let c = if self.eat(b'*') {
                let at = self.pos;
                let c = self.nat()?;
                if c == 0 {
                    self.pos = at;
                    return self.err("coefficient must be positive");
                }
                c
            } else {
                1
            };
            Ok((e, c))
        } else {
            Ok((Ordinal::zero(), self.nat()?))
        }
    }

    fn exponent(&mut self) -> Result<Ordinal> {
        if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(e)
        } else if self.eat(b'w') {
            let e = if self.eat(b'^') {
                self.exponent()?
            } else {
                Ordinal::finite(1)
            };
            Ok(Ordinal::omega_pow(e))
        } else {
            Ok(Ordinal::finite(self.nat()?))
        }
    }
}

/// Upper bound (inclusive) on the notations accepted by parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ceiling(Option<Ordinal>);

impl Ceiling {
    pub fn new(max: Ordinal) -> Self {
        Ceiling(Some(max))
    }

    pub fn unbounded() -> Self {
        Ceiling(None)
    }

    pub fn admits(&self, a: &Ordinal) -> bool {
        self.0.as_ref().is_none_or(|m| a <= m)
    }

    pub fn check(&self, a: &Ordinal) -> Result<()> {
        if self.admits(a) {
            Ok(())
        } else {
            Err(Error::Ceiling {
                notation: a.to_string(),
                ceiling: self.0.as_ref().unwrap().to_string(),
            })
        }
    }
}

impl Default for Ceiling {
    /// `ω^ω`.
    fn default() -> Self {
        Ceiling::new(Ordinal::omega_pow(Ordinal::omega()))
    }
}

pub fn parse_ordinal(text: &str) -> Result<Ordinal> {
    parse_ordinal_with(text, &Ceiling::default())
}

pub fn parse_ordinal_with(text: &str, ceiling: &Ceiling) -> Result<Ordinal> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    if text.is_empty() {
        return p.err("empty notation");
    }
    let a = p.expr()?;
    if p.pos != text.len() {
        return p.err("unexpected trailing input");
    }
    ceiling.check(&a)?;
    Ok(a)
}

impl FromStr for Ordinal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_ordinal_with(&s, &Ceiling::unbounded()).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Computable copies

fn pair(i: u64, k: u64) -> Result<u64> {
    let (i, k) = (i as u128, k as u128);
    let v = (i + k) * (i + k + 1) / 2 + k;
    u64::try_from(v).map_err(|_| Error::IndexOutOfRange(u64::MAX))
}

fn unpair(n: u64) -> (u64, u64) {
    let n = n as u128;
    // w = floor((sqrt(8n+1)-1)/2)
    let mut w = (((8 * n + 1) as f64).sqrt() as u128).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= n {
        w += 1;
    }
    while w * (w + 1) / 2 > n {
        w -= 1;
    }
    let k = n - w * (w + 1) / 2;
    ((w - k) as u64, k as u64)
}

/// Cantor pairing `(i+k)(i+k+1)/2 + k`.
pub fn cantor_pair(i: u64, k: u64) -> u64 {
    pair(i, k).expect("pairing overflow")
}

pub fn cantor_unpair(n: u64) -> (u64, u64) {
    unpair(n)
}

fn tuple_decode(code: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    let mut rest = code;
    for _ in 1..len {
        let (a, b) = unpair(rest);
        out.push(a);
        rest = b;
    }
    out.push(rest);
    out
}

fn tuple_encode(values: &[u64]) -> Result<u64> {
    let mut code = *values.last().unwrap();
    for &v in values[..values.len() - 1].iter().rev() {
        code = pair(v, code)?;
    }
    Ok(code)
}

/// A computable copy of `η`: a bijection `n ↦ i_n` from an initial segment
/// of ℕ onto the notations below `η`.
///
/// The finitely many notations `λ, λ+1, .., λ+m-1` of `η = λ+m` come first in
/// natural order; the notations below `λ` follow, dovetailed round-robin over
/// the CNF blocks of `λ` and coded inside each block by Cantor pairing of
/// coefficient vectors. On the naturals the copy is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComputableCopy {
    eta: Ordinal,
}

pub fn enum_copy(eta: &Ordinal) -> Result<ComputableCopy> {
    if eta.is_zero() {
        return Err(Error::EmptyCopy);
    }
    Ok(ComputableCopy { eta: eta.clone() })
}

impl ComputableCopy {
    pub fn eta(&self) -> &Ordinal {
        &self.eta
    }

    /// Number of represented indices; `None` when `η` is infinite.
    pub fn len(&self) -> Option<u64> {
        self.eta.as_finite()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at_index(&self, n: u64) -> Result<Ordinal> {
        let m = self.eta.finite_part();
        let lim = self.eta.limit_part();
        if n < m {
            return Ok(lim.plus_finite(n));
        }
        if lim.is_zero() {
            return Err(Error::IndexOutOfRange(n));
        }
        below_limit_at(&lim, n - m)
    }

    pub fn index_of(&self, beta: &Ordinal) -> Result<u64> {
        if *beta >= self.eta {
            return Err(Error::Input(format!("{beta} is not below {}", self.eta)));
        }
        let m = self.eta.finite_part();
        let lim = self.eta.limit_part();
        if *beta >= lim {
            return Ok(beta.finite_part() - lim.finite_part());
        }
        below_limit_index(&lim, beta)?
            .checked_add(m)
            .ok_or(Error::IndexOutOfRange(u64::MAX))
    }
}

fn block_count(lim: &Ordinal) -> u64 {
    lim.terms.iter().map(|(_, c)| *c).sum()
}

fn concat(base: &Ordinal, tail: &Ordinal) -> Ordinal {
    let mut terms = base.terms.clone();
    terms.extend(tail.terms.iter().cloned());
    Ordinal { terms }
}

fn below_limit_at(lim: &Ordinal, j: u64) -> Result<Ordinal> {
    let blocks = block_count(lim);
    let (mut b, q) = (j % blocks, j / blocks);
    for (t, (e, c)) in lim.terms.iter().enumerate() {
        if b < *c {
            let mut base = Ordinal {
                terms: lim.terms[..t].to_vec(),
            };
            if b > 0 {
                base.terms.push((e.clone(), b));
            }
            return Ok(concat(&base, &power_at(e, q)?));
        }
        b -= c;
    }
    unreachable!("block index within block count")
}

fn below_limit_index(lim: &Ordinal, beta: &Ordinal) -> Result<u64> {
    let blocks = block_count(lim);
    let mut offset = 0;
    for (t, (e, c)) in lim.terms.iter().enumerate() {
        let (d, tail_start) = match beta.terms.get(t) {
            None => (0, t),
            Some((be, bc)) if be == e && bc < c => (*bc, t + 1),
            Some((be, _)) if be < e => (0, t),
            Some(_) => {
                offset += c;
                continue;
            }
        };
        let tail = Ordinal {
            terms: beta.terms[tail_start..].to_vec(),
        };
        let q = power_index(e, &tail)?;
        let j = (q as u128) * (blocks as u128) + (offset + d) as u128;
        return u64::try_from(j).map_err(|_| Error::IndexOutOfRange(u64::MAX));
    }
    Err(Error::Input(format!("{beta} is not below {lim}")))
}

// Bijection ℕ ↔ {δ : δ < ω^e} for e ≥ 1.
fn power_at(e: &Ordinal, q: u64) -> Result<Ordinal> {
    if let Some(n) = e.as_finite() {
        let coeffs = tuple_decode(q, n as usize);
        let terms = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c > 0)
            .map(|(j, c)| (Ordinal::finite(j as u64), *c))
            .collect();
        return Ok(Ordinal { terms });
    }
    if q == 0 {
        return Ok(Ordinal::zero());
    }
    let (l1, code) = unpair(q - 1);
    let mut coeffs = tuple_decode(code, l1 as usize + 1);
    *coeffs.last_mut().unwrap() += 1;
    let exps = ComputableCopy { eta: e.clone() };
    let mut terms = Vec::new();
    for (k, c) in coeffs.into_iter().enumerate() {
        if c > 0 {
            terms.push((exps.at_index(k as u64)?, c));
        }
    }
    terms.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(Ordinal { terms })
}

fn power_index(e: &Ordinal, delta: &Ordinal) -> Result<u64> {
    if let Some(n) = e.as_finite() {
        let mut coeffs = vec![0; n as usize];
        for (x, c) in &delta.terms {
            coeffs[x.as_finite().unwrap() as usize] = *c;
        }
        return tuple_encode(&coeffs);
    }
    if delta.is_zero() {
        return Ok(0);
    }
    let exps = ComputableCopy { eta: e.clone() };
    let mut slots = BTreeMap::new();
    for (x, c) in &delta.terms {
        slots.insert(exps.index_of(x)?, *c);
    }
    let len = *slots.keys().last().unwrap() as usize + 1;
    let mut coeffs = vec![0; len];
    for (k, c) in slots {
        coeffs[k as usize] = c;
    }
    *coeffs.last_mut().unwrap() -= 1;
    let code = tuple_encode(&coeffs)?;
    pair(len as u64 - 1, code)?
        .checked_add(1)
        .ok_or(Error::IndexOutOfRange(u64::MAX))
}

// ---------------------------------------------------------------------------
// Finite trees and Kleene–Brouwer ranks

/// A finite tree of sequences with an explicit sibling order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedTree {
    root: FinSeq,
    parent: BTreeMap<FinSeq, FinSeq>,
    children: BTreeMap<FinSeq, Vec<FinSeq>>,
}

impl RankedTree {
    pub fn new(root: FinSeq) -> Self {
        let mut children = BTreeMap::new();
        children.insert(root.clone(), Vec::new());
        RankedTree {
            root,
            parent: BTreeMap::new(),
            children,
        }
    }

    /// Appends `child` as the last sibling under `parent`.
    pub fn add_child(&mut self, parent: &FinSeq, child: FinSeq) -> Result<()> {
        if !self.children.contains_key(parent) {
            return Err(Error::Input(format!("parent {parent} is not in the tree")));
        }
        if self.children.contains_key(&child) {
            return Err(Error::Input(format!("{child} is already in the tree")));
        }
        self.children.get_mut(parent).unwrap().push(child.clone());
        self.children.insert(child.clone(), Vec::new());
        self.parent.insert(child, parent.clone());
        Ok(())
    }

    pub fn root(&self) -> &FinSeq {
        &self.root
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: &FinSeq) -> bool {
        self.children.contains_key(n)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &FinSeq> {
        self.children.keys()
    }

    pub fn parent_of(&self, n: &FinSeq) -> Option<&FinSeq> {
        self.parent.get(n)
    }

    pub fn children_of(&self, n: &FinSeq) -> &[FinSeq] {
        self.children.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Strict ancestors of `n`, nearest first.
    pub fn ancestors<'a>(&'a self, n: &FinSeq) -> impl Iterator<Item = &'a FinSeq> + 'a {
        let mut cur = self.parent.get(n);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = self.parent.get(out);
            Some(out)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KbRanking {
    pub eta: Ordinal,
    pub rank: BTreeMap<FinSeq, u64>,
}

/// Positions in the Kleene–Brouwer order: descendants precede ancestors and
/// incomparable nodes follow sibling order at the point of divergence.
pub fn kb_rank(t: &RankedTree) -> KbRanking {
    let mut rank = BTreeMap::new();
    let mut next = 0u64;
    // (node, children visited)
    let mut stack = vec![(t.root.clone(), 0usize)];
    while let Some((node, i)) = stack.pop() {
        let kids = t.children_of(&node);
        if i < kids.len() {
            let child = kids[i].clone();
            stack.push((node, i + 1));
            stack.push((child, 0));
        } else {
            rank.insert(node, next);
            next += 1;
        }
    }
    KbRanking {
        eta: Ordinal::finite(next),
        rank,
    }
}
