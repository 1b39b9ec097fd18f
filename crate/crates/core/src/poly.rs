//! Sparse polynomials over the rationals, stored by their support.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, int, parse_rat, serde_rat, Ext, Rat};

pub type Exponent = Vec<u32>;

/// Componentwise `a <= b`.
pub fn exp_leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn exp_add(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// A polynomial as a finite map from exponents to nonzero rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Exponent, Rat>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(vec![0; arity], Rat::one())
    }

    pub fn monomial(exp: Exponent, coeff: Rat) -> Self {
        let mut p = Self::zero(exp.len());
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// The variable `x_i` in `arity` variables.
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Self::monomial(e, Rat::one())
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        Self::monomial(vec![0; arity], c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rat)>>(arity: usize, it: I) -> Result<Self> {
        let mut p = Self::zero(arity);
        for (e, c) in it {
            if e.len() != arity {
                return Err(Error::Arity(format!(
                    "exponent {e:?} has length {} but arity is {arity}",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Polynomial with the given support and all coefficients 1.
    pub fn from_support<I: IntoIterator<Item = Exponent>>(arity: usize, it: I) -> Result<Self> {
        Self::from_terms(arity, it.into_iter().map(|e| (e, Rat::one())))
    }

    fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Order of vanishing at the origin; infinity for the zero polynomial.
    pub fn min_total_degree(&self) -> Ext<u32> {
        match self.terms.keys().map(|e| exp_degree(e)).min() {
            Some(d) => Ext::Finite(d),
            None => Ext::Infinity,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| exp_degree(e)).max()
    }

    /// Smallest exponent of variable `i` occurring in the support.
    pub fn order_in(&self, i: usize) -> Ext<u32> {
        match self.terms.keys().map(|e| e[i]).min() {
            Some(d) => Ext::Finite(d),
            None => Ext::Infinity,
        }
    }

    /// Same polynomial viewed in `m >= arity` variables.
    pub fn with_arity(&self, m: usize) -> Result<Self> {
        if m < self.arity {
            let used = self.terms.keys().any(|e| e[m..].iter().any(|&a| a != 0));
            if used {
                return Err(Error::Arity(format!(
                    "polynomial uses {} variables, cannot view it in {m}",
                    self.arity
                )));
            }
            let terms = self.terms.iter().map(|(e, c)| (e[..m].to_vec(), c.clone()));
            return Self::from_terms(m, terms);
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e = e.clone();
            e.resize(m, 0);
            (e, c.clone())
        });
        Self::from_terms(m, terms)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::Arity(format!("arity {} vs {}", self.arity, other.arity)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut p = Self::zero(self.arity);
        if c.is_zero() {
            return p;
        }
        for (e, a) in &self.terms {
            p.terms.insert(e.clone(), a * c);
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut p = Self::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                p.add_term(exp_add(e1, e2), c1 * c2);
            }
        }
        Ok(p)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.arity);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same arity");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same arity");
            }
        }
        result
    }

    /// Substitutes `x_i -> subs[i]`; all substitutes share one arity.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Self> {
        if subs.len() != self.arity {
            return Err(Error::Arity(format!(
                "{} substitutes for a polynomial in {} variables",
                subs.len(),
                self.arity
            )));
        }
        let m = match subs.first() {
            Some(s) => s.arity,
            None => 0,
        };
        if subs.iter().any(|s| s.arity != m) {
            return Err(Error::Arity("substitutes of different arities".into()));
        }
        let mut cache: Vec<BTreeMap<u32, Polynomial>> = vec![BTreeMap::new(); self.arity];
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            let mut term = Self::constant(m, c.clone());
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let power = cache[i].entry(a).or_insert_with(|| subs[i].pow(a)).clone();
                term = term.mul(&power)?;
            }
            for (e2, c2) in term.terms {
                out.add_term(e2, c2);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { exp: e.clone(), coeff: c.clone() })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        if j.arity == 0 {
            return Err(Error::Arity("arity must be positive".into()));
        }
        Self::from_terms(j.arity, j.terms.iter().map(|t| (t.exp.clone(), t.coeff.clone())))
    }

    /// Parses either the JSON form or the monomial string syntax.
    pub fn parse_any(text: &str, arity: Option<usize>) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let j: PolyJson = serde_json::from_str(text)?;
            let p = Self::from_json(&j)?;
            return match arity {
                Some(m) if m != p.arity => Err(Error::Arity(format!(
                    "polynomial has arity {} but {m} was expected",
                    p.arity
                ))),
                _ => Ok(p),
            };
        }
        parse_support(text, arity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub arity: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Exponent,
    #[serde(with = "serde_rat")]
    pub coeff: Rat,
}

pub fn var_name(arity: usize, i: usize) -> String {
    if arity <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn fmt_monomial(arity: usize, e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(var_name(arity, i)),
            _ => parts.push(format!("{}^{}", var_name(arity, i), a)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(self.arity, e);
            if mono.is_empty() {
                f.write_str(&fmt_rat(&a))?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rat(&a), mono)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push((start, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((start, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((start, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((start, Tok::Caret));
                i += 1;
            }
            '/' => {
                out.push((start, Tok::Slash));
                i += 1;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(chars[start..i].iter().collect())));
            }
            'x' | 'y' | 'z' | 'w' => {
                i += 1;
                let mut j = i;
                if j < chars.len() && chars[j] == '_' {
                    j += 1;
                }
                let digits_start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if c == 'x' && j > digits_start {
                    let idx: usize = chars[digits_start..j]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| Error::Parse { pos: start, msg: "bad variable index".into() })?;
                    if idx == 0 {
                        return Err(Error::Parse { pos: start, msg: "variables are numbered from 1".into() });
                    }
                    out.push((start, Tok::Var(idx - 1)));
                    i = j;
                } else {
                    if j > i {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!("indexed variable must use x, found {c}"),
                        });
                    }
                    let idx = match c {
                        'x' => 0,
                        'y' => 1,
                        'z' => 2,
                        _ => 3,
                    };
                    out.push((start, Tok::Var(idx)));
                }
            }
            _ => {
                return Err(Error::Parse { pos: start, msg: format!("unexpected character {c:?}") });
            }
        }
    }
    Ok(out)
}

/// Parses the monomial string syntax, e.g. `x^2 + x*y^3`, `1/2*x1*x3^2 - 3`.
///
/// Variables are `x, y, z, w` or `x1, x2, ...` (also `x_1`). With `arity = None`
/// the arity is the largest variable index used (at least 1).
pub fn parse_support(text: &str, arity: Option<usize>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let end = text.chars().count();
    let mut pos = 0usize;
    let mut raw: Vec<(BTreeMap<usize, u32>, Rat)> = Vec::new();
    let at = |p: usize| toks.get(p).map(|t| t.0).unwrap_or(end);
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    loop {
        let mut sign = Rat::one();
        let mut saw_sign = false;
        while let Some((_, t @ (Tok::Plus | Tok::Minus))) = toks.get(pos) {
            if *t == Tok::Minus {
                sign = -sign;
            }
            saw_sign = true;
            pos += 1;
        }
        if !raw.is_empty() && !saw_sign {
            return Err(Error::Parse { pos: at(pos), msg: "expected + or -".into() });
        }
        let mut coeff = sign;
        let mut vars: BTreeMap<usize, u32> = BTreeMap::new();
        let mut nfactors = 0;
        loop {
            match toks.get(pos) {
                Some((_, Tok::Num(n))) => {
                    let mut s = n.clone();
                    pos += 1;
                    if let Some((_, Tok::Slash)) = toks.get(pos) {
                        match toks.get(pos + 1) {
                            Some((_, Tok::Num(d))) => {
                                s = format!("{s}/{d}");
                                pos += 2;
                            }
                            _ => {
                                return Err(Error::Parse {
                                    pos: at(pos + 1),
                                    msg: "expected denominator".into(),
                                })
                            }
                        }
                    }
                    coeff *= parse_rat(&s).map_err(|_| Error::Parse {
                        pos: at(pos - 1),
                        msg: "zero denominator".into(),
                    })?;
                }
                Some((_, Tok::Var(i))) => {
                    let i = *i;
                    pos += 1;
                    let mut e = 1u32;
                    if let Some((_, Tok::Caret)) = toks.get(pos) {
                        match toks.get(pos + 1) {
                            Some((_, Tok::Num(n))) => {
                                e = n.parse().map_err(|_| Error::Parse {
                                    pos: at(pos + 1),
                                    msg: "exponent too large".into(),
                                })?;
                                pos += 2;
                            }
                            Some((p, Tok::Minus)) => return Err(Error::NegativeExponent(*p)),
                            _ => {
                                return Err(Error::Parse {
                                    pos: at(pos + 1),
                                    msg: "expected exponent".into(),
                                })
                            }
                        }
                    }
                    *vars.entry(i).or_insert(0) += e;
                }
                _ => {
                    if nfactors == 0 {
                        return Err(Error::Parse { pos: at(pos), msg: "expected a term".into() });
                    }
                    break;
                }
            }
            nfactors += 1;
            if let Some((_, Tok::Star)) = toks.get(pos) {
                pos += 1;
                if !matches!(toks.get(pos), Some((_, Tok::Num(_) | Tok::Var(_)))) {
                    return Err(Error::Parse { pos: at(pos), msg: "expected a factor after *".into() });
                }
            }
        }
        raw.push((vars, coeff));
        if pos >= toks.len() {
            break;
        }
        if !matches!(toks[pos].1, Tok::Plus | Tok::Minus) {
            return Err(Error::Parse { pos: at(pos), msg: "unexpected token".into() });
        }
    }
    let used = raw
        .iter()
        .filter_map(|(v, _)| v.keys().next_back().map(|k| k + 1))
        .max()
        .unwrap_or(1);
    let m = match arity {
        Some(m) => {
            if used > m {
                return Err(Error::Arity(format!(
                    "polynomial uses {used} variables but arity is {m}"
                )));
            }
            m
        }
        None => used,
    };
    if m == 0 {
        return Err(Error::Arity("arity must be positive".into()));
    }
    let mut p = Polynomial::zero(m);
    for (vars, c) in raw {
        let mut e = vec![0u32; m];
        for (i, a) in vars {
            e[i] = a;
        }
        p.add_term(e, c);
    }
    Ok(p)
}

/// `x^a` as a polynomial, convenience for tests and corpora.
pub fn mono(exp: &[u32]) -> Polynomial {
    Polynomial::monomial(exp.to_vec(), int(1))
}
