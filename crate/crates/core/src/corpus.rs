//! Seeded random corpora. Every generator draws from a `ChaCha8Rng` seeded with
//! `seed_from_u64`, so a seed fully determines the output.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::poly::Polynomial;
use crate::scalar::{int, rat, Rat};

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse polynomial with `1..=max_terms` terms, exponents `<= max_exp` and
/// nonzero integer coefficients in `[-5, 5]`.
pub fn random_poly(r: &mut CorpusRng, arity: usize, max_terms: usize, max_exp: u32) -> Polynomial {
    loop {
        let k = r.gen_range(1..=max_terms);
        let terms: Vec<(Vec<u32>, Rat)> = (0..k)
            .map(|_| {
                let e = (0..arity).map(|_| r.gen_range(0..=max_exp)).collect();
                let mut c = r.gen_range(1..=5i64);
                if r.gen_bool(0.5) {
                    c = -c;
                }
                (e, int(c))
            })
            .collect();
        let p = Polynomial::from_terms(arity, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

/// Like [`random_poly`] but without constant term (so `f` lies in the maximal ideal).
pub fn random_poly_m0(r: &mut CorpusRng, arity: usize, max_terms: usize, max_exp: u32) -> Polynomial {
    loop {
        let p = random_poly(r, arity, max_terms, max_exp);
        if p.coeff(&vec![0; arity]) == int(0) {
            return p;
        }
    }
}

/// Random polynomial of total degree at most `d` with at least one term of degree exactly `d`.
pub fn random_poly_degree(r: &mut CorpusRng, d: u32, max_terms: usize) -> Polynomial {
    loop {
        let k = r.gen_range(1..=max_terms);
        let mut terms = Vec::new();
        let a = r.gen_range(0..=d);
        terms.push((vec![a, d - a], int(r.gen_range(1..=5))));
        for _ in 1..k {
            let deg = r.gen_range(0..=d);
            let a = r.gen_range(0..=deg);
            terms.push((vec![a, deg - a], int(r.gen_range(-5..=5))));
        }
        let p = Polynomial::from_terms(2, terms).unwrap();
        if p.total_degree() == Some(d) {
            return p;
        }
    }
}

/// Barycentric coordinates with denominator `den` (some may be zero).
pub fn random_bary(r: &mut CorpusRng, n: usize, den: i64) -> Vec<Rat> {
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| r.gen_range(0..=den)).collect();
    cuts.sort();
    let mut out = Vec::with_capacity(n);
    let mut prev = 0;
    for c in cuts {
        out.push(rat(c - prev, den));
        prev = c;
    }
    out.push(rat(den - prev, den));
    out
}

/// Barycentric coordinates, all strictly positive.
pub fn random_interior_bary(r: &mut CorpusRng, n: usize, den: i64) -> Vec<Rat> {
    assert!(den >= n as i64);
    loop {
        let c = random_bary(r, n, den);
        if c.iter().all(|x| *x > int(0)) {
            return c;
        }
    }
}

/// Uniform rational `p/den` in `[lo, hi]`.
pub fn random_rat(r: &mut CorpusRng, lo: &Rat, hi: &Rat, den: i64) -> Rat {
    let a = (lo * int(den)).ceil().to_integer();
    let b = (hi * int(den)).floor().to_integer();
    let a: i64 = a.try_into().unwrap();
    let b: i64 = b.try_into().unwrap();
    rat(r.gen_range(a..=b), den)
}

pub fn random_u32(r: &mut CorpusRng, lo: u32, hi: u32) -> u32 {
    r.gen_range(lo..=hi)
}

pub fn random_index(r: &mut CorpusRng, n: usize) -> usize {
    r.gen_range(0..n)
}
