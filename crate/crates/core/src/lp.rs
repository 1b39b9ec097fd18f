//! Exact two-phase simplex over the rationals (Bland's rule, so no cycling).
//!
//! Problems are in equality form: maximize `c.x` subject to `A x = b`, `x >= 0`.

use num_traits::{Signed, Zero};

use crate::scalar::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, x: Vec<Rat> },
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, j: usize, obj: &mut [Rat]) {
        let p = self.rows[r][j].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let (pr, prhs) = (self.rows[r].clone(), self.rhs[r].clone());
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pr) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !obj[j].is_zero() {
            let f = obj[j].clone();
            for (x, y) in obj.iter_mut().zip(&pr) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = j;
    }

    /// Runs simplex iterations on reduced costs `obj` restricted to `allowed` columns.
    /// Returns false if unbounded.
    fn run(&mut self, obj: &mut [Rat], allowed: usize) -> bool {
        loop {
            let Some(j) = (0..allowed).find(|&j| obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(Rat, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            let Some((_, r, _)) = best else {
                return false;
            };
            self.pivot(r, j, obj);
        }
    }
}

fn reduced_costs(t: &Tableau, c: &[Rat], ncols: usize) -> Vec<Rat> {
    let mut d: Vec<Rat> = (0..ncols).map(|j| c.get(j).cloned().unwrap_or_else(Rat::zero)).collect();
    for (i, &bi) in t.basis.iter().enumerate() {
        let cb = c.get(bi).cloned().unwrap_or_else(Rat::zero);
        if cb.is_zero() {
            continue;
        }
        for j in 0..ncols {
            if !t.rows[i][j].is_zero() {
                d[j] -= &cb * &t.rows[i][j];
            }
        }
    }
    d
}

pub fn maximize(c: &[Rat], a: &[Vec<Rat>], b: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert!(a.iter().all(|r| r.len() == n), "constraint width must match objective");
    assert_eq!(b.len(), m);
    let total = n + m;
    let mut t = Tableau { rows: Vec::with_capacity(m), rhs: Vec::with_capacity(m), basis: Vec::with_capacity(m) };
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Rat> = a[i].iter().map(|x| if neg { -x } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rat::from_integer(1.into()) } else { Rat::zero() }));
        t.rows.push(row);
        t.rhs.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.basis.push(n + i);
    }
    // phase 1: maximize -(sum of artificials)
    let mut c1 = vec![Rat::zero(); total];
    for x in c1.iter_mut().skip(n) {
        *x = -Rat::from_integer(1.into());
    }
    let mut obj = reduced_costs(&t, &c1, total);
    t.run(&mut obj, total);
    let infeas: Rat = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bi, _)| bi >= n)
        .map(|(_, r)| r.clone())
        .sum();
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                let mut dummy = vec![Rat::zero(); total];
                t.pivot(i, j, &mut dummy);
                i += 1;
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }
    for row in t.rows.iter_mut() {
        row.truncate(n);
    }
    let mut obj = reduced_costs(&t, c, n);
    if !t.run(&mut obj, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        x[bi] = t.rhs[i].clone();
    }
    let value = c.iter().zip(&x).map(|(p, q)| p * q).sum();
    LpOutcome::Optimal { value, x }
}

/// A point of `{A x = b, x >= 0}` or `None`.
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    match maximize(&vec![Rat::zero(); n], a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
