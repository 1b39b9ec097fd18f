//! Small dense exact linear algebra.

use num_traits::{One, Zero};

use crate::scalar::Rat;

/// Row-reduces `m` in place and returns the pivot columns.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : rows * x = 0}`.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b` (free variables set to zero), or `None` if inconsistent.
pub fn solve_any(a: &[Vec<Rat>], b: &[Rat]) -> Option<(Vec<Rat>, usize)> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = m[r][n].clone();
    }
    Some((x, pivots.len()))
}

/// The unique solution of `a x = b`, or `None` if there is none or it is not unique.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    match solve_any(a, b) {
        Some((x, r)) if r == n => Some(x),
        _ => None,
    }
}

pub fn det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    d
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

/// `lambda * a + (1 - lambda) * b`.
pub fn lerp(lambda: &Rat, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mu = Rat::one() - lambda;
    a.iter().zip(b).map(|(x, y)| lambda * x + &mu * y).collect()
}

pub fn barycenter(points: &[Vec<Rat>]) -> Vec<Rat> {
    let n = Rat::from_integer(points.len().into());
    let mut c = vec![Rat::zero(); points[0].len()];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    c.iter().map(|x| x / &n).collect()
}

/// Dimension of the affine hull of `points` (`-1` is never returned; empty gives 0).
pub fn affine_dim(points: &[Vec<Rat>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<Vec<Rat>> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(&diffs)
}

pub fn affinely_independent(points: &[Vec<Rat>]) -> bool {
    points.is_empty() || affine_dim(points) + 1 == points.len()
}

/// Greedy maximal affinely independent subset (indices).
pub fn affine_basis(points: &[Vec<Rat>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..points.len() {
        let mut cand: Vec<Vec<Rat>> = chosen.iter().map(|&j| points[j].clone()).collect();
        cand.push(points[i].clone());
        if affinely_independent(&cand) {
            chosen.push(i);
        }
    }
    chosen
}

/// Affine coordinates of `p` with respect to affinely independent `basis`.
pub fn affine_coords(basis: &[Vec<Rat>], p: &[Rat]) -> Option<Vec<Rat>> {
    let d = p.len();
    let k = basis.len();
    let mut a: Vec<Vec<Rat>> = (0..d).map(|r| (0..k).map(|c| basis[c][r].clone()).collect()).collect();
    let mut b: Vec<Rat> = p.to_vec();
    a.push(vec![Rat::one(); k]);
    b.push(Rat::one());
    solve(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn solve_and_det() {
        let a = vec![vec![int(1), int(1)], vec![int(1), int(0)]];
        let x = solve(&a, &[int(2), int(1)]).unwrap();
        assert_eq!(x, vec![int(1), int(1)]);
        assert_eq!(det(&a), int(-1));
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(solve(&s, &[int(1), int(2)]).is_none());
        assert!(solve_any(&s, &[int(1), int(3)]).is_none());
        assert_eq!(det(&s), int(0));
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = vec![vec![int(1), int(2), int(3)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(&v[0] + int(2) * &v[1] + int(3) * &v[2], int(0));
        }
    }

    #[test]
    fn affine_helpers() {
        let pts = vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(2), int(0)]];
        assert_eq!(affine_dim(&pts), 1);
        assert!(!affinely_independent(&pts));
        assert_eq!(affine_basis(&pts), vec![0, 1]);
        let c = affine_coords(&[pts[0].clone(), pts[1].clone()], &[rat(1, 2), int(0)]).unwrap();
        assert_eq!(c, vec![rat(1, 2), rat(1, 2)]);
    }
}
