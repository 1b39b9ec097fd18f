//! Newton polyhedra: convex hulls of finitely many rational points plus the
//! nonnegative orthant.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{det, nullspace, sub};
use crate::lp;
use crate::scalar::{dot, int, to_rats, Rat};

/// Inequality `normal . x >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: Vec<Rat>,
    pub rhs: Rat,
}

impl Facet {
    /// Bounded facets have a strictly positive normal.
    pub fn is_bounded(&self) -> bool {
        self.normal.iter().all(|a| a.is_positive())
    }

    pub fn holds(&self, x: &[Rat]) -> bool {
        dot(&self.normal, x) >= self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewtonPolyhedron {
    dim: usize,
    extremal: Vec<Vec<Rat>>,
}

/// Scales `v` to a primitive integer vector (same direction).
pub fn primitive(v: &[Rat]) -> Vec<Rat> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

fn dominates(p: &[Rat], q: &[Rat]) -> bool {
    // q + orthant contains p
    p.iter().zip(q).all(|(a, b)| a >= b)
}

/// `x in conv(points) + orthant`, decided by an exact LP.
pub fn lp_contains(points: &[Vec<Rat>], x: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let d = x.len();
    let k = points.len();
    // variables: lambda_1..k, s_1..d
    let mut a = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut row: Vec<Rat> = points.iter().map(|p| p[i].clone()).collect();
        row.extend((0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
        a.push(row);
    }
    let mut last = vec![Rat::one(); k];
    last.extend(std::iter::repeat_n(Rat::zero(), d));
    a.push(last);
    let mut b = x.to_vec();
    b.push(Rat::one());
    lp::feasible(&a, &b).is_some()
}

/// Extremal points by pairwise domination and exact LP membership.
pub fn extremal_by_lp(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let distinct: Vec<Vec<Rat>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let pareto: Vec<Vec<Rat>> = distinct
        .iter()
        .filter(|p| !distinct.iter().any(|q| q != *p && dominates(p, q)))
        .cloned()
        .collect();
    pareto
        .iter()
        .filter(|p| {
            let others: Vec<Vec<Rat>> = pareto.iter().filter(|q| q != p).cloned().collect();
            !lp_contains(&others, p)
        })
        .cloned()
        .collect()
}

fn cross(o: &[Rat], a: &[Rat], b: &[Rat]) -> Rat {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Planar case: the convex staircase chain, sorted by first coordinate.
fn extremal_2d(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut pts: Vec<Vec<Rat>> = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut stair: Vec<Vec<Rat>> = Vec::new();
    for p in pts {
        if stair.last().is_none_or(|q| p[1] < q[1]) {
            stair.push(p);
        }
    }
    let mut hull: Vec<Vec<Rat>> = Vec::new();
    for p in stair {
        while hull.len() >= 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p).is_positive() {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

impl NewtonPolyhedron {
    pub fn new(points: Vec<Vec<Rat>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::ZeroPolynomial);
        };
        let dim = first.len();
        if dim == 0 || points.iter().any(|p| p.len() != dim) {
            return Err(Error::Arity("points of different dimensions".into()));
        }
        let mut extremal = match dim {
            1 => vec![points.iter().min().unwrap().clone()],
            2 => extremal_2d(&points),
            _ => extremal_by_lp(&points),
        };
        extremal.sort();
        Ok(NewtonPolyhedron { dim, extremal })
    }

    pub fn from_exponents<'a, I: IntoIterator<Item = &'a Vec<u32>>>(it: I) -> Result<Self> {
        Self::new(it.into_iter().map(|e| to_rats(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn extremal(&self) -> &[Vec<Rat>] {
        &self.extremal
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        if self.extremal.iter().any(|p| dominates(x, p)) {
            return true;
        }
        lp_contains(&self.extremal, x)
    }

    /// `min_{p in P} <t, p>` for `t >= 0`.
    pub fn support_value(&self, t: &[Rat]) -> Rat {
        self.extremal.iter().map(|p| dot(t, p)).min().unwrap()
    }

    pub fn scale(&self, r: &Rat) -> Self {
        assert!(!r.is_negative());
        if r.is_zero() {
            return NewtonPolyhedron { dim: self.dim, extremal: vec![vec![Rat::zero(); self.dim]] };
        }
        NewtonPolyhedron {
            dim: self.dim,
            extremal: self.extremal.iter().map(|p| p.iter().map(|x| x * r).collect()).collect(),
        }
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Arity("Minkowski sum of different dimensions".into()));
        }
        let mut pts = Vec::new();
        for p in &self.extremal {
            for q in &other.extremal {
                pts.push(p.iter().zip(q).map(|(a, b)| a + b).collect());
            }
        }
        Self::new(pts)
    }

    /// True when every coordinate axis meets the polyhedron, i.e. the complement
    /// in the orthant is bounded.
    pub fn is_cobounded(&self) -> bool {
        (0..self.dim).all(|i| {
            self.extremal
                .iter()
                .any(|p| p.iter().enumerate().all(|(j, x)| j == i || x.is_zero()))
        })
    }

    /// All facets, by brute force over `dim`-subsets of extremal points and
    /// coordinate directions.
    pub fn facets(&self) -> Vec<Facet> {
        let d = self.dim;
        if d == 1 {
            return vec![Facet { normal: vec![int(1)], rhs: self.extremal[0][0].clone() }];
        }
        let n = self.extremal.len();
        let total = n + d;
        let mut found: BTreeSet<Facet> = BTreeSet::new();
        let mut idx: Vec<usize> = (0..d).collect();
        loop {
            let pts: Vec<usize> = idx.iter().copied().filter(|&i| i < n).collect();
            if !pts.is_empty() {
                let p0 = &self.extremal[pts[0]];
                let mut rows: Vec<Vec<Rat>> = pts[1..].iter().map(|&i| sub(&self.extremal[i], p0)).collect();
                for &i in idx.iter().filter(|&&i| i >= n) {
                    let mut e = vec![Rat::zero(); d];
                    e[i - n] = Rat::one();
                    rows.push(e);
                }
                let ns = nullspace(&rows, d);
                if ns.len() == 1 {
                    let mut a = primitive(&ns[0]);
                    if a.iter().any(|x| x.is_negative()) {
                        a = a.iter().map(|x| -x).collect();
                    }
                    if a.iter().all(|x| !x.is_negative()) {
                        let rhs = dot(&a, p0);
                        if self.extremal.iter().all(|p| dot(&a, p) >= rhs) {
                            found.insert(Facet { normal: a, rhs });
                        }
                    }
                }
            }
            // next combination
            let mut k = d;
            loop {
                if k == 0 {
                    return found.into_iter().collect();
                }
                k -= 1;
                if idx[k] < total - d + k {
                    idx[k] += 1;
                    for j in k + 1..d {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn bounded_facets(&self) -> Vec<Facet> {
        self.facets().into_iter().filter(|f| f.is_bounded()).collect()
    }

    pub fn contains_by_facets(&self, x: &[Rat]) -> bool {
        x.iter().all(|c| !c.is_negative()) && self.facets().iter().all(|f| f.holds(x))
    }

    /// Volume of `orthant \ P`; requires a cobounded polyhedron and `dim <= 3`.
    pub fn covolume(&self) -> Result<Rat> {
        if !self.is_cobounded() {
            return Err(Error::NotPrimary);
        }
        match self.dim {
            1 => Ok(self.extremal[0][0].clone()),
            2 => {
                // the chain runs from the y-axis point to the x-axis point
                let mut area = Rat::zero();
                for w in self.extremal.windows(2) {
                    area += (&w[0][0] * &w[1][1] - &w[0][1] * &w[1][0]).abs();
                }
                Ok(area / int(2))
            }
            3 => {
                let mut vol = Rat::zero();
                for f in self.bounded_facets() {
                    let on: Vec<&Vec<Rat>> =
                        self.extremal.iter().filter(|p| dot(&f.normal, p) == f.rhs).collect();
                    let proj: Vec<Vec<Rat>> = on.iter().map(|p| vec![p[0].clone(), p[1].clone()]).collect();
                    let order = convex_polygon_order(&proj);
                    let poly: Vec<&Vec<Rat>> = order.iter().map(|&i| on[i]).collect();
                    for k in 1..poly.len().saturating_sub(1) {
                        let m = vec![poly[0].clone(), poly[k].clone(), poly[k + 1].clone()];
                        vol += det(&m).abs();
                    }
                }
                Ok(vol / int(6))
            }
            d => Err(Error::UnsupportedDimension(format!("covolume in dimension {d}"))),
        }
    }
}

/// Indices of the vertices of the convex hull of planar points, in cyclic order.
pub fn convex_polygon_order(pts: &[Vec<Rat>]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    idx.dedup_by(|a, b| pts[*a] == pts[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2
            && !cross(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]).is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2
            && !cross(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]).is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rat>> {
        v.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn extremal_examples() {
        let np = NewtonPolyhedron::new(pts(&[&[2, 0], &[1, 3], &[2, 2]])).unwrap();
        assert_eq!(np.extremal(), pts(&[&[1, 3], &[2, 0]]).as_slice());
        let np = NewtonPolyhedron::new(pts(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(np.extremal().len(), 2);
        let np = NewtonPolyhedron::new(pts(&[&[0, 2], &[1, 1], &[2, 0]])).unwrap();
        assert_eq!(np.extremal(), pts(&[&[0, 2], &[2, 0]]).as_slice());
    }

    #[test]
    fn facets_of_staircase() {
        let np = NewtonPolyhedron::new(pts(&[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        let bounded = np.bounded_facets();
        let normals: Vec<Vec<Rat>> = bounded.iter().map(|f| f.normal.clone()).collect();
        assert!(normals.contains(&vec![int(1), int(1)]));
        assert!(normals.contains(&vec![int(2), int(1)]));
        assert_eq!(bounded.len(), 2);
        assert_eq!(np.facets().len(), 4);
        assert_eq!(np.covolume().unwrap(), rat(5, 2));
    }

    #[test]
    fn covolume_3d() {
        let np = NewtonPolyhedron::new(pts(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])).unwrap();
        assert_eq!(np.covolume().unwrap(), int(5));
        let np = NewtonPolyhedron::new(pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(np.covolume().unwrap(), rat(1, 6));
        let np = NewtonPolyhedron::new(pts(&[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert!(np.covolume().is_err());
    }

    /// Lattice points of the complement, counted by brute force.
    fn count_complement(np: &NewtonPolyhedron, bound: i64) -> i64 {
        let mut c = 0;
        let d = np.dim();
        let mut x = vec![0i64; d];
        loop {
            let p: Vec<Rat> = x.iter().map(|&v| int(v)).collect();
            if !np.contains(&p) {
                c += 1;
            }
            let mut k = 0;
            loop {
                if k == d {
                    return c;
                }
                x[k] += 1;
                if x[k] <= bound {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn complement_count_matches_small_case() {
        // (x^2, xy, y^3): complement {(0,0),(1,0),(0,1),(0,2)}
        let np = NewtonPolyhedron::new(pts(&[&[2, 0], &[1, 1], &[0, 3]])).unwrap();
        assert_eq!(count_complement(&np, 6), 4);
    }

    fn arb_points(d: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
        proptest::collection::vec(proptest::collection::vec(0i64..7, d), 1..7)
            .prop_map(|v| v.into_iter().map(|p| p.into_iter().map(int).collect()).collect())
    }

    proptest! {
        #[test]
        fn planar_chain_matches_lp(p in arb_points(2)) {
            let fast = NewtonPolyhedron::new(p.clone()).unwrap();
            let mut slow = extremal_by_lp(&p);
            slow.sort();
            prop_assert_eq!(fast.extremal(), slow.as_slice());
        }

        #[test]
        fn facets_agree_with_lp_membership(p in arb_points(3), q in proptest::collection::vec(0i64..8, 3)) {
            let np = NewtonPolyhedron::new(p).unwrap();
            let x: Vec<Rat> = q.into_iter().map(int).collect();
            prop_assert_eq!(np.contains(&x), np.contains_by_facets(&x));
        }

        #[test]
        fn covolume_2d_matches_shoelace(p in arb_points(2), a in 1i64..7, b in 1i64..7) {
            let mut p = p;
            p.push(vec![int(a), int(0)]);
            p.push(vec![int(0), int(b)]);
            let np = NewtonPolyhedron::new(p).unwrap();
            // shoelace over the closed polygon origin -> x-axis point -> chain -> y-axis point
            let mut poly = vec![vec![int(0), int(0)]];
            poly.extend(np.extremal().iter().rev().cloned());
            let mut s = Rat::zero();
            for i in 0..poly.len() {
                let (u, v) = (&poly[i], &poly[(i + 1) % poly.len()]);
                s += &u[0] * &v[1] - &u[1] * &v[0];
            }
            prop_assert_eq!(np.covolume().unwrap(), s.abs() / int(2));
        }
    }
}
