//! Monomial ideals and the multiplicity invariants of monomial valuations:
//! colengths, integral closures, Rees valuations, Hilbert-Samuel and mixed
//! multiplicities, alpha_i, volumes and linking numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::poly::{exp_add, exp_leq, parse_support, Exponent, Polynomial};
use crate::polyhedron::NewtonPolyhedron;
use crate::scalar::{ceil, dot, dot_int, int, to_rats, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    arity: usize,
    gens: Vec<Exponent>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IdealJson {
    pub arity: usize,
    pub generators: Vec<Exponent>,
}

/// Minimal elements under the componentwise order, sorted.
fn minimize(mut v: Vec<Exponent>) -> Vec<Exponent> {
    v.sort();
    v.dedup();
    if v.first().map(|e| e.len()) == Some(2) {
        // sweep: increasing first coordinate, keep strictly decreasing second
        let mut out: Vec<Exponent> = Vec::new();
        for e in v {
            if out.last().map_or(true, |l: &Exponent| e[1] < l[1]) {
                out.push(e);
            }
        }
        return out;
    }
    let mut out: Vec<Exponent> = Vec::new();
    for e in v {
        // lexicographic order: anything dominating `e` comes later, anything below earlier
        if !out.iter().any(|g| exp_leq(g, &e)) {
            out.push(e);
        }
    }
    out
}

impl MonomialIdeal {
    pub fn new(arity: usize, gens: Vec<Exponent>) -> Result<Self> {
        if gens.iter().any(|g| g.len() != arity) {
            return Err(Error::Arity(format!("generators must have {arity} exponents")));
        }
        if gens.is_empty() {
            return Err(Error::InvalidArgument("the zero ideal is not supported".into()));
        }
        Ok(MonomialIdeal { arity, gens: minimize(gens) })
    }

    pub fn unit(arity: usize) -> Self {
        MonomialIdeal { arity, gens: vec![vec![0; arity]] }
    }

    /// `m_0 = (x_1, ..., x_m)`.
    pub fn maximal(arity: usize) -> Self {
        let gens = (0..arity).map(|i| (0..arity).map(|j| u32::from(i == j)).collect()).collect();
        MonomialIdeal::new(arity, gens).unwrap()
    }

    /// `"x^2, x*y, y^3"`: one monomial per comma-separated entry.
    pub fn parse(text: &str, arity: Option<usize>) -> Result<Self> {
        let polys: Vec<Polynomial> = text.split(',').map(|s| parse_support(s.trim(), None)).collect::<Result<_>>()?;
        let m = arity.unwrap_or_else(|| polys.iter().map(|p| p.arity()).max().unwrap_or(1)).max(1);
        let mut gens = Vec::new();
        for p in polys {
            if p.len() != 1 {
                return Err(Error::InvalidArgument("each generator must be a single monomial".into()));
            }
            let p = p.with_arity(m)?;
            gens.push(p.support().next().unwrap().clone());
        }
        MonomialIdeal::new(m, gens)
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        MonomialIdeal::new(j.arity, j.generators.clone())
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson { arity: self.arity, generators: self.gens.clone() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gens(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        self.gens.iter().any(|g| exp_leq(g, a))
    }

    /// Every term of `f` lies in the ideal.
    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        f.support().all(|a| self.contains(a))
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Smallest `k` with `x_i^k` in the ideal.
    pub fn pure_power(&self, i: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(j, &x)| j == i || x == 0))
            .map(|g| g[i])
            .min()
    }

    pub fn is_primary(&self) -> bool {
        (0..self.arity).all(|i| self.pure_power(i).is_some())
    }

    fn require_primary(&self) -> Result<()> {
        if self.is_primary() {
            Ok(())
        } else {
            Err(Error::NotPrimary)
        }
    }

    /// Number of monomials outside the ideal.
    pub fn colength(&self) -> Result<u64> {
        self.require_primary()?;
        let m = self.arity;
        let bounds: Vec<u32> = (0..m).map(|i| self.pure_power(i).unwrap()).collect();
        if m == 1 {
            return Ok(bounds[0] as u64);
        }
        let mut total = 0u64;
        let mut prefix = vec![0u32; m - 1];
        loop {
            let last = self
                .gens
                .iter()
                .filter(|g| g[..m - 1].iter().zip(&prefix).all(|(a, b)| a <= b))
                .map(|g| g[m - 1])
                .min()
                .unwrap_or(bounds[m - 1]);
            total += last as u64;
            // next prefix in the box
            let mut k = 0;
            loop {
                if k == m - 1 {
                    return Ok(total);
                }
                prefix[k] += 1;
                if prefix[k] < bounds[k] {
                    break;
                }
                prefix[k] = 0;
                k += 1;
            }
        }
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.arity != other.arity {
            return Err(Error::Arity("ideals of different arity".into()));
        }
        let mut v = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                v.push(exp_add(a, b));
            }
        }
        MonomialIdeal::new(self.arity, v)
    }

    pub fn power(&self, r: u32) -> MonomialIdeal {
        let mut out = MonomialIdeal::unit(self.arity);
        let mut base = self.clone();
        let mut k = r;
        while k > 0 {
            if k & 1 == 1 {
                out = out.product(&base).unwrap();
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base).unwrap();
            }
        }
        out
    }

    pub fn newton_polyhedron(&self) -> Result<NewtonPolyhedron> {
        NewtonPolyhedron::from_exponents(self.gens.iter())
    }

    /// Minimal lattice points of the Newton polyhedron.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        let np = self.newton_polyhedron()?;
        let m = self.arity;
        let bounds: Vec<u32> = (0..m).map(|i| self.gens.iter().map(|g| g[i]).max().unwrap()).collect();
        let mut found = Vec::new();
        let mut p = vec![0u32; m];
        loop {
            let pr = to_rats(&p);
            if !found.iter().any(|g: &Exponent| exp_leq(g, &p)) && np.contains(&pr) {
                found.push(p.clone());
            }
            let mut k = 0;
            loop {
                if k == m {
                    return MonomialIdeal::new(m, found);
                }
                p[k] += 1;
                if p[k] <= bounds[k] {
                    break;
                }
                p[k] = 0;
                k += 1;
            }
        }
    }

    /// Inward normals of the bounded facets, scaled so `w(I) = 1`.
    pub fn rees_valuations(&self) -> Result<Vec<Vec<Rat>>> {
        self.require_primary()?;
        if self.is_unit() {
            return Err(Error::InvalidArgument("the unit ideal has no Rees valuations".into()));
        }
        let np = self.newton_polyhedron()?;
        let mut out: Vec<Vec<Rat>> = np
            .bounded_facets()
            .into_iter()
            .map(|f| f.normal.iter().map(|x| x / &f.rhs).collect())
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Largest `j` with `f` in `I^j`.
    pub fn order(&self, f: &Polynomial) -> Result<u32> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_unit() {
            return Err(Error::InvalidArgument("order with respect to the unit ideal is infinite".into()));
        }
        self.require_primary()?;
        let mut j = 0;
        let mut power = MonomialIdeal::unit(self.arity);
        loop {
            let next = power.product(self)?;
            if !next.contains_poly(f) {
                return Ok(j);
            }
            power = next;
            j += 1;
        }
    }

    /// `min over Rees valuations w of w(f)`.
    pub fn hat_order(&self, f: &Polynomial) -> Result<Rat> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let rees = self.rees_valuations()?;
        Ok(rees
            .iter()
            .map(|w| f.support().map(|a| dot_int(w, a)).min().unwrap())
            .min()
            .unwrap())
    }

    /// `e(I) = m! covol(Nw(I))`.
    pub fn hilbert_samuel(&self) -> Result<Rat> {
        self.require_primary()?;
        if self.arity > 3 {
            return Err(Error::UnsupportedDimension("exact multiplicity needs arity <= 3".into()));
        }
        Ok(self.newton_polyhedron()?.covolume()? * factorial(self.arity))
    }

    /// `m! colength(I^n) / n^m`.
    pub fn hilbert_samuel_oracle(&self, n: u32) -> Result<Rat> {
        self.require_primary()?;
        let c = self.power(n).colength()?;
        Ok(Rat::from_integer(BigInt::from(c)) * factorial(self.arity) / Rat::from_integer(BigInt::from(n).pow(self.arity as u32)))
    }
}

pub fn factorial(m: usize) -> Rat {
    int((1..=m as i64).product())
}

fn binomial(m: usize, i: usize) -> Rat {
    factorial(m) / (factorial(i) * factorial(m - i))
}

/// `c_i` with `m! covol(r P + s Q) = sum_i C(m,i) c_i r^(m-i) s^i`.
pub fn mixed_covolumes(p: &NewtonPolyhedron, q: &NewtonPolyhedron) -> Result<Vec<Rat>> {
    let m = p.dim();
    if q.dim() != m {
        return Err(Error::Arity("polyhedra of different dimension".into()));
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..=m {
        let (r, s) = (int((m - k) as i64), int(k as i64));
        let sum = p.scale(&r).minkowski_sum(&q.scale(&s))?;
        rhs.push(sum.covolume()? * factorial(m));
        rows.push(
            (0..=m)
                .map(|i| binomial(m, i) * num_traits::pow(r.clone(), m - i) * num_traits::pow(s.clone(), i))
                .collect(),
        );
    }
    // nodes (m-k, k) are distinct points on a line through no common zero: the system is regular
    Ok(solve(&rows, &rhs).expect("interpolation system is regular"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedMultiplicities {
    /// `e(I^[m-i]; J^[i])` for `i = 0..m`.
    pub values: Vec<Rat>,
    pub integral: bool,
}

pub fn mixed_multiplicities(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<MixedMultiplicities> {
    i.require_primary()?;
    j.require_primary()?;
    if i.arity() > 3 {
        return Err(Error::UnsupportedDimension("exact mixed multiplicities need arity <= 3".into()));
    }
    let values = mixed_covolumes(&i.newton_polyhedron()?, &j.newton_polyhedron()?)?;
    let integral = values.iter().all(|v| v.is_integer());
    Ok(MixedMultiplicities { values, integral })
}

/// Oracle: `e(I^r J^s)` from colengths of powers, for `(r, s)` as in [`mixed_covolumes`].
pub fn mixed_multiplicities_oracle(i: &MonomialIdeal, j: &MonomialIdeal, n: u32) -> Result<Vec<Rat>> {
    let m = i.arity();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in 0..=m {
        let (r, s) = ((m - k) as u32, k as u32);
        let prod = i.power(r).product(&j.power(s))?;
        rhs.push(prod.hilbert_samuel_oracle(n)?);
        rows.push(
            (0..=m)
                .map(|idx| binomial(m, idx) * num_traits::pow(int(r as i64), m - idx) * num_traits::pow(int(s as i64), idx))
                .collect(),
        );
    }
    Ok(solve(&rows, &rhs).expect("interpolation system is regular"))
}

fn require_full_support(t: &[Rat]) -> Result<()> {
    if t.is_empty() || t.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument("weights must all be positive".into()));
    }
    Ok(())
}

/// `a(v, n)`: minimal lattice points with `<t, alpha> >= n`.
pub fn valuation_ideal(t: &[Rat], n: &Rat) -> Result<MonomialIdeal> {
    require_full_support(t)?;
    let m = t.len();
    if !n.is_positive() {
        return Ok(MonomialIdeal::unit(m));
    }
    let bounds: Vec<u32> = t.iter().map(|ti| ceil(&(n / ti)).to_u32().expect("small box")).collect();
    let mut cands = Vec::new();
    let mut prefix = vec![0u32; m - 1];
    loop {
        let partial: Rat = prefix.iter().zip(t).map(|(&a, ti)| ti * int(a as i64)).sum();
        let rest = n - &partial;
        let last = if rest.is_positive() { ceil(&(&rest / &t[m - 1])).to_u32().unwrap() } else { 0 };
        let mut e = prefix.clone();
        e.push(last);
        cands.push(e);
        let mut k = 0;
        loop {
            if k == m - 1 {
                return MonomialIdeal::new(m, cands);
            }
            prefix[k] += 1;
            if prefix[k] <= bounds[k] {
                break;
            }
            prefix[k] = 0;
            k += 1;
        }
    }
}

/// `#{alpha in N^m : <t, alpha> < n}` in integer arithmetic.
pub fn count_below(t: &[Rat], n: &Rat) -> Result<u64> {
    require_full_support(t)?;
    let mut l = n.denom().clone();
    for x in t {
        l = l.lcm(x.denom());
    }
    let lr = Rat::from_integer(l);
    let tt: Vec<i128> = t.iter().map(|x| (x * &lr).to_integer().to_i128().expect("weights fit in i128")).collect();
    let nn = (n * &lr).to_integer().to_i128().expect("level fits in i128");
    fn rec(tt: &[i128], budget: i128) -> u64 {
        // points with sum tt_i a_i < budget
        if budget <= 0 {
            return 0;
        }
        if tt.len() == 1 {
            return ((budget + tt[0] - 1) / tt[0]) as u64;
        }
        let mut total = 0;
        let mut b = budget;
        while b > 0 {
            total += rec(&tt[1..], b);
            b -= tt[0];
        }
        total
    }
    Ok(rec(&tt, nn))
}

/// Region `{<t, alpha> >= 1}` as a Newton polyhedron.
pub fn half_space_polyhedron(t: &[Rat]) -> Result<NewtonPolyhedron> {
    require_full_support(t)?;
    let m = t.len();
    let pts = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Rat::one() / &t[i] } else { Rat::zero() }).collect())
        .collect();
    NewtonPolyhedron::new(pts)
}

fn simplex_polyhedron(m: usize) -> NewtonPolyhedron {
    half_space_polyhedron(&vec![Rat::one(); m]).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaVector {
    /// `alpha_0 .. alpha_m`.
    pub exact: Vec<Rat>,
    /// `(n, e(a(v,n)^[i]; m_0^[m-i]) / n^i)`.
    pub oracle: Vec<(u32, Vec<Rat>)>,
}

impl AlphaVector {
    pub fn teissier(&self) -> bool {
        let a = &self.exact;
        (1..a.len().saturating_sub(1)).all(|i| &a[i] * &a[i] <= &a[i - 1] * &a[i + 1])
    }
}

/// Exact `alpha_i(t)` via mixed covolumes of `P_t` and the simplex.
pub fn alpha_exact(t: &[Rat]) -> Result<Vec<Rat>> {
    let m = t.len();
    let c = mixed_covolumes(&half_space_polyhedron(t)?, &simplex_polyhedron(m))?;
    // c_k = e(P^[m-k]; S^[k]), alpha_i = e(P^[i]; S^[m-i]) = c_{m-i}
    Ok((0..=m).map(|i| c[m - i].clone()).collect())
}

pub fn alpha_oracle(t: &[Rat], n: u32) -> Result<Vec<Rat>> {
    let m = t.len();
    let a = valuation_ideal(t, &int(n as i64))?;
    let mm = mixed_multiplicities(&a, &MonomialIdeal::maximal(m))?.values;
    Ok((0..=m).map(|i| &mm[m - i] / num_traits::pow(int(n as i64), i)).collect())
}

pub fn alpha(t: &[Rat], oracle_levels: &[u32]) -> Result<AlphaVector> {
    let exact = alpha_exact(t)?;
    let oracle = oracle_levels.iter().map(|&n| Ok((n, alpha_oracle(t, n)?))).collect::<Result<_>>()?;
    Ok(AlphaVector { exact, oracle })
}

/// `1 / (t_1 ... t_m)`.
pub fn volume(t: &[Rat]) -> Result<Rat> {
    require_full_support(t)?;
    Ok(Rat::one() / t.iter().fold(Rat::one(), |a, b| a * b))
}

/// `m! covol(P_t)`.
pub fn volume_covolume(t: &[Rat]) -> Result<Rat> {
    Ok(half_space_polyhedron(t)?.covolume()? * factorial(t.len()))
}

/// `m! colength(a(v, n)) / n^m` by lattice point counting.
pub fn volume_oracle(t: &[Rat], n: u32) -> Result<Rat> {
    let c = count_below(t, &int(n as i64))?;
    Ok(Rat::from_integer(BigInt::from(c)) * factorial(t.len()) / Rat::from_integer(BigInt::from(n).pow(t.len() as u32)))
}

/// `beta(v/w) = max_i t_i / s_i`.
pub fn linking_number(t: &[Rat], s: &[Rat]) -> Result<Rat> {
    require_full_support(t)?;
    require_full_support(s)?;
    if t.len() != s.len() {
        return Err(Error::Arity("weights of different length".into()));
    }
    Ok(t.iter().zip(s).map(|(a, b)| a / b).max().unwrap())
}

/// Max of `<t, alpha> / <s, alpha>` over monomials of degree `1..=d`.
pub fn linking_brute(t: &[Rat], s: &[Rat], d: u32) -> Result<Rat> {
    require_full_support(t)?;
    require_full_support(s)?;
    let m = t.len();
    let mut best = Rat::zero();
    let mut a = vec![0u32; m];
    loop {
        let deg: u32 = a.iter().sum();
        if deg >= 1 {
            let r = dot_int(t, &a) / dot_int(s, &a);
            if r > best {
                best = r;
            }
        }
        let mut k = 0;
        loop {
            if k == m {
                return Ok(best);
            }
            a[k] += 1;
            if a.iter().sum::<u32>() <= d {
                break;
            }
            a[k] = 0;
            k += 1;
        }
    }
}

/// `(1/n) w(a(v, n))`, which tends to `1 / beta(v/w)`.
pub fn linking_lembdiv(t: &[Rat], s: &[Rat], n: u32) -> Result<Rat> {
    let a = valuation_ideal(t, &int(n as i64))?;
    let w = a.gens().iter().map(|g| dot_int(s, g)).min().unwrap();
    Ok(w / int(n as i64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T107Scan {
    /// `n - max{j : closure(I^n) in I^j}` for `n = 1..=nmax`.
    pub gaps: Vec<u32>,
    pub n_min: u32,
}

pub fn t107_scan(i: &MonomialIdeal, nmax: u32) -> Result<T107Scan> {
    i.require_primary()?;
    let mut gaps = Vec::new();
    let powers: Vec<MonomialIdeal> = (0..=nmax).map(|k| i.power(k)).collect();
    for n in 1..=nmax {
        let cl = powers[n as usize].integral_closure()?;
        let j = (0..=n).rev().find(|&j| cl.is_subset(&powers[j as usize])).unwrap();
        gaps.push(n - j);
    }
    let n_min = gaps.iter().copied().max().unwrap_or(0);
    Ok(T107Scan { gaps, n_min })
}

/// Sandwich gap `hat_ord(f) - ord(f)`, checked against `0 <= gap`.
pub fn t106_gap(i: &MonomialIdeal, f: &Polynomial) -> Result<(u32, Rat)> {
    Ok((i.order(f)?, i.hat_order(f)?))
}

/// Weighted evaluation `min_{alpha in supp f} <t, alpha>` for ideals' generators.
pub fn ideal_value(t: &[Rat], i: &MonomialIdeal) -> Rat {
    i.gens().iter().map(|g| dot(t, &to_rats(g))).min().unwrap()
}

/// Two valuations on a common face, as monomial weights on `(x, y, ...)`, with
/// their distance in the model's weight metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSample {
    pub v: Vec<Rat>,
    pub w: Vec<Rat>,
    pub dist: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DRow {
    pub dist: Rat,
    pub inclusion: bool,
    pub alpha_v: Vec<Rat>,
    pub alpha_w: Vec<Rat>,
    /// `|alpha_i(v) - alpha_i(w)| / dist`, zero when `dist = 0`.
    pub ratios: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DReport {
    pub a: Rat,
    /// `C_i = sup alpha_i` over the sample.
    pub c: Vec<Rat>,
    /// `i C_i A`.
    pub bounds: Vec<Rat>,
    pub rows: Vec<DRow>,
    pub violations: usize,
}

impl DReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

/// `a(v, n) in a(w, n (1 - A ||v - w||))` and the same with `v, w` swapped.
pub fn ideal_inclusion(p: &PairSample, a: &Rat, n: u32) -> Result<bool> {
    let shrink = Rat::one() - a * &p.dist;
    if !shrink.is_positive() {
        return Err(Error::InvalidArgument("pair is not closer than 1/A".into()));
    }
    let level = int(n as i64) * &shrink;
    let n = int(n as i64);
    Ok(valuation_ideal(&p.v, &n)?.is_subset(&valuation_ideal(&p.w, &level)?)
        && valuation_ideal(&p.w, &n)?.is_subset(&valuation_ideal(&p.v, &level)?))
}

pub fn lipschitz_experiment_d(pairs: &[PairSample], a: &Rat, levels: &[u32]) -> Result<DReport> {
    let mut rows = Vec::new();
    for p in pairs {
        let mut inclusion = true;
        for &n in levels {
            inclusion &= ideal_inclusion(p, a, n)?;
        }
        let alpha_v = alpha_exact(&p.v)?;
        let alpha_w = alpha_exact(&p.w)?;
        let ratios = alpha_v
            .iter()
            .zip(&alpha_w)
            .map(|(x, y)| if p.dist.is_zero() { Rat::zero() } else { (x - y).abs() / &p.dist })
            .collect();
        rows.push(DRow { dist: p.dist.clone(), inclusion, alpha_v, alpha_w, ratios });
    }
    let m1 = rows.first().map(|r| r.alpha_v.len()).unwrap_or(0);
    let c: Vec<Rat> = (0..m1)
        .map(|i| rows.iter().flat_map(|r| [&r.alpha_v[i], &r.alpha_w[i]]).max().unwrap().clone())
        .collect();
    let bounds: Vec<Rat> = c.iter().enumerate().map(|(i, ci)| int(i as i64) * ci * a).collect();
    let violations = rows
        .iter()
        .filter(|r| !r.inclusion || r.ratios.iter().zip(&bounds).any(|(x, b)| x > b))
        .count();
    Ok(DReport { a: a.clone(), c, bounds, rows, violations })
}

/// Two nearby pairs `(v, v')`, `(w, w')` with `d = ||v - w||`, `d' = ||v' - w'||`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSample {
    pub v: Vec<Rat>,
    pub vp: Vec<Rat>,
    pub w: Vec<Rat>,
    pub wp: Vec<Rat>,
    pub d: Rat,
    pub dp: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ERow {
    pub beta_vvp: Rat,
    pub beta_wwp: Rat,
    pub diff: Rat,
    /// `diff / (d + d')`, zero when both displacements vanish.
    pub ratio: Rat,
    /// `C_beta (1 / ((1 - A d)(1 - A d')) - 1)`.
    pub bound: Rat,
    pub submultiplicative: bool,
    pub reciprocal: bool,
    pub near_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EReport {
    pub a: Rat,
    pub c_beta: Rat,
    pub rows: Vec<ERow>,
    pub violations: usize,
}

impl EReport {
    pub fn pass(&self) -> bool {
        self.violations == 0
    }
}

pub fn lipschitz_experiment_e(quads: &[QuadSample], a: &Rat) -> Result<EReport> {
    let mut c_beta = Rat::zero();
    for q in quads {
        c_beta = c_beta.max(linking_number(&q.v, &q.vp)?).max(linking_number(&q.w, &q.wp)?);
    }
    let mut rows = Vec::new();
    for q in quads {
        let (sd, sdp) = (Rat::one() - a * &q.d, Rat::one() - a * &q.dp);
        if !sd.is_positive() || !sdp.is_positive() {
            return Err(Error::InvalidArgument("displacement is not below 1/A".into()));
        }
        let b = |x: &[Rat], y: &[Rat]| linking_number(x, y);
        let beta_vvp = b(&q.v, &q.vp)?;
        let beta_wwp = b(&q.w, &q.wp)?;
        let chain = b(&q.v, &q.w)? * &beta_wwp * b(&q.wp, &q.vp)?;
        let chain_back = b(&q.w, &q.v)? * &beta_vvp * b(&q.vp, &q.wp)?;
        let submultiplicative = beta_vvp <= chain
            && beta_wwp <= chain_back
            && beta_vvp <= b(&q.v, &q.w)? * b(&q.w, &q.vp)?;
        let reciprocal = &beta_vvp * b(&q.vp, &q.v)? >= Rat::one();
        let near_one = b(&q.v, &q.w)? <= Rat::one() / &sd
            && b(&q.w, &q.v)? <= Rat::one() / &sd
            && b(&q.vp, &q.wp)? <= Rat::one() / &sdp
            && b(&q.wp, &q.vp)? <= Rat::one() / &sdp;
        let diff = (&beta_vvp - &beta_wwp).abs();
        let total = &q.d + &q.dp;
        let ratio = if total.is_zero() { Rat::zero() } else { &diff / &total };
        let bound = &c_beta * (Rat::one() / (&sd * &sdp) - Rat::one());
        rows.push(ERow { beta_vvp, beta_wwp, diff, ratio, bound, submultiplicative, reciprocal, near_one });
    }
    let violations = rows
        .iter()
        .filter(|r| r.diff > r.bound || !r.submultiplicative || !r.reciprocal || !r.near_one)
        .count();
    Ok(EReport { a: a.clone(), c_beta, rows, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ideal(s: &str) -> MonomialIdeal {
        MonomialIdeal::parse(s, Some(2)).unwrap()
    }

    #[test]
    fn valuation_ideal_examples() {
        assert_eq!(valuation_ideal(&[int(1), int(1)], &int(2)).unwrap().gens(), &[vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(valuation_ideal(&[int(1), int(2)], &int(2)).unwrap().gens(), &[vec![0, 1], vec![2, 0]]);
        assert!(valuation_ideal(&[int(1), int(2)], &int(0)).unwrap().is_unit());
        assert!(valuation_ideal(&[int(1), int(0)], &int(2)).is_err());
    }

    #[test]
    fn colength_examples() {
        assert_eq!(ideal("x, y").colength().unwrap(), 1);
        assert_eq!(ideal("x^2, y").colength().unwrap(), 2);
        assert_eq!(ideal("x^2, x*y, y^3").colength().unwrap(), 4);
        assert!(ideal("x*y").colength().is_err());
        let m3 = MonomialIdeal::maximal(3).power(3);
        assert_eq!(m3.colength().unwrap(), 10);
    }

    #[test]
    fn products() {
        assert_eq!(ideal("x, y").power(2), ideal("x^2, x*y, y^2"));
        let i = ideal("x^3, y^2");
        assert_eq!(i.product(&MonomialIdeal::unit(2)).unwrap(), i);
        assert_eq!(ideal("x^2, y").power(2), ideal("x^4, x^2*y, y^2"));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(ideal("x^2, y^2").integral_closure().unwrap(), ideal("x^2, x*y, y^2"));
        assert_eq!(ideal("x, y").power(3).integral_closure().unwrap(), ideal("x, y").power(3));
        assert_eq!(ideal("x^3, y^2").integral_closure().unwrap(), ideal("x^3, x^2*y, y^2"));
    }

    #[test]
    fn rees_examples() {
        assert_eq!(ideal("x, y").rees_valuations().unwrap(), vec![vec![int(1), int(1)]]);
        assert_eq!(ideal("x^3, y^2").rees_valuations().unwrap(), vec![vec![rat(1, 3), rat(1, 2)]]);
        let r = ideal("x^2, x*y, y^3").rees_valuations().unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&vec![rat(1, 2), rat(1, 2)]));
        assert!(r.contains(&vec![rat(2, 3), rat(1, 3)]));
    }

    #[test]
    fn order_examples() {
        let f = parse_support("x^2 + x*y^3", None).unwrap();
        let m = ideal("x, y");
        assert_eq!(m.order(&f).unwrap(), 2);
        assert_eq!(m.hat_order(&f).unwrap(), int(2));
        let i = ideal("x^3, y^2");
        let g = parse_support("x*y", None).unwrap();
        assert_eq!(i.order(&g).unwrap(), 0);
        assert_eq!(i.hat_order(&g).unwrap(), rat(5, 6));
    }

    #[test]
    fn multiplicity_examples() {
        for (s, e) in [("x, y", 1), ("x^2, y^3", 6), ("x^2, x*y, y^3", 5)] {
            assert_eq!(ideal(s).hilbert_samuel().unwrap(), int(e));
        }
        let o = ideal("x^2, x*y, y^3").hilbert_samuel_oracle(200).unwrap();
        assert!((crate::scalar::to_f64(&o) - 5.0).abs() < 0.25);
    }

    #[test]
    fn mixed_examples() {
        let m = ideal("x, y");
        assert_eq!(mixed_multiplicities(&m, &m).unwrap().values, vec![int(1), int(1), int(1)]);
        let j = ideal("x, y^2");
        let r = mixed_multiplicities(&m, &j).unwrap();
        assert_eq!(r.values, vec![int(1), int(1), int(2)]);
        assert!(r.integral);
        assert_eq!(m.product(&j).unwrap().hilbert_samuel().unwrap(), int(5));
        let o = mixed_multiplicities_oracle(&m, &j, 60).unwrap();
        for (a, b) in o.iter().zip(&r.values) {
            assert!((crate::scalar::to_f64(a) - crate::scalar::to_f64(b)).abs() < 0.1);
        }
    }

    #[test]
    fn alpha_and_volume_examples() {
        let a = alpha_exact(&[int(1), int(1)]).unwrap();
        assert_eq!(a, vec![int(1), int(1), int(1)]);
        let av = alpha(&[int(1), int(2)], &[8]).unwrap();
        assert_eq!(av.exact, vec![int(1), rat(1, 2), rat(1, 2)]);
        assert!(av.teissier());
        assert_eq!(volume(&[int(1), int(2)]).unwrap(), rat(1, 2));
        assert_eq!(volume_covolume(&[int(1), int(2)]).unwrap(), rat(1, 2));
        assert_eq!(volume(&[int(1), int(1), int(1)]).unwrap(), int(1));
        assert_eq!(volume_covolume(&[int(1), int(1), int(1)]).unwrap(), int(1));
        let o = volume_oracle(&[int(1), int(2)], 64).unwrap();
        assert!((crate::scalar::to_f64(&o) - 0.5).abs() < 0.02);
        assert_eq!(count_below(&[int(1), int(1)], &int(2)).unwrap(), 3);
    }

    #[test]
    fn linking_examples() {
        let (v, w) = ([int(1), int(2)], [int(1), int(1)]);
        assert_eq!(linking_number(&v, &w).unwrap(), int(2));
        assert_eq!(linking_brute(&v, &w, 20).unwrap(), int(2));
        assert_eq!(linking_number(&v, &v).unwrap(), int(1));
        let l = linking_lembdiv(&v, &w, 512).unwrap();
        assert!((crate::scalar::to_f64(&l) - 0.5).abs() < 0.01);
    }

    #[test]
    fn t107_examples() {
        assert_eq!(t107_scan(&ideal("x, y"), 8).unwrap().n_min, 0);
        assert_eq!(t107_scan(&ideal("x^3, y^2"), 8).unwrap().n_min, 1);
    }

    #[test]
    fn experiments_trivial_cases() {
        let v = vec![int(1), int(2)];
        let p = PairSample { v: v.clone(), w: v.clone(), dist: Rat::zero() };
        let r = lipschitz_experiment_d(&[p], &int(3), &[8, 16]).unwrap();
        assert!(r.pass());
        assert!(r.rows[0].ratios.iter().all(|x| x.is_zero()));
        let near = PairSample { v: vec![int(1), int(1)], w: vec![int(1), rat(11, 10)], dist: rat(1, 10) };
        assert!(ideal_inclusion(&near, &int(1), 16).unwrap());
        let q = QuadSample { v: v.clone(), vp: vec![int(1), int(1)], w: v.clone(), wp: vec![int(1), int(1)], d: Rat::zero(), dp: Rat::zero() };
        let e = lipschitz_experiment_e(&[q], &int(3)).unwrap();
        assert!(e.pass());
        assert!(e.rows[0].ratio.is_zero());
    }
}
