//! Monomial valuations, the concave functions `chi_f`, Newton polyhedra and
//! Lipschitz bounds.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{solve, sub};
use crate::lp::{self, LpOutcome};
use crate::poly::Polynomial;
use crate::polyhedron::NewtonPolyhedron;
use crate::scalar::{dot, dot_int, fmt_rat, int, to_rats, Ext, Norm, Rat};

/// `min_{alpha in supp f} <t, alpha>`, infinity for the zero polynomial.
pub fn eval_valuation(t: &[Rat], f: &Polynomial) -> Result<Ext<Rat>> {
    if t.len() != f.arity() {
        return Err(Error::Arity(format!("weight has {} entries, polynomial arity {}", t.len(), f.arity())));
    }
    Ok(match f.support().map(|a| dot_int(t, a)).min() {
        Some(v) => Ext::Finite(v),
        None => Ext::Infinity,
    })
}

/// The simplex `{t >= 0, sum b_j t_j = 1}` of a face with vertex ids `ids`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FaceDomain {
    pub ids: Vec<u32>,
    pub b: Vec<u32>,
}

impl FaceDomain {
    pub fn new(ids: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        if ids.is_empty() || ids.len() != b.len() || b.contains(&0) {
            return Err(Error::InvalidArgument("face domain needs matching ids and positive multiplicities".into()));
        }
        Ok(FaceDomain { ids, b })
    }

    /// Coordinates `1..=m` with all multiplicities 1 (the smooth chart).
    pub fn standard(m: usize) -> Self {
        FaceDomain { ids: (1..=m as u32).collect(), b: vec![1; m] }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn b_rat(&self) -> Vec<Rat> {
        self.b.iter().map(|&x| int(x as i64)).collect()
    }

    pub fn contains(&self, t: &[Rat]) -> bool {
        t.len() == self.len() && t.iter().all(|x| !x.is_negative()) && dot(&self.b_rat(), t).is_one()
    }

    pub fn vertex(&self, k: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.len()];
        v[k] = Rat::new(1.into(), self.b[k].into());
        v
    }

    pub fn vertices(&self) -> Vec<Vec<Rat>> {
        (0..self.len()).map(|k| self.vertex(k)).collect()
    }

    /// Point with barycentric coordinates `c` (sum 1).
    pub fn from_barycentric(&self, c: &[Rat]) -> Vec<Rat> {
        c.iter().zip(&self.b).map(|(x, &b)| x / int(b as i64)).collect()
    }

    fn check(&self, t: &[Rat]) -> Result<()> {
        if !self.contains(t) {
            return Err(Error::InvalidPoint(format!(
                "({}) is not in the face simplex",
                t.iter().map(fmt_rat).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AffineForm {
    #[serde(serialize_with = "ser_rats")]
    pub coeffs: Vec<Rat>,
    #[serde(serialize_with = "ser_rat")]
    pub constant: Rat,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::scalar::serde_rat::vec::serialize(v, s)
}

fn ser_rat<S: serde::Serializer>(v: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    crate::scalar::serde_rat::serialize(v, s)
}

impl AffineForm {
    pub fn linear(coeffs: Vec<Rat>) -> Self {
        AffineForm { coeffs, constant: Rat::zero() }
    }

    pub fn eval(&self, t: &[Rat]) -> Rat {
        dot(&self.coeffs, t) + &self.constant
    }

    /// The same function on the face simplex written without a constant.
    fn homogenized(&self, b: &[Rat]) -> Vec<Rat> {
        self.coeffs.iter().zip(b).map(|(a, bj)| a + &self.constant * bj).collect()
    }
}

/// `t -> min_k (<alpha_k, t> + c_k)` on a face simplex, with irredundant forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiecewiseAffineConcave {
    pub domain: FaceDomain,
    forms: Vec<AffineForm>,
}

impl PiecewiseAffineConcave {
    /// Drops duplicate and redundant forms (exact LP per form).
    pub fn new(domain: FaceDomain, forms: Vec<AffineForm>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::InvalidArgument("no forms".into()));
        }
        if forms.iter().any(|f| f.coeffs.len() != domain.len()) {
            return Err(Error::Arity("form length differs from face size".into()));
        }
        let b = domain.b_rat();
        let mut seen = BTreeSet::new();
        let mut uniq = Vec::new();
        for f in forms {
            if seen.insert(f.homogenized(&b)) {
                uniq.push(f);
            }
        }
        let keep: Vec<AffineForm> = (0..uniq.len())
            .filter(|&k| is_irredundant(&domain, &uniq, k))
            .map(|k| uniq[k].clone())
            .collect();
        let mut keep = keep;
        keep.sort();
        Ok(PiecewiseAffineConcave { domain, forms: keep })
    }

    /// Trusts the caller that `forms` are irredundant.
    pub fn from_irredundant(domain: FaceDomain, mut forms: Vec<AffineForm>) -> Self {
        forms.sort();
        PiecewiseAffineConcave { domain, forms }
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn value(&self, t: &[Rat]) -> Rat {
        self.forms.iter().map(|f| f.eval(t)).min().unwrap()
    }

    pub fn active(&self, t: &[Rat]) -> Vec<usize> {
        let v = self.value(t);
        (0..self.forms.len()).filter(|&k| self.forms[k].eval(t) == v).collect()
    }

    pub fn is_affine(&self) -> bool {
        self.forms.len() == 1
    }

    /// Candidate vertices of the common refinement of the affine pieces
    /// (includes every vertex of every piece).
    pub fn piece_vertices(&self) -> Result<Vec<Vec<Rat>>> {
        let n = self.domain.len();
        if n > 4 {
            return Err(Error::UnsupportedDimension(format!("face with {n} vertices")));
        }
        if n == 1 {
            return Ok(vec![self.domain.vertex(0)]);
        }
        let mut hyper: Vec<Vec<Rat>> = Vec::new();
        for k in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[k] = Rat::one();
            hyper.push(e);
        }
        let b = self.domain.b_rat();
        let hom: Vec<Vec<Rat>> = self.forms.iter().map(|f| f.homogenized(&b)).collect();
        for i in 0..hom.len() {
            for j in i + 1..hom.len() {
                hyper.push(sub(&hom[i], &hom[j]));
            }
        }
        let mut out = BTreeSet::new();
        let mut idx: Vec<usize> = (0..n - 1).collect();
        let h = hyper.len();
        loop {
            let mut a: Vec<Vec<Rat>> = idx.iter().map(|&i| hyper[i].clone()).collect();
            a.push(b.clone());
            let mut rhs = vec![Rat::zero(); n - 1];
            rhs.push(Rat::one());
            if let Some(t) = solve(&a, &rhs) {
                if t.iter().all(|x| !x.is_negative()) {
                    out.insert(t);
                }
            }
            let mut k = n - 1;
            loop {
                if k == 0 {
                    return Ok(out.into_iter().collect());
                }
                k -= 1;
                if idx[k] < h - (n - 1) + k {
                    idx[k] += 1;
                    for j in k + 1..n - 1 {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn max_value(&self) -> Result<Rat> {
        Ok(self.piece_vertices()?.iter().map(|t| self.value(t)).max().unwrap())
    }

    /// Concave, so the minimum sits at a vertex of the simplex.
    pub fn min_value(&self) -> Rat {
        self.domain.vertices().iter().map(|t| self.value(t)).min().unwrap()
    }

    pub fn sup_abs(&self) -> Result<Rat> {
        let lo = self.min_value().abs();
        let hi = self.max_value()?.abs();
        Ok(if lo > hi { lo } else { hi })
    }

    /// `D_v chi(w) = min over forms active at v of form(w) - form(v)`.
    pub fn directional_derivative(&self, v: &[Rat], w: &[Rat]) -> Result<Rat> {
        self.domain.check(v)?;
        self.domain.check(w)?;
        let d = sub(w, v);
        Ok(self.active(v).iter().map(|&k| dot(&self.forms[k].coeffs, &d)).min().unwrap())
    }

    /// Exact Lipschitz constant for the norm `n` on weight coordinates.
    pub fn lipschitz(&self, n: Norm) -> Result<Rat> {
        if self.domain.len() == 1 {
            return Ok(Rat::zero());
        }
        let ball = unit_ball_vertices_in_w(&self.domain.b, n)?;
        Ok(self
            .forms
            .iter()
            .flat_map(|f| ball.iter().map(move |u| dot(&f.coeffs, u)))
            .max()
            .unwrap())
    }

    /// `sup |chi| + lip(chi)`.
    pub fn c01_norm(&self, n: Norm) -> Result<Rat> {
        Ok(self.sup_abs()? + self.lipschitz(n)?)
    }

    /// Exact pointwise sum, i.e. the function of `f g` when `self = chi_f`, `other = chi_g`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.domain != other.domain {
            return Err(Error::InvalidArgument("different domains".into()));
        }
        let mut forms = Vec::new();
        for f in &self.forms {
            for g in &other.forms {
                forms.push(AffineForm {
                    coeffs: f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a + b).collect(),
                    constant: &f.constant + &g.constant,
                });
            }
        }
        Self::new(self.domain.clone(), forms)
    }

    /// Equality as functions on the domain.
    pub fn same_function(&self, other: &Self) -> bool {
        let b = self.domain.b_rat();
        let a: BTreeSet<Vec<Rat>> = self.forms.iter().map(|f| f.homogenized(&b)).collect();
        let c: BTreeSet<Vec<Rat>> = other.forms.iter().map(|f| f.homogenized(&b)).collect();
        self.domain == other.domain && a == c
    }
}

fn is_irredundant(domain: &FaceDomain, forms: &[AffineForm], k: usize) -> bool {
    if forms.len() == 1 {
        return true;
    }
    let n = domain.len();
    let others: Vec<usize> = (0..forms.len()).filter(|&j| j != k).collect();
    // variables: t (n), s, slack_j
    let nv = n + 1 + others.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (r, &j) in others.iter().enumerate() {
        let mut row = vec![Rat::zero(); nv];
        for i in 0..n {
            row[i] = &forms[j].coeffs[i] - &forms[k].coeffs[i];
        }
        row[n] = -Rat::one();
        row[n + 1 + r] = -Rat::one();
        a.push(row);
        b.push(&forms[k].constant - &forms[j].constant);
    }
    let mut norm = vec![Rat::zero(); nv];
    for i in 0..n {
        norm[i] = int(domain.b[i] as i64);
    }
    a.push(norm);
    b.push(Rat::one());
    let mut c = vec![Rat::zero(); nv];
    c[n] = Rat::one();
    matches!(lp::maximize(&c, &a, &b), LpOutcome::Optimal { value, .. } if value.is_positive())
}

/// Vertices of `{||u|| <= 1} ∩ {sum b_j u_j = 0}`.
pub fn unit_ball_vertices_in_w(b: &[u32], n: Norm) -> Result<Vec<Vec<Rat>>> {
    let d = b.len();
    if d > 4 {
        return Err(Error::UnsupportedDimension(format!("face with {d} vertices")));
    }
    let br: Vec<Rat> = b.iter().map(|&x| int(x as i64)).collect();
    let mut out = BTreeSet::new();
    match n {
        Norm::LInf => {
            for k in 0..d {
                for mask in 0u32..(1 << (d - 1)) {
                    let mut u = vec![Rat::zero(); d];
                    let mut bit = 0;
                    for j in 0..d {
                        if j != k {
                            u[j] = if mask >> bit & 1 == 1 { Rat::one() } else { -Rat::one() };
                            bit += 1;
                        }
                    }
                    let rest: Rat = (0..d).filter(|&j| j != k).map(|j| &br[j] * &u[j]).sum();
                    u[k] = -rest / &br[k];
                    if u[k].abs() <= Rat::one() {
                        out.insert(u);
                    }
                }
            }
        }
        Norm::L1 => {
            for i in 0..d {
                for j in 0..d {
                    if i != j {
                        let s = &br[i] + &br[j];
                        let mut u = vec![Rat::zero(); d];
                        u[i] = &br[j] / &s;
                        u[j] = -&br[i] / &s;
                        out.insert(u);
                    }
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

pub fn newton_polyhedron(f: &Polynomial) -> Result<NewtonPolyhedron> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    NewtonPolyhedron::from_exponents(f.support())
}

pub fn extremal_points(np: &NewtonPolyhedron) -> Vec<Vec<Rat>> {
    np.extremal().to_vec()
}

/// `chi_f` on a face: one linear form per extremal point of the Newton polyhedron.
pub fn chi_on_face(f: &Polynomial, domain: &FaceDomain) -> Result<PiecewiseAffineConcave> {
    if f.arity() != domain.len() {
        return Err(Error::Arity(format!("polynomial arity {} on a face with {} vertices", f.arity(), domain.len())));
    }
    let np = newton_polyhedron(f)?;
    let forms = np.extremal().iter().map(|a| AffineForm::linear(a.clone())).collect();
    Ok(PiecewiseAffineConcave::from_irredundant(domain.clone(), forms))
}

/// Membership in the Newton polyhedron via an exact LP.
pub fn np_membership(beta: &[Rat], f: &Polynomial) -> Result<bool> {
    if beta.len() != f.arity() {
        return Err(Error::Arity("point and polynomial arities differ".into()));
    }
    Ok(newton_polyhedron(f)?.contains(beta))
}

/// Membership via `<v, beta> >= chi_f(v)` at the vertices of the refinement of
/// `chi_f` and `<., beta>` on the weight simplex of `domain`.
pub fn np_membership_vertex_criterion(beta: &[Rat], f: &Polynomial, domain: &FaceDomain) -> Result<bool> {
    if beta.len() != f.arity() || domain.len() != f.arity() {
        return Err(Error::Arity("point, polynomial and face arities differ".into()));
    }
    let chi = chi_on_face(f, domain)?;
    let mut forms: Vec<AffineForm> = chi.forms().to_vec();
    forms.push(AffineForm::linear(beta.to_vec()));
    let joint = PiecewiseAffineConcave::from_irredundant(domain.clone(), forms);
    Ok(joint.piece_vertices()?.iter().all(|v| dot(v, beta) >= chi.value(v)))
}

/// A chart-based model: faces with multiplicities, and the expansion of `f` in
/// the local coordinates of each face.
pub trait ChartModel {
    fn faces(&self) -> Vec<FaceDomain>;
    fn expand(&self, face: &FaceDomain, f: &Polynomial) -> Result<Polynomial>;
}

/// `A^m` with its coordinate hyperplanes: one face, all multiplicities 1.
#[derive(Debug, Clone, Copy)]
pub struct SmoothChart {
    pub arity: usize,
}

impl ChartModel for SmoothChart {
    fn faces(&self) -> Vec<FaceDomain> {
        vec![FaceDomain::standard(self.arity)]
    }

    fn expand(&self, _face: &FaceDomain, f: &Polynomial) -> Result<Polynomial> {
        if f.arity() != self.arity {
            return Err(Error::Arity("polynomial arity differs from chart".into()));
        }
        Ok(f.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceBound {
    pub face: Vec<u32>,
    pub ord0: Option<u32>,
    pub max_extremal_norm: Rat,
    pub lipschitz: Rat,
    pub ratio: Option<Rat>,
    pub lip_ratio: Option<Rat>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremAReport {
    pub faces: Vec<FaceBound>,
    pub pass: bool,
}

impl TheoremAReport {
    /// Smallest constant working for this polynomial (max face ratio).
    pub fn minimal_a(&self) -> Rat {
        self.faces.iter().filter_map(|r| r.ratio.clone()).max().unwrap_or_else(Rat::zero)
    }

    pub fn minimal_a_lip(&self) -> Rat {
        self.faces.iter().filter_map(|r| r.lip_ratio.clone()).max().unwrap_or_else(Rat::zero)
    }
}

/// Per face: max extremal norm (norm `n` on exponents), its ratio to `ord_0`,
/// the Lipschitz constant of `chi_f` for the dual norm on weights, and the
/// verdict `max_extremal_norm <= a * ord_0`.
pub fn check_theorem_a<M: ChartModel + ?Sized>(f: &Polynomial, model: &M, a: &Rat, n: Norm) -> Result<TheoremAReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ord0 = f.min_total_degree().finite().unwrap();
    let mut faces = Vec::new();
    for dom in model.faces() {
        let g = model.expand(&dom, f)?;
        let chi = chi_on_face(&g, &dom)?;
        let mut max_norm = Rat::zero();
        for form in chi.forms() {
            let v = n.eval(&form.coeffs)?;
            if v > max_norm {
                max_norm = v;
            }
        }
        let lip = chi.lipschitz(n.dual())?;
        let ordr = int(ord0 as i64);
        let (ratio, lip_ratio) = if ord0 == 0 {
            (None, None)
        } else {
            (Some(&max_norm / &ordr), Some(&lip / &ordr))
        };
        let pass = max_norm <= a * &ordr;
        faces.push(FaceBound {
            face: dom.ids.clone(),
            ord0: Some(ord0),
            max_extremal_norm: max_norm,
            lipschitz: lip,
            ratio,
            lip_ratio,
            pass,
        });
    }
    let pass = faces.iter().all(|r| r.pass);
    Ok(TheoremAReport { faces, pass })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Survey {
    pub minimal_a: Rat,
    pub minimal_a_lip: Rat,
    pub reports: Vec<TheoremAReport>,
}

/// Runs [`check_theorem_a`] with `A = +inf` style bookkeeping and returns the
/// smallest `A` valid for the whole corpus.
pub fn survey_theorem_a<M: ChartModel + ?Sized>(corpus: &[Polynomial], model: &M, n: Norm) -> Result<Survey> {
    let mut reports = Vec::new();
    for f in corpus {
        // with a huge A every face passes; the fitted constant is read off the ratios
        let big = int(i64::MAX);
        reports.push(check_theorem_a(f, model, &big, n)?);
    }
    let minimal_a = reports.iter().map(|r| r.minimal_a()).max().unwrap_or_else(Rat::zero);
    let minimal_a_lip = reports.iter().map(|r| r.minimal_a_lip()).max().unwrap_or_else(Rat::zero);
    Ok(Survey { minimal_a, minimal_a_lip, reports })
}

/// The two sides compared by the two-sided Lipschitz estimate on a simplex:
/// `(||chi||_{C^{0,1}}, boundary sup |chi| + max_{i != j} |D_{e_i} chi(e_j)|)`.
pub fn lip_estimate_sides(chi: &PiecewiseAffineConcave, n: Norm) -> Result<(Rat, Rat)> {
    let c01 = chi.c01_norm(n)?;
    let d = chi.domain.len();
    let verts = chi.domain.vertices();
    let mut boundary = Rat::zero();
    // the boundary sup of a concave function on a simplex is attained on a facet,
    // i.e. at a piece vertex with some zero coordinate
    for p in chi.piece_vertices()? {
        if d == 1 || p.iter().any(|x| x.is_zero()) {
            let v = chi.value(&p).abs();
            if v > boundary {
                boundary = v;
            }
        }
    }
    let mut der = Rat::zero();
    for i in 0..d {
        for j in 0..d {
            if i != j {
                let v = chi.directional_derivative(&verts[i], &verts[j])?.abs();
                if v > der {
                    der = v;
                }
            }
        }
    }
    Ok((c01, boundary + der))
}

pub fn exponent_norm(n: Norm, alpha: &[u32]) -> Result<Rat> {
    n.eval(&to_rats(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_support;
    use crate::scalar::rat;

    fn p(s: &str) -> Polynomial {
        parse_support(s, Some(2)).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = p("x^2 + x*y^3");
        assert_eq!(eval_valuation(&[rat(1, 2), rat(1, 2)], &f).unwrap(), Ext::Finite(int(1)));
        assert_eq!(eval_valuation(&[int(1), int(0)], &f).unwrap(), Ext::Finite(int(1)));
        assert_eq!(eval_valuation(&[int(1), int(0)], &p("1")).unwrap(), Ext::Finite(int(0)));
        assert_eq!(eval_valuation(&[int(1), int(0)], &Polynomial::zero(2)).unwrap(), Ext::Infinity);
        assert!(eval_valuation(&[int(1)], &f).is_err());
    }

    #[test]
    fn chi_examples() {
        let dom = FaceDomain::standard(2);
        let chi = chi_on_face(&p("x^2 + x*y^3 + x^2*y^2"), &dom).unwrap();
        let coeffs: Vec<Vec<Rat>> = chi.forms().iter().map(|f| f.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![int(1), int(3)], vec![int(2), int(0)]]);
        assert!(chi_on_face(&p("x^3*y"), &dom).unwrap().is_affine());
        assert_eq!(chi_on_face(&p("x + y"), &dom).unwrap().forms().len(), 2);
        assert!(matches!(chi_on_face(&Polynomial::zero(2), &dom), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn pruning_agrees_with_newton() {
        let dom = FaceDomain::standard(2);
        let f = p("x^2 + x*y^3 + x^2*y^2 + y^7 + x*y^5");
        let all: Vec<AffineForm> = f.support().map(|a| AffineForm::linear(to_rats(a))).collect();
        let pruned = PiecewiseAffineConcave::new(dom.clone(), all).unwrap();
        assert!(pruned.same_function(&chi_on_face(&f, &dom).unwrap()));
        assert_eq!(pruned.forms().len(), 3);
    }

    #[test]
    fn membership_examples() {
        let f = p("x^2 + x*y^3");
        let dom = FaceDomain::standard(2);
        for beta in [vec![int(2), int(2)], vec![int(1), int(3)], vec![rat(3, 2), rat(3, 2)]] {
            assert!(np_membership(&beta, &f).unwrap());
            assert!(np_membership_vertex_criterion(&beta, &f, &dom).unwrap());
        }
        for beta in [vec![int(0), int(0)], vec![int(1), int(1)], vec![rat(3, 2), rat(1, 2)]] {
            assert!(!np_membership(&beta, &f).unwrap());
            assert!(!np_membership_vertex_criterion(&beta, &f, &dom).unwrap());
        }
    }

    #[test]
    fn directional_derivative_examples() {
        let dom = FaceDomain::standard(2);
        let chi = PiecewiseAffineConcave::new(
            dom.clone(),
            vec![AffineForm::linear(vec![int(2), int(0)]), AffineForm::linear(vec![int(1), int(3)])],
        )
        .unwrap();
        let v = vec![rat(1, 2), rat(1, 2)];
        let w = vec![int(1), int(0)];
        assert_eq!(chi.directional_derivative(&v, &w).unwrap(), int(1));
        assert_eq!(chi.directional_derivative(&v, &v).unwrap(), int(0));
        assert!(chi.directional_derivative(&[int(1), int(1)], &w).is_err());
        // secant oracle
        for k in 1..8 {
            let s = Rat::new(1.into(), (1i64 << k).into());
            let pt: Vec<Rat> = v.iter().zip(&w).map(|(a, b)| a + &s * (b - a)).collect();
            assert_eq!((chi.value(&pt) - chi.value(&v)) / &s, int(1));
        }
    }

    #[test]
    fn lipschitz_examples() {
        let dom = FaceDomain::standard(2);
        let chi = chi_on_face(&p("x + y"), &dom).unwrap();
        assert_eq!(chi.lipschitz(Norm::LInf).unwrap(), int(1));
        assert_eq!(chi.sup_abs().unwrap(), rat(1, 2));
        assert_eq!(chi.c01_norm(Norm::LInf).unwrap(), rat(3, 2));
        let constant = PiecewiseAffineConcave::new(
            dom.clone(),
            vec![AffineForm { coeffs: vec![int(0), int(0)], constant: int(3) }],
        )
        .unwrap();
        assert_eq!(constant.lipschitz(Norm::LInf).unwrap(), int(0));
        assert_eq!(constant.c01_norm(Norm::LInf).unwrap(), int(3));
        let single = FaceDomain::new(vec![1], vec![2]).unwrap();
        let chi1 = chi_on_face(&parse_support("x^3", None).unwrap(), &single).unwrap();
        assert_eq!(chi1.lipschitz(Norm::LInf).unwrap(), int(0));
    }

    #[test]
    fn theorem_a_examples() {
        let chart = SmoothChart { arity: 2 };
        let r = check_theorem_a(&p("x^2 + x*y^3"), &chart, &int(2), Norm::L1).unwrap();
        assert!(r.pass);
        assert_eq!(r.faces[0].max_extremal_norm, int(4));
        assert_eq!(r.minimal_a(), int(2));
        assert!(!check_theorem_a(&p("x^2 + x*y^3"), &chart, &rat(3, 2), Norm::L1).unwrap().pass);
        let r = check_theorem_a(&p("x^5"), &chart, &int(1), Norm::L1).unwrap();
        assert_eq!(r.minimal_a(), int(1));
        let r = check_theorem_a(&p("1 + x"), &chart, &int(0), Norm::L1).unwrap();
        assert!(r.pass);
        assert_eq!(r.faces[0].lipschitz, int(0));
    }
}
