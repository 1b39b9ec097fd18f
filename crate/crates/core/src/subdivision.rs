//! Special subdivisions around a face, their support functions, star-preserving
//! simplicialization, projectivity checks, fans and the linearization identity
//! on monomial models.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complex::{face, subsets, DualComplex, Face, WeightPoint};
use crate::error::{Error, Result};
use crate::linalg::{affine_basis, affine_coords, affine_dim, affinely_independent, barycenter, det, lerp, solve_any};
use crate::poly::Polynomial;
use crate::polyhedron::primitive;
use crate::scalar::{dot, fmt_rat, int, Rat};
use crate::valuation::{chi_on_face, FaceDomain};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Original { vertex: u32 },
    /// `eps * e_source + (1 - eps) * v`
    Scaled { source: u32, eps: String, center: Vec<String> },
    Barycenter { face: Vec<u32> },
}

/// A polyhedral complex with vertex positions in weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyComplex {
    coords: Vec<u32>,
    positions: BTreeMap<u32, Vec<Rat>>,
    faces: BTreeSet<Face>,
    provenance: BTreeMap<u32, Provenance>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyComplexJson {
    pub coords: Vec<u32>,
    pub vertices: Vec<PolyVertexJson>,
    pub faces: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyVertexJson {
    pub id: u32,
    pub position: Vec<String>,
    pub provenance: Provenance,
}

impl PolyComplex {
    /// The complex `Delta` itself, each vertex at `e_i = (1/b_i) E_i^*`.
    pub fn from_dual(c: &DualComplex) -> Self {
        let coords = c.vertex_ids();
        let mut positions = BTreeMap::new();
        let mut provenance = BTreeMap::new();
        for (k, &i) in coords.iter().enumerate() {
            let mut p = vec![Rat::zero(); coords.len()];
            p[k] = Rat::new(1.into(), c.b(i).unwrap().into());
            positions.insert(i, p);
            provenance.insert(i, Provenance::Original { vertex: i });
        }
        PolyComplex { coords, positions, faces: c.faces().clone(), provenance }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn vertex_ids(&self) -> Vec<u32> {
        self.positions.keys().copied().collect()
    }

    pub fn position(&self, id: u32) -> &[Rat] {
        &self.positions[&id]
    }

    pub fn positions_of(&self, f: &Face) -> Vec<Vec<Rat>> {
        f.iter().map(|i| self.positions[i].clone()).collect()
    }

    pub fn provenance(&self, id: u32) -> &Provenance {
        &self.provenance[&id]
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn maximal_faces(&self) -> Vec<Face> {
        self.faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
            .cloned()
            .collect()
    }

    pub fn face_dim(&self, f: &Face) -> usize {
        affine_dim(&self.positions_of(f))
    }

    /// Coordinates that are nonzero somewhere on the face, i.e. the smallest face
    /// of the original complex containing it.
    pub fn carrier(&self, f: &Face) -> Face {
        let mut out = Face::new();
        for i in f {
            for (k, x) in self.positions[i].iter().enumerate() {
                if !x.is_zero() {
                    out.insert(self.coords[k]);
                }
            }
        }
        out
    }

    pub fn is_simplicial(&self) -> bool {
        self.faces.iter().all(|f| affinely_independent(&self.positions_of(f)))
    }

    pub fn star(&self, sigma: &Face) -> BTreeSet<Face> {
        self.faces.iter().filter(|f| sigma.is_subset(f)).cloned().collect()
    }

    /// Positioned copy of the faces containing `sigma` (ids, positions).
    pub fn positioned_star(&self, sigma: &Face) -> BTreeSet<Vec<Vec<Rat>>> {
        self.star(sigma).iter().map(|f| self.positions_of(f)).collect()
    }

    pub fn to_json(&self) -> PolyComplexJson {
        let mut faces: Vec<Vec<u32>> = self.faces.iter().map(|f| f.iter().copied().collect()).collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        PolyComplexJson {
            coords: self.coords.clone(),
            vertices: self
                .positions
                .iter()
                .map(|(&id, p)| PolyVertexJson {
                    id,
                    position: p.iter().map(fmt_rat).collect(),
                    provenance: self.provenance[&id].clone(),
                })
                .collect(),
            faces,
        }
    }

    /// Sum over the maximal faces with carrier `tau` of normalized volumes; a
    /// subdivision of `tau` gives 1. Requires a simplicial complex.
    pub fn normalized_volume_by_carrier(&self, b: &BTreeMap<u32, u32>) -> Result<BTreeMap<Face, Rat>> {
        if !self.is_simplicial() {
            return Err(Error::InvalidArgument("volume check needs a simplicial complex".into()));
        }
        let mut out: BTreeMap<Face, Rat> = BTreeMap::new();
        for f in self.maximal_faces() {
            let carrier = self.carrier(&f);
            if carrier.len() != f.len() {
                continue;
            }
            // barycentric coordinates c_j = b_j t_j on the carrier
            let rows: Vec<Vec<Rat>> = f
                .iter()
                .map(|i| {
                    carrier
                        .iter()
                        .map(|c| {
                            let k = self.coords.iter().position(|x| x == c).unwrap();
                            &self.positions[i][k] * int(b[c] as i64)
                        })
                        .collect()
                })
                .collect();
            *out.entry(carrier).or_insert_with(Rat::zero) += det(&rows).abs();
        }
        Ok(out)
    }
}

/// `h = max(max_{j in J} -b_j t_j / s_j, -(1 - eps))` in weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFunction {
    coords: Vec<u32>,
    /// (coordinate index, b_j, s_j)
    pieces: Vec<(usize, Rat, Rat)>,
    eps: Rat,
}

impl SupportFunction {
    pub fn new(c: &DualComplex, j: &[u32], s: &[Rat], eps: &Rat) -> Result<Self> {
        let coords = c.vertex_ids();
        let mut pieces = Vec::new();
        for (&id, sj) in j.iter().zip(s) {
            let k = coords.iter().position(|&x| x == id).ok_or(Error::UnknownVertex(id))?;
            if !sj.is_positive() {
                return Err(Error::InvalidArgument("s_j must be positive".into()));
            }
            pieces.push((k, int(c.b(id)? as i64), sj.clone()));
        }
        Ok(SupportFunction { coords, pieces, eps: eps.clone() })
    }

    pub fn eval(&self, t: &[Rat]) -> Rat {
        let mut h = -(Rat::one() - &self.eps);
        for (k, b, s) in &self.pieces {
            let l = -(b * &t[*k]) / s;
            if l > h {
                h = l;
            }
        }
        h
    }

    pub fn eval_point(&self, t: &WeightPoint) -> Rat {
        self.eval(&t.on(&self.coords))
    }
}

fn rel_interior_check(c: &DualComplex, sigma: &Face, v: &WeightPoint) -> Result<()> {
    c.check_point(v)?;
    if &v.support() != sigma {
        return Err(Error::InvalidPoint("v must lie in the relative interior of sigma".into()));
    }
    Ok(())
}

/// The subdivision `Delta^eps(v)` and its support function.
///
/// Returns the complex and the id of `e_j^eps` for every `j` in the link.
pub fn special_subdivide(
    c: &DualComplex,
    sigma: &Face,
    v: &WeightPoint,
    eps: &Rat,
) -> Result<(PolyComplex, SupportFunction, BTreeMap<u32, u32>)> {
    if !c.is_face(sigma) {
        return Err(Error::NotAFace(sigma.iter().copied().collect()));
    }
    rel_interior_check(c, sigma, v)?;
    if !eps.is_positive() || *eps >= Rat::one() {
        return Err(Error::InvalidArgument(format!("eps = {eps} is not in (0,1)")));
    }
    let star = c.star(sigma)?;
    let mut out = PolyComplex::from_dual(c);
    let vpos = v.on(&out.coords);
    let mut next = c.vertex_ids().into_iter().max().unwrap() + 1;
    let mut scaled: BTreeMap<u32, u32> = BTreeMap::new();
    for &j in &star.link {
        if sigma.len() == 1 && sigma.contains(&j) {
            scaled.insert(j, j);
            continue;
        }
        let p = lerp(eps, &out.positions[&j], &vpos);
        out.positions.insert(next, p);
        out.provenance.insert(
            next,
            Provenance::Scaled { source: j, eps: fmt_rat(eps), center: vpos.iter().map(fmt_rat).collect() },
        );
        scaled.insert(j, next);
        next += 1;
    }
    let scale = |r: &Face| -> Face { r.iter().map(|j| scaled[j]).collect() };
    let mut faces: BTreeSet<Face> = c.faces().iter().filter(|f| !sigma.is_subset(f)).cloned().collect();
    let closed_star: BTreeSet<Face> = star.faces.iter().flat_map(subsets).collect();
    for rho in &closed_star {
        faces.insert(scale(rho));
        if !sigma.is_subset(rho) {
            let mut prism = rho.clone();
            prism.extend(scale(rho));
            faces.insert(prism);
        }
    }
    out.faces = faces;
    let sigma_ids: Vec<u32> = sigma.iter().copied().collect();
    let s: Vec<Rat> = sigma_ids.iter().map(|&j| v.weight(j) * int(c.b(j).unwrap() as i64)).collect();
    let h = SupportFunction::new(c, &sigma_ids, &s, eps)?;
    Ok((out, h, scaled))
}

/// Simplicializes every non-simplicial face by coning from its barycenter,
/// lowest dimension first; simplicial faces (in particular the star of
/// `sigma_eps`) are kept as they are.
pub fn barycentric_outside_star(d: &PolyComplex, sigma_eps: &Face) -> Result<PolyComplex> {
    if !d.faces.contains(sigma_eps) {
        return Err(Error::NotAFace(sigma_eps.iter().copied().collect()));
    }
    let mut out = d.clone();
    let mut next = d.positions.keys().max().copied().unwrap_or(0) + 1;
    let mut order: Vec<&Face> = d.faces.iter().collect();
    order.sort_by_key(|f| (d.face_dim(f), f.len(), (*f).clone()));
    let mut tri: BTreeMap<Face, Vec<Face>> = BTreeMap::new();
    for f in order {
        let pts = d.positions_of(f);
        if affinely_independent(&pts) {
            tri.insert(f.clone(), vec![f.clone()]);
            continue;
        }
        if sigma_eps.is_subset(f) {
            return Err(Error::InvalidArgument("star of sigma_eps contains a non-simplicial face".into()));
        }
        let dim = affine_dim(&pts);
        let c = barycenter(&pts);
        let cid = next;
        next += 1;
        out.positions.insert(cid, c);
        out.provenance.insert(cid, Provenance::Barycenter { face: f.iter().copied().collect() });
        let mut simplices = Vec::new();
        for g in d.faces.iter().filter(|g| g.is_subset(f) && *g != f) {
            if d.face_dim(g) + 1 == dim {
                for s in &tri[g] {
                    let mut s = s.clone();
                    s.insert(cid);
                    simplices.push(s);
                }
            }
        }
        tri.insert(f.clone(), simplices);
    }
    let mut faces = BTreeSet::new();
    for simplices in tri.values() {
        for s in simplices {
            faces.extend(subsets(s));
        }
    }
    out.faces = faces;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projectivity {
    Projective,
    NotAffine { face: Face },
    NotConvex { wall: Face },
    NotStrict { wall: Face },
}

/// Affine function on `aff(pts)` interpolating `values`, evaluated at `p`.
fn interpolate(basis: &[Vec<Rat>], values: &[Rat], p: &[Rat]) -> Option<Rat> {
    let lam = affine_coords(basis, p)?;
    Some(lam.iter().zip(values).map(|(l, v)| l * v).sum())
}

/// Checks that `h` is affine on every maximal face and convex and strictly so
/// across every wall interior to a face of the original complex.
pub fn projectivity(d: &PolyComplex, h: &dyn Fn(&[Rat]) -> Rat) -> Projectivity {
    let maximal = d.maximal_faces();
    let mut pieces: BTreeMap<Face, (Vec<Vec<Rat>>, Vec<Rat>)> = BTreeMap::new();
    for f in &maximal {
        let pts = d.positions_of(f);
        let bidx = affine_basis(&pts);
        let basis: Vec<Vec<Rat>> = bidx.iter().map(|&k| pts[k].clone()).collect();
        let vals: Vec<Rat> = basis.iter().map(|p| h(p)).collect();
        let mut probes: Vec<Vec<Rat>> = pts.clone();
        probes.push(barycenter(&pts));
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                probes.push(barycenter(&[pts[a].clone(), pts[b].clone()]));
            }
        }
        for q in &probes {
            if interpolate(&basis, &vals, q) != Some(h(q)) {
                return Projectivity::NotAffine { face: f.clone() };
            }
        }
        pieces.insert(f.clone(), (basis, vals));
    }
    for (a, f1) in maximal.iter().enumerate() {
        for f2 in &maximal[a + 1..] {
            let wall: Face = f1.intersection(f2).copied().collect();
            if wall.is_empty() {
                continue;
            }
            let dim = d.face_dim(f1);
            if d.face_dim(f2) != dim || d.face_dim(&wall) + 1 != dim || d.carrier(f1) != d.carrier(f2) {
                continue;
            }
            for (g1, g2) in [(f1, f2), (f2, f1)] {
                let (basis, vals) = &pieces[g1];
                for i in g2.difference(g1) {
                    let p = &d.positions[i];
                    let Some(ext) = interpolate(basis, vals, p) else { continue };
                    let hp = h(p);
                    if hp < ext {
                        return Projectivity::NotConvex { wall };
                    }
                    if hp == ext {
                        return Projectivity::NotStrict { wall };
                    }
                }
            }
        }
    }
    Projectivity::Projective
}

pub fn is_projective(d: &PolyComplex, h: &SupportFunction) -> bool {
    projectivity(d, &|p| h.eval(p)) == Projectivity::Projective
}

/// A simplicial fan given by primitive integer rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Fan {
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        let f = Fan { rays, cones };
        f.validate()?;
        Ok(f)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let f: Fan = serde_json::from_str(text)?;
        f.validate()?;
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.rays.first().map(|r| r.len()).unwrap_or(0)
    }

    pub fn ray_rat(&self, i: usize) -> Vec<Rat> {
        self.rays[i].iter().map(|&x| int(x)).collect()
    }

    fn validate(&self) -> Result<()> {
        let m = self.dim();
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != m || r.iter().all(|&x| x == 0) {
                return Err(Error::InvalidFan(format!("ray {i} has wrong length or is zero")));
            }
            let g = r.iter().fold(0i64, |a, &x| a.gcd(&x));
            if g != 1 {
                return Err(Error::InvalidFan(format!("ray {i} is not primitive")));
            }
        }
        for (k, c) in self.cones.iter().enumerate() {
            if c.iter().any(|&i| i >= self.rays.len()) {
                return Err(Error::InvalidFan(format!("cone {k} uses an unknown ray")));
            }
            let rows: Vec<Vec<Rat>> = c.iter().map(|&i| self.ray_rat(i)).collect();
            if crate::linalg::rank(&rows) != c.len() {
                return Err(Error::InvalidFan(format!("cone {k} is not simplicial")));
            }
        }
        Ok(())
    }

    pub fn in_orthant(&self) -> bool {
        self.rays.iter().all(|r| r.iter().all(|&x| x >= 0))
    }

    /// Coefficients of `w` on the rays of cone `k`, if `w` lies in it.
    pub fn cone_coefficients(&self, k: usize, w: &[Rat]) -> Option<Vec<Rat>> {
        let c = &self.cones[k];
        let m = self.dim();
        let a: Vec<Vec<Rat>> = (0..m).map(|r| c.iter().map(|&i| int(self.rays[i][r])).collect()).collect();
        let (x, _) = solve_any(&a, w)?;
        if x.iter().any(|v| v.is_negative()) {
            return None;
        }
        Some(x)
    }

    /// The value on `w` of the toric divisor of ray `i`.
    pub fn divisor_valuation(&self, i: usize, w: &[Rat]) -> Result<Rat> {
        if w.len() != self.dim() {
            return Err(Error::Arity("point and fan dimensions differ".into()));
        }
        if i >= self.rays.len() {
            return Err(Error::InvalidArgument(format!("no ray {i}")));
        }
        let mut value: Option<Rat> = None;
        for k in 0..self.cones.len() {
            if let Some(x) = self.cone_coefficients(k, w) {
                let v = self.cones[k].iter().position(|&r| r == i).map(|p| x[p].clone()).unwrap_or_else(Rat::zero);
                match &value {
                    None => value = Some(v),
                    Some(old) if *old != v => {
                        return Err(Error::InvalidFan("cones disagree on a shared face".into()));
                    }
                    _ => {}
                }
            }
        }
        value.ok_or_else(|| Error::InvalidArgument("point outside the support of the fan".into()))
    }

    /// Fan over a simplicial positioned complex (rays through vertex positions).
    pub fn from_poly_complex(d: &PolyComplex) -> Result<(Fan, BTreeMap<u32, usize>)> {
        if !d.is_simplicial() {
            return Err(Error::InvalidFan("complex is not simplicial".into()));
        }
        let ids = d.vertex_ids();
        let mut index = BTreeMap::new();
        let mut rays = Vec::new();
        for (k, &id) in ids.iter().enumerate() {
            let p = primitive(d.position(id));
            rays.push(p.iter().map(|x| i64::try_from(x.to_integer()).expect("small ray")).collect());
            index.insert(id, k);
        }
        let cones = d.maximal_faces().iter().map(|f| f.iter().map(|i| index[i]).collect()).collect();
        Ok((Fan::new(rays, cones)?, index))
    }
}

pub fn divisor_valuation_fn(f: &Fan, i: usize, w: &[Rat]) -> Result<Rat> {
    f.divisor_valuation(i, w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum L101Status {
    Verified,
    PreconditionViolated(String),
    IdentityFailed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L101Row {
    pub vertex: u32,
    pub position: Vec<Rat>,
    pub lhs: Rat,
    pub rhs: Rat,
    /// `w(G) - sum chi(e'_j) b'_j w(E'_j)`.
    pub residual: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L101Report {
    pub status: L101Status,
    pub rows: Vec<L101Row>,
    /// Residual >= 0 on the star probes and = 0 at the vertices of `sigma'`.
    pub residual_ok: bool,
}

/// Checks, on the monomial model with multiplicities `b`, the identity
/// `chi(v) w(Z) + sum_j D_v chi(e_j) b_j w(E_j) = sum_j chi(e'_j) b'_j w(E'_j)`
/// on the star of `sigma'` in the simplicialized subdivision.
pub fn verify_l101(b: &[u32], sigma: &Face, v: &WeightPoint, eps: &Rat, f: &Polynomial) -> Result<L101Report> {
    let c = DualComplex::simplex(b)?;
    if f.arity() != b.len() {
        return Err(Error::Arity("polynomial arity differs from model dimension".into()));
    }
    let (de, _h, scaled) = special_subdivide(&c, sigma, v, eps)?;
    let sigma_eps: Face = sigma.iter().map(|j| scaled[j]).collect();
    let dp = barycentric_outside_star(&de, &sigma_eps)?;
    let (fan, ray_of) = Fan::from_poly_complex(&dp)?;
    let dom = FaceDomain::new(c.vertex_ids(), b.to_vec())?;
    let chi = chi_on_face(f, &dom)?;
    let coords = c.vertex_ids();
    let vpos = v.on(&coords);
    let common_active = |pts: &[Vec<Rat>]| -> bool {
        let mut act: BTreeSet<usize> = chi.active(&pts[0]).into_iter().collect();
        for p in &pts[1..] {
            let a: BTreeSet<usize> = chi.active(p).into_iter().collect();
            act = act.intersection(&a).copied().collect();
        }
        !act.is_empty()
    };
    let sig_pts = dp.positions_of(&sigma_eps);
    if !common_active(&sig_pts) {
        return Ok(L101Report {
            status: L101Status::PreconditionViolated("chi is not affine on sigma'".into()),
            rows: vec![],
            residual_ok: false,
        });
    }
    for (&j, &jp) in &scaled {
        if !common_active(&[vpos.clone(), dp.position(jp).to_vec()]) {
            return Ok(L101Report {
                status: L101Status::PreconditionViolated(format!("chi is not affine on [v, e'_{j}]")),
                rows: vec![],
                residual_ok: false,
            });
        }
    }
    let br: Vec<Rat> = b.iter().map(|&x| int(x as i64)).collect();
    let chi_v = chi.value(&vpos);
    // D_v chi(e_j) b_j for j in the link (the whole simplex here)
    let mut lhs_coeff = vec![Rat::zero(); coords.len()];
    for (&j, _) in &scaled {
        let k = coords.iter().position(|&x| x == j).unwrap();
        let ej = dom.vertex(k);
        lhs_coeff[k] = chi.directional_derivative(&vpos, &ej)? * &br[k];
    }
    // chi(e'_j) b'_j per star vertex
    let mut rhs_coeff: BTreeMap<u32, Rat> = BTreeMap::new();
    for &jp in scaled.values() {
        let u = fan.ray_rat(ray_of[&jp]);
        let bprime = dot(&br, &u);
        rhs_coeff.insert(jp, chi.value(dp.position(jp)) * bprime);
    }
    let star = dp.star(&sigma_eps);
    let mut probes: BTreeMap<Vec<Rat>, u32> = BTreeMap::new();
    for f in &star {
        for &i in f {
            probes.insert(dp.position(i).to_vec(), i);
        }
        probes.entry(barycenter(&dp.positions_of(f))).or_insert(0);
    }
    let mut rows = Vec::new();
    let mut ok = true;
    let mut residual_ok = true;
    for (w, id) in probes {
        let lhs = &chi_v * dot(&br, &w) + dot(&lhs_coeff, &w);
        let mut rhs = Rat::zero();
        for (&jp, coeff) in &rhs_coeff {
            rhs += coeff * fan.divisor_valuation(ray_of[&jp], &w)?;
        }
        let residual = chi.value(&w) - &rhs;
        if lhs != rhs {
            ok = false;
        }
        let on_sigma = sig_pts.contains(&w);
        if residual.is_negative() || (on_sigma && !residual.is_zero()) {
            residual_ok = false;
        }
        rows.push(L101Row { vertex: id, position: w, lhs, rhs, residual });
    }
    Ok(L101Report { status: if ok { L101Status::Verified } else { L101Status::IdentityFailed }, rows, residual_ok })
}

/// The point `v` in weight coordinates on the full simplex with multiplicities `b`.
pub fn simplex_point(b: &[u32], bary: &[Rat]) -> Result<WeightPoint> {
    let c = DualComplex::simplex(b)?;
    let ids = c.vertex_ids();
    c.from_barycentric(&ids, bary)
}

pub fn face_of(ids: &[u32]) -> Face {
    face(ids)
}
