//! Surface models: blowup trees over a smooth point of a surface and toric
//! compactifications of the affine plane.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{DualComplex, WeightPoint};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{fmt_rat, int, parse_rat, Ext, Norm, Rat};
use crate::subdivision::Fan;
use crate::valuation::{eval_valuation, AffineForm, ChartModel, FaceDomain, PiecewiseAffineConcave};

/// Where a child point sits on its parent's exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attachment {
    /// Chart coordinate `y/x = c` on the parent curve; `None` is the point at infinity.
    Free(Option<Rat>),
    /// Intersection with an earlier exceptional curve (node index).
    Satellite(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub parent: Option<usize>,
    pub at: Option<Attachment>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeJson {
    pub parent: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coord: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub with: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeJson {
    pub nodes: Vec<NodeJson>,
}

/// A point blown up by some node: local chart `(u, w) -> (x, y)` centered at the
/// point, and the exceptional curves (node indices) equal to `{u = 0}` and `{w = 0}`.
#[derive(Debug, Clone)]
struct Center {
    map: [Polynomial; 2],
    u_curve: Option<usize>,
    w_curve: Option<usize>,
}

fn compose_map(outer: &[Polynomial; 2], inner: [Polynomial; 2]) -> [Polynomial; 2] {
    let a = outer[0].compose(&inner).expect("arity 2");
    let b = outer[1].compose(&inner).expect("arity 2");
    [a, b]
}

fn u() -> Polynomial {
    Polynomial::var(2, 0)
}

fn w() -> Polynomial {
    Polynomial::var(2, 1)
}

/// `(u, w) -> (u, u (w + c))`: the new curve is `{u = 0}`.
fn chart_a(c: &Rat) -> [Polynomial; 2] {
    let shifted = w().add(&Polynomial::constant(2, c.clone())).unwrap();
    [u(), u().mul(&shifted).unwrap()]
}

/// `(u, w) -> (u w, w)`: the new curve is `{w = 0}`.
fn chart_b() -> [Polynomial; 2] {
    [u().mul(&w()).unwrap(), w()]
}

/// A sequence of point blowups starting at the origin of `A^2`.
#[derive(Debug, Clone)]
pub struct BlowupTree {
    nodes: Vec<TreeNode>,
    centers: Vec<Center>,
    edges: BTreeSet<(usize, usize)>,
    /// number of later centers lying on each curve
    blown_on: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionData {
    pub matrix: Vec<Vec<i64>>,
    pub b: Vec<u32>,
}

impl IntersectionData {
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// `c_ij = b_j (E_i . E_j)`.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.b[j] as i64 * self.matrix[i][j]
    }

    /// `Z . E_i` for every `i`.
    pub fn z_dot(&self) -> Vec<i64> {
        (0..self.len()).map(|i| (0..self.len()).map(|j| self.c(i, j)).sum()).collect()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.matrix[i][j] != 0
    }
}

impl BlowupTree {
    pub fn new(nodes: Vec<TreeNode>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidTree("no nodes".into()));
        }
        let root = Center { map: [u(), w()], u_curve: None, w_curve: None };
        let mut centers: Vec<Center> = Vec::new();
        let mut edges = BTreeSet::new();
        let mut blown_on = vec![0u32; nodes.len()];
        let mut seen: BTreeSet<(usize, Option<Rat>)> = BTreeSet::new();
        let mut seen_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (k, n) in nodes.iter().enumerate() {
            let c = match (n.parent, &n.at) {
                (None, None) if k == 0 => root.clone(),
                (None, _) => return Err(Error::InvalidTree(format!("node {k}: only node 0 may be the root"))),
                (Some(_), None) => return Err(Error::InvalidTree(format!("node {k}: missing attachment"))),
                (Some(p), Some(at)) => {
                    if p >= k {
                        return Err(Error::InvalidTree(format!("node {k}: parent {p} is not earlier")));
                    }
                    let pc = &centers[p];
                    let coord = match at {
                        Attachment::Free(c) => {
                            let hits = match c {
                                Some(c) if c.is_zero() => pc.w_curve,
                                Some(_) => None,
                                None => pc.u_curve,
                            };
                            if let Some(q) = hits {
                                return Err(Error::InvalidTree(format!(
                                    "node {k}: free point lies on curve {q}; use a satellite"
                                )));
                            }
                            c.clone()
                        }
                        Attachment::Satellite(q) => {
                            if pc.w_curve == Some(*q) {
                                Some(Rat::zero())
                            } else if pc.u_curve == Some(*q) {
                                None
                            } else {
                                return Err(Error::InvalidTree(format!("node {k}: curve {q} does not meet curve {p}")));
                            }
                        }
                    };
                    if !seen.insert((p, coord.clone())) {
                        return Err(Error::InvalidTree(format!("node {k}: point already blown up")));
                    }
                    let (map, u_curve, w_curve) = match &coord {
                        Some(c) => (
                            compose_map(&pc.map, chart_a(c)),
                            Some(p),
                            if c.is_zero() { pc.w_curve } else { None },
                        ),
                        None => (compose_map(&pc.map, chart_b()), pc.u_curve, Some(p)),
                    };
                    Center { map, u_curve, w_curve }
                }
            };
            let through: Vec<usize> = [c.u_curve, c.w_curve].into_iter().flatten().collect();
            if through.len() == 2 {
                let pair = (through[0].min(through[1]), through[0].max(through[1]));
                if !seen_pairs.insert(pair) || !edges.remove(&pair) {
                    return Err(Error::InvalidTree(format!("node {k}: intersection point already blown up")));
                }
            }
            for &q in &through {
                blown_on[q] += 1;
                edges.insert((q, k));
            }
            centers.push(c);
        }
        Ok(BlowupTree { nodes, centers, edges, blown_on })
    }

    pub fn from_json(j: &TreeJson) -> Result<Self> {
        let mut nodes = Vec::new();
        for (k, n) in j.nodes.iter().enumerate() {
            let at = match n.at.as_deref() {
                None => None,
                Some("free") => {
                    let c = n.coord.as_deref().unwrap_or("0");
                    Some(Attachment::Free(if c == "inf" { None } else { Some(parse_rat(c)?) }))
                }
                Some("satellite") => Some(Attachment::Satellite(
                    n.with.ok_or_else(|| Error::InvalidTree(format!("node {k}: satellite without `with`")))?,
                )),
                Some(other) => return Err(Error::InvalidTree(format!("node {k}: unknown attachment {other:?}"))),
            };
            nodes.push(TreeNode { parent: n.parent, at });
        }
        Self::new(nodes)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let j: TreeJson = serde_json::from_str(text)?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson {
            nodes: self
                .nodes
                .iter()
                .map(|n| match &n.at {
                    None => NodeJson { parent: n.parent, at: None, coord: None, with: None },
                    Some(Attachment::Free(c)) => NodeJson {
                        parent: n.parent,
                        at: Some("free".into()),
                        coord: Some(c.as_ref().map(fmt_rat).unwrap_or_else(|| "inf".into())),
                        with: None,
                    },
                    Some(Attachment::Satellite(q)) => {
                        NodeJson { parent: n.parent, at: Some("satellite".into()), coord: None, with: Some(*q) }
                    }
                })
                .collect(),
        }
    }

    /// A chain of free blowups; `coords[k]` places node `k + 1` on curve `k`.
    pub fn chain(coords: &[Option<Rat>]) -> Result<Self> {
        let mut nodes = vec![TreeNode { parent: None, at: None }];
        for (k, c) in coords.iter().enumerate() {
            nodes.push(TreeNode { parent: Some(k), at: Some(Attachment::Free(c.clone())) });
        }
        Self::new(nodes)
    }

    /// Chain of `k` blowups following the curve `{x = 0}`.
    pub fn chain_y(k: usize) -> Result<Self> {
        Self::chain(&vec![None; k.saturating_sub(1)])
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    /// Pairs of node indices whose curves meet on the final surface.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    /// Generic chart of curve `k`: `{u = 0}` is `E_k`.
    fn generic_chart(&self, k: usize) -> [Polynomial; 2] {
        compose_map(&self.centers[k].map, chart_a(&Rat::zero()))
    }

    /// The other chart of curve `k`: `{w = 0}` is `E_k`.
    fn second_chart(&self, k: usize) -> [Polynomial; 2] {
        compose_map(&self.centers[k].map, chart_b())
    }

    pub fn pullback(map: &[Polynomial; 2], f: &Polynomial) -> Result<Polynomial> {
        if f.arity() != 2 {
            return Err(Error::Arity("surface models take polynomials in (x, y)".into()));
        }
        f.compose(map)
    }

    /// `ord_{E_k}(f)` from the generic chart.
    pub fn ord(&self, k: usize, f: &Polynomial) -> Result<Ext<u32>> {
        Ok(Self::pullback(&self.generic_chart(k), f)?.order_in(0))
    }

    /// `ord_{E_k}(f)` from the second chart (independent route).
    pub fn ord_second_chart(&self, k: usize, f: &Polynomial) -> Result<Ext<u32>> {
        Ok(Self::pullback(&self.second_chart(k), f)?.order_in(1))
    }

    /// `b_k = min(ord_{E_k} x, ord_{E_k} y)` via chart pullbacks.
    pub fn multiplicities(&self) -> Vec<u32> {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        (0..self.len())
            .map(|k| {
                let a = self.ord(k, &x).unwrap().finite().unwrap();
                let b = self.ord(k, &y).unwrap().finite().unwrap();
                a.min(b)
            })
            .collect()
    }

    pub fn intersection_data(&self) -> IntersectionData {
        let n = self.len();
        let mut matrix = vec![vec![0i64; n]; n];
        for k in 0..n {
            matrix[k][k] = -1 - self.blown_on[k] as i64;
        }
        for &(i, j) in &self.edges {
            matrix[i][j] = 1;
            matrix[j][i] = 1;
        }
        IntersectionData { matrix, b: self.multiplicities() }
    }

    /// Dual graph with vertex id `k + 1` for node `k`.
    pub fn dual_graph(&self) -> Result<(DualComplex, IntersectionData)> {
        let data = self.intersection_data();
        let mult: Vec<(u32, u32)> = data.b.iter().enumerate().map(|(k, &b)| (k as u32 + 1, b)).collect();
        let mut maximal: Vec<Vec<u32>> = self.edges.iter().map(|&(i, j)| vec![i as u32 + 1, j as u32 + 1]).collect();
        if maximal.is_empty() {
            maximal.push(vec![1]);
        }
        Ok((DualComplex::from_maximal(&mult, &maximal)?, data))
    }

    /// Chart at `E_i ∩ E_j` with the curve of `{u = 0}` first.
    fn edge_chart(&self, i: usize, j: usize) -> Result<([Polynomial; 2], usize, usize)> {
        if !self.edges.contains(&(i.min(j), i.max(j))) {
            return Err(Error::InvalidPoint(format!("curves {} and {} do not meet", i + 1, j + 1)));
        }
        let (k, q) = if i > j { (i, j) } else { (j, i) };
        let c = &self.centers[k];
        if c.w_curve == Some(q) {
            Ok((self.generic_chart(k), k, q))
        } else {
            Ok((self.second_chart(k), q, k))
        }
    }

    /// `v(f)` for a weight point on a vertex or edge of the dual graph.
    pub fn eval_on_model(&self, f: &Polynomial, p: &WeightPoint) -> Result<Rat> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (dual, _) = self.dual_graph()?;
        dual.check_point(p)?;
        let supp: Vec<u32> = p.support().into_iter().collect();
        let value = match supp.as_slice() {
            [i] => {
                let k = *i as usize - 1;
                let g = Self::pullback(&self.generic_chart(k), f)?;
                eval_valuation(&[p.weight(*i), Rat::zero()], &g)?
            }
            [i, j] => {
                let (map, a, b) = self.edge_chart(*i as usize - 1, *j as usize - 1)?;
                let g = Self::pullback(&map, f)?;
                eval_valuation(&[p.weight(a as u32 + 1), p.weight(b as u32 + 1)], &g)?
            }
            _ => return Err(Error::InvalidPoint("point must lie on a vertex or an edge".into())),
        };
        Ok(value.finite().expect("nonzero polynomial"))
    }

    /// `chi_f(e_k) = ord_{E_k}(f) / b_k` at every vertex.
    pub fn vertex_values(&self, f: &Polynomial) -> Result<Vec<Rat>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let b = self.multiplicities();
        (0..self.len())
            .map(|k| Ok(Rat::new(self.ord(k, f)?.finite().unwrap().into(), b[k].into())))
            .collect()
    }

    /// Every chart map is monomial (attachments at `0`, `inf` or satellites).
    pub fn is_toric(&self) -> bool {
        self.nodes.iter().all(|n| match &n.at {
            Some(Attachment::Free(Some(c))) => c.is_zero(),
            _ => true,
        })
    }

    /// `(v(x), v(y))`: on a toric tree every point of the dual graph is the
    /// monomial valuation with these weights.
    pub fn monomial_weights(&self, p: &WeightPoint) -> Result<Vec<Rat>> {
        if !self.is_toric() {
            return Err(Error::InvalidTree("chart maps are not monomial".into()));
        }
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        Ok(vec![self.eval_on_model(&x, p)?, self.eval_on_model(&y, p)?])
    }

    /// `(ord_{E_i}(f), G~ . E_i)` for `G = div(f)`: the strict transform part is
    /// determined by `(pi^* f) . E_i = 0`.
    pub fn principal_divisor(&self, f: &Polynomial) -> Result<(Vec<i64>, Vec<i64>)> {
        let data = self.intersection_data();
        let ords: Vec<i64> = (0..self.len()).map(|k| Ok(self.ord(k, f)?.finite().unwrap() as i64)).collect::<Result<_>>()?;
        let strict = (0..self.len()).map(|i| -(0..self.len()).map(|j| ords[j] * data.matrix[i][j]).sum::<i64>()).collect();
        Ok((ords, strict))
    }
}

/// `theta_G = max_i |G . E_i|` for `G = sum a_j E_j + G~`.
pub fn theta_g(data: &IntersectionData, a: &[i64], strict_dot: Option<&[i64]>) -> Result<i64> {
    let n = data.len();
    if a.len() != n {
        return Err(Error::Arity("one coefficient per exceptional curve".into()));
    }
    let s = match strict_dot {
        Some(s) if s.len() == n => s,
        Some(_) => return Err(Error::Arity("one strict transform intersection per curve".into())),
        None => {
            if a.iter().all(|x| *x == 0) {
                return Ok(0);
            }
            return Err(Error::InvalidArgument("missing strict transform intersection data".into()));
        }
    };
    Ok((0..n).map(|i| ((0..n).map(|j| a[j] * data.matrix[i][j]).sum::<i64>() + s[i]).abs()).max().unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexBound {
    pub a0: String,
    pub b0: String,
    pub l: usize,
    pub a: String,
    pub b: String,
}

/// `(A, B)` from the vertex-bound induction, with `A_0 >= 1`.
pub fn vertex_bound_constants(data: &IntersectionData) -> Result<(Rat, Rat, VertexBound)> {
    let n = data.len();
    let dual = {
        let mult: Vec<(u32, u32)> = data.b.iter().enumerate().map(|(k, &b)| (k as u32 + 1, b)).collect();
        let mut maximal: Vec<Vec<u32>> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if data.adjacent(i, j) {
                    maximal.push(vec![i as u32 + 1, j as u32 + 1]);
                }
            }
        }
        for i in 0..n {
            if !maximal.iter().any(|e| e.contains(&(i as u32 + 1))) {
                maximal.push(vec![i as u32 + 1]);
            }
        }
        DualComplex::from_maximal(&mult, &maximal)?
    };
    if let Err(problems) = dual.validate() {
        return Err(Error::InvalidComplex(problems));
    }
    let mut a0 = Rat::one();
    let mut b0 = Rat::zero();
    for i in 0..n {
        for j in 0..n {
            if data.adjacent(i, j) {
                let cij = int(data.c(i, j));
                let r = int(data.c(i, i).abs()) / &cij;
                if r > a0 {
                    a0 = r;
                }
                let q = Rat::one() / &cij;
                if q > b0 {
                    b0 = q;
                }
            }
        }
    }
    let l = dual.graph_diameter();
    let mut a = Rat::one();
    let mut geom = Rat::zero();
    for _ in 0..l {
        geom += &a;
        a *= &a0;
    }
    let b = &b0 * geom;
    let rec = VertexBound { a0: fmt_rat(&a0), b0: fmt_rat(&b0), l, a: fmt_rat(&a), b: fmt_rat(&b) };
    Ok((a, b, rec))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IzumiRow {
    pub min: Rat,
    pub max: Rat,
    pub ord0: u32,
    pub bound: Rat,
    pub pass: bool,
    /// `chi(e_k) <= A min + B theta` with `theta = 0` (principal divisor).
    pub vertex_bound_pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IzumiReport {
    pub a: Rat,
    pub diam: Rat,
    pub rows: Vec<IzumiRow>,
    /// Per vertex: smallest `C` with `C^-1 ord_0 <= v <= C ord_0` on the corpus.
    pub izumi_constants: Vec<Rat>,
    pub pass: bool,
}

/// `max_vertex chi_f <= (1 + A diam) min_vertex chi_f` for every `f` in the corpus.
pub fn izumi_check(tree: &BlowupTree, corpus: &[Polynomial]) -> Result<IzumiReport> {
    let (dual, data) = tree.dual_graph()?;
    let (a, _, _) = vertex_bound_constants(&data)?;
    let diam = dual.diameter();
    let factor = Rat::one() + &a * &diam;
    let mut rows = Vec::new();
    let mut consts = vec![Rat::one(); tree.len()];
    for f in corpus {
        let ord0 = match f.min_total_degree() {
            Ext::Finite(d) if d > 0 => d,
            _ => return Err(Error::InvalidArgument("izumi corpus needs nonzero f in m_0".into())),
        };
        let vals = tree.vertex_values(f)?;
        let min = vals.iter().min().unwrap().clone();
        let max = vals.iter().max().unwrap().clone();
        let o = int(ord0 as i64);
        for (k, v) in vals.iter().enumerate() {
            let c = if *v >= o { v / &o } else { &o / v };
            if c > consts[k] {
                consts[k] = c;
            }
        }
        let bound = &factor * &min;
        let vb = vals.iter().all(|v| *v <= &a * &min);
        rows.push(IzumiRow { pass: max <= bound, vertex_bound_pass: vb, min, max, ord0, bound });
    }
    let pass = rows.iter().all(|r| r.pass && r.vertex_bound_pass);
    Ok(IzumiReport { a, diam, rows, izumi_constants: consts, pass })
}

impl ChartModel for BlowupTree {
    fn faces(&self) -> Vec<FaceDomain> {
        let b = self.multiplicities();
        let mut out: Vec<FaceDomain> =
            (0..self.len()).map(|k| FaceDomain::new(vec![k as u32 + 1], vec![b[k]]).unwrap()).collect();
        out.extend(self.edges.iter().map(|&(i, j)| {
            let (_, a, c) = self.edge_chart(i, j).unwrap();
            FaceDomain::new(vec![a as u32 + 1, c as u32 + 1], vec![b[a], b[c]]).unwrap()
        }));
        out
    }

    /// Expansion in the chart at the face; on a lone vertex only the order in
    /// `u` matters, so the support is projected to it.
    fn expand(&self, face: &FaceDomain, f: &Polynomial) -> Result<Polynomial> {
        match face.ids.as_slice() {
            [i] => {
                let g = Self::pullback(&self.generic_chart(*i as usize - 1), f)?;
                Polynomial::from_support(1, g.support().map(|e| vec![e[0]]))
            }
            [i, j] => {
                let (map, a, _) = self.edge_chart(*i as usize - 1, *j as usize - 1)?;
                if a as u32 + 1 != *i {
                    return Err(Error::InvalidArgument("face ids must follow the chart order".into()));
                }
                Self::pullback(&map, f)
            }
            _ => Err(Error::UnsupportedDimension("surface faces have at most two vertices".into())),
        }
    }
}

/// Toric compactification of `A^2` given by a complete fan refining the fan of `P^2`.
#[derive(Debug, Clone)]
pub struct ToricAtInfinity {
    pub fan: Fan,
    /// Indices of rays outside the closed orthant, in angular order.
    pub chain: Vec<usize>,
    pub b: Vec<u32>,
}

/// Counterclockwise order starting at the ray `(1, 0)`.
fn angle_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let half = |r: &[i64]| if r[1] > 0 || (r[1] == 0 && r[0] > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| (a[1] * b[0]).cmp(&(a[0] * b[1])))
}

impl ToricAtInfinity {
    pub fn new(fan: Fan) -> Result<Self> {
        if fan.dim() != 2 {
            return Err(Error::InvalidFan("need a fan in R^2".into()));
        }
        let pos = |v: [i64; 2]| fan.rays.iter().position(|r| r[..] == v);
        let (Some(ex), Some(ey), Some(_)) = (pos([1, 0]), pos([0, 1]), pos([-1, -1])) else {
            return Err(Error::InvalidFan("fan does not refine the fan of P^2".into()));
        };
        let mut order: Vec<usize> = (0..fan.rays.len()).collect();
        order.sort_by(|&i, &j| angle_cmp(&fan.rays[i], &fan.rays[j]));
        let has_cone = |i: usize, j: usize| {
            fan.cones.iter().any(|c| c.len() == 2 && c.contains(&i) && c.contains(&j))
        };
        let n = order.len();
        for k in 0..n {
            let (i, j) = (order[k], order[(k + 1) % n]);
            let (a, b) = (&fan.rays[i], &fan.rays[j]);
            let cross = a[0] * b[1] - a[1] * b[0];
            if cross <= 0 || !has_cone(i, j) {
                return Err(Error::InvalidFan("fan is not complete".into()));
            }
        }
        if fan.cones.iter().filter(|c| c.len() == 2).count() != n {
            return Err(Error::InvalidFan("fan has overlapping cones".into()));
        }
        if !has_cone(ex, ey) {
            return Err(Error::InvalidFan("the orthant must be a cone".into()));
        }
        let start = order.iter().position(|&i| i == ey).unwrap();
        let chain: Vec<usize> = (1..n).map(|k| order[(start + k) % n]).take_while(|&i| i != ex).collect();
        let b = fan.rays.iter().map(|r| (-r.iter().copied().min().unwrap().min(0)) as u32).collect();
        Ok(ToricAtInfinity { fan, chain, b })
    }

    /// Faces of the dual complex at infinity, as weight-coordinate domains
    /// (vertex ids are ray indices + 1).
    pub fn faces(&self) -> Vec<FaceDomain> {
        if self.chain.len() == 1 {
            let i = self.chain[0];
            return vec![FaceDomain::new(vec![i as u32 + 1], vec![self.b[i]]).unwrap()];
        }
        self.chain
            .windows(2)
            .map(|p| FaceDomain::new(vec![p[0] as u32 + 1, p[1] as u32 + 1], vec![self.b[p[0]], self.b[p[1]]]).unwrap())
            .collect()
    }

    /// `chi_P` on a face: `min_alpha sum_j t_j <u_j, alpha>`.
    pub fn chi_on_face(&self, p: &Polynomial, face: &FaceDomain) -> Result<PiecewiseAffineConcave> {
        if p.arity() != 2 || p.is_zero() {
            return Err(Error::InvalidArgument("need a nonzero polynomial in (x, y)".into()));
        }
        let forms = p
            .support()
            .map(|a| {
                AffineForm::linear(
                    face.ids
                        .iter()
                        .map(|&id| {
                            let r = &self.fan.rays[id as usize - 1];
                            int(r[0] * a[0] as i64 + r[1] * a[1] as i64)
                        })
                        .collect(),
                )
            })
            .collect();
        PiecewiseAffineConcave::new(face.clone(), forms)
    }

    /// `chi_P(w)` for `w` in the plane (no normalization applied).
    pub fn chi_at(p: &Polynomial, w: &[Rat]) -> Rat {
        p.support()
            .map(|a| &w[0] * int(a[0] as i64) + &w[1] * int(a[1] as i64))
            .min()
            .expect("nonzero polynomial")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtInfinityReport {
    pub degree: u32,
    pub min_chi: Rat,
    pub min_is_minus_d: bool,
    pub lipschitz: Rat,
    pub ratio: Rat,
}

pub fn at_infinity(model: &ToricAtInfinity, p: &Polynomial, n: Norm) -> Result<AtInfinityReport> {
    let d = match p.total_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidArgument("need a polynomial of degree >= 1".into())),
    };
    let mut min_chi: Option<Rat> = None;
    let mut lip = Rat::zero();
    for face in model.faces() {
        let chi = model.chi_on_face(p, &face)?;
        let m = chi.min_value();
        if min_chi.as_ref().map_or(true, |x| m < *x) {
            min_chi = Some(m);
        }
        let l = chi.lipschitz(n)?;
        if l > lip {
            lip = l;
        }
    }
    let min_chi = min_chi.unwrap();
    let dd = int(d as i64);
    Ok(AtInfinityReport { degree: d, min_is_minus_d: min_chi == -dd.clone(), ratio: &lip / &dd, lipschitz: lip, min_chi })
}

/// A priori constant: every form has `||.||_1 <= d (|u_j|_inf + |u_k|_inf)` on a face.
pub fn at_infinity_apriori_b(model: &ToricAtInfinity) -> Rat {
    model
        .faces()
        .iter()
        .map(|f| {
            f.ids
                .iter()
                .map(|&id| int(model.fan.rays[id as usize - 1].iter().map(|x| x.abs()).max().unwrap()))
                .sum::<Rat>()
        })
        .max()
        .unwrap_or_else(Rat::zero)
}

/// `P^2` blown up at two torus-fixed points at infinity.
pub fn toric_model_small() -> ToricAtInfinity {
    let fan = Fan::new(
        vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![-1, -1], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]],
    )
    .unwrap();
    ToricAtInfinity::new(fan).unwrap()
}

/// A finer refinement with nine rays.
pub fn toric_model_fine() -> ToricAtInfinity {
    let rays = vec![
        vec![1, 0],
        vec![0, 1],
        vec![-1, 1],
        vec![-1, 0],
        vec![-2, -1],
        vec![-1, -1],
        vec![-1, -2],
        vec![0, -1],
        vec![1, -1],
    ];
    let cones = (0..9).map(|k| vec![k, (k + 1) % 9]).collect();
    ToricAtInfinity::new(Fan::new(rays, cones).unwrap()).unwrap()
}

pub fn chain_models() -> Vec<(String, BlowupTree)> {
    let mut out = Vec::new();
    for k in 1..=5 {
        out.push((format!("chain{k}"), BlowupTree::chain_y(k).unwrap()));
    }
    out
}

pub fn weight_on_vertices(ids: &[u32], t: &[Rat]) -> WeightPoint {
    WeightPoint::new(ids.iter().copied().zip(t.iter().cloned()).filter(|(_, x)| !x.is_zero()))
}

pub fn vertex_map(values: &[Rat]) -> BTreeMap<u32, Rat> {
    values.iter().enumerate().map(|(k, v)| (k as u32 + 1, v.clone())).collect()
}

pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    // leading principal minors alternate in sign starting negative
    let n = m.len();
    (1..=n).all(|k| {
        let sub: Vec<Vec<Rat>> = (0..k).map(|i| (0..k).map(|j| int(m[i][j])).collect()).collect();
        let d = crate::linalg::det(&sub);
        if k % 2 == 1 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}
