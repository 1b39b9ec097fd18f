//! Dual complexes with multiplicities and weight points.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{int, Rat};

pub type Face = BTreeSet<u32>;

pub fn face(ids: &[u32]) -> Face {
    ids.iter().copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: u32,
    pub b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<VertexJson>,
    pub faces: Vec<Vec<u32>>,
}

/// Abstract simplicial complex whose vertices carry multiplicities `b_i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualComplex {
    mult: BTreeMap<u32, u32>,
    faces: BTreeSet<Face>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub link: BTreeSet<u32>,
    pub faces: BTreeSet<Face>,
}

/// A point of the complex in weight coordinates `t_i = v(E_i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightPoint {
    weights: BTreeMap<u32, Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DivisorOnZ {
    pub coeffs: BTreeMap<u32, Rat>,
}

impl DivisorOnZ {
    pub fn new<I: IntoIterator<Item = (u32, Rat)>>(it: I) -> Self {
        DivisorOnZ { coeffs: it.into_iter().filter(|(_, a)| !a.is_zero()).collect() }
    }

    pub fn coeff(&self, i: u32) -> Rat {
        self.coeffs.get(&i).cloned().unwrap_or_else(Rat::zero)
    }
}

impl WeightPoint {
    pub fn new<I: IntoIterator<Item = (u32, Rat)>>(it: I) -> Self {
        WeightPoint { weights: it.into_iter().filter(|(_, t)| !t.is_zero()).collect() }
    }

    pub fn weight(&self, i: u32) -> Rat {
        self.weights.get(&i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn weights(&self) -> &BTreeMap<u32, Rat> {
        &self.weights
    }

    pub fn support(&self) -> Face {
        self.weights.keys().copied().collect()
    }

    /// Weights listed in the order of `ids`.
    pub fn on(&self, ids: &[u32]) -> Vec<Rat> {
        ids.iter().map(|&i| self.weight(i)).collect()
    }

    pub fn linf_distance(&self, other: &WeightPoint) -> Rat {
        let ids: BTreeSet<u32> = self.weights.keys().chain(other.weights.keys()).copied().collect();
        ids.into_iter().map(|i| (self.weight(i) - other.weight(i)).abs()).max().unwrap_or_else(Rat::zero)
    }
}

impl DualComplex {
    pub fn from_json(j: &ComplexJson) -> Result<Self> {
        let mut problems = Vec::new();
        let mut mult = BTreeMap::new();
        for v in &j.vertices {
            if v.b == 0 {
                problems.push(format!("vertex {} has multiplicity 0", v.id));
            }
            if mult.insert(v.id, v.b).is_some() {
                problems.push(format!("vertex {} listed twice", v.id));
            }
        }
        let mut faces = BTreeSet::new();
        for f in &j.faces {
            let s: Face = f.iter().copied().collect();
            if s.len() != f.len() {
                problems.push(format!("face {f:?} repeats a vertex"));
            }
            if !faces.insert(s) {
                problems.push(format!("face {f:?} listed twice"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::InvalidComplex(problems));
        }
        let c = DualComplex { mult, faces };
        c.validate().map_err(Error::InvalidComplex)?;
        Ok(c)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(text)?;
        Self::from_json(&j)
    }

    /// Builds a complex from multiplicities and maximal faces (all subfaces added).
    pub fn from_maximal(mult: &[(u32, u32)], maximal: &[Vec<u32>]) -> Result<Self> {
        let mut faces = BTreeSet::new();
        for m in maximal {
            for s in subsets(&face(m)) {
                faces.insert(s);
            }
        }
        for &(i, _) in mult {
            faces.insert(face(&[i]));
        }
        let c = DualComplex { mult: mult.iter().copied().collect(), faces };
        c.validate().map_err(Error::InvalidComplex)?;
        Ok(c)
    }

    /// Full simplex on vertices `1..=b.len()` with the given multiplicities.
    pub fn simplex(b: &[u32]) -> Result<Self> {
        let mult: Vec<(u32, u32)> = b.iter().enumerate().map(|(i, &bi)| (i as u32 + 1, bi)).collect();
        let all: Vec<u32> = mult.iter().map(|v| v.0).collect();
        Self::from_maximal(&mult, &[all])
    }

    pub fn to_json(&self) -> ComplexJson {
        let mut faces: Vec<Vec<u32>> = self.faces.iter().map(|f| f.iter().copied().collect()).collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        ComplexJson {
            vertices: self.mult.iter().map(|(&id, &b)| VertexJson { id, b }).collect(),
            faces,
        }
    }

    /// Checks the structural invariants, listing every offending face or vertex.
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let mut problems = Vec::new();
        for (&i, &b) in &self.mult {
            if b == 0 {
                problems.push(format!("vertex {i} has multiplicity 0"));
            }
            if !self.faces.contains(&face(&[i])) {
                problems.push(format!("singleton face {{{i}}} missing"));
            }
        }
        for f in &self.faces {
            if f.is_empty() {
                problems.push("empty face listed".into());
                continue;
            }
            for i in f {
                if !self.mult.contains_key(i) {
                    problems.push(format!("face {:?} uses unknown vertex {i}", f));
                }
            }
            if f.len() > 1 {
                for i in f {
                    let mut g = f.clone();
                    g.remove(i);
                    if !self.faces.contains(&g) {
                        problems.push(format!("face {:?} present but its subface {:?} is missing", f, g));
                    }
                }
            }
        }
        if self.mult.is_empty() {
            problems.push("no vertices".into());
        } else {
            let start = *self.mult.keys().next().unwrap();
            let mut seen = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for j in self.neighbors(i) {
                    if seen.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
            let missing: Vec<u32> = self.mult.keys().filter(|i| !seen.contains(i)).copied().collect();
            if !missing.is_empty() {
                problems.push(format!("1-skeleton is disconnected: vertices {missing:?} unreachable from {start}"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }

    pub fn vertex_ids(&self) -> Vec<u32> {
        self.mult.keys().copied().collect()
    }

    pub fn b(&self, i: u32) -> Result<u32> {
        self.mult.get(&i).copied().ok_or(Error::UnknownVertex(i))
    }

    pub fn multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.mult
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn is_face(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    pub fn dim(&self) -> usize {
        self.faces.iter().map(|f| f.len()).max().unwrap_or(1) - 1
    }

    pub fn maximal_faces(&self) -> Vec<Face> {
        self.faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
            .cloned()
            .collect()
    }

    pub fn neighbors(&self, i: u32) -> Vec<u32> {
        self.faces
            .iter()
            .filter(|f| f.len() == 2 && f.contains(&i))
            .flat_map(|f| f.iter().copied().filter(move |&j| j != i))
            .collect()
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        self.faces
            .iter()
            .filter(|f| f.len() == 2)
            .map(|f| {
                let v: Vec<u32> = f.iter().copied().collect();
                (v[0], v[1])
            })
            .collect()
    }

    /// Graph distance diameter of the 1-skeleton.
    pub fn graph_diameter(&self) -> usize {
        let mut best = 0;
        for &s in self.mult.keys() {
            let mut dist = BTreeMap::from([(s, 0usize)]);
            let mut queue = VecDeque::from([s]);
            while let Some(i) = queue.pop_front() {
                let d = dist[&i];
                for j in self.neighbors(i) {
                    if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(j) {
                        e.insert(d + 1);
                        queue.push_back(j);
                    }
                }
            }
            best = best.max(dist.values().copied().max().unwrap_or(0));
        }
        best
    }

    pub fn star(&self, sigma: &Face) -> Result<Star> {
        if !self.is_face(sigma) {
            return Err(Error::NotAFace(sigma.iter().copied().collect()));
        }
        let link = self
            .mult
            .keys()
            .filter(|&&j| {
                let mut g = sigma.clone();
                g.insert(j);
                self.faces.contains(&g)
            })
            .copied()
            .collect();
        let faces = self.faces.iter().filter(|f| sigma.is_subset(f)).cloned().collect();
        Ok(Star { link, faces })
    }

    /// `t_j = c_j / b_j` for barycentric coordinates `c` on the face `J`.
    pub fn from_barycentric(&self, j: &[u32], coords: &[Rat]) -> Result<WeightPoint> {
        if j.len() != coords.len() {
            return Err(Error::Arity(format!("{} coordinates for a face with {} vertices", coords.len(), j.len())));
        }
        if coords.iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidPoint("negative barycentric coordinate".into()));
        }
        let total: Rat = coords.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidPoint(format!("barycentric coordinates sum to {total}, not 1")));
        }
        let supp: Face = j.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(&i, _)| i).collect();
        if !self.is_face(&supp) {
            return Err(Error::NotAFace(supp.into_iter().collect()));
        }
        let mut w = Vec::new();
        for (&i, c) in j.iter().zip(coords) {
            w.push((i, c / int(self.b(i)? as i64)));
        }
        Ok(WeightPoint::new(w))
    }

    pub fn to_barycentric(&self, t: &WeightPoint) -> Result<BTreeMap<u32, Rat>> {
        t.weights
            .iter()
            .map(|(&i, ti)| Ok((i, ti * int(self.b(i)? as i64))))
            .collect()
    }

    pub fn vertex_point(&self, i: u32) -> Result<WeightPoint> {
        let b = self.b(i)?;
        Ok(WeightPoint::new([(i, Rat::new(1.into(), b.into()))]))
    }

    /// Checks support is a face and the normalization `sum b_i t_i = 1`.
    pub fn check_point(&self, t: &WeightPoint) -> Result<()> {
        for (&i, ti) in &t.weights {
            self.b(i)?;
            if ti.is_negative() {
                return Err(Error::InvalidPoint(format!("negative weight on vertex {i}")));
            }
        }
        let supp = t.support();
        if supp.is_empty() || !self.is_face(&supp) {
            return Err(Error::NotAFace(supp.into_iter().collect()));
        }
        let total = self.z_value(t)?;
        if !total.is_one() {
            return Err(Error::InvalidPoint(format!("sum of b_i t_i is {total}, not 1")));
        }
        Ok(())
    }

    fn z_value(&self, t: &WeightPoint) -> Result<Rat> {
        let mut total = Rat::zero();
        for (&i, ti) in &t.weights {
            total += ti * int(self.b(i)? as i64);
        }
        Ok(total)
    }

    /// `sum_i a_i t_i`.
    pub fn eval_divisor(&self, t: &WeightPoint, d: &DivisorOnZ) -> Result<Rat> {
        self.check_point(t)?;
        for &i in d.coeffs.keys() {
            self.b(i)?;
        }
        Ok(d.coeffs.iter().map(|(&i, a)| a * t.weight(i)).sum())
    }

    /// The divisor `Z = sum b_i E_i`.
    pub fn z_divisor(&self) -> DivisorOnZ {
        DivisorOnZ::new(self.mult.iter().map(|(&i, &b)| (i, int(b as i64))))
    }

    /// LInf diameter: the largest distance between two vertex points.
    pub fn diameter(&self) -> Rat {
        let ids = self.vertex_ids();
        let mut best = Rat::zero();
        for &i in &ids {
            for &j in &ids {
                let d = self.vertex_point(i).unwrap().linf_distance(&self.vertex_point(j).unwrap());
                if d > best {
                    best = d;
                }
            }
        }
        best
    }
}

/// All nonempty subsets of a face.
pub fn subsets(f: &Face) -> Vec<Face> {
    let v: Vec<u32> = f.iter().copied().collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << v.len()) {
        out.push((0..v.len()).filter(|k| mask >> k & 1 == 1).map(|k| v[k]).collect());
    }
    out
}
