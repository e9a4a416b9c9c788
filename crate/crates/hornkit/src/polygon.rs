//! The Ore–Sato polygon: edges are dual to the rows, which act as outer
//! normals with multiplicity.

use std::collections::BTreeMap;

use crate::error::{HornError, Result};
use crate::lattice::{ccw_sort, cmp_angle, primitive, LatticeVec};
use crate::system::{check_nonconfluent, normalize_rows, HornSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreSatoPolygon {
    /// Primitive outer normals in counterclockwise order.
    pub normals: Vec<LatticeVec>,
    /// `(direction, length)`; edge `i` is dual to `normals[i]`.
    pub edges: Vec<(LatticeVec, i64)>,
    /// `vertices[i]` is the start of edge `i`; `vertices[0] = (0,0)`.
    pub vertices: Vec<LatticeVec>,
}

impl OreSatoPolygon {
    pub fn from_normals(normals: &[(LatticeVec, i64)]) -> Result<Self> {
        let dirs: Vec<LatticeVec> = normals.iter().map(|n| n.0).collect();
        let order = ccw_sort(&dirs)?;
        let normals: Vec<(LatticeVec, i64)> = order.into_iter().map(|i| normals[i]).collect();
        let edges: Vec<(LatticeVec, i64)> = normals.iter().map(|(n, k)| (n.rot90(), *k)).collect();
        let mut vertices = Vec::with_capacity(edges.len());
        let mut at = LatticeVec::new(0, 0);
        for (d, k) in &edges {
            vertices.push(at);
            at = at.add(d.scale(*k));
        }
        Ok(OreSatoPolygon { normals: normals.into_iter().map(|n| n.0).collect(), edges, vertices })
    }

    pub fn is_closed(&self) -> bool {
        self.edges.iter().fold(LatticeVec::new(0, 0), |acc, (d, k)| acc.add(d.scale(*k))).is_zero()
    }

    pub fn is_convex(&self) -> bool {
        let q = self.edges.len();
        q >= 3 && (0..q).all(|i| self.edges[i].0.cross(self.edges[(i + 1) % q].0) > 0)
    }

    /// Edge vectors grouped by primitive direction.
    pub fn edge_map(&self) -> BTreeMap<LatticeVec, i64> {
        let mut m = BTreeMap::new();
        for (d, k) in &self.edges {
            *m.entry(*d).or_insert(0) += k;
        }
        m
    }

    pub fn length_of(&self, d: LatticeVec) -> i64 {
        self.edges.iter().find(|e| e.0 == d).map_or(0, |e| e.1)
    }

    /// Lattice points in the closed polygon.
    pub fn lattice_points(&self) -> Vec<LatticeVec> {
        let (lo, hi) = self.bbox();
        let mut pts = Vec::new();
        for y in lo.b..=hi.b {
            for x in lo.a..=hi.a {
                let p = LatticeVec::new(x, y);
                let inside = self.vertices.iter().zip(&self.edges).all(|(v, (d, _))| d.cross(p.add(v.neg())) >= 0);
                if inside {
                    pts.push(p);
                }
            }
        }
        pts
    }

    pub fn bbox(&self) -> (LatticeVec, LatticeVec) {
        let xs = self.vertices.iter().map(|v| v.a);
        let ys = self.vertices.iter().map(|v| v.b);
        (
            LatticeVec::new(xs.clone().min().unwrap_or(0), ys.clone().min().unwrap_or(0)),
            LatticeVec::new(xs.max().unwrap_or(0), ys.max().unwrap_or(0)),
        )
    }
}

pub fn build_polygon(s: &HornSystem) -> Result<OreSatoPolygon> {
    if !check_nonconfluent(s) {
        return Err(HornError::Confluent);
    }
    if !s.spans_plane() {
        return Err(HornError::RankDeficient);
    }
    let n = normalize_rows(s)?;
    let mut groups: BTreeMap<LatticeVec, i64> = BTreeMap::new();
    for r in &n.rows {
        *groups.entry(primitive(*r)?.0).or_insert(0) += 1;
    }
    let normals: Vec<(LatticeVec, i64)> = groups.into_iter().collect();
    OreSatoPolygon::from_normals(&normals)
}

pub fn vertex_count(p: &OreSatoPolygon) -> usize {
    p.edges.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolygonKind {
    Zonotope,
    TrianglePlusSegments,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `(direction, length)` per segment summand.
    pub segments: Vec<(LatticeVec, i64)>,
    /// Triangle edges `(direction, length)` when present.
    pub triangle: Option<Vec<(LatticeVec, i64)>>,
}

impl Witness {
    /// Edge multiset of the Minkowski sum of all summands.
    pub fn resum(&self) -> BTreeMap<LatticeVec, i64> {
        let mut m = BTreeMap::new();
        for (d, k) in &self.segments {
            *m.entry(*d).or_insert(0) += k;
            *m.entry(d.neg()).or_insert(0) += k;
        }
        for (d, k) in self.triangle.iter().flatten() {
            *m.entry(*d).or_insert(0) += k;
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: PolygonKind,
    pub witness: Option<Witness>,
}

fn upper(d: LatticeVec) -> bool {
    cmp_angle(d, d.neg()).is_lt()
}

pub fn classify(p: &OreSatoPolygon) -> Classification {
    let mut segments = Vec::new();
    let mut excess = Vec::new();
    let mut lines: Vec<LatticeVec> = p.edges.iter().map(|e| if upper(e.0) { e.0 } else { e.0.neg() }).collect();
    lines.sort_by(|a, b| cmp_angle(*a, *b));
    lines.dedup();
    for d in &lines {
        let (l, r) = (p.length_of(*d), p.length_of(d.neg()));
        if l.min(r) > 0 {
            segments.push((*d, l.min(r)));
        }
        if l != r {
            excess.push(if l > r { (*d, l - r) } else { (d.neg(), r - l) });
        }
    }
    let (kind, triangle) = if excess.is_empty() {
        (PolygonKind::Zonotope, None)
    } else if lines.len() == 3 && excess.len() == 3 {
        excess.sort_by(|a, b| cmp_angle(a.0, b.0));
        (PolygonKind::TrianglePlusSegments, Some(excess))
    } else {
        return Classification { kind: PolygonKind::Other, witness: None };
    };
    Classification { kind, witness: Some(Witness { segments, triangle }) }
}

pub fn minkowski_decompose(p: &OreSatoPolygon) -> Result<Witness> {
    classify(p).witness.ok_or(HornError::NoDecomposition)
}

pub fn is_maximally_reducible(s: &HornSystem) -> Result<bool> {
    Ok(classify(&build_polygon(s)?).kind != PolygonKind::Other)
}
