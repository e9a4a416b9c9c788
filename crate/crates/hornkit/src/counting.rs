//! Closed-form counts: holonomic rank, persistent dimension, fully supported
//! series, and per-vertex convergent series.

use std::cmp::Ordering;

use crate::error::{HornError, Result};
use crate::lattice::{cmp_angle, index_nu, primitive, LatticeVec};
use crate::polygon::{build_polygon, OreSatoPolygon};
use crate::system::{check_nonconfluent, normalize_rows, HornSystem};

/// A strongly convex cone given by two generators in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConeQ {
    pub g1: LatticeVec,
    pub g2: LatticeVec,
}

impl ConeQ {
    pub fn new(g1: LatticeVec, g2: LatticeVec) -> Self {
        if g1.cross(g2) >= 0 {
            ConeQ { g1, g2 }
        } else {
            ConeQ { g1: g2, g2: g1 }
        }
    }

    pub fn contains(&self, v: LatticeVec) -> bool {
        self.g1.cross(v) >= 0 && v.cross(self.g2) >= 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentRef {
    pub vertex_index: usize,
    pub normal_cone: ConeQ,
}

/// Vertex `i` joins edges `i` and `i+1`; its normal cone is spanned by the
/// two adjacent outer normals.
pub fn component(p: &OreSatoPolygon, i: usize) -> Result<ComponentRef> {
    let q = p.normals.len();
    if i >= q {
        return Err(HornError::InvalidVertex { index: i, count: q });
    }
    Ok(ComponentRef { vertex_index: i, normal_cone: ConeQ::new(p.normals[i], p.normals[(i + 1) % q]) })
}

fn primitive_rows(s: &HornSystem) -> Result<Vec<LatticeVec>> {
    Ok(normalize_rows(s)?.rows)
}

fn require_nonconfluent(s: &HornSystem) -> Result<()> {
    if check_nonconfluent(s) {
        Ok(())
    } else {
        Err(HornError::Confluent)
    }
}

fn pairs(rows: &[LatticeVec]) -> impl Iterator<Item = (LatticeVec, LatticeVec)> + '_ {
    (0..rows.len()).flat_map(move |i| (i + 1..rows.len()).map(move |j| (rows[i], rows[j])))
}

fn rank_formula(rows: &[LatticeVec]) -> i64 {
    let pos1: i64 = rows.iter().map(|r| r.a.max(0)).sum();
    let pos2: i64 = rows.iter().map(|r| r.b.max(0)).sum();
    let resonant: i64 = pairs(rows).filter(|(u, v)| u.cross(*v) == 0).map(|(u, v)| index_nu(u, v)).sum();
    pos1 * pos2 - resonant
}

pub fn holonomic_rank(s: &HornSystem) -> Result<i64> {
    require_nonconfluent(s)?;
    Ok(rank_formula(&primitive_rows(s)?))
}

/// The rank formula evaluated on the rows exactly as given.
pub fn holonomic_rank_raw(s: &HornSystem) -> Result<i64> {
    require_nonconfluent(s)?;
    Ok(rank_formula(&s.rows))
}

pub fn persistent_dim(s: &HornSystem) -> Result<i64> {
    require_nonconfluent(s)?;
    let rows = primitive_rows(s)?;
    Ok(pairs(&rows).filter(|(u, v)| u.cross(*v) != 0).map(|(u, v)| index_nu(u, v)).sum())
}

pub fn fully_supported_count(s: &HornSystem) -> i64 {
    pairs(&s.rows).map(|(u, v)| u.cross(v).abs()).sum()
}

/// Counterclockwise angle order measured from `base`.
fn cmp_from(base: LatticeVec, u: LatticeVec, v: LatticeVec) -> Ordering {
    let rot = |w: LatticeVec| LatticeVec::new(base.dot(w), base.cross(w));
    cmp_angle(rot(u), rot(v))
}

fn multiplicities(s: &HornSystem, p: &OreSatoPolygon) -> Result<Vec<i64>> {
    let mut k = vec![0; p.normals.len()];
    for r in &s.rows {
        let (d, g) = primitive(*r)?;
        if let Some(i) = p.normals.iter().position(|n| *n == d) {
            k[i] += g;
        }
    }
    Ok(k)
}

/// The number of fully supported series converging on the complement
/// component attached to vertex `i`, by the angular double sum.
pub fn convergent_count_s(s: &HornSystem, i: usize) -> Result<i64> {
    let p = build_polygon(s)?;
    let q = p.normals.len();
    if i >= q {
        return Err(HornError::InvalidVertex { index: i, count: q });
    }
    let mult = multiplicities(s, &p)?;
    let (ni, nj) = (p.normals[i], p.normals[(i + 1) % q]);
    let base = nj.neg();
    let mut total = 0;
    for (k, &nk) in p.normals.iter().enumerate() {
        let in_first = cmp_from(base, base, nk).is_lt() && cmp_from(base, nk, ni).is_le();
        if !in_first {
            continue;
        }
        for (l, &nl) in p.normals.iter().enumerate() {
            if cmp_from(base, nj, nl).is_le() && cmp_from(base, nl, nk.neg()).is_lt() {
                total += mult[k] * mult[l] * nl.cross(nk).abs();
            }
        }
    }
    Ok(total)
}

/// Sum of `|det A_I|` over pairs whose support cone fits the component.
pub fn convergent_dim_by_cone(s: &HornSystem, comp: &ComponentRef) -> Result<i64> {
    require_nonconfluent(s)?;
    let rows = primitive_rows(s)?;
    let gens = [comp.normal_cone.g1, comp.normal_cone.g2];
    let mut total = 0;
    for (u, v) in pairs(&rows) {
        let det = u.cross(v);
        if det == 0 {
            continue;
        }
        // columns of A_I^{-1}, scaled by det
        let cols = [LatticeVec::new(v.b, -v.a), LatticeVec::new(-u.b, u.a)];
        if cols.iter().all(|c| gens.iter().all(|g| c.dot(*g) * det.signum() >= 0)) {
            total += det.abs();
        }
    }
    Ok(total)
}
