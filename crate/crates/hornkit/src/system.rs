//! The Horn system data model: rows `A_i` with rational parameters `c_i`.

use num_integer::Integer;

use crate::error::{HornError, Result};
use crate::lattice::{int, primitive, LatticeVec, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornSystem {
    pub rows: Vec<LatticeVec>,
    pub params: Vec<Rat>,
}

impl HornSystem {
    pub fn new(rows: Vec<LatticeVec>, params: Vec<Rat>) -> Result<Self> {
        if rows.len() != params.len() {
            return Err(HornError::LengthMismatch { rows: rows.len(), params: params.len() });
        }
        if rows.len() < 2 {
            return Err(HornError::TooFewRows(rows.len()));
        }
        Ok(HornSystem { rows, params })
    }

    /// Convenience constructor from integer pairs.
    pub fn from_pairs(rows: &[(i64, i64)], params: Vec<Rat>) -> Result<Self> {
        HornSystem::new(rows.iter().map(|&r| r.into()).collect(), params)
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn with_params(&self, params: Vec<Rat>) -> Result<Self> {
        HornSystem::new(self.rows.clone(), params)
    }

    /// Same rows, parameter `i` shifted by `delta`.
    pub fn shift_param(&self, i: usize, delta: &Rat) -> Self {
        let mut s = self.clone();
        s.params[i] += delta;
        s
    }

    pub fn spans_plane(&self) -> bool {
        self.rows.iter().enumerate().any(|(i, u)| self.rows[i + 1..].iter().any(|v| u.cross(*v) != 0))
    }

    pub fn max_entry(&self) -> i64 {
        self.rows.iter().map(|r| r.a.abs().max(r.b.abs())).max().unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        self.rows.iter().all(|r| !r.is_zero() && r.a.gcd(&r.b) == 1)
    }
}

pub fn check_nonconfluent(s: &HornSystem) -> bool {
    let sum = s.rows.iter().fold(LatticeVec::new(0, 0), |acc, r| acc.add(*r));
    sum.is_zero()
}

/// Split every row `N*d` with parameter `c` into `N` rows `d` with
/// parameters `(c+k)/N`, `k = 0..N-1`.
pub fn normalize_rows(s: &HornSystem) -> Result<HornSystem> {
    let mut rows = Vec::new();
    let mut params = Vec::new();
    for (i, (r, c)) in s.rows.iter().zip(&s.params).enumerate() {
        let (d, n) = primitive(*r).map_err(|_| HornError::ZeroRow(i))?;
        for k in 0..n {
            rows.push(d);
            params.push((c + int(k)) / int(n));
        }
    }
    HornSystem::new(rows, params)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub indices: Vec<usize>,
    pub lambda: Vec<i64>,
    pub resonant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResonanceReport {
    pub circuits: Vec<Circuit>,
    pub is_resonant: bool,
    pub is_maximally_resonant: bool,
}

fn coprime(mut lambda: Vec<i64>) -> Vec<i64> {
    let g = lambda.iter().fold(0i64, |g, x| g.gcd(x));
    if g > 1 {
        for x in &mut lambda {
            *x /= g;
        }
    }
    if lambda.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        for x in &mut lambda {
            *x = -*x;
        }
    }
    lambda
}

fn circuit(s: &HornSystem, indices: Vec<usize>, lambda: Vec<i64>) -> Circuit {
    let lambda = coprime(lambda);
    let sum: Rat = indices.iter().zip(&lambda).map(|(&i, &l)| &s.params[i] * int(l)).sum();
    Circuit { indices, lambda, resonant: sum.is_integer() }
}

/// Enumerate dependent pairs and independent triples with their primitive
/// integer relations and flag those whose parameter combination is integral.
pub fn detect_resonance(s: &HornSystem) -> ResonanceReport {
    let m = s.m();
    let r = &s.rows;
    let mut circuits = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if r[i].cross(r[j]) == 0 {
                let (u, v) = (r[i], r[j]);
                let lambda = if u.a != 0 || v.a != 0 { vec![v.a, -u.a] } else { vec![v.b, -u.b] };
                circuits.push(circuit(s, vec![i, j], lambda));
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let (u1, u2, u3) = (r[i], r[j], r[k]);
                if u1.cross(u2) == 0 || u2.cross(u3) == 0 || u1.cross(u3) == 0 {
                    continue;
                }
                let lambda = vec![u2.cross(u3), u3.cross(u1), u1.cross(u2)];
                circuits.push(circuit(s, vec![i, j, k], lambda));
            }
        }
    }
    let is_resonant = circuits.iter().any(|c| c.resonant);
    let is_maximally_resonant = !circuits.is_empty() && circuits.iter().all(|c| c.resonant);
    ResonanceReport { circuits, is_resonant, is_maximally_resonant }
}
