//! Atomic subsystems `Horn(A_I, c_I)` and their persistent Puiseux
//! polynomial solutions.

use std::collections::BTreeSet;

use crate::error::{HornError, Result};
use crate::lattice::{index_nu, int, LatticeVec, Mat2, RatVec2};
use crate::operators::{build_operators, HornOperatorPair, PuiseuxPolynomial};
use crate::series::{explore, Exploration};
use crate::system::HornSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicSystem {
    pub pair: (usize, usize),
    pub m: Mat2,
    pub c_tilde: RatVec2,
}

impl AtomicSystem {
    pub fn new(m: Mat2, c_tilde: RatVec2) -> Result<Self> {
        if m.det() == 0 {
            return Err(HornError::Singular);
        }
        Ok(AtomicSystem { pair: (0, 1), m, c_tilde })
    }

    pub fn nu(&self) -> i64 {
        index_nu(self.m.r1, self.m.r2)
    }

    pub fn system(&self) -> HornSystem {
        HornSystem { rows: vec![self.m.r1, self.m.r2], params: vec![self.c_tilde.x1.clone(), self.c_tilde.x2.clone()] }
    }

    /// `-M^{-1}((u,v) + c̃)`.
    pub fn exponent(&self, u: i64, v: i64) -> RatVec2 {
        self.m.solve(&self.c_tilde.offset(u, v)).expect("nonsingular").neg()
    }
}

pub fn enumerate_atomic(s: &HornSystem) -> Vec<AtomicSystem> {
    let m = s.m();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let mat = Mat2::new(s.rows[i], s.rows[j]);
            if mat.det() != 0 {
                out.push(AtomicSystem {
                    pair: (i, j),
                    m: mat,
                    c_tilde: RatVec2::new(s.params[i].clone(), s.params[j].clone()),
                });
            }
        }
    }
    out
}

pub fn atomic_rank(a: &AtomicSystem) -> i64 {
    a.m.det().abs() + a.nu()
}

fn rect(u: i64, v: i64) -> Vec<(i64, i64)> {
    (0..u).flat_map(|x| (0..v).map(move |y| (x, y))).collect()
}

/// The rectangle `R_M`.
pub fn rectangle(m: &Mat2) -> Vec<(i64, i64)> {
    if index_nu(m.r1, m.r2) == 0 {
        return Vec::new();
    }
    let (a1, b1, a2, b2) = (m.r1.a.abs(), m.r1.b.abs(), m.r2.a.abs(), m.r2.b.abs());
    if a1 * b2 > b1 * a2 {
        rect(b1, a2)
    } else {
        rect(a1, b2)
    }
}

/// The sub-rectangle `R̃` of persistent monomials.
pub fn monomial_rectangle(m: &Mat2) -> Vec<(i64, i64)> {
    if index_nu(m.r1, m.r2) == 0 {
        return Vec::new();
    }
    rect(m.r1.a.abs().min(m.r1.b.abs()), m.r2.a.abs().min(m.r2.b.abs()))
}

pub fn polynomial_exponents(a: &AtomicSystem) -> Vec<RatVec2> {
    rectangle(&a.m).into_iter().map(|(u, v)| a.exponent(u, v)).collect()
}

/// Monomial substitutions `x_k → 1/x_k` and `x1 ↔ x2`, applied flips first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FrameChange {
    pub flip1: bool,
    pub flip2: bool,
    pub swap: bool,
}

impl FrameChange {
    pub fn is_identity(&self) -> bool {
        !(self.flip1 || self.flip2 || self.swap)
    }

    fn flip(&self, s: &RatVec2) -> RatVec2 {
        RatVec2::new(if self.flip1 { -&s.x1 } else { s.x1.clone() }, if self.flip2 { -&s.x2 } else { s.x2.clone() })
    }

    fn swapped(&self, s: RatVec2) -> RatVec2 {
        if self.swap {
            RatVec2::new(s.x2, s.x1)
        } else {
            s
        }
    }

    pub fn forward_exponent(&self, s: &RatVec2) -> RatVec2 {
        self.swapped(self.flip(s))
    }

    pub fn pullback_exponent(&self, s: &RatVec2) -> RatVec2 {
        self.flip(&self.swapped(s.clone()))
    }

    pub fn forward_row(&self, r: LatticeVec) -> LatticeVec {
        let r = LatticeVec::new(if self.flip1 { -r.a } else { r.a }, if self.flip2 { -r.b } else { r.b });
        if self.swap {
            LatticeVec::new(r.b, r.a)
        } else {
            r
        }
    }

    pub fn pullback(&self, f: &PuiseuxPolynomial) -> PuiseuxPolynomial {
        PuiseuxPolynomial::from_terms(f.terms.iter().map(|(e, c)| (self.pullback_exponent(e), c.clone())))
    }
}

pub fn normalize_frame(a: &AtomicSystem) -> Result<(AtomicSystem, FrameChange)> {
    if a.nu() == 0 {
        return Err(HornError::NormalizationUndefined);
    }
    let mut fc = FrameChange { flip1: a.m.r1.a < 0, flip2: a.m.r1.b < 0, swap: false };
    let (r1, r2) = (fc.forward_row(a.m.r1), fc.forward_row(a.m.r2));
    fc.swap = (r1.a * r2.b).abs() < (r2.a * r1.b).abs();
    let m = Mat2::new(fc.forward_row(a.m.r1), fc.forward_row(a.m.r2));
    Ok((AtomicSystem { pair: a.pair, m, c_tilde: a.c_tilde.clone() }, fc))
}

pub fn persistent_monomials(a: &AtomicSystem) -> Vec<PuiseuxPolynomial> {
    monomial_rectangle(&a.m).into_iter().map(|(u, v)| PuiseuxPolynomial::monomial(a.exponent(u, v), int(1))).collect()
}

/// Walk from `alpha` along `-e_axis` until `Q_axis` vanishes.
fn walk(ops: &HornOperatorPair, alpha: &RatVec2, axis: usize, cap: i64) -> Result<PuiseuxPolynomial> {
    let mut f = PuiseuxPolynomial::monomial(alpha.clone(), int(1));
    let mut at = alpha.clone();
    let mut coeff = int(1);
    for _ in 0..=cap {
        let q = ops.eval_q(axis, &at);
        if q == int(0) {
            return Ok(f);
        }
        let next = at.step(axis, -1);
        let p = ops.eval_p(axis, &next);
        if p == int(0) {
            let factor =
                ops.p[axis].iter().find(|fa| fa.eval(&next) == int(0)).map(|fa| fa.to_string()).unwrap_or_default();
            return Err(HornError::ResonantCollision { axis, factor, at: next });
        }
        coeff = coeff * q / p;
        f.add_term(next.clone(), coeff.clone());
        at = next;
    }
    Err(HornError::WalkCapExceeded { cap, at: alpha.clone() })
}

/// The persistent solutions with initial exponents in `R ∖ R̃`.
pub fn persistent_polynomials(a: &AtomicSystem) -> Result<Vec<PuiseuxPolynomial>> {
    if a.nu() == 0 {
        return Ok(Vec::new());
    }
    let (n, fc) = normalize_frame(a)?;
    let ops = build_operators(&n.system());
    let (a1, b1) = (n.m.r1.a, n.m.r1.b);
    let (a2, b2) = (n.m.r2.a.abs(), n.m.r2.b.abs());
    let monomial: BTreeSet<(i64, i64)> = monomial_rectangle(&n.m).into_iter().collect();
    let window = 2 * (a1 + b1 + a2 + b2) + 2;
    let mut out = Vec::new();
    for (u, v) in rectangle(&n.m) {
        if monomial.contains(&(u, v)) {
            continue;
        }
        let alpha = n.exponent(u, v);
        let (axis, cap) = if v >= a2.min(b2) { (1, (b2 - a2).abs()) } else { (0, (b1 - a1).abs()) };
        let mut f = walk(&ops, &alpha, axis, cap)?;
        if !ops.annihilates(&f) {
            f = match explore(&ops, &alpha, window) {
                Exploration::Finite(g) => g,
                _ => return Err(HornError::NotASolution),
            };
        }
        out.push(fc.pullback(&f));
    }
    Ok(out)
}

/// Whether two distinct atomic rectangle points share an exponent.
pub fn has_exponent_collision(s: &HornSystem) -> bool {
    let mut seen = BTreeSet::new();
    for a in enumerate_atomic(s) {
        for e in polynomial_exponents(&a) {
            if !seen.insert(e) {
                return true;
            }
        }
    }
    false
}
