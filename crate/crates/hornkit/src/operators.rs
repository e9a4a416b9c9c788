//! The two Horn operators `x_j P_j(θ) - Q_j(θ)` as factor lists, Puiseux
//! polynomials, and their exact interaction.
//!
//! Axes are indexed `0` and `1` throughout the crate.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{HornError, Result};
use crate::lattice::{fmt_rat, int, LatticeVec, Rat, RatVec2};
use crate::system::HornSystem;

/// `⟨normal, s⟩ + offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineFactor {
    pub normal: LatticeVec,
    pub offset: Rat,
}

impl AffineFactor {
    pub fn eval(&self, s: &RatVec2) -> Rat {
        self.normal.pair(s) + &self.offset
    }
}

impl fmt::Display for AffineFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},s>+{}", self.normal, fmt_rat(&self.offset))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornOperatorPair {
    pub p: [Vec<AffineFactor>; 2],
    pub q: [Vec<AffineFactor>; 2],
}

fn product(fs: &[AffineFactor], s: &RatVec2) -> Rat {
    let mut acc = int(1);
    for f in fs {
        let v = f.eval(s);
        if v == int(0) {
            return v;
        }
        acc *= v;
    }
    acc
}

impl HornOperatorPair {
    pub fn eval_p(&self, j: usize, s: &RatVec2) -> Rat {
        product(&self.p[j], s)
    }

    pub fn eval_q(&self, j: usize, s: &RatVec2) -> Rat {
        product(&self.q[j], s)
    }

    pub fn deg_p(&self, j: usize) -> usize {
        self.p[j].len()
    }

    pub fn deg_q(&self, j: usize) -> usize {
        self.q[j].len()
    }

    /// `x_j P_j(θ) f - Q_j(θ) f`.
    pub fn residual(&self, j: usize, f: &PuiseuxPolynomial) -> PuiseuxPolynomial {
        let mut out = PuiseuxPolynomial::zero();
        for (e, c) in &f.terms {
            let p = self.eval_p(j, e);
            if p != int(0) {
                out.add_term(e.step(j, 1), c * p);
            }
            let q = self.eval_q(j, e);
            if q != int(0) {
                out.add_term(e.clone(), -(c * q));
            }
        }
        out
    }

    pub fn annihilates(&self, f: &PuiseuxPolynomial) -> bool {
        (0..2).all(|j| self.residual(j, f).is_zero())
    }
}

pub fn build_operators(s: &HornSystem) -> HornOperatorPair {
    let mut p: [Vec<AffineFactor>; 2] = Default::default();
    let mut q: [Vec<AffineFactor>; 2] = Default::default();
    for j in 0..2 {
        for (row, c) in s.rows.iter().zip(&s.params) {
            let a = row.get(j);
            let target = if a > 0 { &mut p[j] } else { &mut q[j] };
            for l in 0..a.abs() {
                target.push(AffineFactor { normal: *row, offset: c + int(l) });
            }
        }
    }
    HornOperatorPair { p, q }
}

/// A finite sum of monomials with rational exponents; zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PuiseuxPolynomial {
    pub terms: BTreeMap<RatVec2, Rat>,
}

impl PuiseuxPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(RatVec2::zero(), int(1))
    }

    pub fn monomial(e: RatVec2, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (RatVec2, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: RatVec2, c: Rat) {
        if c == int(0) {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == int(0) {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &RatVec2) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(|| int(0))
    }

    pub fn support(&self) -> impl Iterator<Item = &RatVec2> {
        self.terms.keys()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if *k == int(0) {
            return Self::zero();
        }
        PuiseuxPolynomial { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    /// Multiply by the monomial `x^e`.
    pub fn shift(&self, e: &RatVec2) -> Self {
        PuiseuxPolynomial { terms: self.terms.iter().map(|(x, c)| (x.add(e), c.clone())).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scaled so that the lex-smallest exponent has coefficient 1.
    pub fn canonical(&self) -> Self {
        match self.terms.values().next() {
            Some(c) => self.scale(&(int(1) / c)),
            None => Self::zero(),
        }
    }

    /// `Ok` iff all exponents are congruent mod Z^2.
    pub fn check_pure(&self) -> Result<()> {
        let mut it = self.terms.keys();
        if let Some(first) = it.next() {
            for e in it {
                if e.int_offset(first).is_none() {
                    return Err(HornError::NotPure(first.clone(), e.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn is_pure(&self) -> bool {
        self.check_pure().is_ok()
    }
}

impl fmt::Display for PuiseuxPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{}*x^{}", fmt_rat(c), e)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The residual `x_j P_j(θ) f - Q_j(θ) f` for axis `j`.
pub fn apply_horn(j: usize, f: &PuiseuxPolynomial, s: &HornSystem) -> PuiseuxPolynomial {
    build_operators(s).residual(j, f)
}

pub fn is_solution(f: &PuiseuxPolynomial, s: &HornSystem) -> Result<bool> {
    if f.is_zero() {
        return Err(HornError::ZeroPolynomial);
    }
    Ok(build_operators(s).annihilates(f))
}

/// Apply `⟨A_j, θ⟩ + c_j - 1` for row `j`, with `s` carrying the target
/// parameters.
pub fn apply_intertwiner(j: usize, f: &PuiseuxPolynomial, s: &HornSystem) -> PuiseuxPolynomial {
    let row = s.rows[j];
    let shift = &s.params[j] - int(1);
    PuiseuxPolynomial::from_terms(f.terms.iter().map(|(e, c)| (e.clone(), c * (row.pair(e) + &shift))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn mono(a: i64, b: i64) -> PuiseuxPolynomial {
        PuiseuxPolynomial::monomial(RatVec2::ints(a, b), int(1))
    }

    fn zonotope() -> HornSystem {
        HornSystem::from_pairs(
            &[(1, 2), (-1, -2), (-1, 1), (1, -1), (-3, -2), (3, 2), (2, -1), (-2, 1)],
            ints(&[3, -5, -2, 1, -2, -1, -1, -1]),
        )
        .unwrap()
    }

    fn triangle_sides() -> HornSystem {
        HornSystem::from_pairs(
            &[(2, -1), (2, -1), (-2, 1), (-1, 3), (-1, 3), (1, -3), (1, 2), (-1, -2), (-1, -2)],
            ints(&[-1, -6, 3, -2, -10, 5, 3, -1, -6]),
        )
        .unwrap()
    }

    fn simplex() -> HornSystem {
        HornSystem::from_pairs(&[(1, 1), (1, -2), (-2, 1)], ints(&[-3, -1, -1])).unwrap()
    }

    #[test]
    fn operator_shapes() {
        let c = vec![rat(1, 3), rat(2, 5), rat(3, 7)];
        let s = HornSystem::from_pairs(&[(1, 2), (-1, -1), (0, -1)], c.clone()).unwrap();
        let ops = build_operators(&s);
        let r = |a, b| LatticeVec::new(a, b);
        assert_eq!(
            ops.p[1],
            vec![
                AffineFactor { normal: r(1, 2), offset: c[0].clone() },
                AffineFactor { normal: r(1, 2), offset: &c[0] + int(1) },
            ]
        );
        assert_eq!(
            ops.q[1],
            vec![
                AffineFactor { normal: r(-1, -1), offset: c[1].clone() },
                AffineFactor { normal: r(0, -1), offset: c[2].clone() },
            ]
        );

        let s = HornSystem::from_pairs(&[(3, 2), (-4, -3)], ints(&[0, 0])).unwrap();
        let ops = build_operators(&s);
        assert_eq!((ops.deg_p(0), ops.deg_q(0)), (3, 4));

        let s = HornSystem::from_pairs(&[(1, 0), (-1, 0)], vec![rat(1, 2), rat(1, 3)]).unwrap();
        let ops = build_operators(&s);
        assert_eq!(ops.p[0].len(), 1);
        assert_eq!(ops.q[0].len(), 1);
        assert!(ops.p[1].is_empty() && ops.q[1].is_empty());
    }

    #[test]
    fn residual_examples() {
        let s = triangle_sides();
        for j in 0..2 {
            assert!(apply_horn(j, &mono(1, 1), &s).is_zero());
        }
        assert!(is_solution(&mono(-1, -1), &simplex()).unwrap());

        let s = zonotope();
        let e = RatVec2::ints(2, 3);
        let ops = build_operators(&s);
        let expect =
            PuiseuxPolynomial::from_terms([(e.step(0, 1), ops.eval_p(0, &e)), (e.clone(), -ops.eval_q(0, &e))]);
        assert_eq!(apply_horn(0, &mono(2, 3), &s), expect);
    }

    #[test]
    fn solution_examples() {
        let s = zonotope();
        let f = PuiseuxPolynomial::from_terms([
            (RatVec2::ints(2, 4), int(13068)),
            (RatVec2::ints(2, 3), int(18900)),
            (RatVec2::ints(1, 3), int(74529)),
            (RatVec2::ints(1, 2), int(715715)),
        ]);
        assert!(is_solution(&f, &s).unwrap());
        assert!(!is_solution(&f.add(&mono(0, 0)), &s).unwrap());
        assert!(!is_solution(&mono(1, 0), &s).unwrap());
        assert!(is_solution(&mono(0, 1), &s).unwrap());

        let a = HornSystem::from_pairs(&[(3, 2), (-4, -3)], ints(&[0, 0])).unwrap();
        let f = PuiseuxPolynomial::from_terms([(RatVec2::ints(-6, 8), int(1)), (RatVec2::ints(-6, 9), rat(-1, 3))]);
        assert!(is_solution(&f, &a).unwrap());
        assert_eq!(is_solution(&PuiseuxPolynomial::zero(), &a), Err(HornError::ZeroPolynomial));
    }

    #[test]
    fn intertwiner_examples() {
        let (c1, c2, c3) = (rat(2, 9), rat(-3, 11), rat(5, 13));
        let rows = [(1, 2), (-1, -1), (0, -1)];
        let f1 = |c1: &Rat, c2: &Rat| PuiseuxPolynomial::monomial(RatVec2::new(c1 + c2 * int(2), -(c1 + c2)), int(1));
        let s = HornSystem::from_pairs(&rows, vec![c1.clone(), c2.clone(), c3.clone()]).unwrap();
        assert!(apply_intertwiner(0, &f1(&(&c1 - int(1)), &c2), &s).is_zero());
        assert!(apply_intertwiner(1, &f1(&c1, &(&c2 - int(1))), &s).is_zero());
        let k = &c1 + &c2 + &c3 - int(1);
        assert_eq!(apply_intertwiner(2, &f1(&c1, &c2), &s), f1(&c1, &c2).scale(&k));
    }

    #[test]
    fn algebra() {
        let one_plus_x = PuiseuxPolynomial::one().add(&mono(1, 0));
        let sq = one_plus_x.pow(2);
        assert_eq!(
            sq,
            PuiseuxPolynomial::from_terms([
                (RatVec2::ints(0, 0), int(1)),
                (RatVec2::ints(1, 0), int(2)),
                (RatVec2::ints(2, 0), int(1)),
            ])
        );
        assert!(one_plus_x.sub(&one_plus_x).is_zero());
        let half = PuiseuxPolynomial::monomial(RatVec2::new(rat(1, 2), int(0)), int(1));
        assert!(!one_plus_x.add(&half).is_pure());
        assert_eq!(sq.scale(&int(3)).canonical(), sq);
    }

    fn small_system() -> impl Strategy<Value = HornSystem> {
        proptest::collection::vec(((-3i64..=3, -3i64..=3), (-20i64..20, 1i64..9)), 2..7).prop_map(|v| {
            let rows: Vec<(i64, i64)> = v.iter().map(|x| x.0).collect();
            let params = v.iter().map(|x| rat(x.1 .0, x.1 .1)).collect();
            HornSystem::from_pairs(&rows, params).unwrap()
        })
    }

    fn small_poly() -> impl Strategy<Value = PuiseuxPolynomial> {
        proptest::collection::vec(((-4i64..4, -4i64..4, 1i64..4), -9i64..9), 0..6).prop_map(|v| {
            PuiseuxPolynomial::from_terms(
                v.into_iter().map(|((a, b, d), c)| (RatVec2::new(rat(a, d), rat(b, d)), int(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn degree_bookkeeping(s in small_system()) {
            let ops = build_operators(&s);
            for j in 0..2 {
                let pos: i64 = s.rows.iter().map(|r| r.get(j)).filter(|&a| a > 0).sum();
                let neg: i64 = s.rows.iter().map(|r| r.get(j)).filter(|&a| a < 0).map(|a| -a).sum();
                prop_assert_eq!(ops.deg_p(j) as i64, pos);
                prop_assert_eq!(ops.deg_q(j) as i64, neg);
            }
        }

        #[test]
        fn residual_is_linear(s in small_system(), f in small_poly(), g in small_poly(), a in -5i64..5, b in -5i64..5) {
            let (a, b) = (int(a), int(b));
            let lhs_in = f.scale(&a).add(&g.scale(&b));
            for j in 0..2 {
                let lhs = apply_horn(j, &lhs_in, &s);
                let rhs = apply_horn(j, &f, &s).scale(&a).add(&apply_horn(j, &g, &s).scale(&b));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn no_zero_coefficients(f in small_poly(), g in small_poly()) {
            let h = f.mul(&g).add(&f).sub(&g);
            prop_assert!(h.terms.values().all(|c| *c != int(0)));
        }
    }
}
