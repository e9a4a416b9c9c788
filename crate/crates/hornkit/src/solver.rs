//! Persistent solution spaces, monomial monodromy, closed-form generating
//! solutions and the constructive maximal-reducibility check.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::atomic::{enumerate_atomic, polynomial_exponents};
use crate::counting::holonomic_rank;
use crate::error::{HornError, Result};
use crate::lattice::{as_i64, frac, int, primitive, rat, LatticeVec, Mat2, Rat, RatVec2};
use crate::operators::{build_operators, is_solution, PuiseuxPolynomial};
use crate::polygon::is_maximally_reducible;
use crate::series::{default_window, explore, harvest_polynomials, Exploration, HarvestResult};
use crate::system::HornSystem;

/// Every persistent Puiseux polynomial solution reachable from the initial
/// exponents of the atomic subsystems, canonically scaled and sorted.
pub fn persistent_solutions(s: &HornSystem) -> Vec<PuiseuxPolynomial> {
    let ops = build_operators(s);
    let window = default_window(s);
    let starts: Vec<RatVec2> =
        enumerate_atomic(s).iter().filter(|a| a.nu() > 0).flat_map(polynomial_exponents).collect();
    let found: Vec<PuiseuxPolynomial> = starts
        .par_iter()
        .filter_map(|a| match explore(&ops, a, window) {
            Exploration::Finite(f) if persistent_witness(&f, s) => Some(f.canonical()),
            _ => None,
        })
        .collect();
    found.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

fn factor_vanishes(row: LatticeVec, c: &Rat, s: &RatVec2, j: usize, upper: bool) -> bool {
    let a = row.get(j);
    if (upper && a <= 0) || (!upper && a >= 0) {
        return false;
    }
    let v = row.pair(s) + c;
    (0..a.abs()).any(|l| (&v + int(l)).is_zero())
}

fn persistent_witness(f: &PuiseuxPolynomial, s: &HornSystem) -> bool {
    let m = s.m();
    (0..m).any(|i| {
        (i + 1..m).any(|k| {
            if s.rows[i].cross(s.rows[k]) == 0 {
                return false;
            }
            let hit = |e: &RatVec2, j: usize, upper: bool| {
                [i, k].iter().any(|&r| factor_vanishes(s.rows[r], &s.params[r], e, j, upper))
            };
            f.support().all(|e| {
                (0..2).all(|j| {
                    (hit(e, j, true) || hit(e, j, false))
                        && (f.terms.contains_key(&e.step(j, 1)) || hit(e, j, true))
                        && (f.terms.contains_key(&e.step(j, -1)) || hit(e, j, false))
                })
            })
        })
    })
}

/// Decide whether a solution is persistent: some nondegenerate pair of rows
/// carries a vanishing factor at every support point in each direction,
/// including the factors that cut the support off at its boundary.
pub fn validate_persistence(f: &PuiseuxPolynomial, s: &HornSystem) -> Result<bool> {
    if !is_solution(f, s)? {
        return Err(HornError::NotASolution);
    }
    Ok(persistent_witness(f, s))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyDiagonal {
    /// `axes[j][k]` is the rotation number of basis element `k` around `x_j = 0`.
    pub axes: [Vec<Rat>; 2],
}

pub fn monodromy_exponents(basis: &[PuiseuxPolynomial]) -> Result<MonodromyDiagonal> {
    let mut axes = [Vec::new(), Vec::new()];
    for f in basis {
        f.check_pure()?;
        let e = f.terms.keys().next().ok_or(HornError::ZeroPolynomial)?;
        axes[0].push(frac(&e.x1));
        axes[1].push(frac(&e.x2));
    }
    Ok(MonodromyDiagonal { axes })
}

/// `x^prefactor · ∏ inner_k^{outer_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormSolution {
    pub prefactor: RatVec2,
    pub factors: Vec<(PuiseuxPolynomial, Rat)>,
}

fn one_plus(e: RatVec2) -> PuiseuxPolynomial {
    PuiseuxPolynomial::from_terms([(RatVec2::zero(), int(1)), (e, int(1))])
}

pub fn simplicial_closed_form(m: &Mat2, alpha_tilde: &[Rat; 3]) -> Result<ClosedFormSolution> {
    let [g1, g2] = m.inverse_columns()?;
    let alpha = RatVec2::new(alpha_tilde[0].clone(), alpha_tilde[1].clone());
    let prefactor = m.solve(&alpha)?.neg();
    let mut inner = PuiseuxPolynomial::one();
    inner.add_term(g1.neg(), int(1));
    inner.add_term(g2.neg(), int(1));
    let total: Rat = alpha_tilde.iter().sum();
    Ok(ClosedFormSolution { prefactor, factors: vec![(inner, -total)] })
}

pub fn parallelepipedal_closed_form(m: &Mat2, alpha: &RatVec2, beta: &RatVec2) -> Result<ClosedFormSolution> {
    let cols = m.inverse_columns()?;
    let prefactor = m.solve(alpha)?.neg();
    let factors = (0..2).map(|j| (one_plus(cols[j].neg()), -(alpha.get(j) + beta.get(j)))).collect();
    Ok(ClosedFormSolution { prefactor, factors })
}

pub fn expand_closed_form(cf: &ClosedFormSolution) -> Result<PuiseuxPolynomial> {
    let mut acc = PuiseuxPolynomial::monomial(cf.prefactor.clone(), int(1));
    for (inner, outer) in &cf.factors {
        let n = as_i64(outer)
            .filter(|n| *n >= 0)
            .ok_or_else(|| HornError::NotExpandable(format!("outer exponent {}", outer)))?;
        acc = acc.mul(&inner.pow(n as u32));
    }
    Ok(acc)
}

/// Exact echelon form of a growing set of Puiseux polynomials, pivoting on
/// the lex-smallest exponent.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<RatVec2, PuiseuxPolynomial>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Insert `f`; returns `true` iff it was independent of the rows so far.
    pub fn insert(&mut self, f: &PuiseuxPolynomial) -> bool {
        let mut r = f.clone();
        while let Some((e, c)) = r.terms.iter().next().map(|(e, c)| (e.clone(), c.clone())) {
            match self.rows.get(&e) {
                Some(p) => r = r.sub(&p.scale(&c)),
                None => {
                    self.rows.insert(e, r.canonical());
                    return true;
                }
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructiveReport {
    pub holonomic_rank: i64,
    pub found: usize,
    pub rank_attained: bool,
    pub persistent: Vec<PuiseuxPolynomial>,
    /// An independent family: persistent solutions first, then harvested ones.
    pub basis: Vec<PuiseuxPolynomial>,
}

/// Persistent solutions, raw harvest results and an independent family
/// drawn from both.
#[derive(Clone, Debug)]
pub struct PolynomialFamily {
    pub persistent: Vec<PuiseuxPolynomial>,
    pub harvest: Vec<HarvestResult>,
    pub basis: Vec<PuiseuxPolynomial>,
}

pub fn collect_polynomials(s: &HornSystem, window: i64) -> Result<PolynomialFamily> {
    let persistent = persistent_solutions(s);
    let harvest = harvest_polynomials(s, window)?;
    let mut ech = Echelon::default();
    let mut basis = Vec::new();
    let candidates = persistent.iter().chain(harvest.iter().filter_map(|h| h.polynomial.as_ref()));
    for f in candidates {
        if ech.insert(f) {
            basis.push(f.canonical());
        }
    }
    Ok(PolynomialFamily { persistent, harvest, basis })
}

pub fn check_constructive(s: &HornSystem, window: i64) -> Result<ConstructiveReport> {
    let rank = holonomic_rank(s)?;
    let fam = collect_polynomials(s, window)?;
    let found = fam.basis.len();
    Ok(ConstructiveReport {
        holonomic_rank: rank,
        found,
        rank_attained: found as i64 >= rank,
        persistent: fam.persistent,
        basis: fam.basis,
    })
}

pub fn verify_parameters(s: &HornSystem, params: Vec<Rat>, window: i64) -> Result<bool> {
    let t = s.with_params(params)?;
    let r = check_constructive(&t, window)?;
    Ok(r.found as i64 == r.holonomic_rank)
}

#[derive(Clone, Debug)]
enum Unit {
    Pair(usize, usize),
    Triangle([usize; 3]),
}

fn units(s: &HornSystem) -> Result<Vec<Unit>> {
    let mut by_dir: BTreeMap<LatticeVec, Vec<usize>> = BTreeMap::new();
    for (i, r) in s.rows.iter().enumerate() {
        by_dir.entry(primitive(*r)?.0).or_default().push(i);
    }
    let mut out = Vec::new();
    let mut left = Vec::new();
    let dirs: Vec<LatticeVec> = by_dir.keys().copied().collect();
    for d in dirs {
        let mine = by_dir.get(&d).cloned().unwrap_or_default();
        if mine.is_empty() {
            continue;
        }
        let theirs = by_dir.get(&d.neg()).cloned().unwrap_or_default();
        let k = mine.len().min(theirs.len());
        for t in 0..k {
            let (a, b) = (mine[mine.len() - k + t], theirs[theirs.len() - k + t]);
            out.push(Unit::Pair(a.min(b), a.max(b)));
        }
        left.extend_from_slice(&mine[..mine.len() - k]);
        left.extend_from_slice(&theirs[..theirs.len() - k]);
        by_dir.remove(&d);
        by_dir.remove(&d.neg());
    }
    left.sort_unstable();
    match left.len() {
        0 => {}
        3 => out.push(Unit::Triangle([left[0], left[1], left[2]])),
        _ => return Err(HornError::NotMaximallyReducible),
    }
    Ok(out)
}

fn draw(rng: &mut ChaCha8Rng, u: &Unit, bound: i64, params: &mut [Rat]) {
    let b = bound.max(1);
    let mut half = || rat(rng.gen_range(-2 * b..=2 * b), 2);
    match *u {
        Unit::Pair(i, j) => {
            let t = half();
            let n = rng.gen_range(1..=b);
            params[j] = -int(n) - &t;
            params[i] = t;
        }
        Unit::Triangle([i, j, k]) => {
            let (x, y) = (half(), half());
            let n = rng.gen_range(1..=b);
            params[k] = -int(n) - &x - &y;
            params[i] = x;
            params[j] = y;
        }
    }
}

/// Candidate parameter vectors: each antiparallel pair sums to a negative
/// integer and the leftover triangle, if any, sums to a negative integer.
/// Entries are half-integers bounded by `search_bound`, drawn in a fixed
/// seeded order.
pub fn parameter_candidates(s: &HornSystem, search_bound: i64, count: usize) -> Result<Vec<Vec<Rat>>> {
    let us = units(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x686f726e);
    Ok((0..count)
        .map(|_| {
            let mut params = vec![int(0); s.m()];
            for u in &us {
                draw(&mut rng, u, search_bound, &mut params);
            }
            params
        })
        .collect())
}

/// Search for a parameter vector whose Puiseux polynomial solutions span a
/// space of dimension equal to the holonomic rank.
pub fn suggest_polynomial_parameters(
    s: &HornSystem,
    search_bound: i64,
    max_candidates: usize,
) -> Result<Option<Vec<Rat>>> {
    if !is_maximally_reducible(s)? {
        return Err(HornError::NotMaximallyReducible);
    }
    if !s.is_primitive() {
        return Err(HornError::NonPrimitiveRows);
    }
    let candidates = parameter_candidates(s, search_bound, max_candidates)?;
    for chunk in candidates.chunks(16) {
        let verdicts: Vec<Result<bool>> = chunk
            .par_iter()
            .map(|c| {
                let t = s.with_params(c.clone())?;
                verify_parameters(s, c.clone(), default_window(&t))
            })
            .collect();
        for (c, v) in chunk.iter().zip(verdicts) {
            if v? {
                return Ok(Some(c.clone()));
            }
        }
    }
    Ok(None)
}
