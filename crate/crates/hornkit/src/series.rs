//! Recurrence-driven series on exponent lattices `α0 + Z^2`: truncated fully
//! supported series, and support exploration for harvesting polynomial
//! solutions.
//!
//! Coefficients satisfy `P_j(s) φ(s) = Q_j(s+e_j) φ(s+e_j)`. Exploration first
//! discovers the support with integer arithmetic only (a factor of `P_j` or
//! `Q_j` vanishes on `α0 + o` exactly when its value at `α0` is an integer
//! `t` with `t + ⟨A_i, o⟩ = 0`), then fills in exact coefficients along a
//! spanning tree and checks the result against the operators.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::counting::{holonomic_rank, ConeQ};
use crate::error::{HornError, Result};
use crate::lattice::{as_i64, int, smith_2x2, LatticeVec, Mat2, Rat, RatVec2};
use crate::operators::{build_operators, AffineFactor, HornOperatorPair, PuiseuxPolynomial};
use crate::system::HornSystem;

const AXES: [LatticeVec; 2] = [LatticeVec::new(1, 0), LatticeVec::new(0, 1)];

/// A factor restricted to the lattice `α0 + Z^2`.
#[derive(Clone, Debug)]
struct LatticeFactor {
    normal: LatticeVec,
    root: Option<i64>,
}

impl LatticeFactor {
    fn new(f: &AffineFactor, alpha0: &RatVec2) -> Self {
        LatticeFactor { normal: f.normal, root: as_i64(&f.eval(alpha0)) }
    }

    fn vanishes(&self, o: LatticeVec) -> bool {
        self.root.is_some_and(|t| t + self.normal.dot(o) == 0)
    }
}

/// Zero pattern of `P_j`, `Q_j` on one exponent lattice.
#[derive(Clone, Debug)]
pub struct ZeroPattern {
    p: [Vec<LatticeFactor>; 2],
    q: [Vec<LatticeFactor>; 2],
}

impl ZeroPattern {
    pub fn new(ops: &HornOperatorPair, alpha0: &RatVec2) -> Self {
        let lift = |fs: &[AffineFactor]| fs.iter().map(|f| LatticeFactor::new(f, alpha0)).collect();
        ZeroPattern { p: [lift(&ops.p[0]), lift(&ops.p[1])], q: [lift(&ops.q[0]), lift(&ops.q[1])] }
    }

    pub fn p_nonzero(&self, j: usize, o: LatticeVec) -> bool {
        !self.p[j].iter().any(|f| f.vanishes(o))
    }

    pub fn q_nonzero(&self, j: usize, o: LatticeVec) -> bool {
        !self.q[j].iter().any(|f| f.vanishes(o))
    }
}

/// Result of exploring the recurrence closure of a single exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exploration {
    Finite(PuiseuxPolynomial),
    ExceedsWindow,
    /// A step is forced whose target coefficient would need division by zero.
    Resonant(RatVec2),
    /// The recurrences disagree on the discovered support.
    Inconsistent(RatVec2),
}

#[derive(Clone, Copy, Debug)]
struct TreeEdge {
    from: LatticeVec,
    axis: usize,
    forward: bool,
}

/// Explore `α0 + Z^2` from `α0` along live recurrence edges, within
/// `‖o‖∞ ≤ window`.
pub fn explore(ops: &HornOperatorPair, alpha0: &RatVec2, window: i64) -> Exploration {
    let z = ZeroPattern::new(ops, alpha0);
    let origin = LatticeVec::new(0, 0);
    let mut parent: HashMap<LatticeVec, Option<TreeEdge>> = HashMap::new();
    let mut order = vec![origin];
    parent.insert(origin, None);
    let mut stack = vec![origin];
    while let Some(o) = stack.pop() {
        if o.a.abs() > window || o.b.abs() > window {
            return Exploration::ExceedsWindow;
        }
        for (j, e) in AXES.iter().enumerate() {
            let fwd = o.add(*e);
            let (p, q) = (z.p_nonzero(j, o), z.q_nonzero(j, fwd));
            if p && !q {
                return Exploration::Resonant(alpha0.offset(o.a, o.b));
            }
            let back = o.add(e.neg());
            let (pb, qb) = (z.p_nonzero(j, back), z.q_nonzero(j, o));
            if qb && !pb {
                return Exploration::Resonant(alpha0.offset(o.a, o.b));
            }
            for (t, live, forward) in [(fwd, p && q, true), (back, pb && qb, false)] {
                if live && !parent.contains_key(&t) {
                    parent.insert(t, Some(TreeEdge { from: o, axis: j, forward }));
                    order.push(t);
                    stack.push(t);
                }
            }
        }
    }
    let mut coeff: HashMap<LatticeVec, Rat> = HashMap::with_capacity(order.len());
    coeff.insert(origin, int(1));
    for o in &order[1..] {
        let edge = parent[o].expect("non-root has a parent");
        let c = &coeff[&edge.from];
        let v = if edge.forward {
            c * ops.eval_p(edge.axis, &alpha0.offset(edge.from.a, edge.from.b))
                / ops.eval_q(edge.axis, &alpha0.offset(o.a, o.b))
        } else {
            c * ops.eval_q(edge.axis, &alpha0.offset(edge.from.a, edge.from.b))
                / ops.eval_p(edge.axis, &alpha0.offset(o.a, o.b))
        };
        coeff.insert(*o, v);
    }
    let f = PuiseuxPolynomial::from_terms(coeff.into_iter().map(|(o, c)| (alpha0.offset(o.a, o.b), c)));
    for j in 0..2 {
        if let Some((e, _)) = ops.residual(j, &f).terms.into_iter().next() {
            return Exploration::Inconsistent(e);
        }
    }
    Exploration::Finite(f)
}

/// `4 (rank + m max|A_ij|)`; systems without a rank fall back to `4 m max|A_ij|`.
pub fn default_window(s: &HornSystem) -> i64 {
    let rank = holonomic_rank(s).unwrap_or(0);
    4 * (rank + s.m() as i64 * s.max_entry())
}

/// Ordered row pairs `(i, j)`, `i < j`, with nonzero determinant.
pub fn nondegenerate_pairs(s: &HornSystem) -> Vec<(usize, usize)> {
    let m = s.m();
    (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).filter(|&(i, j)| s.rows[i].cross(s.rows[j]) != 0).collect()
}

fn submatrix(s: &HornSystem, pair: (usize, usize)) -> Result<Mat2> {
    let m = s.m();
    if pair.0 >= m || pair.1 >= m {
        return Err(HornError::InvalidRow(pair.0.max(pair.1)));
    }
    let mat = Mat2::new(s.rows[pair.0], s.rows[pair.1]);
    if mat.det() == 0 {
        return Err(HornError::DependentPair(pair.0, pair.1));
    }
    Ok(mat)
}

/// A branch of the series attached to `pair`: lattice residue class of `k`
/// modulo the column lattice of `A_I`, with base point `k0` and initial
/// exponent `α0 = -A_I^{-1}(k0 + c_I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub pair: (usize, usize),
    pub index: usize,
    pub k0: LatticeVec,
    pub alpha0: RatVec2,
}

pub fn branches(s: &HornSystem, pair: (usize, usize)) -> Result<Vec<Branch>> {
    let mat = submatrix(s, pair)?;
    let n = mat.det().abs();
    let snf = smith_2x2(mat);
    let mut best: BTreeMap<usize, LatticeVec> = BTreeMap::new();
    let key = |k: &LatticeVec| (k.a.max(k.b), k.a, k.b);
    for k1 in 0..n {
        for k2 in 0..n {
            let k = LatticeVec::new(k1, k2);
            let slot = best.entry(snf.class_of(k)).or_insert(k);
            if key(&k) < key(slot) {
                *slot = k;
            }
        }
    }
    let c = RatVec2::new(s.params[pair.0].clone(), s.params[pair.1].clone());
    best.into_values()
        .enumerate()
        .map(|(index, k0)| {
            let alpha0 = mat.solve(&c.offset(k0.a, k0.b))?.neg();
            Ok(Branch { pair, index, k0, alpha0 })
        })
        .collect()
}

/// Directions `-A_I^{-1} e_1`, `-A_I^{-1} e_2`, scaled by `|det A_I|`.
pub fn support_cone(s: &HornSystem, pair: (usize, usize)) -> Result<ConeQ> {
    let mat = submatrix(s, pair)?;
    let sg = -mat.det().signum();
    let (u, v) = (mat.r1, mat.r2);
    Ok(ConeQ::new(LatticeVec::new(v.b, -v.a).scale(sg), LatticeVec::new(-u.b, u.a).scale(sg)))
}

/// Apex `-A_I^{-1} c_I` of the series support.
pub fn support_apex(s: &HornSystem, pair: (usize, usize)) -> Result<RatVec2> {
    let mat = submatrix(s, pair)?;
    Ok(mat.solve(&RatVec2::new(s.params[pair.0].clone(), s.params[pair.1].clone()))?.neg())
}

impl ConeQ {
    pub fn contains_rat(&self, v: &RatVec2) -> bool {
        let cross =
            |g: LatticeVec, w: &RatVec2| &w.x2 * Rat::from_integer(g.a.into()) - &w.x1 * Rat::from_integer(g.b.into());
        cross(self.g1, v) >= int(0) && -cross(self.g2, v) >= int(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub pair: (usize, usize),
    pub branch: usize,
    pub alpha0: RatVec2,
    pub k0: LatticeVec,
    /// Offsets from `alpha0`.
    pub coeffs: BTreeMap<LatticeVec, Rat>,
    pub window: i64,
}

impl TruncatedSeries {
    pub fn to_polynomial(&self) -> PuiseuxPolynomial {
        PuiseuxPolynomial::from_terms(self.coeffs.iter().map(|(o, c)| (self.alpha0.offset(o.a, o.b), c.clone())))
    }

    pub fn coeff(&self, o: LatticeVec) -> Rat {
        self.coeffs.get(&o).cloned().unwrap_or_else(|| int(0))
    }
}

struct Region {
    mat: Mat2,
    k0: LatticeVec,
    window: i64,
}

impl Region {
    fn contains(&self, o: LatticeVec) -> bool {
        let k = self.k0.add(self.mat.apply(o).neg());
        k.a >= 0 && k.b >= 0 && o.a.abs() <= self.window && o.b.abs() <= self.window
    }
}

fn step_ratio(ops: &HornOperatorPair, alpha0: &RatVec2, from: LatticeVec, j: usize, forward: bool) -> Result<Rat> {
    let to = if forward { from.add(AXES[j]) } else { from.add(AXES[j].neg()) };
    let (num, den) = if forward {
        (ops.eval_p(j, &alpha0.offset(from.a, from.b)), ops.eval_q(j, &alpha0.offset(to.a, to.b)))
    } else {
        (ops.eval_q(j, &alpha0.offset(from.a, from.b)), ops.eval_p(j, &alpha0.offset(to.a, to.b)))
    };
    if den == int(0) || num == int(0) {
        return Err(HornError::SeriesCollision(to.a, to.b));
    }
    Ok(num / den)
}

fn fill(
    ops: &HornOperatorPair,
    alpha0: &RatVec2,
    region: &Region,
    preferred: usize,
) -> Result<BTreeMap<LatticeVec, Rat>> {
    let mut coeffs = BTreeMap::new();
    coeffs.insert(LatticeVec::new(0, 0), int(1));
    let mut queue = VecDeque::from([LatticeVec::new(0, 0)]);
    while let Some(o) = queue.pop_front() {
        for j in [preferred, 1 - preferred] {
            for forward in [true, false] {
                let t = if forward { o.add(AXES[j]) } else { o.add(AXES[j].neg()) };
                if !region.contains(t) || coeffs.contains_key(&t) {
                    continue;
                }
                let r = step_ratio(ops, alpha0, o, j, forward)?;
                coeffs.insert(t, &coeffs[&o] * r);
                queue.push_back(t);
            }
        }
    }
    Ok(coeffs)
}

/// The truncated fully supported series of `branch` for the pair `pair`.
pub fn series_from_submatrix(
    s: &HornSystem,
    pair: (usize, usize),
    branch: usize,
    window: i64,
) -> Result<TruncatedSeries> {
    let all = branches(s, pair)?;
    let b = all.get(branch).ok_or(HornError::InvalidBranch { branch, count: all.len() })?;
    let ops = build_operators(s);
    let region = Region { mat: submatrix(s, pair)?, k0: b.k0, window };
    let coeffs = fill(&ops, &b.alpha0, &region, 0)?;
    Ok(TruncatedSeries { pair, branch, alpha0: b.alpha0.clone(), k0: b.k0, coeffs, window })
}

/// Recompute the coefficients with the recurrence along `preferred` axis tried
/// first at every point.
pub fn regenerate(t: &TruncatedSeries, s: &HornSystem, preferred: usize) -> Result<BTreeMap<LatticeVec, Rat>> {
    let region = Region { mat: submatrix(s, t.pair)?, k0: t.k0, window: t.window };
    fill(&build_operators(s), &t.alpha0, &region, preferred)
}

/// Residuals vanish at every offset whose stencil lies strictly inside the
/// window.
pub fn verify_truncated(t: &TruncatedSeries, s: &HornSystem) -> bool {
    let ops = build_operators(s);
    let f = t.to_polynomial();
    let inner = |o: LatticeVec| o.a.abs() < t.window && o.b.abs() < t.window;
    (0..2).all(|j| {
        ops.residual(j, &f).terms.keys().all(|e| {
            let Some((a, b)) = e.int_offset(&t.alpha0) else { return false };
            let o = LatticeVec::new(a, b);
            !(inner(o) && inner(o.add(AXES[j].neg())))
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HarvestOutcome {
    Finite(Vec<RatVec2>),
    ExceedsWindow,
    Resonant(RatVec2),
    Inconsistent(RatVec2),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarvestResult {
    pub pair: Option<(usize, usize)>,
    pub branch: Option<usize>,
    pub alpha0: RatVec2,
    pub outcome: HarvestOutcome,
    pub polynomial: Option<PuiseuxPolynomial>,
}

impl HarvestResult {
    fn from_exploration(pair: Option<(usize, usize)>, branch: Option<usize>, alpha0: RatVec2, e: Exploration) -> Self {
        let (outcome, polynomial) = match e {
            Exploration::Finite(f) => (HarvestOutcome::Finite(f.support().cloned().collect()), Some(f)),
            Exploration::ExceedsWindow => (HarvestOutcome::ExceedsWindow, None),
            Exploration::Resonant(at) => (HarvestOutcome::Resonant(at), None),
            Exploration::Inconsistent(at) => (HarvestOutcome::Inconsistent(at), None),
        };
        HarvestResult { pair, branch, alpha0, outcome, polynomial }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.outcome, HarvestOutcome::Finite(_))
    }
}

/// Explore every branch of every nondegenerate pair.
pub fn harvest_polynomials(s: &HornSystem, window: i64) -> Result<Vec<HarvestResult>> {
    let ops = build_operators(s);
    let mut starts = Vec::new();
    for pair in nondegenerate_pairs(s) {
        starts.extend(branches(s, pair)?);
    }
    Ok(starts
        .into_par_iter()
        .map(|b| {
            let e = explore(&ops, &b.alpha0, window);
            HarvestResult::from_exploration(Some(b.pair), Some(b.index), b.alpha0, e)
        })
        .collect())
}

/// Explore from an arbitrary initial exponent.
pub fn harvest_at(s: &HornSystem, alpha0: &RatVec2, window: i64) -> HarvestResult {
    let e = explore(&build_operators(s), alpha0, window);
    HarvestResult::from_exploration(None, None, alpha0.clone(), e)
}

/// Distinct exponent classes mod Z^2 among the branch starts.
pub fn start_classes(s: &HornSystem) -> Result<HashSet<RatVec2>> {
    let mut out = HashSet::new();
    for pair in nondegenerate_pairs(s) {
        for b in branches(s, pair)? {
            out.insert(b.alpha0.frac());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::fully_supported_count;
    use crate::lattice::rat;
    use crate::operators::is_solution;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn simplex() -> HornSystem {
        HornSystem::from_pairs(&[(1, 1), (1, -2), (-2, 1)], ints(&[-3, -1, -1])).unwrap()
    }

    fn ex21() -> HornSystem {
        HornSystem::from_pairs(&[(1, 1), (-1, 0), (0, -1)], vec![rat(1, 7), rat(-1, 3), rat(-1, 5)]).unwrap()
    }

    /// Coefficient of `x1^a x2^b` in `(1 + x1 + x2)^λ`, the closed form
    /// `(1 - x1 - x2)^λ` after `x ↦ -x`.
    fn multinomial(lambda: &Rat, a: i64, b: i64) -> Rat {
        let mut num = int(1);
        for i in 0..a + b {
            num *= lambda - int(i);
        }
        let fact = |n: i64| (1..=n).fold(int(1), |acc, k| acc * int(k));
        num / (fact(a) * fact(b))
    }

    #[test]
    fn branch_starts_match_determinants() {
        let s = simplex();
        let total: usize = nondegenerate_pairs(&s).iter().map(|&p| branches(&s, p).unwrap().len()).sum();
        assert_eq!(total as i64, fully_supported_count(&s));
        let b = branches(&s, (0, 1)).unwrap();
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|x| x.k0.a < 3 && x.k0.b < 3));
        assert_eq!(b[0].k0, LatticeVec::new(0, 0));
    }

    #[test]
    fn example_21_series_matches_closed_form() {
        let s = ex21();
        let t = series_from_submatrix(&s, (1, 2), 0, 8).unwrap();
        assert_eq!(t.alpha0, RatVec2::new(rat(-1, 3), rat(-1, 5)));
        assert_eq!(t.coeff(LatticeVec::new(0, 0)), int(1));
        let lambda = rat(1, 3) + rat(1, 5) - rat(1, 7);
        for a in 0..=8 {
            for b in 0..=8 - a {
                assert_eq!(t.coeff(LatticeVec::new(a, b)), multinomial(&lambda, a, b), "offset ({a},{b})");
            }
        }
        assert!(verify_truncated(&t, &s));
        assert_eq!(regenerate(&t, &s, 0).unwrap(), regenerate(&t, &s, 1).unwrap());
        assert_eq!(regenerate(&t, &s, 1).unwrap(), t.coeffs);
    }

    #[test]
    fn perturbed_series_fails_verification() {
        let s = ex21();
        let mut t = series_from_submatrix(&s, (1, 2), 0, 6).unwrap();
        *t.coeffs.get_mut(&LatticeVec::new(1, 1)).unwrap() += int(1);
        assert!(!verify_truncated(&t, &s));
    }

    #[test]
    fn cones() {
        let s = HornSystem::from_pairs(&[(1, 0), (0, 1), (-1, -1)], ints(&[0, 0, 0])).unwrap();
        let c = support_cone(&s, (0, 1)).unwrap();
        assert_eq!(c, ConeQ::new(LatticeVec::new(-1, 0), LatticeVec::new(0, -1)));
        let a = HornSystem::from_pairs(&[(3, 2), (-4, -3)], ints(&[0, 0])).unwrap();
        let c = support_cone(&a, (0, 1)).unwrap();
        assert_eq!(c, ConeQ::new(LatticeVec::new(-3, 4), LatticeVec::new(-2, 3)));
    }

    #[test]
    fn series_support_in_cone() {
        let s = ex21();
        for pair in nondegenerate_pairs(&s) {
            let cone = support_cone(&s, pair).unwrap();
            let apex = support_apex(&s, pair).unwrap();
            for b in branches(&s, pair).unwrap() {
                let t = series_from_submatrix(&s, pair, b.index, 5).unwrap();
                for o in t.coeffs.keys() {
                    assert!(cone.contains_rat(&t.alpha0.offset(o.a, o.b).sub(&apex)));
                }
            }
        }
    }

    #[test]
    fn simplex_harvest_gives_four_polynomials() {
        let s = simplex();
        let res = harvest_polynomials(&s, 20).unwrap();
        assert_eq!(res.len(), 9);
        let mut distinct: Vec<PuiseuxPolynomial> =
            res.iter().filter_map(|r| r.polynomial.as_ref().map(|p| p.canonical())).collect();
        distinct.sort();
        distinct.dedup();
        assert_eq!(distinct.len(), 4);
        for p in &distinct {
            assert!(is_solution(p, &s).unwrap());
        }
        let inv = PuiseuxPolynomial::monomial(RatVec2::ints(-1, -1), int(1));
        assert!(distinct.contains(&inv));
    }

    #[test]
    fn harvest_from_exponent() {
        let s = simplex();
        let r = harvest_at(&s, &RatVec2::ints(-1, -1), 10);
        assert_eq!(r.polynomial, Some(PuiseuxPolynomial::monomial(RatVec2::ints(-1, -1), int(1))));
        let r = harvest_at(&ex21(), &RatVec2::new(rat(-1, 3), rat(-1, 5)), 10);
        assert_eq!(r.outcome, HarvestOutcome::ExceedsWindow);
    }

    #[test]
    fn invalid_branch() {
        assert_eq!(series_from_submatrix(&ex21(), (1, 2), 1, 4), Err(HornError::InvalidBranch { branch: 1, count: 1 }));
    }

    fn generic_system() -> impl Strategy<Value = HornSystem> {
        (
            proptest::collection::vec((-2i64..=2, -2i64..=2), 1..4),
            proptest::collection::vec((1i64..1000, 1_000_003i64..2_000_000), 5),
        )
            .prop_filter_map("degenerate", |(mut rows, ps)| {
                let sa: i64 = rows.iter().map(|r| r.0).sum();
                let sb: i64 = rows.iter().map(|r| r.1).sum();
                rows.push((-sa, -sb));
                if rows.contains(&(0, 0)) {
                    return None;
                }
                let params = (0..rows.len()).map(|i| rat(ps[i].0, ps[i].1)).collect();
                let s = HornSystem::from_pairs(&rows, params).ok()?;
                s.spans_plane().then_some(s)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn harvest_visits_every_branch(s in generic_system()) {
            let res = harvest_polynomials(&s, 6).unwrap();
            prop_assert_eq!(res.len() as i64, fully_supported_count(&s));
            for r in &res {
                if let Some(p) = &r.polynomial {
                    prop_assert!(is_solution(p, &s).unwrap());
                }
            }
        }

        #[test]
        fn series_recurrences_commute(s in generic_system()) {
            for pair in nondegenerate_pairs(&s) {
                for b in branches(&s, pair).unwrap() {
                    let t = series_from_submatrix(&s, pair, b.index, 4).unwrap();
                    prop_assert_eq!(&regenerate(&t, &s, 1).unwrap(), &t.coeffs);
                    prop_assert!(verify_truncated(&t, &s));
                }
            }
        }
    }
}
