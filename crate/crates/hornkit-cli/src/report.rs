//! JSON reports produced by the subcommands.

use std::collections::BTreeSet;

use hornkit::counting::{convergent_count_s, fully_supported_count, holonomic_rank, persistent_dim};
use hornkit::polygon::{build_polygon, classify, vertex_count, Classification, OreSatoPolygon, PolygonKind};
use hornkit::series::{nondegenerate_pairs, series_from_submatrix, verify_truncated, HarvestOutcome};
use hornkit::solver::{collect_polynomials, suggest_polynomial_parameters, validate_persistence, PolynomialFamily};
use hornkit::{
    apply_horn, check_nonconfluent, detect_resonance, is_solution, HornSystem, LatticeVec, PuiseuxPolynomial,
};
use serde::Serialize;

use crate::wire::{poly_to_terms, rat_pair, SolutionJson};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeJson {
    pub direction: [i64; 2],
    pub length: i64,
}

fn pair(v: LatticeVec) -> [i64; 2] {
    [v.a, v.b]
}

fn edges(es: &[(LatticeVec, i64)]) -> Vec<EdgeJson> {
    es.iter().map(|&(d, length)| EdgeJson { direction: pair(d), length }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonJson {
    pub edges: Vec<EdgeJson>,
    pub vertices: Vec<[i64; 2]>,
}

impl From<&OreSatoPolygon> for PolygonJson {
    fn from(p: &OreSatoPolygon) -> Self {
        PolygonJson { edges: edges(&p.edges), vertices: p.vertices.iter().map(|&v| pair(v)).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationJson {
    pub kind: String,
    pub maximally_reducible: bool,
    pub vertex_count: usize,
    pub segments: Vec<EdgeJson>,
    pub triangle: Option<Vec<EdgeJson>>,
}

pub fn kind_name(k: PolygonKind) -> &'static str {
    match k {
        PolygonKind::Zonotope => "Zonotope",
        PolygonKind::TrianglePlusSegments => "TrianglePlusSegments",
        PolygonKind::Other => "Other",
    }
}

fn classification_json(p: &OreSatoPolygon, c: &Classification) -> ClassificationJson {
    let (segments, triangle) = match &c.witness {
        Some(w) => (edges(&w.segments), w.triangle.as_ref().map(|t| edges(t))),
        None => (Vec::new(), None),
    };
    ClassificationJson {
        kind: kind_name(c.kind).to_string(),
        maximally_reducible: c.kind != PolygonKind::Other,
        vertex_count: vertex_count(p),
        segments,
        triangle,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResonanceJson {
    pub resonant: bool,
    pub maximally_resonant: bool,
    pub circuits: usize,
    pub resonant_circuits: Vec<Vec<usize>>,
}

fn resonance_json(s: &HornSystem) -> ResonanceJson {
    let r = detect_resonance(s);
    ResonanceJson {
        resonant: r.is_resonant,
        maximally_resonant: r.is_maximally_resonant,
        circuits: r.circuits.len(),
        resonant_circuits: r.circuits.iter().filter(|c| c.resonant).map(|c| c.indices.clone()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnresolvedJson {
    pub alpha0: [String; 2],
    pub outcome: String,
    pub at: Option<[String; 2]>,
}

fn unresolved(fam: &PolynomialFamily) -> Vec<UnresolvedJson> {
    fam.harvest
        .iter()
        .filter_map(|h| {
            let (outcome, at) = match &h.outcome {
                HarvestOutcome::Finite(_) => return None,
                HarvestOutcome::ExceedsWindow => ("exceeds_window", None),
                HarvestOutcome::Resonant(at) => ("resonant", Some(rat_pair(at))),
                HarvestOutcome::Inconsistent(at) => ("inconsistent", Some(rat_pair(at))),
            };
            Some(UnresolvedJson { alpha0: rat_pair(&h.alpha0), outcome: outcome.to_string(), at })
        })
        .collect()
}

fn solution_json(f: &PuiseuxPolynomial, s: &HornSystem, persistent: &BTreeSet<PuiseuxPolynomial>) -> SolutionJson {
    SolutionJson {
        label: None,
        terms: poly_to_terms(f),
        persistent: Some(persistent.contains(&f.canonical())),
        verified: Some(is_solution(f, s).unwrap_or(false)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub name: Option<String>,
    pub nonconfluent: bool,
    pub rank: Option<i64>,
    pub persistent_dim: Option<i64>,
    pub fully_supported_count: i64,
    pub s_per_vertex: Vec<i64>,
    pub polygon: Option<PolygonJson>,
    pub classification: Option<ClassificationJson>,
    pub resonance: ResonanceJson,
    pub persistent_solutions: Vec<SolutionJson>,
    pub harvested_polynomials: usize,
    pub independent_polynomials: usize,
    pub rank_attained: Option<bool>,
    pub window: i64,
}

pub fn analyze(s: &HornSystem, name: Option<String>, window: i64) -> Result<AnalysisReport, CliError> {
    let nonconfluent = check_nonconfluent(s);
    let (rank, pdim, polygon, classification, s_per_vertex) = if nonconfluent {
        let p = build_polygon(s)?;
        let c = classify(&p);
        let sv = (0..vertex_count(&p)).map(|i| convergent_count_s(s, i)).collect::<hornkit::Result<Vec<_>>>()?;
        (
            Some(holonomic_rank(s)?),
            Some(persistent_dim(s)?),
            Some(PolygonJson::from(&p)),
            Some(classification_json(&p, &c)),
            sv,
        )
    } else {
        (None, None, None, None, Vec::new())
    };
    let fam = collect_polynomials(s, window)?;
    let pset: BTreeSet<_> = fam.persistent.iter().cloned().collect();
    Ok(AnalysisReport {
        name,
        nonconfluent,
        rank,
        persistent_dim: pdim,
        fully_supported_count: fully_supported_count(s),
        s_per_vertex,
        polygon,
        classification,
        resonance: resonance_json(s),
        persistent_solutions: fam.persistent.iter().map(|f| solution_json(f, s, &pset)).collect(),
        harvested_polynomials: fam.harvest.iter().filter(|h| h.is_finite()).count(),
        independent_polynomials: fam.basis.len(),
        rank_attained: rank.map(|r| fam.basis.len() as i64 >= r),
        window,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub name: Option<String>,
    pub window: i64,
    pub holonomic_rank: Option<i64>,
    pub found: usize,
    pub rank_attained: Option<bool>,
    pub solutions: Vec<SolutionJson>,
    pub unresolved: Vec<UnresolvedJson>,
}

pub fn solve(s: &HornSystem, name: Option<String>, window: i64) -> Result<SolveReport, CliError> {
    let rank = if check_nonconfluent(s) { Some(holonomic_rank(s)?) } else { None };
    let fam = collect_polynomials(s, window)?;
    let pset: BTreeSet<_> = fam.persistent.iter().cloned().collect();
    Ok(SolveReport {
        name,
        window,
        holonomic_rank: rank,
        found: fam.basis.len(),
        rank_attained: rank.map(|r| fam.basis.len() as i64 >= r),
        solutions: fam.basis.iter().map(|f| solution_json(f, s, &pset)).collect(),
        unresolved: unresolved(&fam),
    })
}

pub fn classify_report(s: &HornSystem) -> Result<ClassificationJson, CliError> {
    let p = build_polygon(s)?;
    Ok(classification_json(&p, &classify(&p)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: i64,
    pub persistent_dim: i64,
    pub fully_supported_count: i64,
    pub s_per_vertex: Vec<i64>,
}

pub fn rank_report(s: &HornSystem) -> Result<RankReport, CliError> {
    let p = build_polygon(s)?;
    let s_per_vertex = (0..vertex_count(&p)).map(|i| convergent_count_s(s, i)).collect::<hornkit::Result<Vec<_>>>()?;
    Ok(RankReport {
        rank: holonomic_rank(s)?,
        persistent_dim: persistent_dim(s)?,
        fully_supported_count: fully_supported_count(s),
        s_per_vertex,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientJson {
    pub offset: [i64; 2],
    pub exponent: [String; 2],
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub pair: [usize; 2],
    pub branch: usize,
    pub alpha0: [String; 2],
    pub window: i64,
    pub verified: bool,
    pub coefficients: Vec<CoefficientJson>,
}

pub fn series(
    s: &HornSystem,
    pair: Option<(usize, usize)>,
    branch: usize,
    window: i64,
) -> Result<SeriesReport, CliError> {
    let pair = match pair {
        Some(p) => p,
        None => *nondegenerate_pairs(s).first().ok_or_else(|| CliError::precondition("no nondegenerate row pair"))?,
    };
    let t = series_from_submatrix(s, pair, branch, window)?;
    let coefficients = t
        .coeffs
        .iter()
        .map(|(o, c)| CoefficientJson {
            offset: [o.a, o.b],
            exponent: rat_pair(&t.alpha0.offset(o.a, o.b)),
            coefficient: hornkit::lattice::fmt_rat(c),
        })
        .collect();
    Ok(SeriesReport {
        pair: [pair.0, pair.1],
        branch,
        alpha0: rat_pair(&t.alpha0),
        window,
        verified: verify_truncated(&t, s),
        coefficients,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualJson {
    pub axis: usize,
    pub exponent: [String; 2],
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub is_solution: bool,
    pub is_persistent: Option<bool>,
    pub residuals: Vec<ResidualJson>,
}

pub fn verify(s: &HornSystem, f: &PuiseuxPolynomial, label: Option<String>) -> Result<Verdict, CliError> {
    let ok = is_solution(f, s)?;
    let residuals = (0..2)
        .flat_map(|j| {
            apply_horn(j, f, s).terms.into_iter().map(move |(e, c)| ResidualJson {
                axis: j,
                exponent: rat_pair(&e),
                coefficient: hornkit::lattice::fmt_rat(&c),
            })
        })
        .take(5)
        .collect();
    let is_persistent = if ok { Some(validate_persistence(f, s)?) } else { None };
    Ok(Verdict { label, is_solution: ok, is_persistent, residuals })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuggestReport {
    pub parameters: Option<Vec<String>>,
    pub search_bound: i64,
    pub candidates: usize,
    pub diagnostic: Option<String>,
}

pub fn suggest(s: &HornSystem, bound: i64, candidates: usize) -> Result<SuggestReport, CliError> {
    let found = suggest_polynomial_parameters(s, bound, candidates)?;
    let diagnostic = found
        .is_none()
        .then(|| format!("no candidate among {} reached the holonomic rank with polynomial solutions", candidates));
    Ok(SuggestReport {
        parameters: found.map(|p| p.iter().map(hornkit::lattice::fmt_rat).collect()),
        search_bound: bound,
        candidates,
        diagnostic,
    })
}
