//! JSON wire format. Rationals travel as `"p/q"` strings (integers bare),
//! Puiseux polynomials as exponent-sorted term lists.

use std::fmt::Write as _;
use std::path::Path;

use hornkit::lattice::fmt_rat;
use hornkit::{HornSystem, LatticeVec, PuiseuxPolynomial, Rat, RatVec2};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub matrix: Vec<[i64; 2]>,
    pub parameters: Vec<Param>,
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    s.trim().parse().map_err(|e| CliError::parse(format!("not a rational {:?}: {}", s, e)))
}

impl Param {
    pub fn to_rat(&self) -> Result<Rat, CliError> {
        match self {
            Param::Int(n) => Ok(Rat::from_integer((*n).into())),
            Param::Text(s) => parse_rat(s),
        }
    }
}

impl SystemSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: SystemSpec = serde_json::from_str(text).map_err(|e| CliError::parse(e.to_string()))?;
        if spec.matrix.len() != spec.parameters.len() {
            return Err(CliError::parse(format!(
                "matrix has {} rows but {} parameters were given",
                spec.matrix.len(),
                spec.parameters.len()
            )));
        }
        for p in &spec.parameters {
            p.to_rat()?;
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn params(&self) -> Result<Vec<Rat>, CliError> {
        self.parameters.iter().map(Param::to_rat).collect()
    }

    pub fn to_system(&self) -> Result<HornSystem, CliError> {
        let rows = self.matrix.iter().map(|r| LatticeVec::new(r[0], r[1])).collect();
        HornSystem::new(rows, self.params()?).map_err(CliError::from)
    }

    /// Canonical text: one line per field, rows compact, parameters as strings.
    pub fn to_canonical_json(&self) -> Result<String, CliError> {
        let mut out = String::from("{\n");
        if let Some(n) = &self.name {
            let _ = writeln!(out, "  \"name\": {},", serde_json::to_string(n).expect("string"));
        }
        let rows: Vec<String> = self.matrix.iter().map(|r| format!("[{}, {}]", r[0], r[1])).collect();
        let _ = writeln!(out, "  \"matrix\": [{}],", rows.join(", "));
        let params: Vec<String> = self.params()?.iter().map(|p| format!("\"{}\"", fmt_rat(p))).collect();
        let _ = writeln!(out, "  \"parameters\": [{}]", params.join(", "));
        out.push_str("}\n");
        Ok(out)
    }

    pub fn from_system(s: &HornSystem, name: Option<String>) -> Self {
        SystemSpec {
            name,
            matrix: s.rows.iter().map(|r| [r.a, r.b]).collect(),
            parameters: s.params.iter().map(|p| Param::Text(fmt_rat(p))).collect(),
        }
    }
}

pub fn rat_pair(v: &RatVec2) -> [String; 2] {
    [fmt_rat(&v.x1), fmt_rat(&v.x2)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponent: [String; 2],
    pub coefficient: String,
}

pub fn poly_to_terms(f: &PuiseuxPolynomial) -> Vec<TermJson> {
    f.terms.iter().map(|(e, c)| TermJson { exponent: rat_pair(e), coefficient: fmt_rat(c) }).collect()
}

pub fn terms_to_poly(terms: &[TermJson]) -> Result<PuiseuxPolynomial, CliError> {
    let mut f = PuiseuxPolynomial::zero();
    for t in terms {
        let e = RatVec2::new(parse_rat(&t.exponent[0])?, parse_rat(&t.exponent[1])?);
        let c = parse_rat(&t.coefficient)?;
        if c.is_zero() {
            continue;
        }
        f.add_term(e, c);
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub persistent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

/// A solution file: a single `{terms}` object or a `{solutions: [...]}` list.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SolutionFile {
    Many {
        #[serde(default)]
        system: Option<String>,
        solutions: Vec<SolutionJson>,
    },
    One(SolutionJson),
}

impl SolutionFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::parse(e.to_string()))
    }

    pub fn solutions(&self) -> Vec<&SolutionJson> {
        match self {
            SolutionFile::Many { solutions, .. } => solutions.iter().collect(),
            SolutionFile::One(s) => vec![s],
        }
    }
}
