//! Exact analysis of bivariate nonconfluent Horn hypergeometric systems.

pub mod atomic;
pub mod counting;
pub mod error;
pub mod lattice;
pub mod operators;
pub mod polygon;
pub mod series;
pub mod solver;
pub mod system;

pub use atomic::{enumerate_atomic, persistent_monomials, persistent_polynomials, polynomial_exponents, AtomicSystem};
pub use counting::{convergent_count_s, convergent_dim_by_cone, fully_supported_count, holonomic_rank, persistent_dim};
pub use error::{HornError, Result};
pub use lattice::{Int, LatticeVec, Mat2, Rat, RatVec2};
pub use operators::{apply_horn, apply_intertwiner, build_operators, is_solution, HornOperatorPair, PuiseuxPolynomial};
pub use polygon::{build_polygon, classify, is_maximally_reducible, minkowski_decompose, OreSatoPolygon, PolygonKind};
pub use series::{
    harvest_polynomials, series_from_submatrix, support_cone, verify_truncated, HarvestResult, TruncatedSeries,
};
pub use solver::{
    check_constructive, collect_polynomials, expand_closed_form, monodromy_exponents, parallelepipedal_closed_form,
    persistent_solutions, simplicial_closed_form, suggest_polynomial_parameters, validate_persistence,
    verify_parameters, ClosedFormSolution, ConstructiveReport, MonodromyDiagonal, PolynomialFamily,
};
pub use system::{check_nonconfluent, detect_resonance, normalize_rows, HornSystem, ResonanceReport};
