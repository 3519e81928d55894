//! Exact rational bounds for the zero loci of Bernstein-Sato ideals.
//!
//! Given the numerical data of a strong log resolution of a tuple of
//! polynomials f = (f_1, ..., f_r) — orders of vanishing along the divisor
//! components, relative canonical coefficients, divisor kinds — this crate
//! computes, over the rationals and with no tolerance anywhere:
//!
//! - the LCT polytope and the open KLT region of f for a weight vector a,
//! - mixed-multiplier-ideal membership of a finite test set and the
//!   jumping-wall complex it induces inside a box,
//! - lower bounds (strict-transform shifts, LCT facets, jumping walls meeting
//!   the KLT region) and upper bounds (the full candidate family) for the
//!   zero locus of the Bernstein-Sato ideal, plus a comparison against a
//!   reference ideal imported from a CAS.
//!
//! All operations are pure functions of their inputs and safe for concurrent
//! use. The `verify` module provides independent brute-force oracles.

pub mod bounds;
pub mod model;
pub mod polyhedra;
pub mod rat;
pub mod regions;
pub mod verify;
pub mod walls;

pub use bounds::{
    default_c_max, is_subset, jumping_wall_components, lct_facet_components, parse_reference,
    prop13_components, report, same_set, sign_conditions_hold, upper_family, upstairs_b,
    BoundsReport, Component, FactoredPoly, Prop13Family, Provenance, ReferenceError,
};
pub use model::{
    load_path, load_str, save_string, validate, Divisor, DivisorKind, Document, LoadError,
    ResolutionData, TestElement, Violation, ViolationKind, WeightVector, SCHEMA_VERSION,
};
pub use polyhedra::{
    box_halfspaces, decompose, strict_feasible, AffineForm, ArrFacet, Arrangement, Cell, Facet,
    FacetSet, HalfSpace, PolyhedraError, Polyhedron, Sense, DEFAULT_CELL_BUDGET,
};
pub use rat::{parse_rat, rat, rat_int, rat_u64, render_rat, Rat};
pub use regions::{klt_region, lct_polytope, KltRegion, LctFacet, LctPolytope};
pub use verify::{
    grid_pattern_oracle, monomial_bfunction_roots, monomial_bfunction_table, vertex_oracle,
    MonomialBf, OracleReport, VerifyError,
};
pub use walls::{
    candidate_forms, default_box, membership, pattern, region_of_constancy, wall_complex,
    CandidateForm, JumpFacet, MembershipPattern, WallComplex, WallsError,
};
