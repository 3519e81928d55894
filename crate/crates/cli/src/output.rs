//! JSON document builders. Every document is versioned, keys come out
//! sorted (serde_json's map is ordered), and all rationals render as exact
//! `p/q` strings, never floats.

use bsloci::{
    render_rat, AffineForm, BoundsReport, CandidateForm, Component, Document, HalfSpace, KltRegion,
    LctPolytope, Rat, Sense, WallComplex,
};
use serde_json::{json, Value};

pub fn rat_str(r: &Rat) -> Value {
    Value::String(render_rat(r))
}

pub fn point(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(rat_str).collect())
}

pub fn points(ps: &[Vec<Rat>]) -> Value {
    Value::Array(ps.iter().map(|p| point(p)).collect())
}

/// `{"coeffs": [...], "rhs": ..., "sense": ...}` with the orientation flipped
/// so the leading coefficient is positive (`-x <= 0` prints as `x >= 0`).
pub fn halfspace(hs: &HalfSpace) -> Value {
    let negative_lead = hs
        .form
        .coeffs
        .iter()
        .find(|c| !num::Zero::is_zero(*c))
        .map(num::Signed::is_negative)
        .unwrap_or(false);
    let (form, flipped) = if negative_lead {
        (hs.form.negated(), true)
    } else {
        (hs.form.clone(), false)
    };
    let sense = match (hs.sense, flipped) {
        (Sense::Eq, _) => "=",
        (Sense::Le, false) => "<=",
        (Sense::Lt, false) => "<",
        (Sense::Le, true) => ">=",
        (Sense::Lt, true) => ">",
    };
    json!({
        "coeffs": form.coeffs.iter().map(rat_str).collect::<Vec<_>>(),
        "rhs": rat_str(&-form.constant.clone()),
        "sense": sense,
    })
}

/// A hyperplane `sum coeffs . lambda = value`.
pub fn hyperplane(form: &AffineForm) -> Value {
    json!({
        "coeffs": form.coeffs.iter().map(rat_str).collect::<Vec<_>>(),
        "value": rat_str(&-form.constant.clone()),
    })
}

/// A component `sum coeffs . s + b = 0`.
pub fn component(c: &Component) -> Value {
    json!({
        "coeffs": c.form.coeffs.iter().map(rat_str).collect::<Vec<_>>(),
        "b": rat_str(&c.form.constant),
        "provenance": c.provenance.iter().map(|p| p.as_str()).collect::<Vec<_>>(),
        "sources": c.sources.iter().map(|(d, cc)| json!({"divisor": d, "c": cc})).collect::<Vec<_>>(),
    })
}

pub fn components(cs: &[Component]) -> Value {
    Value::Array(cs.iter().map(component).collect())
}

fn candidate(data: &bsloci::ResolutionData, c: &CandidateForm) -> Value {
    let mut v = hyperplane(&c.form);
    v["sources"] = Value::Array(
        c.sources
            .iter()
            .map(|&(e, cc)| json!({"divisor": data.divisors[e].name, "c": cc}))
            .collect(),
    );
    v
}

pub fn lct_doc(doc: &Document, lct: &LctPolytope) -> Value {
    let (divisor_hs, coord_hs): (Vec<&HalfSpace>, Vec<&HalfSpace>) = lct
        .polyhedron
        .hrep()
        .iter()
        .partition(|h| !h.form.is_coordinate());
    let mut out = json!({
        "version": bsloci::SCHEMA_VERSION,
        "command": "lct",
        "r": doc.data.r,
        "halfspaces": divisor_hs.iter().map(|h| halfspace(h)).collect::<Vec<_>>(),
        "coordinate_halfspaces": coord_hs.iter().map(|h| halfspace(h)).collect::<Vec<_>>(),
        "vertices": points(lct.polyhedron.vertices()),
        "facets": lct.facets.iter().map(|f| {
            json!({
                "hyperplane": hyperplane(&f.form),
                "divisors": f.divisors.iter().map(|&i| doc.data.divisors[i].name.clone()).collect::<Vec<_>>(),
                "positive_witness": f.positive_witness.as_ref().map(|w| point(w)).unwrap_or(Value::Null),
            })
        }).collect::<Vec<_>>(),
    });
    if doc.data.r == 1 {
        let hi = lct.polyhedron.vertices().iter().map(|v| v[0].clone()).max();
        if let Some(hi) = hi {
            out["interval"] = json!([rat_str(&Rat::from_integer(0.into())), rat_str(&hi)]);
        }
    }
    out
}

pub fn klt_doc(doc: &Document, klt: &KltRegion) -> Value {
    let coord_hs: Vec<&HalfSpace> = klt
        .polyhedron
        .hrep()
        .iter()
        .filter(|h| h.form.is_coordinate())
        .collect();
    json!({
        "version": bsloci::SCHEMA_VERSION,
        "command": "klt",
        "r": doc.data.r,
        "halfspaces": klt.divisor_halfspaces.iter().map(|(h, divs)| {
            let mut v = halfspace(h);
            v["divisors"] = Value::Array(divs.iter().map(|&i| json!(doc.data.divisors[i].name)).collect());
            v
        }).collect::<Vec<_>>(),
        "coordinate_halfspaces": coord_hs.iter().map(|h| halfspace(h)).collect::<Vec<_>>(),
        "bounding_box": {
            "lo": Value::Array(klt.sup.iter().map(|_| json!("0")).collect()),
            "hi": Value::Array(klt.sup.iter().map(rat_str).collect()),
        },
        "closure_vertices": points(klt.polyhedron.vertices()),
    })
}

pub fn walls_doc(doc: &Document, complex: &WallComplex) -> Value {
    let arr = &complex.arrangement;
    let sign_string = |signs: &[i8]| -> String {
        signs
            .iter()
            .map(|&s| if s < 0 { '-' } else { '+' })
            .collect()
    };
    // distinct wall hyperplanes carrying at least one jump facet
    let mut jump_walls: Vec<usize> = complex.jump_facets.iter().map(|j| j.candidate).collect();
    jump_walls.sort();
    jump_walls.dedup();
    json!({
        "version": bsloci::SCHEMA_VERSION,
        "command": "walls",
        "r": doc.data.r,
        "box": { "lo": point(&arr.box_lo), "hi": point(&arr.box_hi) },
        "candidates": complex.candidates.iter().map(|c| candidate(&doc.data, c)).collect::<Vec<_>>(),
        "cells": arr.cells.iter().zip(&complex.patterns).map(|(cell, pat)| {
            json!({
                "signs": sign_string(&cell.signs),
                "sample": point(&cell.sample),
                "members": pat.member_names(&doc.test_elements),
            })
        }).collect::<Vec<_>>(),
        "facets": arr.facets.iter().enumerate().map(|(fi, f)| {
            json!({
                "candidate": f.form_index,
                "low_cell": f.low_cell,
                "high_cell": f.high_cell,
                "sample": point(&f.sample),
                "jump": complex.jump_facets.iter().any(|j| j.facet == fi),
            })
        }).collect::<Vec<_>>(),
        "jump_walls": jump_walls.iter().map(|&i| candidate(&doc.data, &complex.candidates[i])).collect::<Vec<_>>(),
    })
}

/// Truncation caveat for the upper candidate family.
pub const C_MAX_NOTE: &str = "no universal bound on the shift c is known for more than one \
     polynomial; the upper family is truncated at c_max";

/// The trace-model caveat, stated wherever bound components are reported.
pub const MODEL_NOTE: &str = "mixed multiplier ideals are modeled by their trace on the bundled \
     finite test set; jumping walls detectable only by elements outside the test set are \
     invisible, so the jumping-wall lower bound is relative to the supplied elements";

pub fn report_doc(doc: &Document, rep: &BoundsReport, lct: &LctPolytope, klt: &KltRegion) -> Value {
    let zero_locus = if rep.real_mode {
        "Z(B_{F,x}^a)"
    } else {
        "Z(B_F^a)"
    };
    let flags = json!({
        "lower_in_upper": rep.lower_in_upper,
        "lower_in_reference": rep.lower_in_reference.map(Value::Bool).unwrap_or(Value::Null),
        "reference_in_upper": rep.reference_in_upper.map(Value::Bool).unwrap_or(Value::Null),
    });
    let (divisor_hs, _): (Vec<&HalfSpace>, Vec<&HalfSpace>) = lct
        .polyhedron
        .hrep()
        .iter()
        .partition(|h| !h.form.is_coordinate());
    json!({
        "version": bsloci::SCHEMA_VERSION,
        "command": "report",
        "r": doc.data.r,
        "a": doc.weight.a,
        "zero_locus": zero_locus,
        "model_note": MODEL_NOTE,
        "box": { "lo": point(&rep.box_lo), "hi": point(&rep.box_hi) },
        "c_max": rep.c_max,
        "c_max_note": C_MAX_NOTE,
        "lct": {
            "halfspaces": divisor_hs.iter().map(|h| halfspace(h)).collect::<Vec<_>>(),
            "vertices": points(lct.polyhedron.vertices()),
        },
        "klt": {
            "halfspaces": klt.divisor_halfspaces.iter().map(|(h, _)| halfspace(h)).collect::<Vec<_>>(),
            "bounding_box_hi": Value::Array(klt.sup.iter().map(rat_str).collect()),
        },
        "lower": components(&rep.lower),
        "upper": components(&rep.upper),
        "reference": rep.reference.as_ref().map(|r| components(r)).unwrap_or(Value::Null),
        "flags": flags,
    })
}

pub fn factored(f: &bsloci::FactoredPoly) -> Value {
    Value::Array(
        f.factors
            .iter()
            .map(|(form, mult)| {
                json!({
                    "coeffs": form.coeffs.iter().map(rat_str).collect::<Vec<_>>(),
                    "b": rat_str(&form.constant),
                    "multiplicity": mult,
                })
            })
            .collect(),
    )
}

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}
