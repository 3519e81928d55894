//! The LCT polytope and the KLT region of a tuple of polynomials, computed
//! from resolution data.
//!
//! LCT(F) is the set of nonnegative weights lambda with
//! sum_j ord_E(f_j) lambda_j <= k_E + 1 for every divisor E; the KLT region
//! shifts by the weight vector a and makes the inequalities strict.

use crate::model::{ResolutionData, WeightVector};
use crate::polyhedra::{AffineForm, HalfSpace, PolyhedraError, Polyhedron};
use crate::rat::{rat_u64, Rat};
use num::{One, Zero};

/// A facet record of the LCT polytope: the supporting hyperplane
/// `sum_j N_j lambda_j = k + 1`, the divisors cutting it, and a strictly
/// positive relative-interior witness when one exists.
#[derive(Debug, Clone)]
pub struct LctFacet {
    pub form: AffineForm,
    pub divisors: Vec<usize>,
    pub positive_witness: Option<Vec<Rat>>,
}

#[derive(Debug, Clone)]
pub struct LctPolytope {
    pub polyhedron: Polyhedron,
    /// One record per supporting divisor hyperplane; divisors cutting the
    /// same normalized hyperplane share a record.
    pub facets: Vec<LctFacet>,
}

/// Halfspace `sum_j N_j lambda_j - (k + shift) <= 0` of a divisor.
fn divisor_form(divisor_orders: &[u64], threshold: u64, extra: &Rat) -> AffineForm {
    let coeffs: Vec<Rat> = divisor_orders.iter().map(|&n| rat_u64(n)).collect();
    AffineForm::new(coeffs, -(rat_u64(threshold) + extra))
}

fn coordinate_halfspaces(r: usize) -> Vec<HalfSpace> {
    (0..r)
        .map(|j| {
            let mut coeffs = vec![Rat::zero(); r];
            coeffs[j] = -Rat::one();
            HalfSpace::le(AffineForm::new(coeffs, Rat::zero()))
        })
        .collect()
}

/// Groups divisors by the normalized halfspace they cut.
fn grouped_divisor_halfspaces(
    data: &ResolutionData,
    shift_by_weight: Option<&WeightVector>,
    sense_strict: bool,
) -> Vec<(HalfSpace, Vec<usize>)> {
    let mut groups: Vec<(HalfSpace, Vec<usize>)> = Vec::new();
    for (i, d) in data.divisors.iter().enumerate() {
        let extra = match shift_by_weight {
            None => Rat::zero(),
            Some(w) => {
                let s: u64 = d.orders.iter().zip(&w.a).map(|(&n, &aj)| n * aj).sum();
                rat_u64(s)
            }
        };
        let form = divisor_form(&d.orders, d.k + 1, &extra);
        let hs = if sense_strict {
            HalfSpace::lt(form)
        } else {
            HalfSpace::le(form)
        };
        match groups.iter_mut().find(|(h, _)| h.form == hs.form) {
            Some((_, idxs)) => idxs.push(i),
            None => groups.push((hs, vec![i])),
        }
    }
    groups
}

/// Computes LCT(F) with its facet/divisor pairing. For r = 1 this is the
/// interval [0, lct(f)].
pub fn lct_polytope(data: &ResolutionData) -> Result<LctPolytope, PolyhedraError> {
    let r = data.r;
    let groups = grouped_divisor_halfspaces(data, None, false);
    let mut halfspaces: Vec<HalfSpace> = groups.iter().map(|(h, _)| h.clone()).collect();
    halfspaces.extend(coordinate_halfspaces(r));
    let polyhedron = Polyhedron::intersect(&halfspaces, r)?;
    debug_assert!(
        !polyhedron.is_empty(),
        "0 always satisfies the LCT constraints"
    );

    // thresholds are >= 1, so a corner box at the origin is inside: the
    // polytope is full-dimensional and facet samples are well-defined
    let facet_set = polyhedron.facets()?;
    let mut facets = Vec::new();
    for (hs, divisors) in groups {
        let hyper = hs.form.canonical_hyperplane();
        let Some(facet) = facet_set.facets.iter().find(|f| f.hyperplane == hyper) else {
            continue; // tight nowhere on the polytope: not a facet record
        };
        let positive_witness = polyhedron.strictly_positive_part(facet)?;
        facets.push(LctFacet {
            form: hyper,
            divisors,
            positive_witness,
        });
    }
    facets.sort_by(|a, b| a.form.cmp(&b.form));
    Ok(LctPolytope { polyhedron, facets })
}

#[derive(Debug, Clone)]
pub struct KltRegion {
    /// Supporting strict divisor halfspaces with the divisors cutting them.
    pub divisor_halfspaces: Vec<(HalfSpace, Vec<usize>)>,
    pub polyhedron: Polyhedron,
    /// Componentwise suprema of the closure (finite once the data validates).
    pub sup: Vec<Rat>,
}

/// Computes the open region KLT_a(F). For r = 1 this is [0, lct(f) + a).
pub fn klt_region(
    data: &ResolutionData,
    weight: &WeightVector,
) -> Result<KltRegion, PolyhedraError> {
    assert_eq!(weight.a.len(), data.r, "weight vector length must equal r");
    let r = data.r;
    let groups = grouped_divisor_halfspaces(data, Some(weight), true);
    let mut halfspaces: Vec<HalfSpace> = groups.iter().map(|(h, _)| h.clone()).collect();
    halfspaces.extend(coordinate_halfspaces(r));
    let polyhedron = Polyhedron::intersect(&halfspaces, r)?;
    debug_assert!(!polyhedron.is_empty(), "0 always lies in the KLT region");
    let sup = polyhedron.suprema();
    let retained: Vec<(HalfSpace, Vec<usize>)> = groups
        .into_iter()
        .filter(|(hs, _)| polyhedron.hrep().iter().any(|h| h.form == hs.form))
        .collect();
    Ok(KltRegion {
        divisor_halfspaces: retained,
        polyhedron,
        sup,
    })
}

impl KltRegion {
    /// Exact strict-inequality evaluation (coordinates must be nonnegative).
    pub fn contains(&self, point: &[Rat]) -> bool {
        point.iter().all(|c| !c.is_negative())
            && self
                .divisor_halfspaces
                .iter()
                .all(|(hs, _)| hs.contains(point))
    }

    /// The strict halfspaces in divisor-group order.
    pub fn halfspaces(&self) -> Vec<HalfSpace> {
        self.divisor_halfspaces
            .iter()
            .map(|(h, _)| h.clone())
            .collect()
    }
}

use num::Signed;
