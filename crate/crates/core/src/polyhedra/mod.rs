//! Exact-rational polyhedral engine: halfspace intersection with supporting
//! H-representation, vertex/ray enumeration, facet samples, strict
//! feasibility, and bounded hyperplane-arrangement decomposition.
//!
//! There is no tolerance parameter anywhere in this module; every decision is
//! made with exact arithmetic.

mod arrangement;
mod dd;
mod fm;
mod form;
mod linalg;

pub use arrangement::{decompose, ArrFacet, Arrangement, Cell, DEFAULT_CELL_BUDGET};
pub use form::{box_halfspaces, AffineForm, HalfSpace, Sense};

use crate::rat::Rat;
use num::{One, Zero};

#[derive(Debug, thiserror::Error)]
pub enum PolyhedraError {
    #[error("{what} budget exhausted: {count}")]
    Budget { what: &'static str, count: usize },
    #[error("arrangement too large: {cells} cells exceed the budget of {budget}")]
    ArrangementTooLarge { cells: usize, budget: usize },
    #[error("polyhedron not full-dimensional")]
    NotFullDimensional,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("box is not full-dimensional")]
    DegenerateBox,
    #[error("cutting form is constant on the box")]
    ConstantForm,
}

/// A rational polyhedron: H-representation with strictness flags and the
/// derived V-representation of its closure.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    dim: usize,
    hrep: Vec<HalfSpace>,
    vertices: Vec<Vec<Rat>>,
    base_points: Vec<Vec<Rat>>,
    rays: Vec<Vec<Rat>>,
    lineality: Vec<Vec<Rat>>,
    /// Multipliers over the *input* halfspaces witnessing emptiness.
    certificate: Option<Vec<Rat>>,
}

/// A supporting constraint together with a sample in the relative interior of
/// its contact face. `contact_dim` is the dimension of that face; a proper
/// facet has `contact_dim == dim - 1`.
#[derive(Debug, Clone)]
pub struct Facet {
    pub hyperplane: AffineForm,
    /// Indices into `hrep()` of the halfspaces cutting this hyperplane.
    pub halfspaces: Vec<usize>,
    pub sample: Vec<Rat>,
    pub contact_dim: usize,
}

#[derive(Debug, Clone)]
pub struct FacetSet {
    pub facets: Vec<Facet>,
    /// Facets on coordinate hyperplanes `x_j = 0`, reported separately.
    pub coordinate: Vec<Facet>,
}

impl Polyhedron {
    /// Intersects the halfspaces. The result carries the supporting subset of
    /// the inputs as its H-representation (constraints tight nowhere on the
    /// closure are dropped) and the vertex/ray set of the closure.
    pub fn intersect(halfspaces: &[HalfSpace], dim: usize) -> Result<Polyhedron, PolyhedraError> {
        for hs in halfspaces {
            assert_eq!(hs.form.dim(), dim, "halfspace dimension mismatch");
        }
        let live: Vec<HalfSpace> = halfspaces
            .iter()
            .filter(|hs| !hs.form.is_zero())
            .cloned()
            .collect();
        match fm::solve(&live, dim)? {
            fm::Outcome::Infeasible(mults_live) => {
                // re-index multipliers over the original input list
                let mut mults = Vec::with_capacity(halfspaces.len());
                let mut it = mults_live.into_iter();
                for hs in halfspaces {
                    if hs.form.is_zero() {
                        mults.push(Rat::zero());
                    } else {
                        mults.push(it.next().unwrap());
                    }
                }
                Ok(Polyhedron {
                    dim,
                    hrep: Vec::new(),
                    vertices: Vec::new(),
                    base_points: Vec::new(),
                    rays: Vec::new(),
                    lineality: Vec::new(),
                    certificate: Some(mults),
                })
            }
            fm::Outcome::Sample(_) => {
                let mut closed: Vec<(Vec<Rat>, Rat)> = Vec::new();
                for hs in &live {
                    closed.push((hs.form.coeffs.clone(), hs.form.constant.clone()));
                    if hs.sense == Sense::Eq {
                        let neg = hs.form.negated();
                        closed.push((neg.coeffs, neg.constant));
                    }
                }
                let gens = dd::generators(&closed, dim);
                debug_assert!(!gens.is_region_empty(), "region feasible but closure empty");
                // supporting = tight at some point generator of the closure
                let mut hrep: Vec<HalfSpace> = Vec::new();
                for hs in &live {
                    let tight = gens.point_generators().any(|p| hs.form.eval(p).is_zero());
                    if !tight {
                        continue;
                    }
                    match hrep.iter_mut().find(|h| h.form == hs.form) {
                        Some(existing) => existing.sense = stronger(existing.sense, hs.sense),
                        None => hrep.push(hs.clone()),
                    }
                }
                hrep.sort();
                Ok(Polyhedron {
                    dim,
                    hrep,
                    vertices: gens.vertices,
                    base_points: gens.base_points,
                    rays: gens.rays,
                    lineality: gens.lineality,
                    certificate: None,
                })
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.certificate.is_some()
    }

    /// Witness of emptiness: multipliers over the input halfspaces whose
    /// combination is a contradiction. Nonnegative on inequalities.
    pub fn certificate(&self) -> Option<&[Rat]> {
        self.certificate.as_deref()
    }

    pub fn hrep(&self) -> &[HalfSpace] {
        &self.hrep
    }

    /// Extreme points of the closure (empty when lineality is present).
    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    /// Extreme rays, with lineality rendered as +/- ray pairs.
    pub fn rays(&self) -> Vec<Vec<Rat>> {
        let mut out = self.rays.clone();
        for l in &self.lineality {
            out.push(l.clone());
            out.push(l.iter().map(|c| -c).collect());
        }
        out.sort();
        out
    }

    pub fn lineality(&self) -> &[Vec<Rat>] {
        &self.lineality
    }

    /// Points spanning the minimal faces (vertices, or base points when the
    /// polyhedron has lineality).
    pub fn point_generators(&self) -> Vec<&Vec<Rat>> {
        self.vertices
            .iter()
            .chain(self.base_points.iter())
            .collect()
    }

    pub fn contains(&self, point: &[Rat]) -> bool {
        self.hrep.iter().all(|hs| hs.contains(point))
    }

    /// Dimension of the affine hull of the closure; `None` when empty.
    pub fn affine_dim(&self) -> Option<usize> {
        if self.is_empty() {
            return None;
        }
        let points = self.point_generators();
        let origin = points[0];
        let mut dirs: Vec<Vec<Rat>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(origin.iter()).map(|(a, b)| a - b).collect())
            .collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lineality.iter().cloned());
        Some(linalg::rank(&dirs))
    }

    /// One entry per supporting non-coordinate constraint, with a sample in
    /// the relative interior of its contact face. Coordinate constraints
    /// (`x_j = 0`) are reported separately.
    pub fn facets(&self) -> Result<FacetSet, PolyhedraError> {
        if self.is_empty() {
            return Err(PolyhedraError::EmptyPolyhedron);
        }
        if self.affine_dim() != Some(self.dim) {
            return Err(PolyhedraError::NotFullDimensional);
        }
        let mut groups: Vec<(AffineForm, Vec<usize>)> = Vec::new();
        for (i, hs) in self.hrep.iter().enumerate() {
            let hyper = hs.form.canonical_hyperplane();
            match groups.iter_mut().find(|(h, _)| *h == hyper) {
                Some((_, idxs)) => idxs.push(i),
                None => groups.push((hyper, vec![i])),
            }
        }
        let mut facets = Vec::new();
        let mut coordinate = Vec::new();
        for (hyper, idxs) in groups {
            let tight_points: Vec<&Vec<Rat>> = self
                .point_generators()
                .into_iter()
                .filter(|p| hyper.eval(p).is_zero())
                .collect();
            debug_assert!(!tight_points.is_empty(), "hrep constraints are supporting");
            let tight_rays: Vec<&Vec<Rat>> = self
                .rays
                .iter()
                .filter(|r| hyper.eval_linear(r).is_zero())
                .collect();
            let sample = relative_interior_point(&tight_points, &tight_rays);
            let contact_dim = {
                let origin = tight_points[0];
                let mut dirs: Vec<Vec<Rat>> = tight_points[1..]
                    .iter()
                    .map(|p| p.iter().zip(origin.iter()).map(|(a, b)| a - b).collect())
                    .collect();
                dirs.extend(tight_rays.iter().map(|r| (*r).clone()));
                dirs.extend(self.lineality.iter().cloned());
                linalg::rank(&dirs)
            };
            let facet = Facet {
                hyperplane: hyper,
                halfspaces: idxs,
                sample,
                contact_dim,
            };
            if facet.hyperplane.is_coordinate() {
                coordinate.push(facet);
            } else {
                facets.push(facet);
            }
        }
        Ok(FacetSet { facets, coordinate })
    }

    /// A rational point in the facet's relative interior with all coordinates
    /// strictly positive, when one exists.
    pub fn strictly_positive_part(
        &self,
        facet: &Facet,
    ) -> Result<Option<Vec<Rat>>, PolyhedraError> {
        let tight_points: Vec<&Vec<Rat>> = self
            .point_generators()
            .into_iter()
            .filter(|p| facet.hyperplane.eval(p).is_zero())
            .collect();
        let tight_rays: Vec<&Vec<Rat>> = self
            .rays
            .iter()
            .filter(|r| facet.hyperplane.eval_linear(r).is_zero())
            .collect();
        let mut system: Vec<HalfSpace> = vec![HalfSpace::eq(facet.hyperplane.clone())];
        for hs in &self.hrep {
            // identically tight on the contact face: keep as an equality;
            // otherwise demand strictness to stay in the relative interior
            let everywhere = tight_points.iter().all(|p| hs.form.eval(p).is_zero())
                && tight_rays.iter().all(|r| hs.form.eval_linear(r).is_zero());
            if everywhere {
                system.push(HalfSpace::eq(hs.form.clone()));
            } else {
                system.push(HalfSpace::lt(hs.form.clone()));
            }
        }
        for j in 0..self.dim {
            let mut coeffs = vec![Rat::zero(); self.dim];
            coeffs[j] = -Rat::one();
            system.push(HalfSpace::lt(AffineForm::new(coeffs, Rat::zero())));
        }
        strict_feasible(&system, self.dim)
    }

    /// Componentwise suprema of the closure. Panics on unbounded input; run
    /// `model::validate` first (every order-matrix column nonzero makes the
    /// regions of interest bounded).
    pub fn suprema(&self) -> Vec<Rat> {
        assert!(!self.is_empty(), "suprema of an empty polyhedron");
        assert!(
            self.rays.is_empty() && self.lineality.is_empty(),
            "suprema of an unbounded polyhedron"
        );
        let points = self.point_generators();
        (0..self.dim)
            .map(|j| points.iter().map(|p| p[j].clone()).max().unwrap())
            .collect()
    }
}

fn stronger(a: Sense, b: Sense) -> Sense {
    use Sense::*;
    match (a, b) {
        (Eq, _) | (_, Eq) => Eq,
        (Lt, _) | (_, Lt) => Lt,
        _ => Le,
    }
}

/// Strict convex/conic combination of all generators of a face: its
/// relative-interior point.
fn relative_interior_point(points: &[&Vec<Rat>], rays: &[&Vec<Rat>]) -> Vec<Rat> {
    let dim = points[0].len();
    let n = Rat::from_integer(num::BigInt::from(points.len() as i64));
    let mut out = vec![Rat::zero(); dim];
    for p in points {
        for (o, c) in out.iter_mut().zip(p.iter()) {
            *o += c / &n;
        }
    }
    for r in rays {
        for (o, c) in out.iter_mut().zip(r.iter()) {
            *o += c;
        }
    }
    out
}

/// A rational point satisfying every constraint with its stated strictness,
/// or `None`. Exact decision via Fourier-Motzkin.
pub fn strict_feasible(
    constraints: &[HalfSpace],
    dim: usize,
) -> Result<Option<Vec<Rat>>, PolyhedraError> {
    fm::feasible_point(constraints, dim)
}
