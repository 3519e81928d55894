//! Lower and upper bounds for the zero locus of a Bernstein-Sato ideal,
//! assembled from the resolution data as sets of rational hyperplanes
//! `l_1 s_1 + ... + l_r s_r + b = 0` in the s-variables.
//!
//! Lower-bound components come from three routes: strict-transform divisors
//! (one component per integer shift up to the weighted order), supporting
//! facets of the LCT polytope, and jumping-wall facets meeting the open KLT
//! region. The upper bound is the full candidate family over all divisors up
//! to a configurable shift. Components are compared as normalized forms,
//! never by polynomial division.

use crate::model::{ResolutionData, TestElement, WeightVector};
use crate::polyhedra::{strict_feasible, AffineForm, HalfSpace, PolyhedraError};
use crate::rat::{rat_u64, Rat};
use crate::regions;
use crate::walls::{self, WallsError};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Prop13,
    LctFacet,
    JumpingWall,
    UpperCandidate,
    Reference,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Prop13 => "prop13",
            Provenance::LctFacet => "lct-facet",
            Provenance::JumpingWall => "jumping-wall",
            Provenance::UpperCandidate => "upper-candidate",
            Provenance::Reference => "reference",
        }
    }
}

/// A hyperplane component of the zero-locus bound, with provenance and the
/// divisors/shifts that produced it. Equality of components is equality of
/// the normalized form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// `sum_j l_j s_j + b` with l >= 0 componentwise and b > 0, normalized.
    pub form: AffineForm,
    pub provenance: Vec<Provenance>,
    /// (divisor name, integer shift c) pairs.
    pub sources: Vec<(String, u64)>,
}

impl Component {
    fn new(form: AffineForm, provenance: Provenance, sources: Vec<(String, u64)>) -> Self {
        Component {
            form,
            provenance: vec![provenance],
            sources,
        }
    }

    /// The normalized slope vector (coefficients without the constant).
    pub fn slope(&self) -> Vec<Rat> {
        AffineForm::new(self.form.coeffs.clone(), Rat::zero())
            .canonical_hyperplane()
            .coeffs
    }

    /// Root of the single-variable component `l s + b = 0`.
    pub fn root(&self) -> Option<Rat> {
        if self.form.coeffs.len() == 1 && !self.form.coeffs[0].is_zero() {
            Some(-(&self.form.constant / &self.form.coeffs[0]))
        } else {
            None
        }
    }
}

/// Component form `sum_j N_j s_j + constant` (all entries exact integers
/// after normalization).
fn component_form(orders: &[u64], constant: u64) -> AffineForm {
    let coeffs: Vec<Rat> = orders.iter().map(|&n| rat_u64(n)).collect();
    AffineForm::new(coeffs, rat_u64(constant)).canonical_hyperplane()
}

/// Merges components with equal forms, combining provenance and sources.
fn merge(sets: impl IntoIterator<Item = Component>) -> Vec<Component> {
    let mut map: BTreeMap<AffineForm, Component> = BTreeMap::new();
    for c in sets {
        match map.get_mut(&c.form) {
            Some(existing) => {
                for p in c.provenance {
                    if !existing.provenance.contains(&p) {
                        existing.provenance.push(p);
                    }
                }
                for s in c.sources {
                    if !existing.sources.contains(&s) {
                        existing.sources.push(s);
                    }
                }
            }
            None => {
                map.insert(c.form.clone(), c);
            }
        }
    }
    let mut out: Vec<Component> = map.into_values().collect();
    for c in &mut out {
        c.provenance.sort();
        c.sources.sort();
    }
    out
}

fn forms_of(components: &[Component]) -> Vec<&AffineForm> {
    components.iter().map(|c| &c.form).collect()
}

pub fn is_subset(inner: &[Component], outer: &[Component]) -> bool {
    let outer_forms = forms_of(outer);
    forms_of(inner).iter().all(|f| outer_forms.contains(f))
}

pub fn same_set(a: &[Component], b: &[Component]) -> bool {
    is_subset(a, b) && is_subset(b, a)
}

/// The candidate family `sum_j N_E,j s_j + k_E + c = 0` for every divisor E
/// and 1 <= c <= c_max, deduplicated. No universal bound on c is known for
/// r > 1, so c_max is the caller's choice.
pub fn upper_family(data: &ResolutionData, c_max: u64) -> Vec<Component> {
    let mut all = Vec::new();
    for d in &data.divisors {
        if d.orders.iter().all(|&n| n == 0) {
            continue;
        }
        for c in 1..=c_max {
            all.push(Component::new(
                component_form(&d.orders, d.k + c),
                Provenance::UpperCandidate,
                vec![(d.name.clone(), c)],
            ));
        }
    }
    merge(all)
}

/// Factored polynomial: product of normalized linear forms with
/// multiplicities (zero sets only; constant factors are not tracked).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    pub factors: Vec<(AffineForm, u32)>,
}

impl FactoredPoly {
    fn from_forms(forms: impl IntoIterator<Item = AffineForm>) -> Self {
        let mut map: BTreeMap<AffineForm, u32> = BTreeMap::new();
        for f in forms {
            *map.entry(f).or_insert(0) += 1;
        }
        FactoredPoly {
            factors: map.into_iter().collect(),
        }
    }
}

/// Components contributed by a single strict-transform divisor, with the
/// explicit generator witnessing them.
#[derive(Debug, Clone)]
pub struct Prop13Family {
    pub divisor: String,
    /// Weighted order m = sum_j N_j a_j.
    pub m: u64,
    pub components: Vec<Component>,
    /// b(s) = prod_{c=1}^{m} (sum_j N_j s_j + c)
    pub witness: FactoredPoly,
}

/// For every strict-transform divisor C with positive weighted order m,
/// the components `sum_j ord_C(f_j) s_j + c = 0` for c = 1..m.
pub fn prop13_components(
    data: &ResolutionData,
    weight: &WeightVector,
) -> (Vec<Component>, Vec<Prop13Family>) {
    assert_eq!(weight.a.len(), data.r, "weight vector length must equal r");
    let mut all = Vec::new();
    let mut families = Vec::new();
    for d in &data.divisors {
        if d.kind != crate::model::DivisorKind::StrictTransform {
            continue;
        }
        let m: u64 = d.orders.iter().zip(&weight.a).map(|(&n, &a)| n * a).sum();
        if m == 0 {
            continue;
        }
        let components: Vec<Component> = (1..=m)
            .map(|c| {
                Component::new(
                    component_form(&d.orders, d.k + c),
                    Provenance::Prop13,
                    vec![(d.name.clone(), c)],
                )
            })
            .collect();
        let witness = FactoredPoly::from_forms((1..=m).map(|c| component_form(&d.orders, d.k + c)));
        all.extend(components.iter().cloned());
        families.push(Prop13Family {
            divisor: d.name.clone(),
            m,
            components,
            witness,
        });
    }
    (merge(all), families)
}

/// For each supporting non-coordinate facet of LCT(F) with span
/// `sum_j N_E,j lambda_j = k_E + 1`: if some divisor E cutting it has
/// a_j != 0 and N_E,j != 0 for some j, the component with c = 1.
pub fn lct_facet_components(
    data: &ResolutionData,
    weight: &WeightVector,
) -> Result<Vec<Component>, PolyhedraError> {
    let lct = regions::lct_polytope(data)?;
    let mut all = Vec::new();
    for facet in &lct.facets {
        let firing: Vec<&usize> = facet
            .divisors
            .iter()
            .filter(|&&e| {
                data.divisors[e]
                    .orders
                    .iter()
                    .zip(&weight.a)
                    .any(|(&n, &a)| n != 0 && a != 0)
            })
            .collect();
        if firing.is_empty() {
            continue;
        }
        for &&e in &firing {
            let d = &data.divisors[e];
            all.push(Component::new(
                component_form(&d.orders, d.k + 1),
                Provenance::LctFacet,
                vec![(d.name.clone(), 1)],
            ));
        }
    }
    Ok(merge(all))
}

/// For each jumping-wall facet whose relative interior meets the open region
/// KLT_a(F) intersected with the positive orthant: the component of its wall
/// hyperplane. Decided by exact strict feasibility.
pub fn jumping_wall_components(
    data: &ResolutionData,
    weight: &WeightVector,
    elements: &[TestElement],
    box_lo: &[Rat],
    box_hi: &[Rat],
    cell_budget: usize,
) -> Result<Vec<Component>, WallsError> {
    assert_eq!(weight.a.len(), data.r, "weight vector length must equal r");
    let complex = walls::wall_complex(data, elements, box_lo, box_hi, cell_budget)?;
    let r = data.r;
    // strict KLT constraints, one per divisor
    let klt: Vec<HalfSpace> = data
        .divisors
        .iter()
        .map(|d| {
            let shift: u64 = d.orders.iter().zip(&weight.a).map(|(&n, &a)| n * a).sum();
            let coeffs: Vec<Rat> = d.orders.iter().map(|&n| rat_u64(n)).collect();
            HalfSpace::lt(AffineForm::new(coeffs, -rat_u64(d.k + 1 + shift)))
        })
        .collect();
    let positives: Vec<HalfSpace> = (0..r)
        .map(|j| {
            let mut coeffs = vec![Rat::zero(); r];
            coeffs[j] = -Rat::one();
            HalfSpace::lt(AffineForm::new(coeffs, Rat::zero()))
        })
        .collect();
    let strict_box: Vec<HalfSpace> = (0..r)
        .flat_map(|j| {
            let mut low = vec![Rat::zero(); r];
            low[j] = -Rat::one();
            let mut high = vec![Rat::zero(); r];
            high[j] = Rat::one();
            [
                HalfSpace::lt(AffineForm::new(low, box_lo[j].clone())),
                HalfSpace::lt(AffineForm::new(high, -box_hi[j].clone())),
            ]
        })
        .collect();

    let mut all = Vec::new();
    for jf in &complex.jump_facets {
        let candidate = &complex.candidates[jf.candidate];
        // the facet sample is already in its relative interior and strictly
        // inside the box; if it satisfies the KLT constraints the facet
        // meets the region and no feasibility call is needed
        let sample = &complex.arrangement.facets[jf.facet].sample;
        let sample_in_klt =
            klt.iter().all(|hs| hs.contains(sample)) && sample.iter().all(|c| c.is_positive());
        if !sample_in_klt {
            let low_signs = &complex.arrangement.cells[jf.low_cell].signs;
            let mut system: Vec<HalfSpace> = vec![HalfSpace::eq(candidate.form.clone())];
            for (j, form) in complex.arrangement.forms.iter().enumerate() {
                if j == jf.candidate {
                    continue;
                }
                system.push(if low_signs[j] < 0 {
                    HalfSpace::lt(form.clone())
                } else {
                    HalfSpace::lt(form.negated())
                });
            }
            system.extend(strict_box.iter().cloned());
            system.extend(klt.iter().cloned());
            system.extend(positives.iter().cloned());
            if strict_feasible(&system, r)
                .map_err(WallsError::Polyhedra)?
                .is_none()
            {
                continue;
            }
        }
        let sources: Vec<(String, u64)> = candidate
            .sources
            .iter()
            .map(|&(e, c)| (data.divisors[e].name.clone(), c))
            .collect();
        let form = AffineForm::new(
            candidate.form.coeffs.clone(),
            -candidate.form.constant.clone(),
        );
        debug_assert!(form.constant.is_positive());
        all.push(Component {
            form,
            provenance: vec![Provenance::JumpingWall],
            sources,
        });
    }
    Ok(merge(all))
}

/// The explicit polynomial annihilating the pulled-back module upstairs:
/// over the divisors of `stratum` (or all divisors), the product of
/// `sum_j N_E,j s_j + k_E + c` for c = 1..sum_j a_j N_E,j. Kept factored.
pub fn upstairs_b(
    data: &ResolutionData,
    weight: &WeightVector,
    stratum: Option<&[usize]>,
) -> FactoredPoly {
    assert_eq!(weight.a.len(), data.r, "weight vector length must equal r");
    let indices: Vec<usize> = match stratum {
        Some(s) => s.to_vec(),
        None => (0..data.divisors.len()).collect(),
    };
    let mut forms = Vec::new();
    for e in indices {
        let d = &data.divisors[e];
        let m: u64 = d.orders.iter().zip(&weight.a).map(|(&n, &a)| n * a).sum();
        for c in 1..=m {
            forms.push(component_form(&d.orders, d.k + c));
        }
    }
    FactoredPoly::from_forms(forms)
}

/// Default candidate-shift bound: twice the largest `k_E + sum_j a_j N_E,j`.
pub fn default_c_max(data: &ResolutionData, weight: &WeightVector) -> u64 {
    let m = data
        .divisors
        .iter()
        .map(|d| {
            d.k + d
                .orders
                .iter()
                .zip(&weight.a)
                .map(|(&n, &a)| n * a)
                .sum::<u64>()
        })
        .max()
        .unwrap_or(1);
    2 * m.max(1)
}

#[derive(Debug, thiserror::Error)]
pub enum ReferenceError {
    #[error("invalid reference json at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(
        "reference factor {index}: coefficient vector has length {got}, expected r = {expected}"
    )]
    Dim {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("reference factor {index}: not a codimension-one shape (requires l >= 0 componentwise and b > 0)")]
    Shape { index: usize },
}

#[derive(Debug, serde::Deserialize)]
struct RawReferenceFactor {
    coeffs: Vec<i64>,
    b: i64,
}

/// Parses a reference ideal given as a product of rational linear forms
/// `{"coeffs": [l_1, .., l_r], "b": b}` in lowest integer terms. Anything
/// not of that shape is rejected rather than factored.
pub fn parse_reference(text: &str, r: usize) -> Result<Vec<Component>, ReferenceError> {
    let raw: Vec<RawReferenceFactor> =
        serde_json::from_str(text).map_err(|e| ReferenceError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    let mut all = Vec::new();
    for (index, f) in raw.iter().enumerate() {
        if f.coeffs.len() != r {
            return Err(ReferenceError::Dim {
                index,
                got: f.coeffs.len(),
                expected: r,
            });
        }
        if f.b <= 0 || f.coeffs.iter().any(|&c| c < 0) || f.coeffs.iter().all(|&c| c == 0) {
            return Err(ReferenceError::Shape { index });
        }
        let form = AffineForm::from_ints(&f.coeffs, f.b).canonical_hyperplane();
        all.push(Component::new(form, Provenance::Reference, Vec::new()));
    }
    Ok(merge(all))
}

/// The sign conditions every codimension-one component must satisfy:
/// l >= 0 componentwise, b > 0, and l_j > 0 for some j with a_j != 0.
pub fn sign_conditions_hold(form: &AffineForm, weight: &WeightVector) -> bool {
    form.constant.is_positive()
        && form.coeffs.iter().all(|c| !c.is_negative())
        && form
            .coeffs
            .iter()
            .zip(&weight.a)
            .any(|(l, &a)| l.is_positive() && a != 0)
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub lower: Vec<Component>,
    pub upper: Vec<Component>,
    pub reference: Option<Vec<Component>>,
    pub lower_in_upper: bool,
    pub lower_in_reference: Option<bool>,
    pub reference_in_upper: Option<bool>,
    pub c_max: u64,
    /// Real-resolution data: the components bound the zero locus of the
    /// local real Bernstein-Sato ideal instead; the arithmetic is identical.
    pub real_mode: bool,
    pub prop13_families: Vec<Prop13Family>,
    pub box_lo: Vec<Rat>,
    pub box_hi: Vec<Rat>,
}

/// Assembles the full lower/upper bound comparison.
pub fn report(
    data: &ResolutionData,
    weight: &WeightVector,
    elements: &[TestElement],
    wall_box: Option<(Vec<Rat>, Vec<Rat>)>,
    c_max: Option<u64>,
    reference: Option<Vec<Component>>,
    cell_budget: usize,
) -> Result<BoundsReport, WallsError> {
    let c_max = c_max.unwrap_or_else(|| default_c_max(data, weight));
    let (box_lo, box_hi) = match wall_box {
        Some(b) => b,
        None => walls::default_box(data, weight)?,
    };
    let (prop13, prop13_families) = prop13_components(data, weight);
    let lct = lct_facet_components(data, weight)?;
    let jumping = jumping_wall_components(data, weight, elements, &box_lo, &box_hi, cell_budget)?;
    let lower = merge(prop13.into_iter().chain(lct).chain(jumping));
    let upper = upper_family(data, c_max);
    let lower_in_upper = is_subset(&lower, &upper);
    let lower_in_reference = reference.as_ref().map(|r| is_subset(&lower, r));
    let reference_in_upper = reference.as_ref().map(|r| is_subset(r, &upper));
    Ok(BoundsReport {
        lower,
        upper,
        reference,
        lower_in_upper,
        lower_in_reference,
        reference_in_upper,
        c_max,
        real_mode: data.real_mode,
        prop13_families,
        box_lo,
        box_hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Divisor, DivisorKind};
    use crate::rat::{rat, rat_int};

    fn node_line_data() -> ResolutionData {
        ResolutionData {
            r: 2,
            divisors: vec![
                Divisor {
                    name: "E1".into(),
                    orders: vec![1, 0],
                    k: 0,
                    kind: DivisorKind::StrictTransform,
                },
                Divisor {
                    name: "E2".into(),
                    orders: vec![0, 1],
                    k: 0,
                    kind: DivisorKind::StrictTransform,
                },
                Divisor {
                    name: "E0".into(),
                    orders: vec![2, 1],
                    k: 1,
                    kind: DivisorKind::Exceptional,
                },
            ],
            strata: vec![vec![0, 2], vec![1, 2]],
            real_mode: false,
            dim: Some(2),
        }
    }

    fn w(a: &[u64]) -> WeightVector {
        WeightVector { a: a.to_vec() }
    }

    fn form(c: &[i64], b: i64) -> AffineForm {
        AffineForm::from_ints(c, b)
    }

    fn forms(components: &[Component]) -> Vec<AffineForm> {
        components.iter().map(|c| c.form.clone()).collect()
    }

    #[test]
    fn upper_family_node_line() {
        let upper = upper_family(&node_line_data(), 7);
        let fs = forms(&upper);
        assert_eq!(fs.len(), 21);
        for c in 1..=7 {
            assert!(fs.contains(&form(&[1, 0], c)));
            assert!(fs.contains(&form(&[0, 1], c)));
            assert!(fs.contains(&form(&[2, 1], 1 + c)));
        }
    }

    #[test]
    fn upper_family_deduplicates() {
        let mut data = node_line_data();
        data.divisors.push(data.divisors[0].clone());
        assert_eq!(upper_family(&data, 3).len(), 9);
        let single = ResolutionData {
            r: 1,
            divisors: vec![Divisor {
                name: "C".into(),
                orders: vec![1],
                k: 0,
                kind: DivisorKind::StrictTransform,
            }],
            strata: vec![],
            real_mode: false,
            dim: None,
        };
        assert_eq!(forms(&upper_family(&single, 1)), vec![form(&[1], 1)]);
    }

    #[test]
    fn prop13_node_line() {
        let (components, families) = prop13_components(&node_line_data(), &w(&[1, 2]));
        assert_eq!(
            forms(&components),
            vec![form(&[0, 1], 1), form(&[0, 1], 2), form(&[1, 0], 1)]
        );
        let e2 = families.iter().find(|f| f.divisor == "E2").unwrap();
        assert_eq!(e2.m, 2);
        assert_eq!(
            e2.witness.factors,
            vec![(form(&[0, 1], 1), 1), (form(&[0, 1], 2), 1)]
        );
    }

    #[test]
    fn prop13_skips_zero_weighted_orders() {
        let (components, _) = prop13_components(&node_line_data(), &w(&[1, 0]));
        // E2 has weighted order 0 under a = (1,0)
        assert_eq!(forms(&components), vec![form(&[1, 0], 1)]);
    }

    #[test]
    fn prop13_squared_coordinate() {
        // f = x^2 as a single strict transform, a = 1: roots -1/2 and -1
        let data = ResolutionData {
            r: 1,
            divisors: vec![Divisor {
                name: "C".into(),
                orders: vec![2],
                k: 0,
                kind: DivisorKind::StrictTransform,
            }],
            strata: vec![],
            real_mode: false,
            dim: None,
        };
        let (components, _) = prop13_components(&data, &w(&[1]));
        assert_eq!(forms(&components), vec![form(&[1], 1), form(&[2], 1)]);
        let roots: Vec<Rat> = components.iter().map(|c| c.root().unwrap()).collect();
        assert!(roots.contains(&rat(-1, 2)) && roots.contains(&rat_int(-1)));
    }

    #[test]
    fn lct_facet_components_node_line() {
        let comps = lct_facet_components(&node_line_data(), &w(&[1, 2])).unwrap();
        assert_eq!(
            forms(&comps),
            vec![form(&[0, 1], 1), form(&[1, 0], 1), form(&[2, 1], 2)]
        );
    }

    #[test]
    fn lct_facet_eligibility_filter() {
        // facet supported only by a divisor with orders (0,1) under a = (1,0)
        let data = ResolutionData {
            r: 2,
            divisors: vec![
                Divisor {
                    name: "A".into(),
                    orders: vec![1, 0],
                    k: 0,
                    kind: DivisorKind::StrictTransform,
                },
                Divisor {
                    name: "B".into(),
                    orders: vec![0, 1],
                    k: 0,
                    kind: DivisorKind::StrictTransform,
                },
            ],
            strata: vec![],
            real_mode: false,
            dim: None,
        };
        let comps = lct_facet_components(&data, &w(&[1, 0])).unwrap();
        assert_eq!(forms(&comps), vec![form(&[1, 0], 1)]);
    }

    #[test]
    fn lct_facet_in_one_variable_realizes_the_threshold() {
        // f = x^2: the single facet gives 2s + 1, root -1/2 = -lct
        let data = ResolutionData {
            r: 1,
            divisors: vec![Divisor {
                name: "C".into(),
                orders: vec![2],
                k: 0,
                kind: DivisorKind::StrictTransform,
            }],
            strata: vec![],
            real_mode: false,
            dim: None,
        };
        let comps = lct_facet_components(&data, &w(&[1])).unwrap();
        assert_eq!(forms(&comps), vec![form(&[2], 1)]);
        assert_eq!(comps[0].root().unwrap(), rat(-1, 2));
    }

    #[test]
    fn real_mode_is_carried_into_the_report() {
        let mut data = node_line_data();
        data.real_mode = true;
        let rep = report(
            &data,
            &w(&[1, 2]),
            &[],
            Some((vec![rat_int(0), rat_int(0)], vec![rat_int(3), rat_int(3)])),
            None,
            None,
            crate::polyhedra::DEFAULT_CELL_BUDGET,
        )
        .unwrap();
        assert!(rep.real_mode);
    }

    #[test]
    fn upstairs_b_examples() {
        let data = node_line_data();
        // stratum {E1, E0}
        let b = upstairs_b(&data, &w(&[1, 2]), Some(&[0, 2]));
        let expected: Vec<(AffineForm, u32)> = vec![
            (form(&[1, 0], 1), 1),
            (form(&[2, 1], 2), 1),
            (form(&[2, 1], 3), 1),
            (form(&[2, 1], 4), 1),
            (form(&[2, 1], 5), 1),
        ];
        assert_eq!(b.factors, expected);

        let smooth = ResolutionData {
            r: 1,
            divisors: vec![Divisor {
                name: "C".into(),
                orders: vec![1],
                k: 0,
                kind: DivisorKind::StrictTransform,
            }],
            strata: vec![],
            real_mode: false,
            dim: None,
        };
        assert_eq!(
            upstairs_b(&smooth, &w(&[1]), None).factors,
            vec![(form(&[1], 1), 1)]
        );

        // f = x^N: zero set contains the classical roots -c/N
        for n in 1..=4u64 {
            let data = ResolutionData {
                r: 1,
                divisors: vec![Divisor {
                    name: "C".into(),
                    orders: vec![n],
                    k: 0,
                    kind: DivisorKind::StrictTransform,
                }],
                strata: vec![],
                real_mode: false,
                dim: None,
            };
            let b = upstairs_b(&data, &w(&[1]), None);
            assert_eq!(b.factors.len() as u64, n);
        }
    }

    #[test]
    fn default_c_max_covers_the_upstairs_range_twice() {
        assert_eq!(default_c_max(&node_line_data(), &w(&[1, 2])), 10);
    }

    #[test]
    fn reference_parsing() {
        let good = r#"[{"coeffs":[2,1],"b":2},{"coeffs":[1,0],"b":1}]"#;
        let comps = parse_reference(good, 2).unwrap();
        assert_eq!(forms(&comps), vec![form(&[1, 0], 1), form(&[2, 1], 2)]);
        assert!(matches!(
            parse_reference(r#"[{"coeffs":[1],"b":1}]"#, 2),
            Err(ReferenceError::Dim { .. })
        ));
        assert!(matches!(
            parse_reference(r#"[{"coeffs":[1,0],"b":0}]"#, 2),
            Err(ReferenceError::Shape { .. })
        ));
        assert!(matches!(
            parse_reference(r#"[{"coeffs":[-1,0],"b":1}]"#, 2),
            Err(ReferenceError::Shape { .. })
        ));
        assert!(matches!(
            parse_reference("nonsense", 2),
            Err(ReferenceError::Parse { .. })
        ));
    }

    #[test]
    fn sign_conditions() {
        let a = w(&[1, 2]);
        assert!(sign_conditions_hold(&form(&[2, 1], 2), &a));
        assert!(!sign_conditions_hold(&form(&[2, 1], 0), &a)); // b must be positive
        assert!(!sign_conditions_hold(&form(&[0, 1], 1), &w(&[1, 0])));
    }
}
