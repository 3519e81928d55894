//! Mixed-multiplier-ideal membership of test elements, regions of constancy,
//! and the jumping-wall complex inside a box.
//!
//! The ideal is modeled by its trace on the finite test set: h lies in the
//! ideal at lambda iff ord_E(h) + k_E >= floor(sum_j lambda_j ord_E(f_j)) for
//! every divisor E. The model is exact on the test set; walls that only
//! elements outside the set would detect are invisible at this resolution.

use crate::model::{ResolutionData, TestElement, WeightVector};
use crate::polyhedra::{self, AffineForm, Arrangement, PolyhedraError};
use crate::rat::{floor_int, rat, rat_u64, Rat};
use crate::regions;
use num::bigint::BigInt;
use num::Zero;

#[derive(Debug, thiserror::Error)]
pub enum WallsError {
    #[error(transparent)]
    Polyhedra(#[from] PolyhedraError),
    #[error("point lies on a wall; the region of constancy is undefined at this resolution of the model")]
    PointOnWall,
    #[error("point lies outside the complex box")]
    OutsideBox,
}

/// Subset of the test-element list lying in the ideal at a point, in input
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MembershipPattern {
    words: Vec<u64>,
    len: usize,
}

impl MembershipPattern {
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut words = vec![0u64; bits.len().div_ceil(64)];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        MembershipPattern {
            words,
            len: bits.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn member(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &MembershipPattern) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &MembershipPattern) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn member_names<'a>(&self, elements: &'a [TestElement]) -> Vec<&'a str> {
        (0..self.len)
            .filter(|&i| self.member(i))
            .map(|i| elements[i].name.as_str())
            .collect()
    }
}

/// Divisorial membership criterion: h lies in the ideal at lambda iff
/// ord_E(h) + k_E >= floor(sum_j lambda_j ord_E(f_j)) for every divisor E.
pub fn membership(h: &TestElement, lambda: &[Rat], data: &ResolutionData) -> bool {
    debug_assert_eq!(lambda.len(), data.r);
    debug_assert_eq!(h.orders.len(), data.divisors.len());
    data.divisors.iter().zip(&h.orders).all(|(d, &ord)| {
        let mut acc = Rat::zero();
        for (&n, l) in d.orders.iter().zip(lambda) {
            if n != 0 {
                acc += rat_u64(n) * l;
            }
        }
        BigInt::from(ord + d.k) >= floor_int(&acc)
    })
}

/// Pointwise membership over the whole test set; bit order = input order.
/// Antitone: componentwise larger lambda gives a smaller pattern.
pub fn pattern(
    lambda: &[Rat],
    data: &ResolutionData,
    elements: &[TestElement],
) -> MembershipPattern {
    let bits: Vec<bool> = elements
        .iter()
        .map(|h| membership(h, lambda, data))
        .collect();
    MembershipPattern::from_bools(&bits)
}

/// A candidate wall hyperplane `sum_j N_j lambda_j = k + c` with the divisors
/// and offsets producing it.
#[derive(Debug, Clone)]
pub struct CandidateForm {
    /// Canonical form `sum_j N_j lambda_j - (k + c)`.
    pub form: AffineForm,
    /// (divisor index, c) pairs; distinct divisors can cut the same wall.
    pub sources: Vec<(usize, u64)>,
}

/// All hyperplanes `sum_j N_j lambda_j = k_E + c`, c >= 1, meeting the box
/// interior; deduplicated after normalization.
pub fn candidate_forms(
    data: &ResolutionData,
    box_lo: &[Rat],
    box_hi: &[Rat],
) -> Vec<CandidateForm> {
    let mut out: Vec<CandidateForm> = Vec::new();
    for (i, d) in data.divisors.iter().enumerate() {
        if d.orders.iter().all(|&n| n == 0) {
            continue;
        }
        // orders are nonnegative, so the form range over the box is
        // [value(lo), value(hi)]
        let value = |point: &[Rat]| -> Rat {
            d.orders
                .iter()
                .zip(point)
                .map(|(&n, x)| rat_u64(n) * x)
                .sum()
        };
        let min = value(box_lo);
        let max = value(box_hi);
        let mut c = 1u64;
        loop {
            let threshold = rat_u64(d.k + c);
            if threshold >= max {
                break;
            }
            if threshold > min {
                let coeffs: Vec<Rat> = d.orders.iter().map(|&n| rat_u64(n)).collect();
                let form = AffineForm::new(coeffs, -threshold).canonical_hyperplane();
                match out.iter_mut().find(|cf| cf.form == form) {
                    Some(cf) => cf.sources.push((i, c)),
                    None => out.push(CandidateForm {
                        form,
                        sources: vec![(i, c)],
                    }),
                }
            }
            c += 1;
        }
    }
    // slope-major, increasing threshold (the constant is -(k+c))
    out.sort_by(|a, b| {
        a.form
            .coeffs
            .cmp(&b.form.coeffs)
            .then(b.form.constant.cmp(&a.form.constant))
    });
    out
}

/// A wall facet where the ideal jumps: the pattern on the high side is a
/// strict subset of the pattern on the low side.
#[derive(Debug, Clone)]
pub struct JumpFacet {
    /// Index into `arrangement.facets`.
    pub facet: usize,
    /// Index into `candidates` (same indexing as `arrangement.forms`).
    pub candidate: usize,
    pub low_cell: usize,
    pub high_cell: usize,
}

#[derive(Debug, Clone)]
pub struct WallComplex {
    pub arrangement: Arrangement,
    pub candidates: Vec<CandidateForm>,
    /// One membership pattern per arrangement cell.
    pub patterns: Vec<MembershipPattern>,
    pub jump_facets: Vec<JumpFacet>,
}

/// Decomposes the box along the candidate walls and labels each cell with its
/// membership pattern.
pub fn wall_complex(
    data: &ResolutionData,
    elements: &[TestElement],
    box_lo: &[Rat],
    box_hi: &[Rat],
    cell_budget: usize,
) -> Result<WallComplex, WallsError> {
    let candidates = candidate_forms(data, box_lo, box_hi);
    let forms: Vec<AffineForm> = candidates.iter().map(|c| c.form.clone()).collect();
    let arrangement = polyhedra::decompose(box_lo, box_hi, &forms, cell_budget)?;
    debug_assert_eq!(
        arrangement.forms, forms,
        "candidates are already canonical and deduped"
    );
    let patterns: Vec<MembershipPattern> = arrangement
        .cells
        .iter()
        .map(|cell| pattern(&cell.sample, data, elements))
        .collect();
    let mut jump_facets = Vec::new();
    for (fi, facet) in arrangement.facets.iter().enumerate() {
        let low = &patterns[facet.low_cell];
        let high = &patterns[facet.high_cell];
        if high.is_strict_subset(low) {
            jump_facets.push(JumpFacet {
                facet: fi,
                candidate: facet.form_index,
                low_cell: facet.low_cell,
                high_cell: facet.high_cell,
            });
        }
    }
    Ok(WallComplex {
        arrangement,
        candidates,
        patterns,
        jump_facets,
    })
}

/// Default wall box: the bounding box of the closure of KLT_a(F), expanded
/// upward by 1/2.
pub fn default_box(
    data: &ResolutionData,
    weight: &WeightVector,
) -> Result<(Vec<Rat>, Vec<Rat>), PolyhedraError> {
    let klt = regions::klt_region(data, weight)?;
    let lo = vec![Rat::zero(); data.r];
    let hi: Vec<Rat> = klt.sup.iter().map(|s| s + rat(1, 2)).collect();
    Ok((lo, hi))
}

/// Cells belonging to the region of constancy through `lambda`: all cells
/// whose pattern contains the pattern at `lambda` (every member at `lambda`
/// remains a member).
pub fn region_of_constancy(
    lambda: &[Rat],
    complex: &WallComplex,
    data: &ResolutionData,
    elements: &[TestElement],
) -> Result<Vec<usize>, WallsError> {
    let arr = &complex.arrangement;
    let inside = lambda
        .iter()
        .zip(arr.box_lo.iter().zip(&arr.box_hi))
        .all(|(x, (lo, hi))| lo <= x && x <= hi);
    if !inside {
        return Err(WallsError::OutsideBox);
    }
    if arr.forms.iter().any(|f| f.eval(lambda).is_zero()) {
        return Err(WallsError::PointOnWall);
    }
    let home = arr.locate(lambda).ok_or(WallsError::PointOnWall)?;
    debug_assert_eq!(complex.patterns[home], pattern(lambda, data, elements));
    let target = &complex.patterns[home];
    Ok((0..arr.cells.len())
        .filter(|&i| target.is_subset(&complex.patterns[i]))
        .collect())
}
