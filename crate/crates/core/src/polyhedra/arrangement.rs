//! Cell decomposition of a closed rational box by affine hyperplanes.
//!
//! Cells are the nonempty open sign classes of the cutting forms; each comes
//! with an exact interior sample point. Facets are the codimension-one walls
//! between two cells, each with a relative-interior sample. Degenerate sign
//! classes (empty interior) are discarded by exact feasibility checks, never
//! by perturbation.

use super::form::{AffineForm, HalfSpace};
use super::{fm, PolyhedraError};
use crate::rat::Rat;
use num::One;
use std::collections::HashMap;

pub const DEFAULT_CELL_BUDGET: usize = 100_000;

#[derive(Debug, Clone)]
pub struct Cell {
    /// One sign (+1 or -1) per cutting form; the sample satisfies them
    /// strictly.
    pub signs: Vec<i8>,
    pub sample: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct ArrFacet {
    pub form_index: usize,
    /// Cell on the side where the form is negative.
    pub low_cell: usize,
    /// Cell on the side where the form is positive.
    pub high_cell: usize,
    pub sample: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub box_lo: Vec<Rat>,
    pub box_hi: Vec<Rat>,
    /// Cutting hyperplanes, canonical and deduplicated (input order kept).
    pub forms: Vec<AffineForm>,
    /// Sorted by sign vector.
    pub cells: Vec<Cell>,
    /// Sorted by (form_index, low_cell, high_cell).
    pub facets: Vec<ArrFacet>,
}

impl Arrangement {
    /// Cell index of a point off the cut loci; `None` on a cutting form or
    /// outside every cell.
    pub fn locate(&self, point: &[Rat]) -> Option<usize> {
        let mut signs = Vec::with_capacity(self.forms.len());
        for f in &self.forms {
            let v = f.eval(point);
            if num::Zero::is_zero(&v) {
                return None;
            }
            signs.push(if v > Rat::from_integer(0.into()) {
                1
            } else {
                -1
            });
        }
        self.cells.iter().position(|c| c.signs == signs)
    }
}

fn strict_box(lo: &[Rat], hi: &[Rat]) -> Vec<HalfSpace> {
    let dim = lo.len();
    let mut out = Vec::with_capacity(2 * dim);
    for j in 0..dim {
        let mut low = vec![Rat::from_integer(0.into()); dim];
        low[j] = -Rat::one();
        out.push(HalfSpace::lt(AffineForm::new(low, lo[j].clone())));
        let mut high = vec![Rat::from_integer(0.into()); dim];
        high[j] = Rat::one();
        out.push(HalfSpace::lt(AffineForm::new(high, -hi[j].clone())));
    }
    out
}

fn signed(form: &AffineForm, sign: i8) -> HalfSpace {
    if sign < 0 {
        HalfSpace::lt(form.clone())
    } else {
        HalfSpace::lt(form.negated())
    }
}

/// Decomposes the box `[lo, hi]` by the given forms.
pub fn decompose(
    box_lo: &[Rat],
    box_hi: &[Rat],
    forms: &[AffineForm],
    cell_budget: usize,
) -> Result<Arrangement, PolyhedraError> {
    let dim = box_lo.len();
    assert_eq!(box_hi.len(), dim);
    if box_lo.iter().zip(box_hi).any(|(l, h)| l >= h) {
        return Err(PolyhedraError::DegenerateBox);
    }
    let mut cutting: Vec<AffineForm> = Vec::new();
    for f in forms {
        assert_eq!(f.dim(), dim, "form dimension mismatch");
        let c = f.canonical_hyperplane();
        if c.coeffs.iter().all(num::Zero::is_zero) {
            return Err(PolyhedraError::ConstantForm);
        }
        if !cutting.contains(&c) {
            cutting.push(c);
        }
    }

    let base = strict_box(box_lo, box_hi);
    // Incremental splitting. Each working cell keeps, besides its sign
    // vector and sample, a pruned "active" subset of its sign constraints
    // cutting out exactly the same region; feasibility checks then stay
    // small no matter how many forms the arrangement has.
    struct Working {
        signs: Vec<i8>,
        sample: Vec<Rat>,
        active: Vec<(usize, i8)>,
    }
    let prune_threshold = 2 * dim + 4;
    let prune = |active: &mut Vec<(usize, i8)>| -> Result<(), PolyhedraError> {
        if active.len() <= prune_threshold {
            return Ok(());
        }
        let mut i = 0;
        while i < active.len() {
            let mut system = base.clone();
            for (j, &(fi, s)) in active.iter().enumerate() {
                if j == i {
                    // negate: the region escapes this constraint iff the
                    // constraint is irredundant
                    let hs = signed(&cutting[fi], s);
                    system.push(HalfSpace::le(hs.form.negated()));
                } else {
                    system.push(signed(&cutting[fi], s));
                }
            }
            if fm_feasible(&system, dim)?.is_none() {
                active.remove(i);
            } else {
                i += 1;
            }
        }
        Ok(())
    };
    let seed = fm_feasible(&base, dim)?.ok_or(PolyhedraError::DegenerateBox)?;
    let mut partial: Vec<Working> = vec![Working {
        signs: Vec::new(),
        sample: seed,
        active: Vec::new(),
    }];
    for (fi, form) in cutting.iter().enumerate() {
        let mut next = Vec::new();
        for cell in &partial {
            let value = form.eval(&cell.sample);
            let sample_side: Option<i8> = if num::Zero::is_zero(&value) {
                None
            } else {
                Some(if value > Rat::from_integer(0.into()) {
                    1
                } else {
                    -1
                })
            };
            for sign in [-1i8, 1] {
                let mut signs = cell.signs.clone();
                signs.push(sign);
                let mut active = cell.active.clone();
                active.push((fi, sign));
                let sample = if sample_side == Some(sign) {
                    Some(cell.sample.clone())
                } else {
                    let mut system = base.clone();
                    for &(fj, s) in &active {
                        system.push(signed(&cutting[fj], s));
                    }
                    fm_feasible(&system, dim)?
                };
                if let Some(sample) = sample {
                    prune(&mut active)?;
                    next.push(Working {
                        signs,
                        sample,
                        active,
                    });
                }
            }
        }
        if next.len() > cell_budget {
            return Err(PolyhedraError::ArrangementTooLarge {
                cells: next.len(),
                budget: cell_budget,
            });
        }
        partial = next;
    }
    partial.sort_by(|a, b| a.signs.cmp(&b.signs));
    let cells: Vec<Cell> = partial
        .iter()
        .map(|w| Cell {
            signs: w.signs.clone(),
            sample: w.sample.clone(),
        })
        .collect();

    // facets: cells differing in exactly one sign, separated by a wall of
    // full codimension one. Feasibility runs on the union of the two active
    // sets; a sample accidentally lying on a pruned form falls back to the
    // full sign stack.
    let mut facets = Vec::new();
    for i in 0..cutting.len() {
        let mut by_mask: HashMap<Vec<i8>, [Option<usize>; 2]> = HashMap::new();
        for (ci, cell) in cells.iter().enumerate() {
            let mut key = cell.signs.clone();
            let sign = key[i];
            key[i] = 0;
            let slot = by_mask.entry(key).or_insert([None, None]);
            slot[if sign < 0 { 0 } else { 1 }] = Some(ci);
        }
        let mut keys: Vec<Vec<i8>> = by_mask.keys().cloned().collect();
        keys.sort();
        for key in keys {
            let [Some(low), Some(high)] = by_mask[&key] else {
                continue;
            };
            let mut quick = base.clone();
            quick.push(HalfSpace::eq(cutting[i].clone()));
            for &(fj, s) in partial[low]
                .active
                .iter()
                .chain(partial[high].active.iter())
            {
                if fj != i {
                    quick.push(signed(&cutting[fj], s));
                }
            }
            let candidate = match fm_feasible(&quick, dim)? {
                None => None,
                Some(sample) => {
                    let clean = cutting
                        .iter()
                        .enumerate()
                        .all(|(j, f)| j == i || !num::Zero::is_zero(&f.eval(&sample)));
                    if clean {
                        Some(sample)
                    } else {
                        // rare: resolve against the full stack
                        let mut system = base.clone();
                        system.push(HalfSpace::eq(cutting[i].clone()));
                        for (j, &s) in key.iter().enumerate() {
                            if j != i {
                                system.push(signed(&cutting[j], s));
                            }
                        }
                        fm_feasible(&system, dim)?
                    }
                }
            };
            if let Some(sample) = candidate {
                facets.push(ArrFacet {
                    form_index: i,
                    low_cell: low,
                    high_cell: high,
                    sample,
                });
            }
        }
    }
    facets.sort_by_key(|f| (f.form_index, f.low_cell, f.high_cell));

    Ok(Arrangement {
        box_lo: box_lo.to_vec(),
        box_hi: box_hi.to_vec(),
        forms: cutting,
        cells,
        facets,
    })
}

fn fm_feasible(system: &[HalfSpace], dim: usize) -> Result<Option<Vec<Rat>>, PolyhedraError> {
    fm::feasible_point(system, dim)
}
