//! Fourier–Motzkin elimination over exact rationals.
//!
//! Decides feasibility of systems with mixed {<=, <, =} senses, produces a
//! rational sample point when feasible and a contradiction certificate (a
//! combination of the input constraints, nonnegative on the inequalities)
//! when not. Strict inequalities are handled exactly: a derived constraint is
//! strict iff one of its parents is.

use super::form::{HalfSpace, Sense};
use super::PolyhedraError;
use crate::rat::Rat;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use std::collections::HashSet;

#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rat>,
    constant: Rat,
    sense: Sense,
    mults: Vec<Rat>,
}

impl Row {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// A constant row that cannot hold.
    fn is_contradiction(&self) -> bool {
        self.is_constant()
            && match self.sense {
                Sense::Le => self.constant.is_positive(),
                Sense::Lt => !self.constant.is_negative(),
                Sense::Eq => !self.constant.is_zero(),
            }
    }

    /// Rescales so that coefficients and constant are coprime integers
    /// (positive scale; multipliers follow).
    fn normalize(&mut self) {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for e in self.coeffs.iter().chain(std::iter::once(&self.constant)) {
            if !e.is_zero() {
                den_lcm = den_lcm.lcm(e.denom());
                num_gcd = num_gcd.gcd(e.numer());
            }
        }
        if num_gcd.is_zero() {
            return;
        }
        let s = Rat::new(den_lcm, num_gcd);
        if s.is_one() {
            return;
        }
        for e in self.coeffs.iter_mut() {
            *e = &*e * &s;
        }
        self.constant = &self.constant * &s;
        for m in self.mults.iter_mut() {
            *m = &*m * &s;
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Outcome {
    Sample(Vec<Rat>),
    /// Multipliers over the input constraints combining to a contradiction.
    /// Nonnegative on inequality rows; equality rows may carry any sign.
    Infeasible(Vec<Rat>),
}

/// Hard cap on the number of live rows; exceeding it is a budget error, not
/// an incorrect answer.
const ROW_CAP: usize = 1 << 18;

pub(crate) fn solve(constraints: &[HalfSpace], dim: usize) -> Result<Outcome, PolyhedraError> {
    solve_with(constraints, dim, true)
}

/// Feasibility only: no certificate bookkeeping (noticeably cheaper on the
/// many small systems of the arrangement code).
pub(crate) fn feasible_point(
    constraints: &[HalfSpace],
    dim: usize,
) -> Result<Option<Vec<Rat>>, PolyhedraError> {
    match solve_with(constraints, dim, false)? {
        Outcome::Sample(p) => Ok(Some(p)),
        Outcome::Infeasible(_) => Ok(None),
    }
}

fn solve_with(
    constraints: &[HalfSpace],
    dim: usize,
    track_multipliers: bool,
) -> Result<Outcome, PolyhedraError> {
    let n = constraints.len();
    let mut rows: Vec<Row> = constraints
        .iter()
        .enumerate()
        .map(|(i, hs)| {
            debug_assert_eq!(hs.form.dim(), dim, "constraint dimension mismatch");
            let mults = if track_multipliers {
                let mut m = vec![Rat::zero(); n];
                m[i] = Rat::one();
                m
            } else {
                Vec::new()
            };
            Row {
                coeffs: hs.form.coeffs.clone(),
                constant: hs.form.constant.clone(),
                sense: hs.sense,
                mults,
            }
        })
        .collect();

    if let Some(row) = rows.iter().find(|r| r.is_contradiction()) {
        return Ok(Outcome::Infeasible(row.mults.clone()));
    }

    // Equalities first: exact substitution, one variable each.
    let mut substitutions: Vec<(usize, Vec<Rat>, Rat)> = Vec::new();
    while let Some(eq_idx) = rows.iter().position(|r| r.sense == Sense::Eq) {
        let eq = rows.remove(eq_idx);
        if eq.is_constant() {
            // constant == 0 already checked above; a zero row is vacuous
            continue;
        }
        let pivot = eq.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let pc = eq.coeffs[pivot].clone();
        // x_pivot = -(constant + sum_{j != pivot} coeffs_j x_j) / pc
        let expr_coeffs: Vec<Rat> = eq
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| if j == pivot { Rat::zero() } else { -(c / &pc) })
            .collect();
        let expr_constant = -(&eq.constant / &pc);
        for row in rows.iter_mut() {
            if row.coeffs[pivot].is_zero() {
                continue;
            }
            let factor = &row.coeffs[pivot] / &pc;
            for (c, e) in row.coeffs.iter_mut().zip(&eq.coeffs) {
                *c = &*c - &(&factor * e);
            }
            row.constant = &row.constant - &(&factor * &eq.constant);
            for (m, em) in row.mults.iter_mut().zip(&eq.mults) {
                *m = &*m - &(&factor * em);
            }
            row.coeffs[pivot] = Rat::zero();
            row.normalize();
            if row.is_contradiction() {
                return Ok(Outcome::Infeasible(row.mults.clone()));
            }
        }
        substitutions.push((pivot, expr_coeffs, expr_constant));
    }

    let substituted: HashSet<usize> = substitutions.iter().map(|s| s.0).collect();

    // Inequality elimination, highest variable first.
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();
    for var in (0..dim).rev() {
        if substituted.contains(&var) {
            continue;
        }
        let snapshot = rows.clone();
        let mut kept: Vec<Row> = Vec::new();
        let mut uppers: Vec<Row> = Vec::new(); // coefficient > 0
        let mut lowers: Vec<Row> = Vec::new(); // coefficient < 0
        for row in rows.drain(..) {
            if row.coeffs[var].is_zero() {
                kept.push(row);
            } else if row.coeffs[var].is_positive() {
                uppers.push(row);
            } else {
                lowers.push(row);
            }
        }
        let mut seen: HashSet<(Vec<Rat>, Rat, Sense)> = kept
            .iter()
            .map(|r| (r.coeffs.clone(), r.constant.clone(), r.sense))
            .collect();
        for up in &uppers {
            for low in &lowers {
                // positive combination cancelling `var`
                let a = -low.coeffs[var].clone(); // > 0, scales `up`
                let b = up.coeffs[var].clone(); // > 0, scales `low`
                let coeffs: Vec<Rat> = up
                    .coeffs
                    .iter()
                    .zip(&low.coeffs)
                    .map(|(u, l)| &(&a * u) + &(&b * l))
                    .collect();
                let constant = &(&a * &up.constant) + &(&b * &low.constant);
                let sense = if up.sense == Sense::Lt || low.sense == Sense::Lt {
                    Sense::Lt
                } else {
                    Sense::Le
                };
                let mults: Vec<Rat> = up
                    .mults
                    .iter()
                    .zip(&low.mults)
                    .map(|(u, l)| &(&a * u) + &(&b * l))
                    .collect();
                let mut row = Row {
                    coeffs,
                    constant,
                    sense,
                    mults,
                };
                row.normalize();
                if row.is_contradiction() {
                    return Ok(Outcome::Infeasible(row.mults));
                }
                if row.is_constant() {
                    continue; // vacuously true
                }
                let key = (row.coeffs.clone(), row.constant.clone(), row.sense);
                if seen.insert(key) {
                    kept.push(row);
                }
                if kept.len() > ROW_CAP {
                    return Err(PolyhedraError::Budget {
                        what: "fourier-motzkin rows",
                        count: kept.len(),
                    });
                }
            }
        }
        rows = kept;
        stages.push((var, snapshot));
    }

    // Feasible: back-substitute a sample, last-eliminated variable first.
    let mut x: Vec<Option<Rat>> = vec![None; dim];
    for (var, stage_rows) in stages.iter().rev() {
        let mut lower: Option<(Rat, bool)> = None; // (value, strict)
        let mut upper: Option<(Rat, bool)> = None;
        for row in stage_rows {
            let cv = &row.coeffs[*var];
            if cv.is_zero() {
                continue;
            }
            let mut rest = row.constant.clone();
            for (j, c) in row.coeffs.iter().enumerate() {
                if j != *var && !c.is_zero() {
                    rest += c * x[j].as_ref().expect("later variables assigned");
                }
            }
            let bound = -(&rest / cv);
            let strict = row.sense.is_strict();
            if cv.is_positive() {
                // var <= bound
                upper = Some(match upper {
                    None => (bound, strict),
                    Some((u, us)) => match bound.cmp(&u) {
                        std::cmp::Ordering::Less => (bound, strict),
                        std::cmp::Ordering::Equal => (u, us || strict),
                        std::cmp::Ordering::Greater => (u, us),
                    },
                });
            } else {
                lower = Some(match lower {
                    None => (bound, strict),
                    Some((l, ls)) => match bound.cmp(&l) {
                        std::cmp::Ordering::Greater => (bound, strict),
                        std::cmp::Ordering::Equal => (l, ls || strict),
                        std::cmp::Ordering::Less => (l, ls),
                    },
                });
            }
        }
        let value = match (lower, upper) {
            (None, None) => Rat::zero(),
            (Some((l, ls)), None) => {
                if ls {
                    &l + &Rat::one()
                } else {
                    l
                }
            }
            (None, Some((u, us))) => {
                if us {
                    &u - &Rat::one()
                } else {
                    u
                }
            }
            (Some((l, _)), Some((u, _))) => {
                debug_assert!(l <= u, "inconsistent interval after elimination");
                if l == u {
                    l
                } else {
                    (&l + &u) / Rat::from_integer(BigInt::from(2))
                }
            }
        };
        x[*var] = Some(value);
    }
    // Substituted variables, most recent substitution first.
    for (var, coeffs, constant) in substitutions.iter().rev() {
        let mut value = constant.clone();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                value += c * x[j].as_ref().expect("substitution order");
            }
        }
        x[*var] = Some(value);
    }
    let sample: Vec<Rat> = x.into_iter().map(|v| v.unwrap_or_else(Rat::zero)).collect();
    debug_assert!(
        constraints.iter().all(|hs| hs.contains(&sample)),
        "sample must satisfy the system"
    );
    Ok(Outcome::Sample(sample))
}
