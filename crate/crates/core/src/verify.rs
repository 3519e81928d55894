//! Independent brute-force oracles used by the test suite and the `verify`
//! command. These deliberately share no code with the engines they check:
//! grid membership is decided with integer division instead of rational
//! floors, and vertex candidates are solved with hand-expanded determinants
//! instead of Gaussian elimination.

use crate::model::{ResolutionData, TestElement};
use crate::polyhedra::{HalfSpace, Sense};
use crate::rat::{rat_u64, Rat};
use crate::walls::WallComplex;
use num::bigint::BigInt;
use num::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("denominator must be at least 2, got {0}")]
    Denominator(u64),
    #[error("vertex oracle budget: at most {max_constraints} halfspaces in dimension <= {max_dim} (got {constraints} in dimension {dim})")]
    Budget {
        constraints: usize,
        dim: usize,
        max_constraints: usize,
        max_dim: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Integer-only membership: ord + k >= floor(numerator / denominator) where
/// numerator = sum_j i_j N_j for the grid point (i_1/d, ..., i_r/d).
fn grid_membership(
    h: &TestElement,
    numerators: &[BigInt],
    d: &BigInt,
    data: &ResolutionData,
) -> bool {
    data.divisors.iter().zip(&h.orders).all(|(div, &ord)| {
        let mut num = BigInt::zero();
        for (&n, i) in div.orders.iter().zip(numerators) {
            num += BigInt::from(n) * i;
        }
        // numerators are nonnegative here, so truncating division is floor
        BigInt::from(ord + div.k) >= &num / d
    })
}

/// Evaluates the membership pattern at every grid point i/denominator inside
/// the complex box and off the cut loci, locates the point's cell by exact
/// integer sign computation, and compares patterns.
pub fn grid_pattern_oracle(
    data: &ResolutionData,
    elements: &[TestElement],
    complex: &WallComplex,
    denominator: u64,
) -> Result<OracleReport, VerifyError> {
    if denominator < 2 {
        return Err(VerifyError::Denominator(denominator));
    }
    let d = BigInt::from(denominator);
    let arr = &complex.arrangement;
    let r = data.r;
    // integer ranges: lo <= i/d <= hi
    let ranges: Vec<(BigInt, BigInt)> = arr
        .box_lo
        .iter()
        .zip(&arr.box_hi)
        .map(|(lo, hi)| {
            let lo_i = (lo * rat_u64(denominator)).ceil().to_integer();
            let hi_i = (hi * rat_u64(denominator)).floor().to_integer();
            (lo_i, hi_i)
        })
        .collect();

    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    let mut point = vec![BigInt::zero(); r];
    enumerate_grid(&ranges, 0, &mut point, &mut |numerators: &[BigInt]| {
        // skip points on any divisor threshold sum_j N_j lambda_j = k + c
        // with c >= 1 (walls touching only the box boundary included): there
        // membership jumps without a cell cut
        let on_wall = data.divisors.iter().any(|div| {
            let mut num = BigInt::zero();
            for (&n, i) in div.orders.iter().zip(numerators) {
                num += BigInt::from(n) * i;
            }
            (&num % &d).is_zero() && &num / &d >= BigInt::from(div.k + 1)
        });
        if on_wall {
            return;
        }
        checked += 1;
        let expected: Vec<bool> = elements
            .iter()
            .map(|h| grid_membership(h, numerators, &d, data))
            .collect();
        // locate the cell by integer signs
        let signs: Vec<i8> = arr
            .forms
            .iter()
            .map(|f| {
                let mut acc = &f.constant * Rat::from_integer(d.clone());
                for (c, i) in f.coeffs.iter().zip(numerators) {
                    acc += c * Rat::from_integer(i.clone());
                }
                if acc.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .collect();
        let lambda: Vec<String> = numerators
            .iter()
            .map(|i| format!("{i}/{denominator}"))
            .collect();
        match arr.cells.iter().position(|c| c.signs == signs) {
            None => mismatches.push(Mismatch {
                input: format!("({})", lambda.join(", ")),
                expected: "a cell containing the point".to_string(),
                got: "no cell with the point's sign vector".to_string(),
            }),
            Some(ci) => {
                let got: Vec<bool> = (0..elements.len())
                    .map(|i| complex.patterns[ci].member(i))
                    .collect();
                if got != expected {
                    let names = |bits: &[bool]| -> String {
                        elements
                            .iter()
                            .zip(bits)
                            .filter(|(_, &b)| b)
                            .map(|(e, _)| e.name.clone())
                            .collect::<Vec<_>>()
                            .join(",")
                    };
                    mismatches.push(Mismatch {
                        input: format!("({})", lambda.join(", ")),
                        expected: names(&expected),
                        got: names(&got),
                    });
                }
            }
        }
    });
    mismatches.sort_by(|a, b| a.input.cmp(&b.input));
    Ok(OracleReport {
        checked,
        mismatches,
    })
}

fn enumerate_grid(
    ranges: &[(BigInt, BigInt)],
    depth: usize,
    point: &mut Vec<BigInt>,
    visit: &mut impl FnMut(&[BigInt]),
) {
    if depth == ranges.len() {
        visit(point);
        return;
    }
    let (lo, hi) = &ranges[depth];
    let mut i = lo.clone();
    while &i <= hi {
        point[depth] = i.clone();
        enumerate_grid(ranges, depth + 1, point, visit);
        i += BigInt::one();
    }
}

const VERTEX_ORACLE_MAX_CONSTRAINTS: usize = 12;
const VERTEX_ORACLE_MAX_DIM: usize = 3;

/// Hand-expanded determinant, n <= 3.
fn det(m: &[Vec<Rat>]) -> Rat {
    match m.len() {
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        3 => {
            let a = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
            let b = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
            let c = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
            &(&a - &b) + &c
        }
        n => unreachable!("vertex oracle determinant of size {n}"),
    }
}

/// Brute-force vertex enumeration: solves every r-subset of the halfspace
/// boundaries by Cramer's rule and keeps the feasible solutions. Closed
/// senses throughout (vertices of the closure).
pub fn vertex_oracle(halfspaces: &[HalfSpace], dim: usize) -> Result<Vec<Vec<Rat>>, VerifyError> {
    if halfspaces.len() > VERTEX_ORACLE_MAX_CONSTRAINTS || dim > VERTEX_ORACLE_MAX_DIM || dim == 0 {
        return Err(VerifyError::Budget {
            constraints: halfspaces.len(),
            dim,
            max_constraints: VERTEX_ORACLE_MAX_CONSTRAINTS,
            max_dim: VERTEX_ORACLE_MAX_DIM,
        });
    }
    let mut vertices: Vec<Vec<Rat>> = Vec::new();
    let mut subset = vec![0usize; dim];
    enumerate_subsets(
        halfspaces.len(),
        dim,
        0,
        0,
        &mut subset,
        &mut |s: &[usize]| {
            let a: Vec<Vec<Rat>> = s
                .iter()
                .map(|&i| halfspaces[i].form.coeffs.clone())
                .collect();
            let rhs: Vec<Rat> = s
                .iter()
                .map(|&i| -halfspaces[i].form.constant.clone())
                .collect();
            let d = det(&a);
            if d.is_zero() {
                return;
            }
            // Cramer's rule
            let mut x = Vec::with_capacity(dim);
            for col in 0..dim {
                let mut m = a.clone();
                for (row, b) in m.iter_mut().zip(&rhs) {
                    row[col] = b.clone();
                }
                x.push(&det(&m) / &d);
            }
            let feasible = halfspaces.iter().all(|h| {
                let v = h.form.eval(&x);
                match h.sense {
                    Sense::Eq => v.is_zero(),
                    _ => !v.is_positive(), // closure
                }
            });
            if feasible && !vertices.contains(&x) {
                vertices.push(x);
            }
        },
    );
    vertices.sort();
    Ok(vertices)
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    start: usize,
    depth: usize,
    subset: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        visit(subset);
        return;
    }
    for i in start..n {
        subset[depth] = i;
        enumerate_subsets(n, k, i + 1, depth + 1, subset, visit);
    }
}

/// Classical one-variable b-function fixtures for monomials.
///
/// For f = x^N the functional equation
///   (1/N^N) d^N/dx^N x^(N(s+1)) = (s + 1/N)(s + 2/N) ... (s + N/N) x^(Ns)
/// exhibits prod_{c=1}^{N} (s + c/N) in the ideal, and no smaller product
/// suffices, so the roots are exactly {-c/N : c = 1..N}. For N = 1 this is
/// the smooth case (s+1); for N = 2, (s + 1/2)(s + 1) via
/// (1/4) d^2/dx^2 x^(2s+2) = (s+1)(s+1/2) x^(2s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBf {
    /// Exponent N in f = x^N.
    pub degree: u64,
    /// Roots of the b-function, sorted decreasing (closest to zero first).
    pub roots: Vec<Rat>,
}

pub fn monomial_bfunction_roots(degree: u64) -> Vec<Rat> {
    (1..=degree)
        .map(|c| -Rat::new(BigInt::from(c), BigInt::from(degree)))
        .collect()
}

/// The fixture table for x, x^2, x^3.
pub fn monomial_bfunction_table() -> Vec<MonomialBf> {
    (1..=3)
        .map(|n| MonomialBf {
            degree: n,
            roots: monomial_bfunction_roots(n),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Divisor, DivisorKind};
    use crate::polyhedra::{AffineForm, DEFAULT_CELL_BUDGET};
    use crate::rat::{rat, rat_int};
    use crate::walls;

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
            strata: vec![],
            real_mode: false,
            dim: Some(2),
        }
    }

    fn elt(name: &str, orders: &[u64]) -> TestElement {
        TestElement {
            name: name.into(),
            orders: orders.to_vec(),
        }
    }

    #[test]
    fn grid_oracle_agrees_on_the_node_line_box() {
        let data = node_line_data();
        let h = vec![
            elt("1", &[0, 0, 0]),
            elt("x", &[0, 0, 1]),
            elt("y", &[0, 1, 1]),
            elt("f1", &[1, 0, 2]),
            elt("f2", &[0, 1, 1]),
        ];
        let lo = vec![rat_int(0), rat_int(0)];
        let hi = vec![rat_int(3), rat_int(3)];
        let complex = walls::wall_complex(&data, &h, &lo, &hi, DEFAULT_CELL_BUDGET).unwrap();
        let report = grid_pattern_oracle(&data, &h, &complex, 7).unwrap();
        assert!(report.checked > 0);
        assert_eq!(report.mismatches, vec![]);
    }

    #[test]
    fn denominator_must_be_at_least_two() {
        let data = node_line_data();
        let complex = walls::wall_complex(
            &data,
            &[],
            &[rat_int(0), rat_int(0)],
            &[rat_int(1), rat_int(1)],
            DEFAULT_CELL_BUDGET,
        )
        .unwrap();
        assert!(matches!(
            grid_pattern_oracle(&data, &[], &complex, 1),
            Err(VerifyError::Denominator(1))
        ));
    }

    #[test]
    fn empty_test_set_is_a_vacuous_pass() {
        let data = node_line_data();
        let complex = walls::wall_complex(
            &data,
            &[],
            &[rat_int(0), rat_int(0)],
            &[rat_int(2), rat_int(2)],
            DEFAULT_CELL_BUDGET,
        )
        .unwrap();
        let report = grid_pattern_oracle(&data, &[], &complex, 3).unwrap();
        assert!(report.passed());
    }

    fn le(coeffs: &[i64], constant: i64) -> HalfSpace {
        HalfSpace::le(AffineForm::from_ints(coeffs, constant))
    }

    #[test]
    fn vertex_oracle_on_the_pentagon() {
        let hs = vec![
            le(&[1, 0], -1),
            le(&[0, 1], -1),
            le(&[2, 1], -2),
            le(&[-1, 0], 0),
            le(&[0, -1], 0),
        ];
        let vs = vertex_oracle(&hs, 2).unwrap();
        assert_eq!(
            vs,
            vec![
                vec![rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(1)],
                vec![rat(1, 2), rat_int(1)],
                vec![rat_int(1), rat_int(0)],
            ]
        );
    }

    #[test]
    fn vertex_oracle_edge_cases() {
        assert!(vertex_oracle(&[le(&[1, 0], -1)], 2).unwrap().is_empty());
        let infeasible = vec![le(&[1], 0), le(&[-1], 1)];
        assert!(vertex_oracle(&infeasible, 1).unwrap().is_empty());
        let too_many: Vec<HalfSpace> = (0..13).map(|i| le(&[1], -i)).collect();
        assert!(matches!(
            vertex_oracle(&too_many, 1),
            Err(VerifyError::Budget { .. })
        ));
    }

    #[test]
    fn monomial_table() {
        let table = monomial_bfunction_table();
        assert_eq!(table[0].roots, vec![rat_int(-1)]);
        assert_eq!(table[1].roots, vec![rat(-1, 2), rat_int(-1)]);
        assert_eq!(table[2].roots, vec![rat(-1, 3), rat(-2, 3), rat_int(-1)]);
    }
}
