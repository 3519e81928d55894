//! Double description over exact rationals.
//!
//! Computes the generators (extreme points, extreme rays, lineality) of a
//! closed rational polyhedron given by `a . x + b <= 0` constraints. The
//! computation homogenizes to a cone in one extra coordinate, quotients out
//! the lineality space so the working cone is pointed, and runs the classical
//! incremental algorithm with the combinatorial adjacency test.

use super::linalg;
use crate::rat::Rat;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// other ⊆ self
    fn contains(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }
}

#[derive(Debug, Clone)]
struct Ray {
    v: Vec<Rat>, // coprime integer entries
    zero: Bits,  // constraints tight so far
}

/// Divides through by the gcd of the (integer) entries. Positive scale only.
fn normalize_vec(v: &[Rat]) -> Vec<Rat> {
    let mut den_lcm = BigInt::one();
    let mut num_gcd = BigInt::zero();
    for e in v {
        if !e.is_zero() {
            den_lcm = den_lcm.lcm(e.denom());
            num_gcd = num_gcd.gcd(e.numer());
        }
    }
    if num_gcd.is_zero() {
        return v.to_vec();
    }
    let s = Rat::new(den_lcm, num_gcd);
    v.iter().map(|e| e * &s).collect()
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Generators {
    /// Extreme points; empty when the lineality space is nontrivial.
    pub vertices: Vec<Vec<Rat>>,
    /// Representatives of minimal faces when lineality is present.
    pub base_points: Vec<Vec<Rat>>,
    /// Extreme rays modulo lineality.
    pub rays: Vec<Vec<Rat>>,
    /// Basis of the lineality space.
    pub lineality: Vec<Vec<Rat>>,
}

impl Generators {
    pub(crate) fn point_generators(&self) -> impl Iterator<Item = &Vec<Rat>> {
        self.vertices.iter().chain(self.base_points.iter())
    }

    pub(crate) fn is_region_empty(&self) -> bool {
        self.vertices.is_empty() && self.base_points.is_empty()
    }
}

/// Generators of `{x : a_i . x + b_i <= 0 for all i}`.
pub(crate) fn generators(constraints: &[(Vec<Rat>, Rat)], dim: usize) -> Generators {
    let hdim = dim + 1; // homogeneous coordinate order: (t, x_1, .., x_dim)
    let mut rows: Vec<Vec<Rat>> = constraints
        .iter()
        .map(|(a, b)| {
            let mut row = Vec::with_capacity(hdim);
            row.push(b.clone());
            row.extend(a.iter().cloned());
            row
        })
        .collect();
    // t >= 0
    let mut t_row = vec![Rat::zero(); hdim];
    t_row[0] = -Rat::one();
    rows.push(t_row);

    let lineality_hom = linalg::kernel_basis(&rows, hdim);
    let basis_idx = linalg::independent_subset(&rows);
    let k = basis_idx.len();
    let basis_rows: Vec<Vec<Rat>> = basis_idx.iter().map(|&i| rows[i].clone()).collect();

    // Every remaining constraint expressed in the quotient coordinates
    // y_i = basis_row_i . x.
    let mut extra: Vec<Vec<Rat>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        let c =
            linalg::express(&basis_rows, row).expect("row lies in the span of the chosen basis");
        extra.push(c);
    }
    let total = k + extra.len();

    // Start from the nonpositive orthant {y <= 0}: rays -e_i, each tight at
    // every orthant constraint but its own.
    let mut rays: Vec<Ray> = (0..k)
        .map(|i| {
            let mut v = vec![Rat::zero(); k];
            v[i] = -Rat::one();
            let mut zero = Bits::new(total);
            for j in 0..k {
                if j != i {
                    zero.set(j);
                }
            }
            Ray { v, zero }
        })
        .collect();

    for (jj, c) in extra.iter().enumerate() {
        let cidx = k + jj;
        let values: Vec<Rat> = rays
            .iter()
            .map(|r| c.iter().zip(&r.v).map(|(a, b)| a * b).sum())
            .collect();
        let mut next: Vec<Ray> = Vec::new();
        for (ray, val) in rays.iter().zip(&values) {
            if !val.is_positive() {
                let mut r = ray.clone();
                if val.is_zero() {
                    r.zero.set(cidx);
                }
                next.push(r);
            }
        }
        for (ui, uval) in values.iter().enumerate() {
            if !uval.is_positive() {
                continue;
            }
            for (wi, wval) in values.iter().enumerate() {
                if !wval.is_negative() {
                    continue;
                }
                let meet = rays[ui].zero.intersect(&rays[wi].zero);
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(ti, t)| ti != ui && ti != wi && t.zero.contains(&meet));
                if !adjacent {
                    continue;
                }
                // positive combination cancelling c
                let v: Vec<Rat> = rays[wi]
                    .v
                    .iter()
                    .zip(&rays[ui].v)
                    .map(|(w, u)| &(uval * w) - &(wval * u))
                    .collect();
                let mut zero = meet;
                zero.set(cidx);
                next.push(Ray {
                    v: normalize_vec(&v),
                    zero,
                });
            }
        }
        rays = next;
    }

    // Map quotient rays back to homogeneous space.
    let mut points: Vec<Vec<Rat>> = Vec::new();
    let mut dirs: Vec<Vec<Rat>> = Vec::new();
    for ray in &rays {
        let x = linalg::solve(&basis_rows, &ray.v, hdim).expect("basis rows have full row rank");
        debug_assert!(
            rows.iter().all(|row| {
                let dot: Rat = row.iter().zip(&x).map(|(a, b)| a * b).sum();
                !dot.is_positive()
            }),
            "generator violates a constraint"
        );
        let t = &x[0];
        if t.is_positive() {
            points.push(x[1..].iter().map(|c| c / t).collect());
        } else {
            debug_assert!(t.is_zero());
            let dir = normalize_vec(&x[1..]);
            if dir.iter().any(|c| !c.is_zero()) {
                dirs.push(dir);
            }
        }
    }
    points.sort();
    points.dedup();
    dirs.sort();
    dirs.dedup();

    let lineality: Vec<Vec<Rat>> = lineality_hom
        .iter()
        .map(|l| {
            debug_assert!(l[0].is_zero(), "lineality is orthogonal to the t-row");
            normalize_vec(&l[1..])
        })
        .collect();

    if points.is_empty() {
        // Closed region is empty; recession directions of nothing are dropped.
        return Generators {
            lineality,
            ..Default::default()
        };
    }
    if lineality.is_empty() {
        Generators {
            vertices: points,
            base_points: Vec::new(),
            rays: dirs,
            lineality,
        }
    } else {
        Generators {
            vertices: Vec::new(),
            base_points: points,
            rays: dirs,
            lineality,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn con(coeffs: &[i64], constant: i64) -> (Vec<Rat>, Rat) {
        (
            coeffs.iter().map(|&c| rat_int(c)).collect(),
            rat_int(constant),
        )
    }

    #[test]
    fn pentagon_vertices() {
        // x <= 1, y <= 1, 2x + y <= 2, x >= 0, y >= 0
        let cons = vec![
            con(&[1, 0], -1),
            con(&[0, 1], -1),
            con(&[2, 1], -2),
            con(&[-1, 0], 0),
            con(&[0, -1], 0),
        ];
        let g = generators(&cons, 2);
        let mut vs = g.vertices.clone();
        vs.sort();
        let expected: Vec<Vec<Rat>> = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat(1, 2), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ];
        let mut expected = expected;
        expected.sort();
        assert_eq!(vs, expected);
        assert!(g.rays.is_empty());
        assert!(g.lineality.is_empty());
    }

    #[test]
    fn empty_region_has_no_generators() {
        let cons = vec![con(&[1], 0), con(&[-1], 1)]; // x <= 0, x >= 1
        let g = generators(&cons, 1);
        assert!(g.is_region_empty());
    }

    #[test]
    fn whole_line_is_pure_lineality() {
        let g = generators(&[], 1);
        assert!(g.vertices.is_empty());
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.base_points.len(), 1);
    }

    #[test]
    fn quadrant_rays() {
        // x >= 0, y >= 0
        let cons = vec![con(&[-1, 0], 0), con(&[0, -1], 0)];
        let g = generators(&cons, 2);
        assert_eq!(g.vertices, vec![vec![rat_int(0), rat_int(0)]]);
        let mut rays = g.rays.clone();
        rays.sort();
        assert_eq!(
            rays,
            vec![vec![rat_int(0), rat_int(1)], vec![rat_int(1), rat_int(0)]]
        );
    }

    #[test]
    fn unbounded_strip_with_offset_line() {
        // y = 1 (as two inequalities)
        let cons = vec![con(&[0, 1], -1), con(&[0, -1], 1)];
        let g = generators(&cons, 2);
        assert!(g.vertices.is_empty());
        assert_eq!(g.lineality, vec![vec![rat_int(1), rat_int(0)]]);
        assert_eq!(g.base_points.len(), 1);
        assert_eq!(g.base_points[0][1], rat_int(1));
    }
}
