//! Dense exact Gaussian elimination over the rationals; just enough for the
//! polyhedral engine.

use crate::rat::Rat;
use num::{One, Zero};

/// Reduced row echelon form in place. Returns the pivot columns.
fn rref_in_place(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].clone();
        if !inv.is_one() {
            for entry in rows[rank].iter_mut() {
                *entry = &*entry / &inv;
            }
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, p) in row.iter_mut().zip(&pivot) {
                    *entry = &*entry - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    rref_in_place(&mut m).len()
}

/// Indices of a maximal linearly independent subset, chosen greedily in input
/// order (deterministic).
pub(crate) fn independent_subset(rows: &[Vec<Rat>]) -> Vec<usize> {
    let mut echelon = Echelon::new();
    let mut idxs = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if echelon.insert(row) {
            idxs.push(i);
        }
    }
    idxs
}

/// Incremental row-echelon basis.
pub(crate) struct Echelon {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub(crate) fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, row: &[Rat]) -> Vec<Rat> {
        let mut r = row.to_vec();
        for (basis, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let factor = r[p].clone();
                for (entry, b) in r.iter_mut().zip(basis) {
                    *entry = &*entry - &(&factor * b);
                }
            }
        }
        r
    }

    /// Adds `row` if independent of the basis; returns whether the rank grew.
    pub(crate) fn insert(&mut self, row: &[Rat]) -> bool {
        let r = self.reduce(row);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].clone();
        let normalized: Vec<Rat> = r.iter().map(|x| x / &inv).collect();
        // put the new row in back-reduced position against existing rows
        self.rows.push(normalized);
        self.pivots.push(p);
        true
    }
}

/// Basis of the null space {x : row . x = 0 for all rows}.
pub(crate) fn kernel_basis(rows: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.iter().filter(|r| !r.is_empty()).cloned().collect();
    if m.is_empty() {
        // whole space
        return (0..dim).map(|j| unit_vector(dim, j)).collect();
    }
    let pivots = rref_in_place(&mut m);
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; dim];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); dim];
        v[free] = Rat::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Particular solution of rows . x = rhs (free variables set to zero).
pub(crate) fn solve(rows: &[Vec<Rat>], rhs: &[Rat], dim: usize) -> Option<Vec<Rat>> {
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut aug);
    if pivots.contains(&dim) {
        return None; // inconsistent
    }
    let mut x = vec![Rat::zero(); dim];
    for (row, &p) in aug.iter().zip(&pivots) {
        x[p] = row[dim].clone();
    }
    Some(x)
}

/// Coefficients expressing `target` as a combination of `basis` rows, if any.
pub(crate) fn express(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let dim = target.len();
    let k = basis.len();
    // transpose: unknowns are the combination coefficients
    let rows: Vec<Vec<Rat>> = (0..dim)
        .map(|j| basis.iter().map(|b| b[j].clone()).collect())
        .collect();
    let sol = solve(&rows, target, k)?;
    // solve() only checks echelon consistency; verify exactly
    for j in 0..dim {
        let mut acc = Rat::zero();
        for (c, b) in sol.iter().zip(basis) {
            acc += c * &b[j];
        }
        if acc != target[j] {
            return None;
        }
    }
    Some(sol)
}

pub(crate) fn unit_vector(dim: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[j] = Rat::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ker = kernel_basis(&rows, 3);
        assert_eq!(ker.len(), 1);
        for row in &rows {
            let dot: Rat = row.iter().zip(&ker[0]).map(|(a, b)| a * b).sum();
            assert!(dot == rat_int(0));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let rows = vec![v(&[2, 0]), v(&[0, 4])];
        let x = solve(&rows, &v(&[1, 2]), 2).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
        let rows = vec![v(&[1, 1]), v(&[2, 2])];
        assert!(solve(&rows, &v(&[1, 3]), 2).is_none());
    }

    #[test]
    fn express_combination() {
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        let c = express(&basis, &v(&[2, 3, 5])).unwrap();
        assert_eq!(c, vec![rat_int(2), rat_int(3)]);
        assert!(express(&basis, &v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn independent_subset_is_greedy() {
        let rows = vec![v(&[1, 1]), v(&[2, 2]), v(&[1, 0])];
        assert_eq!(independent_subset(&rows), vec![0, 2]);
    }
}
