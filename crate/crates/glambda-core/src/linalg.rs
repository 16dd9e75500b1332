//! Minimal exact linear algebra over ℚ: reduced row echelon form, affine
//! solve, and nullspace bases. Sized for the small systems the equivariance
//! solvers generate.

use num::traits::Zero;

use crate::rings::Rational;

/// Reduces `rows` (each of width `cols`) to reduced row echelon form in
/// place, dropping zero rows. Returns the pivot column of each kept row, in
/// order.
pub fn rref(rows: &mut Vec<Vec<Rational>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = {
            let p = &rows[rank][col];
            Rational::new(p.denom().clone(), p.numer().clone())
        };
        for entry in rows[rank].iter_mut() {
            if !entry.is_zero() {
                *entry *= &inv;
            }
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            #[allow(clippy::needless_range_loop)]
            for c in col..cols {
                let delta = &rows[rank][c] * &factor;
                rows[r][c] -= delta;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.retain(|row| row.iter().any(|e| !e.is_zero()));
    pivots
}

/// Basis of the nullspace of the homogeneous system given by `rows`
/// (width `cols`). One canonical vector per free column, in column order.
pub fn nullspace(rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut rows = rows;
    let pivots = rref(&mut rows, cols);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::new(1.into(), 1.into());
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Result of an affine solve `A·x = b`.
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub nullspace: Vec<Vec<Rational>>,
}

/// Solves the (possibly overdetermined) system with rows `(coefficients, rhs)`.
/// Returns `None` when inconsistent.
pub fn solve_affine(
    rows: Vec<(Vec<Rational>, Rational)>,
    cols: usize,
) -> Option<AffineSolution> {
    let mut aug: Vec<Vec<Rational>> = rows
        .into_iter()
        .map(|(mut coeffs, rhs)| {
            debug_assert_eq!(coeffs.len(), cols);
            coeffs.push(rhs);
            coeffs
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.contains(&cols) {
        return None; // pivot in the rhs column: inconsistent
    }
    let mut particular = vec![Rational::zero(); cols];
    for (row, &p) in aug.iter().zip(&pivots) {
        particular[p] = row[cols].clone();
    }
    let coeff_rows: Vec<Vec<Rational>> = aug
        .iter()
        .map(|row| row[..cols].to_vec())
        .collect();
    let null = nullspace(coeff_rows, cols);
    Some(AffineSolution {
        particular,
        nullspace: null,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, rat_int};

    #[test]
    fn solves_unique_system() {
        // x + y = 3, x − y = 1  →  x = 2, y = 1
        let rows = vec![
            (vec![rat_int(1), rat_int(1)], rat_int(3)),
            (vec![rat_int(1), rat_int(-1)], rat_int(1)),
        ];
        let sol = solve_affine(rows, 2).unwrap();
        assert_eq!(sol.particular, vec![rat_int(2), rat_int(1)]);
        assert!(sol.nullspace.is_empty());
    }

    #[test]
    fn detects_inconsistency() {
        let rows = vec![
            (vec![rat_int(1), rat_int(1)], rat_int(3)),
            (vec![rat_int(2), rat_int(2)], rat_int(7)),
        ];
        assert!(solve_affine(rows, 2).is_none());
    }

    #[test]
    fn nullspace_of_rank_one() {
        // x + 2y − z = 0 has a 2-dimensional nullspace
        let rows = vec![vec![rat_int(1), rat_int(2), rat_int(-1)]];
        let basis = nullspace(rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let lhs = &v[0] + &(&v[1] * &rat_int(2)) - &v[2];
            assert_eq!(lhs, rat_int(0));
        }
    }

    #[test]
    fn rref_with_fractions() {
        let mut rows = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(1, 4), rat(1, 6)],
        ];
        let pivots = rref(&mut rows, 2);
        assert_eq!(pivots, vec![0]);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0], vec![rat_int(1), rat(2, 3)]);
    }
}
