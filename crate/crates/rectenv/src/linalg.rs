//! Exact dense linear algebra over the rationals: rank and nullspace via
//! Gaussian elimination. Matrices here are small (tens of columns), so a
//! plain reduced-row-echelon pass is all that is needed.

use num_traits::Zero;

use crate::freealg::Scalar;

/// Reduced row echelon form in place; returns the pivot column of each
/// pivot row.
fn rref(m: &mut [Vec<Scalar>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pivot_row) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot_row);
        let inv = m[row][col].recip();
        for cell in m[row][col..].iter_mut() {
            let v = &*cell * &inv;
            *cell = v;
        }
        let pivot = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let factor = other[col].clone();
                for (cell, pv) in other[col..].iter_mut().zip(&pivot[col..]) {
                    let v = &*cell - &(&factor * pv);
                    *cell = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

pub fn rank(mut m: Vec<Vec<Scalar>>) -> usize {
    rref(&mut m).len()
}

/// Basis of { x : M x = 0 }, one vector per free column, each normalized so
/// its free coordinate equals 1. Deterministic ordering by free column.
pub fn nullspace(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut work: Vec<Vec<Scalar>> = m.to_vec();
    let pivots = rref(&mut work);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::from_integer(1.into());
        for (prow, &pcol) in pivots.iter().enumerate() {
            v[pcol] = -work[prow][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(m(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
    }

    #[test]
    fn nullspace_examples() {
        // x + 2y = 0 -> span{(-2, 1)}.
        let ns = nullspace(&m(&[&[1, 2]]));
        assert_eq!(ns, vec![vec![int(-2), int(1)]]);

        // Full-rank square matrix has trivial nullspace.
        assert!(nullspace(&m(&[&[1, 0], &[0, 1]])).is_empty());

        // Every basis vector is an actual kernel element.
        let mat = m(&[&[1, 2, 3], &[4, 5, 6]]);
        for v in nullspace(&mat) {
            for row in &mat {
                let dot: Scalar = row
                    .iter()
                    .zip(v.iter())
                    .map(|(a, b)| a * b)
                    .fold(Scalar::from_integer(0.into()), |acc, x| acc + x);
                assert!(dot.is_zero());
            }
        }
    }
}
