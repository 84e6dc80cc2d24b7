//! Exact rank and determinant over the rationals. No tolerances anywhere:
//! a pivot is nonzero or it is not.

use crate::polyring::{HomPoly, Rational};
use num_traits::Zero;

/// Rank by Gaussian elimination over the rationals, sweeping columns left to
/// right and stopping early once every row is a pivot row.
pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = {
            let p = &m[rank][col];
            p.recip()
        };
        for j in col..cols {
            let scaled = &m[rank][j] * &inv;
            m[rank][j] = scaled;
        }
        for i in (rank + 1)..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..cols {
                let sub = &m[rank][j] * &factor;
                m[i][j] -= sub;
            }
        }
        rank += 1;
    }
    rank
}

/// Symbolic determinant of a square grid of homogeneous polynomials by
/// cofactor expansion along the sparsest column. All entries in the active
/// submatrix must combine to a common degree; the caller's degree ledgers
/// guarantee that for certificate minors.
pub fn det(grid: &[Vec<HomPoly>]) -> HomPoly {
    let n = grid.len();
    debug_assert!(grid.iter().all(|r| r.len() == n));
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(grid, &rows, &cols)
}

fn det_rec(grid: &[Vec<HomPoly>], rows: &[usize], cols: &[usize]) -> HomPoly {
    let degree_of = |rs: &[usize], cs: &[usize]| -> usize {
        rs.iter()
            .zip(cs.iter())
            .map(|(&i, &j)| grid[i][j].degree())
            .sum()
    };
    if rows.len() == 1 {
        return grid[rows[0]][cols[0]].clone();
    }
    // expand along the column with the fewest nonzero entries
    let best = cols
        .iter()
        .min_by_key(|&&j| rows.iter().filter(|&&i| !grid[i][j].is_zero()).count())
        .copied()
        .unwrap();
    let best_pos = cols.iter().position(|&j| j == best).unwrap();
    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&j| j != best).collect();
    let mut acc = HomPoly::zero(degree_of(rows, cols));
    for (k, &i) in rows.iter().enumerate() {
        if grid[i][best].is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&r| r != i).collect();
        let minor = det_rec(grid, &sub_rows, &sub_cols);
        let term = &grid[i][best] * &minor;
        acc = if (k + best_pos) % 2 == 0 {
            acc.checked_add(&term)
        } else {
            acc.checked_add(&(-&term))
        }
        .expect("degree mismatch in determinant expansion");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use num_traits::One;

    #[test]
    fn rank_examples() {
        let m = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
        ];
        assert_eq!(rank(m), 2);
        assert_eq!(rank(vec![vec![Rational::zero(); 4]; 3]), 0);
        let id = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if i == j { rat(1, 1) } else { rat(0, 1) })
                    .collect()
            })
            .collect();
        assert_eq!(rank(id), 3);
    }

    #[test]
    fn det_diagonal_monomials() {
        let x = |d| HomPoly::monomial(Rational::one(), d, 0);
        let z = |d| HomPoly::zero(d);
        let grid = vec![vec![x(2), z(2)], vec![z(1), x(1)]];
        assert_eq!(det(&grid).to_string(), "x^3");
    }

    #[test]
    fn det_antidiagonal_sign() {
        let y = |d| HomPoly::monomial(Rational::one(), 0, d);
        let z = |d| HomPoly::zero(d);
        let grid = vec![vec![z(1), y(1)], vec![y(2), z(2)]];
        assert_eq!(det(&grid).to_string(), "-y^3");
    }
}
