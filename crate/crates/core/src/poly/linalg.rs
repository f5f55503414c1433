//! Exact row reduction over the rationals.

use num_traits::Zero;

use super::Rational;

/// Reduces `rows` in place to reduced row-echelon form and returns the rank.
pub fn row_reduce(rows: &mut Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = Rational::from_integer(1.into()) / rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x *= inv.clone();
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in 0..ncols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut copy = rows.to_vec();
    row_reduce(&mut copy)
}

/// A basis (reduced echelon rows) for the span of the given vectors.
pub fn span_basis(vectors: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut copy = vectors.to_vec();
    row_reduce(&mut copy);
    copy
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 2)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[vec![rat(0, 1), rat(0, 1)]]), 0);
    }
}
