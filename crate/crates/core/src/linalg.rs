//! Exact rank computations.

use crate::scalar::Field;

/// Rank of a dense matrix given as rows, by Gaussian elimination over `F`.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    for row in &mut m {
        row.resize(ncols, F::zero());
    }
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for r in (rank + 1)..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / pivot_row[col].clone();
            for c in col..ncols {
                let delta = factor.clone() * pivot_row[c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of an integer matrix, computed over the rationals.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let q: Vec<Vec<crate::Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| crate::Rational::from_i64(v)).collect())
        .collect();
    rank(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn r(v: &[i64]) -> Vec<Ratio<i64>> {
        v.iter().map(|&x| Ratio::from_integer(x)).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank::<Ratio<i64>>(&[]), 0);
        assert_eq!(rank(&[r(&[0, 0]), r(&[0, 0])]), 0);
        assert_eq!(rank(&[r(&[1, 2]), r(&[2, 4])]), 1);
        assert_eq!(rank(&[r(&[1, 2, 3]), r(&[4, 5, 6]), r(&[7, 8, 9])]), 2);
        assert_eq!(rank_int(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 1]]), 3);
    }

    #[test]
    fn rank_generic_instantiations_agree() {
        let rows = vec![vec![2, -1, 0, 3], vec![4, -2, 0, 6], vec![0, 1, 1, 1]];
        let a: Vec<Vec<Ratio<i128>>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Ratio::from_integer(v as i128)).collect())
            .collect();
        assert_eq!(rank(&a), rank_int(&rows));
        assert_eq!(rank_int(&rows), 2);
    }
}
