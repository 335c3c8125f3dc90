use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::approx::ApproximationSystem;

/// Exact determinant by Bareiss fraction-free elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for col in 0..n {
        if m[col][col].is_zero() {
            match (col + 1..n).find(|&r| !m[r][col].is_zero()) {
                Some(r) => {
                    m.swap(col, r);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let v = &m[col][col] * &m[r][c] - &m[r][col] * &m[col][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Determinant of `M[u][j] = A*_{u,j}(1)`.
pub fn system_determinant(system: &ApproximationSystem) -> BigInt {
    bareiss_determinant(system.values_at_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Cofactor expansion along the first row.
    fn laplace(mat: &[Vec<BigInt>]) -> BigInt {
        let n = mat.len();
        if n == 1 {
            return mat[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            let minor: Vec<Vec<BigInt>> = mat[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &mat[0][c] * laplace(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn equal_rows_vanish() {
        assert!(bareiss_determinant(m(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]])).is_zero());
    }

    #[test]
    fn needs_pivoting() {
        let mat = m(&[&[0, 2, 1], &[3, 0, 1], &[1, 1, 0]]);
        assert_eq!(bareiss_determinant(mat.clone()), laplace(&mat));
    }

    #[test]
    fn matches_cofactor_expansion() {
        let mat = m(&[
            &[3, -1, 4, 1],
            &[5, 9, -2, 6],
            &[5, 3, 5, -8],
            &[9, 7, 9, 3],
        ]);
        assert_eq!(bareiss_determinant(mat.clone()), laplace(&mat));
    }
}
