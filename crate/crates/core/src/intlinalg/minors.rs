//! Determinantal divisors: `n_i = d_i / d_(i-1)` with `d_i` the gcd of all
//! `i x i` minors. Exponential in the matrix size, so it is only an oracle
//! for checking [`smith_normal_form`](super::smith_normal_form).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinalgError};

/// Largest `min(rows, cols)` accepted by [`invariant_factors_via_minors`].
pub const MINORS_DIMENSION_CAP: usize = 6;

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    sign * &a[(n - 1, n - 1)]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Gcd of all `k x k` minors (zero when every minor vanishes).
pub fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    let row_sets = combinations(m.rows(), k);
    let col_sets = combinations(m.cols(), k);
    for rs in &row_sets {
        for cs in &col_sets {
            g = g.gcd(&determinant(&m.select(rs, cs)));
            if g.is_one() {
                return g;
            }
        }
    }
    g.abs()
}

pub fn invariant_factors_via_minors(m: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    let size = m.rows().min(m.cols());
    if size > MINORS_DIMENSION_CAP {
        return Err(LinalgError::TooLarge {
            size,
            cap: MINORS_DIMENSION_CAP,
        });
    }
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=size {
        let d = determinantal_divisor(m, k);
        if d.is_zero() {
            break;
        }
        out.push(&d / &prev);
        prev = d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(v: Vec<BigInt>) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn determinant_by_hand() {
        let m = IntMatrix::from_i64_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(determinant(&m), BigInt::from(4));
        let m = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), BigInt::from(-1));
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(determinant(&m).is_zero());
    }

    #[test]
    fn gersten_double_cover_matrix() {
        // columns (-1,3,2,-2) and (3,-1,-2,2): all 2x2 minors have gcd 4
        let m = IntMatrix::from_i64_rows(&[&[-1, 3], &[3, -1], &[2, -2], &[-2, 2]]);
        assert_eq!(determinantal_divisor(&m, 1), BigInt::from(1));
        assert_eq!(determinantal_divisor(&m, 2), BigInt::from(4));
        assert_eq!(small(invariant_factors_via_minors(&m).unwrap()), vec![1, 4]);
    }

    #[test]
    fn diagonal_and_zero() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 6]]);
        assert_eq!(small(invariant_factors_via_minors(&m).unwrap()), vec![2, 6]);
        assert!(invariant_factors_via_minors(&IntMatrix::zeros(3, 3)).unwrap().is_empty());
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(
            invariant_factors_via_minors(&IntMatrix::identity(7)),
            Err(LinalgError::TooLarge { size: 7, cap: 6 })
        ));
        assert!(invariant_factors_via_minors(&IntMatrix::zeros(7, 6)).is_ok());
    }
}
