//! Smith normal form with unimodular witnesses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `P * A * Q = D` where `D` carries `diagonal` followed by zeros.
///
/// `P` and `Q` are unimodular; their inverses are tracked alongside so that
/// callers can change coordinates without re-inverting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    rows: usize,
    cols: usize,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
    diagonal: Vec<BigInt>,
}

impl SmithDecomposition {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub fn diagonal(&self) -> &[BigInt] {
        &self.diagonal
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn p(&self) -> &IntMatrix {
        &self.p
    }

    pub fn p_inverse(&self) -> &IntMatrix {
        &self.p_inv
    }

    pub fn q(&self) -> &IntMatrix {
        &self.q
    }

    pub fn q_inverse(&self) -> &IntMatrix {
        &self.q_inv
    }

    /// The full `rows x cols` normal form.
    pub fn normal_form(&self) -> IntMatrix {
        IntMatrix::diagonal(self.rows, self.cols, &self.diagonal)
    }

    /// Checks `P A Q = D`, the inverse witnesses and the divisibility chain
    /// by exact arithmetic.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let chain_ok = self.diagonal.iter().all(|d| d.is_positive())
            && self.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        chain_ok
            && &(&self.p * a) * &self.q == self.normal_form()
            && &self.p * &self.p_inv == IntMatrix::identity(self.rows)
            && &self.q * &self.q_inv == IntMatrix::identity(self.cols)
    }
}

struct Reducer {
    a: IntMatrix,
    p: IntMatrix,
    p_inv: IntMatrix,
    q: IntMatrix,
    q_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.p.swap_rows(i, j);
        self.p_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.q.swap_cols(i, j);
        self.q_inv.swap_rows(i, j);
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.p.add_row_multiple(dst, src, c);
        self.p_inv.add_col_multiple(src, dst, &-c);
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.q.add_col_multiple(dst, src, c);
        self.q_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.p.negate_row(i);
        self.p_inv.negate_col(i);
    }

    /// Position of the smallest nonzero |entry| in the trailing block at `t`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Clears row and column `t` outside the pivot, re-pivoting on smaller
    /// remainders, then repairs divisibility of the trailing block.
    fn reduce_at(&mut self, t: usize) {
        loop {
            let pivot = self.a[(t, t)].clone();
            for i in t + 1..self.a.rows() {
                let x = &self.a[(i, t)];
                if !x.is_zero() {
                    let q = x.div_floor(&pivot);
                    self.add_row(i, t, &-q);
                }
            }
            for j in t + 1..self.a.cols() {
                let x = &self.a[(t, j)];
                if !x.is_zero() {
                    let q = x.div_floor(&pivot);
                    self.add_col(j, t, &-q);
                }
            }

            let mut smallest: Option<(bool, usize, BigInt)> = None;
            for i in t + 1..self.a.rows() {
                let v = self.a[(i, t)].abs();
                if !v.is_zero() && smallest.as_ref().is_none_or(|s| v < s.2) {
                    smallest = Some((true, i, v));
                }
            }
            for j in t + 1..self.a.cols() {
                let v = self.a[(t, j)].abs();
                if !v.is_zero() && smallest.as_ref().is_none_or(|s| v < s.2) {
                    smallest = Some((false, j, v));
                }
            }
            match smallest {
                Some((true, i, _)) => {
                    self.swap_rows(t, i);
                    continue;
                }
                Some((false, j, _)) => {
                    self.swap_cols(t, j);
                    continue;
                }
                None => {}
            }

            let pivot = self.a[(t, t)].clone();
            let offending = (t + 1..self.a.rows()).find(|&i| {
                (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.negate_row(t);
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        p: IntMatrix::identity(rows),
        p_inv: IntMatrix::identity(rows),
        q: IntMatrix::identity(cols),
        q_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((i, j)) = r.min_entry(t) else { break };
        r.swap_rows(t, i);
        r.swap_cols(t, j);
        r.reduce_at(t);
        t += 1;
    }
    let diagonal = (0..t).map(|i| r.a[(i, i)].clone()).collect();
    let out = SmithDecomposition {
        rows,
        cols,
        p: r.p,
        p_inv: r.p_inv,
        q: r.q,
        q_inv: r.q_inv,
        diagonal,
    };
    debug_assert!(out.verify(a), "Smith normal form failed verification");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn double_cover_boundary_matrices() {
        let case1 = IntMatrix::from_i64_rows(&[&[0, 0], &[0, 0], &[-1, -1], &[-1, -1]]);
        assert_eq!(diag(&case1), vec![1]);
        let case2 = IntMatrix::from_i64_rows(&[&[0, 0], &[0, 0], &[3, -5], &[-5, 3]]);
        assert_eq!(diag(&case2), vec![1, 16]);
    }

    #[test]
    fn identity_and_zero() {
        let d = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(diag(&IntMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(d.p(), &IntMatrix::identity(3));
        assert_eq!(d.q(), &IntMatrix::identity(3));
        assert!(diag(&IntMatrix::zeros(3, 2)).is_empty());
        assert!(diag(&IntMatrix::zeros(0, 4)).is_empty());
        assert!(diag(&IntMatrix::zeros(2, 0)).is_empty());
    }

    #[test]
    fn divisibility_repair() {
        // diag(2, 3) is not in normal form: the chain forces (1, 6)
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(diag(&m), vec![1, 6]);
        let m = IntMatrix::from_i64_rows(&[&[4, 0, 0], &[0, 6, 0], &[0, 0, 10]]);
        assert_eq!(diag(&m), vec![2, 2, 60]);
        let m = IntMatrix::from_i64_rows(&[&[-6]]);
        assert_eq!(diag(&m), vec![6]);
    }
}
