use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::CoverError;
use crate::intlinalg::IntMatrix;

/// A permutation of `{1, ..., q}` acting on the right: `i * (s t) = (i * s) * t`.
///
/// Stored 0-based; text forms use 1-based points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the (0-based) image of point `i`.
    pub fn new(images: Vec<usize>) -> Result<Self, CoverError> {
        let q = images.len();
        if q == 0 {
            return Err(CoverError::BadPermutation("degree must be at least 1".into()));
        }
        let mut seen = vec![false; q];
        for &x in &images {
            if x >= q || std::mem::replace(&mut seen[x], true) {
                return Err(CoverError::BadPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(q: usize) -> Self {
        Permutation {
            images: (0..q).collect(),
        }
    }

    /// The transposition swapping 0-based points `a` and `b`.
    pub fn transposition(q: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..q).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// The nontrivial element of S_2.
    pub fn swap() -> Self {
        Permutation::transposition(2, 0, 1)
    }

    /// Builds a permutation from 1-based cycles.
    pub fn from_cycles(q: usize, cycles: &[Vec<usize>]) -> Result<Self, CoverError> {
        let mut images: Vec<usize> = (0..q).collect();
        let mut moved = vec![false; q];
        for cycle in cycles {
            for (k, &point) in cycle.iter().enumerate() {
                if point == 0 || point > q {
                    return Err(CoverError::BadPermutation(format!("point {point} outside 1..={q}")));
                }
                if std::mem::replace(&mut moved[point - 1], true) {
                    return Err(CoverError::BadPermutation(format!("point {point} appears twice")));
                }
                images[point - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let k = e.unsigned_abs();
        // step each point around its own cycle
        let q = self.degree();
        let mut images = vec![0; q];
        let mut done = vec![false; q];
        for start in 0..q {
            if done[start] {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = base.images[start];
            while x != start {
                cycle.push(x);
                x = base.images[x];
            }
            let len = cycle.len() as u64;
            let shift = (k % len) as usize;
            for (pos, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(pos + shift) % cycle.len()];
                done[p] = true;
            }
        }
        Permutation { images }
    }

    /// 1-based disjoint cycles of length at least two.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

/// The permutation matrix with entry `(i, i*s) = 1`.
pub fn perm_matrix(s: &Permutation) -> IntMatrix {
    let q = s.degree();
    let mut m = IntMatrix::zeros(q, q);
    for i in 0..q {
        m[(i, s.apply(i))] = BigInt::one();
    }
    m
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}
