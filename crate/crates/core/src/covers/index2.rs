//! Index-2 subgroups, i.e. surjections onto S_2.

use super::homology::subgroup_h1_fox;
use super::perm::Permutation;
use super::rep::{validate_rep, PermRep};
use super::CoverError;
use crate::intlinalg::AbelianGroup;
use crate::presentation::Presentation;

/// Largest generator count accepted by [`enumerate_index2_reps`].
pub const INDEX2_GENERATOR_CAP: usize = 24;

/// Every surjection onto S_2.
///
/// Candidate `v` is read as a bit mask, bit `i` set meaning generator `i`
/// maps to the swap; masks are visited in increasing order. A mask is kept
/// when it has even dot product with the exponent-sum vector of every relator.
pub fn enumerate_index2_reps(p: &Presentation) -> Result<Vec<PermRep>, CoverError> {
    let n = p.generator_count();
    if n > INDEX2_GENERATOR_CAP {
        return Err(CoverError::TooManyGenerators {
            count: n,
            cap: INDEX2_GENERATOR_CAP,
        });
    }
    let parity: Vec<u64> = p
        .relators()
        .iter()
        .map(|r| {
            (0..n)
                .filter(|&g| r.exponent_sum(g).rem_euclid(2) == 1)
                .fold(0u64, |acc, g| acc | (1 << g))
        })
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        if parity.iter().any(|r| (r & mask).count_ones() % 2 == 1) {
            continue;
        }
        let perms = (0..n)
            .map(|g| {
                if mask >> g & 1 == 1 {
                    Permutation::swap()
                } else {
                    Permutation::identity(2)
                }
            })
            .collect();
        out.push(validate_rep(p, perms)?);
    }
    Ok(out)
}

/// First index-2 representation, in enumeration order, whose kernel is
/// 2-avoiding.
pub fn find_two_avoiding_index2(p: &Presentation) -> Result<Option<(PermRep, AbelianGroup)>, CoverError> {
    for rep in enumerate_index2_reps(p)? {
        let h = subgroup_h1_fox(p, &rep)?;
        if h.is_two_avoiding() {
            return Ok(Some((rep, h)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    fn swaps(rep: &PermRep) -> Vec<bool> {
        rep.assignment().iter().map(|s| !s.is_identity()).collect()
    }

    #[test]
    fn enumeration_examples() {
        let reps = enumerate_index2_reps(&pres("< a, t | t a^4 t^-1 a^-6 >")).unwrap();
        let pattern: Vec<_> = reps.iter().map(swaps).collect();
        assert_eq!(pattern, vec![vec![true, false], vec![false, true], vec![true, true]]);

        let reps = enumerate_index2_reps(&pres("< a, t | t a^5 t^-1 a^-6 >")).unwrap();
        assert_eq!(reps.iter().map(swaps).collect::<Vec<_>>(), vec![vec![false, true]]);

        assert!(enumerate_index2_reps(&pres("< a | a >")).unwrap().is_empty());
    }

    #[test]
    fn search_examples() {
        let (rep, h) = find_two_avoiding_index2(&pres("< a, t | t a^4 t^-1 a^-6 >")).unwrap().unwrap();
        assert_eq!(swaps(&rep), vec![true, false]);
        assert!(h.is_two_avoiding());

        let (_, h) = find_two_avoiding_index2(&pres("< a | a^2 >")).unwrap().unwrap();
        assert!(h.is_trivial());

        let (_, h) = find_two_avoiding_index2(&pres("< a, t | >")).unwrap().unwrap();
        assert_eq!(h, AbelianGroup::free(3));
    }
}
