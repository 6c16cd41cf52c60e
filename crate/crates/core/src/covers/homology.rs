//! First homology of the cover attached to a permutation representation,
//! computed three independent ways.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rep::{theta_eval, PermRep};
use super::schreier::reidemeister_schreier;
use super::CoverError;
use crate::foxcalc::fox_jacobian;
use crate::intlinalg::{abelian_group_from_presentation_matrix, smith_normal_form, AbelianGroup, IntMatrix};
use crate::presentation::Presentation;

/// The block matrix `theta(J)` in generator-row / relator-column layout.
///
/// Rows run over (generator, sheet) generator-major, columns over
/// (relator, sheet) relator-major. Block `(j, i)` is the transpose of
/// `theta(d r_i / d s_j)`: its entry `(d, c)` counts, with sign, how often
/// the lift of `r_i` starting on sheet `c` crosses the lift of `s_j`
/// starting on sheet `d`. For `q = 2` every block is symmetric.
pub fn fox_hempel_matrix(p: &Presentation, rep: &PermRep) -> IntMatrix {
    let q = rep.degree();
    let n = p.generator_count();
    let m = p.relator_count();
    let jac = fox_jacobian(p);
    let mut out = IntMatrix::zeros(n * q, m * q);
    for i in 0..m {
        for j in 0..n {
            let block = theta_eval(jac.entry(i, j), rep).transpose();
            out.set_block(j * q, i * q, &block);
        }
    }
    out
}

/// `H_1` of the cover via the Fox–Hempel presentation matrix, which
/// presents `H_1 + Z^(q-1)`.
pub fn subgroup_h1_fox(p: &Presentation, rep: &PermRep) -> Result<AbelianGroup, CoverError> {
    let padded = abelian_group_from_presentation_matrix(&fox_hempel_matrix(p, rep));
    Ok(padded.subtract_free_rank(rep.degree() - 1)?)
}

/// `H_1` of the cover by abelianizing the Reidemeister–Schreier presentation.
pub fn subgroup_h1_rs(p: &Presentation, rep: &PermRep) -> AbelianGroup {
    let sub = reidemeister_schreier(p, rep);
    abelian_group_from_presentation_matrix(&sub.abelianized_relator_matrix())
}

/// Cellular chain complex of the covering 2-complex:
/// `q` vertices, `n q` edges and `m q` faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedComplex {
    /// `q x nq`: rows are vertices, columns are edges `(generator, sheet)`.
    pub d1: IntMatrix,
    /// `nq x mq`: rows are edges, columns are faces `(relator, sheet)`.
    pub d2: IntMatrix,
}

impl LiftedComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.d1.rows() as i64 - self.d1.cols() as i64 + self.d2.cols() as i64
    }
}

/// Builds the lifted complex by walking each relator around the cover.
///
/// Edge `(s, i)` runs from vertex `i` to vertex `i * theta(s)`. The face
/// `(r, c)` is traced from vertex `c`, tallying each edge crossed with its
/// direction.
pub fn lifted_complex(p: &Presentation, rep: &PermRep) -> LiftedComplex {
    let q = rep.degree();
    let n = p.generator_count();
    let m = p.relator_count();
    let mut d1 = IntMatrix::zeros(q, n * q);
    for g in 0..n {
        for i in 0..q {
            let target = rep.generator_image(g).apply(i);
            if target != i {
                d1[(target, g * q + i)] += BigInt::one();
                d1[(i, g * q + i)] -= BigInt::one();
            }
        }
    }
    let inverses: Vec<_> = rep.assignment().iter().map(|s| s.inverse()).collect();
    let mut d2 = IntMatrix::zeros(n * q, m * q);
    for (j, r) in p.relators().iter().enumerate() {
        for c in 0..q {
            let col = j * q + c;
            let mut x = c;
            for s in r.syllables() {
                let g = s.generator;
                for _ in 0..s.exponent.unsigned_abs() {
                    if s.exponent > 0 {
                        d2[(g * q + x, col)] += BigInt::one();
                        x = rep.generator_image(g).apply(x);
                    } else {
                        x = inverses[g].apply(x);
                        d2[(g * q + x, col)] -= BigInt::one();
                    }
                }
            }
        }
    }
    LiftedComplex { d1, d2 }
}

/// `ker d1 / im d2` of the lifted complex.
///
/// A basis of `ker d1` is read off the column witness of the Smith form of
/// `d1`; `d2` is rewritten in that basis and its cokernel computed.
pub fn cover_chain_h1(p: &Presentation, rep: &PermRep) -> AbelianGroup {
    let cx = lifted_complex(p, rep);
    let snf = smith_normal_form(&cx.d1);
    let r = snf.rank();
    let coords = snf.q_inverse() * &cx.d2;
    assert!(
        (0..r).all(|i| coords.row(i).iter().all(Zero::is_zero)),
        "d1 * d2 != 0: lifted complex is not a chain complex"
    );
    abelian_group_from_presentation_matrix(&coords.rows_from(r))
}

/// All three computations side by side.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CoverHomology {
    pub fox: AbelianGroup,
    pub rs: AbelianGroup,
    pub chain: AbelianGroup,
}

impl CoverHomology {
    pub fn agree(&self) -> bool {
        self.fox == self.rs && self.rs == self.chain
    }
}

pub fn cover_homology(p: &Presentation, rep: &PermRep) -> Result<CoverHomology, CoverError> {
    Ok(CoverHomology {
        fox: subgroup_h1_fox(p, rep)?,
        rs: subgroup_h1_rs(p, rep),
        chain: cover_chain_h1(p, rep),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::parse_rep;

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn solitar_odd_case_matrix() {
        // B(3, 5), a -> id, t -> swap
        let p = pres("< a, t | t a^3 t^-1 a^-5 >");
        let rep = parse_rep(&p, "a:id, t:(1 2)").unwrap();
        let m = fox_hempel_matrix(&p, &rep);
        assert_eq!(m, IntMatrix::from_i64_rows(&[&[-5, 3], &[3, -5], &[0, 0], &[0, 0]]));
        assert_eq!(subgroup_h1_fox(&p, &rep).unwrap(), AbelianGroup::from_parts(1, &[16]));
        assert_eq!(cover_chain_h1(&p, &rep), AbelianGroup::from_parts(1, &[16]));
        assert_eq!(subgroup_h1_rs(&p, &rep), AbelianGroup::from_parts(1, &[16]));
    }

    #[test]
    fn degree_one_is_abelianization() {
        let p = pres("< a, t | t a^2 t^-1 a^-4 >");
        let rep = PermRep::trivial(&p);
        assert_eq!(fox_hempel_matrix(&p, &rep), p.abelianized_relator_matrix());
        let expected = AbelianGroup::from_parts(1, &[2]);
        assert_eq!(subgroup_h1_fox(&p, &rep).unwrap(), expected);
        assert_eq!(cover_chain_h1(&p, &rep), expected);
        assert_eq!(subgroup_h1_rs(&p, &rep), expected);
    }

    #[test]
    fn lifted_complex_shape() {
        let p = pres("< a, t | t a^4 t^-1 a^-6 >");
        let rep = parse_rep(&p, "a:(1 2), t:id").unwrap();
        let cx = lifted_complex(&p, &rep);
        assert_eq!((cx.d1.rows(), cx.d1.cols(), cx.d2.cols()), (2, 4, 2));
        assert_eq!(cx.euler_characteristic(), 0);
        assert!((&cx.d1 * &cx.d2).is_zero());
        assert_eq!(cover_chain_h1(&p, &rep), AbelianGroup::free(2));
    }

    #[test]
    fn meskin_block_matrix() {
        let p = pres("< s1, s2 | s1^2 s2^2 >");
        let rep = parse_rep(&p, "s1:(1 2), s2:(1 2)").unwrap();
        assert_eq!(
            fox_hempel_matrix(&p, &rep),
            IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1]])
        );
    }

    #[test]
    fn degree_three_cover_of_trefoil_group() {
        // <x, y | x^2 y^-3> onto S_3: x -> (1 2), y -> (1 2 3)
        let p = pres("< x, y | x^2 y^-3 >");
        let rep = parse_rep(&p, "x:(1 2), y:(1 2 3)").unwrap();
        let h = cover_homology(&p, &rep).unwrap();
        assert!(h.agree(), "{h:?}");
    }
}
