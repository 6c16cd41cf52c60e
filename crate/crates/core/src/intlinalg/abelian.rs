use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix, LinalgError};

/// A finitely generated abelian group `Z^l + Z_n1 + ... + Z_nk` in
/// invariant-factor form: every `n_i >= 2` and `n_i | n_(i+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAbelianGroup")]
pub struct AbelianGroup {
    free_rank: usize,
    #[serde(serialize_with = "serialize_torsion")]
    torsion: Vec<BigUint>,
}

#[derive(Deserialize)]
struct RawAbelianGroup {
    free_rank: usize,
    #[serde(deserialize_with = "deserialize_torsion")]
    torsion: Vec<BigUint>,
}

impl TryFrom<RawAbelianGroup> for AbelianGroup {
    type Error = LinalgError;

    fn try_from(raw: RawAbelianGroup) -> Result<Self, Self::Error> {
        AbelianGroup::new(raw.free_rank, raw.torsion)
    }
}

/// Torsion entries are JSON numbers when they fit in a `u64`, decimal
/// strings otherwise.
fn serialize_torsion<S: Serializer>(torsion: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(torsion.len()))?;
    for n in torsion {
        match n.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&n.to_string())?,
        }
    }
    seq.end()
}

fn deserialize_torsion<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Small(u64),
        Text(String),
    }
    Vec::<Entry>::deserialize(d)?
        .into_iter()
        .map(|e| match e {
            Entry::Small(v) => Ok(BigUint::from(v)),
            Entry::Text(s) => s.parse().map_err(de::Error::custom),
        })
        .collect()
}

impl AbelianGroup {
    /// Validates the canonical form.
    pub fn new(free_rank: usize, torsion: Vec<BigUint>) -> Result<Self, LinalgError> {
        let two = BigUint::from(2u8);
        if torsion.iter().any(|n| *n < two) {
            return Err(LinalgError::NotCanonical("torsion entries must be at least 2".into()));
        }
        if torsion.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(LinalgError::NotCanonical("torsion entries must form a divisibility chain".into()));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Convenience for small torsion values; panics if not canonical.
    pub fn from_parts(free_rank: usize, torsion: &[u64]) -> Self {
        AbelianGroup::new(free_rank, torsion.iter().map(|&n| BigUint::from(n)).collect())
            .expect("non-canonical abelian group")
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// No `Z_2` direct summand, i.e. no invariant factor is `2 mod 4`.
    pub fn is_two_avoiding(&self) -> bool {
        let four = BigUint::from(4u8);
        let two = BigUint::from(2u8);
        !self.torsion.iter().any(|n| n % &four == two)
    }

    /// Drops `k` free summands. Fails rather than clamping.
    pub fn subtract_free_rank(&self, k: usize) -> Result<Self, LinalgError> {
        if self.free_rank < k {
            return Err(LinalgError::InsufficientFreeRank {
                have: self.free_rank,
                remove: k,
            });
        }
        Ok(AbelianGroup {
            free_rank: self.free_rank - k,
            torsion: self.torsion.clone(),
        })
    }
}

/// Cokernel of a presentation matrix whose rows index generators and whose
/// columns index relations.
pub fn abelian_group_from_presentation_matrix(a: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(a);
    let torsion = snf
        .diagonal()
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.magnitude().clone())
        .collect();
    AbelianGroup {
        free_rank: a.rows() - snf.rank(),
        torsion,
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z_{n}")));
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_presentation_matrices() {
        // B(m, n) abelianized: column (m - n, 0)
        let g = abelian_group_from_presentation_matrix(&IntMatrix::from_i64_rows(&[&[-4], &[0]]));
        assert_eq!(g, AbelianGroup::from_parts(1, &[4]));
        let g = abelian_group_from_presentation_matrix(&IntMatrix::zeros(3, 0));
        assert_eq!(g, AbelianGroup::free(3));
        let g = abelian_group_from_presentation_matrix(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]));
        assert_eq!(g, AbelianGroup::from_parts(0, &[2, 2]));
    }

    #[test]
    fn two_avoidance() {
        assert!(!AbelianGroup::from_parts(1, &[2]).is_two_avoiding());
        assert!(AbelianGroup::from_parts(1, &[4]).is_two_avoiding());
        assert!(!AbelianGroup::from_parts(1, &[6]).is_two_avoiding());
        assert!(AbelianGroup::from_parts(0, &[3, 12]).is_two_avoiding());
        assert!(AbelianGroup::free(0).is_two_avoiding());
    }

    #[test]
    fn subtract_free_rank_cases() {
        let g = AbelianGroup::from_parts(2, &[4]);
        assert_eq!(g.subtract_free_rank(1).unwrap(), AbelianGroup::from_parts(1, &[4]));
        assert_eq!(AbelianGroup::free(3).subtract_free_rank(0).unwrap(), AbelianGroup::free(3));
        assert!(matches!(
            AbelianGroup::free(1).subtract_free_rank(2),
            Err(LinalgError::InsufficientFreeRank { have: 1, remove: 2 })
        ));
    }

    #[test]
    fn canonical_form_is_enforced() {
        assert!(AbelianGroup::new(0, vec![BigUint::from(1u8)]).is_err());
        assert!(AbelianGroup::new(0, vec![BigUint::from(4u8), BigUint::from(6u8)]).is_err());
    }

    #[test]
    fn json_shape() {
        let g = AbelianGroup::from_parts(1, &[16]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":1,"torsion":[16]}"#);
        assert_eq!(serde_json::from_str::<AbelianGroup>(&s).unwrap(), g);
        let big: AbelianGroup = serde_json::from_str(r#"{"free_rank":0,"torsion":["100000000000000000000000"]}"#).unwrap();
        assert_eq!(big.torsion()[0].to_string(), "100000000000000000000000");
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"free_rank":0,"torsion":[2,3]}"#).is_err());
        assert_eq!(g.to_string(), "Z + Z_16");
        assert_eq!(AbelianGroup::free(0).to_string(), "0");
    }
}
