//! The integral group ring of a free group and Fox derivatives.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::presentation::{Presentation, Syllable, Word};

/// A finite formal sum `sum c_w * w` with integer coefficients.
///
/// No stored coefficient is zero; the zero element is the empty map.
/// Iteration is in the lexicographic syllable order of the words.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, BigInt::one());
        GroupRingElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return GroupRingElement::zero();
        }
        GroupRingElement {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Left multiplication by a single word.
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = GroupRingElement::zero();
        for (u, c) in &self.terms {
            out.add_term(w * u, c.clone());
        }
        out
    }

    /// Sum of all coefficients (the augmentation map to Z).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> RingDisplay<'a> {
        RingDisplay {
            element: self,
            names,
            collect: false,
        }
    }

    /// Display with terms sharing a left factor grouped, e.g.
    /// `t^2*(1 + a + a^2) - (1 + a)`.
    pub fn display_collected<'a>(&'a self, names: &'a [String]) -> RingDisplay<'a> {
        RingDisplay {
            element: self,
            names,
            collect: true,
        }
    }
}

impl From<Word> for GroupRingElement {
    fn from(w: Word) -> Self {
        GroupRingElement::from_word(w)
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;

    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;

    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &-rhs
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;

    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u * v, a * b);
            }
        }
        out
    }
}

/// Fox derivative of `w` with respect to generator `generator`.
///
/// Uses the product rule over syllables with the closed forms
/// `d(s^e)/ds = 1 + s + ... + s^(e-1)` for `e > 0` and
/// `-(s^-1 + ... + s^e)` for `e < 0`.
pub fn fox_derivative(w: &Word, generator: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let syl = w.syllables();
    let mut prefix: Vec<Syllable> = Vec::with_capacity(syl.len());
    for s in syl {
        if s.generator == generator {
            let (range, sign) = if s.exponent > 0 {
                (0..s.exponent, BigInt::one())
            } else {
                (s.exponent..0, -BigInt::one())
            };
            for i in range {
                // prefix never ends in `generator`, so appending keeps it reduced
                let mut word = prefix.clone();
                if i != 0 {
                    word.push(Syllable::new(generator, i));
                }
                let word = Word::from_reduced(word);
                out.add_term(word, sign.clone());
            }
        }
        prefix.push(*s);
    }
    out
}

/// Matrix of Fox derivatives `d r_i / d s_j` of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Jacobian {
    presentation: Presentation,
    entries: Vec<Vec<GroupRingElement>>,
}

impl Jacobian {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// `d r_relator / d s_generator`.
    pub fn entry(&self, relator: usize, generator: usize) -> &GroupRingElement {
        &self.entries[relator][generator]
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.presentation.generator_count()
    }
}

pub fn fox_jacobian(p: &Presentation) -> Jacobian {
    let entries = p
        .relators()
        .iter()
        .map(|r| (0..p.generator_count()).map(|j| fox_derivative(r, j)).collect())
        .collect();
    Jacobian {
        presentation: p.clone(),
        entries,
    }
}

pub struct RingDisplay<'a> {
    element: &'a GroupRingElement,
    names: &'a [String],
    collect: bool,
}

fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    body: &str,
    body_is_one: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let mag = c.abs();
    if body_is_one {
        write!(f, "{mag}")
    } else if mag.is_one() {
        f.write_str(body)
    } else {
        write!(f, "{mag}*{body}")
    }
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        let text = |w: &Word| {
            crate::presentation::WordDisplay {
                word: w,
                names: self.names,
                separator: "*",
            }
            .to_string()
        };
        if !self.collect {
            for (k, (w, c)) in self.element.terms().enumerate() {
                write_signed_term(f, k == 0, c, &text(w), w.is_identity())?;
            }
            return Ok(());
        }

        // group terms P*g^i by (P, g); a bare P joins its group when it
        // is not already part of a larger group of its own
        let terms: Vec<(&Word, &BigInt)> = self.element.terms().collect();
        let mut keys: Vec<(Word, usize)> = Vec::new();
        let mut group_of: Vec<Option<usize>> = vec![None; terms.len()];
        for (k, (w, _)) in terms.iter().enumerate() {
            if let Some(last) = w.syllables().last() {
                let key = (Word::from_reduced(w.syllables()[..w.len() - 1].to_vec()), last.generator);
                let g = keys.iter().position(|x| *x == key).unwrap_or_else(|| {
                    keys.push(key);
                    keys.len() - 1
                });
                group_of[k] = Some(g);
            }
        }
        let size = |g: usize, group_of: &[Option<usize>]| group_of.iter().filter(|x| **x == Some(g)).count();
        for g in 0..keys.len() {
            if let Some(k) = terms.iter().position(|(w, _)| **w == keys[g].0) {
                if group_of[k].is_none_or(|own| size(own, &group_of) < 2) {
                    group_of[k] = Some(g);
                }
            }
        }

        let mut emitted = vec![false; terms.len()];
        for k in 0..terms.len() {
            if emitted[k] {
                continue;
            }
            let first = k == 0;
            let members: Vec<usize> = match group_of[k] {
                Some(g) if size(g, &group_of) >= 2 => (0..terms.len()).filter(|i| group_of[*i] == Some(g)).collect(),
                _ => vec![k],
            };
            if members.len() == 1 {
                let (w, c) = terms[k];
                write_signed_term(f, first, c, &text(w), w.is_identity())?;
                emitted[k] = true;
                continue;
            }
            let (prefix, _) = &keys[group_of[k].unwrap()];
            let sign = if members.iter().all(|i| terms[*i].1.is_negative()) {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            let mut inner = GroupRingElement::zero();
            for i in &members {
                let (w, c) = terms[*i];
                let tail = Word::from_reduced(w.syllables()[prefix.len()..].to_vec());
                inner.add_term(tail, c * &sign);
                emitted[*i] = true;
            }
            let inner = inner.display(self.names).to_string();
            let body = if prefix.is_identity() {
                format!("({inner})")
            } else {
                format!("{}*({inner})", text(prefix))
            };
            write_signed_term(f, first, &sign, &body, false)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::free_reduce;

    const A: usize = 0;
    const T: usize = 1;

    fn w(raw: &[(usize, i64)]) -> Word {
        free_reduce(raw.iter().copied()).unwrap()
    }

    fn ring(terms: &[(i64, &[(usize, i64)])]) -> GroupRingElement {
        let mut x = GroupRingElement::zero();
        for (c, word) in terms {
            x.add_term(w(word), BigInt::from(*c));
        }
        x
    }

    fn names() -> Vec<String> {
        vec!["a".into(), "t".into()]
    }

    #[test]
    fn ring_arithmetic() {
        let a = GroupRingElement::from_word(w(&[(A, 1)]));
        let a_inv = GroupRingElement::from_word(w(&[(A, -1)]));
        assert_eq!(&a * &a_inv, GroupRingElement::one());

        let x = ring(&[(2, &[(T, 1)]), (-3, &[(A, 1), (T, 1)])]);
        assert!((&x + &x.scale(&BigInt::from(-1))).is_zero());

        let one_plus_a = ring(&[(1, &[]), (1, &[(A, 1)])]);
        let one_minus_a = ring(&[(1, &[]), (-1, &[(A, 1)])]);
        assert_eq!(&one_plus_a * &one_minus_a, ring(&[(1, &[]), (-1, &[(A, 2)])]));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(ring(&[(1, &[]), (1, &[(A, 1)]), (1, &[(A, 2)])]).augmentation(), BigInt::from(3));
        assert_eq!(GroupRingElement::zero().augmentation(), BigInt::from(0));
        assert_eq!(ring(&[(2, &[(T, 1)]), (-2, &[(A, 1)])]).augmentation(), BigInt::from(0));
    }

    #[test]
    fn derivative_closed_forms() {
        let d = fox_derivative(&w(&[(A, 4)]), A);
        assert_eq!(d, ring(&[(1, &[]), (1, &[(A, 1)]), (1, &[(A, 2)]), (1, &[(A, 3)])]));
        let d = fox_derivative(&w(&[(A, -2)]), A);
        assert_eq!(d, ring(&[(-1, &[(A, -1)]), (-1, &[(A, -2)])]));
        assert!(fox_derivative(&w(&[(T, 3)]), A).is_zero());
        assert!(fox_derivative(&Word::identity(), A).is_zero());
    }

    #[test]
    fn strebel_relator_derivative_in_free_ring() {
        // r = t^2 a^3 t^-2 a^-5
        let r = w(&[(T, 2), (A, 3), (T, -2), (A, -5)]);
        let expected = ring(&[
            (1, &[]),
            (1, &[(T, 1)]),
            (-1, &[(T, 2), (A, 3), (T, -1)]),
            (-1, &[(T, 2), (A, 3), (T, -2)]),
        ]);
        assert_eq!(fox_derivative(&r, T), expected);
    }

    #[test]
    fn jacobian_shape() {
        let p: Presentation = "< a, t | t a^2 t^-1 a^-4 >".parse().unwrap();
        let j = fox_jacobian(&p);
        assert_eq!((j.rows(), j.cols()), (1, 2));
        let free: Presentation = "< a, t | >".parse().unwrap();
        assert_eq!(fox_jacobian(&free).rows(), 0);

        let meskin: Presentation = "< s1, s2 | s1^2 s2^3 >".parse().unwrap();
        let j = fox_jacobian(&meskin);
        let expected = ring(&[(1, &[(0, 2)]), (1, &[(0, 2), (1, 1)]), (1, &[(0, 2), (1, 2)])]);
        assert_eq!(j.entry(0, 1), &expected);
    }

    #[test]
    fn pretty_printing() {
        let n = names();
        let x = ring(&[(1, &[]), (1, &[(A, 1)]), (-2, &[(T, 1), (A, -1)])]);
        assert_eq!(x.display(&n).to_string(), "1 + a - 2*t*a^-1");
        assert_eq!(GroupRingElement::zero().display(&n).to_string(), "0");
        assert_eq!(ring(&[(-3, &[])]).display(&n).to_string(), "-3");

        let y = ring(&[
            (1, &[(T, 2)]),
            (1, &[(T, 2), (A, 1)]),
            (1, &[(T, 2), (A, 2)]),
            (-1, &[]),
            (-1, &[(A, 1)]),
        ]);
        assert_eq!(y.display_collected(&n).to_string(), "-(1 + a) + t^2*(1 + a + a^2)");
    }
}
