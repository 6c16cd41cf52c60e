//! Freely reduced words in a free group, stored as runs of one generator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// One run `s^e` of a single generator inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: usize, exponent: i64) -> Self {
        Syllable { generator, exponent }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("exponent overflow while combining syllables of generator {generator}")]
    ExponentOverflow { generator: usize },
    #[error("word is not cyclically reduced")]
    NotCyclicallyReduced,
}

/// An element of the free group on generators `0..n`.
///
/// Invariants: no syllable has exponent 0 or `i64::MIN`, and adjacent
/// syllables always use different generators. The empty word is the identity.
/// The derived ordering is lexicographic on the syllable sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Product of raw syllables, freely reduced. Zero exponents are skipped.
pub fn free_reduce<I>(raw: I) -> Result<Word, WordError>
where
    I: IntoIterator<Item = (usize, i64)>,
{
    let mut out: Vec<Syllable> = Vec::new();
    for (generator, exponent) in raw {
        push_syllable(&mut out, generator, exponent)?;
    }
    Ok(Word { syllables: out })
}

fn push_syllable(out: &mut Vec<Syllable>, generator: usize, exponent: i64) -> Result<(), WordError> {
    if exponent == 0 {
        return Ok(());
    }
    if exponent == i64::MIN {
        return Err(WordError::ExponentOverflow { generator });
    }
    match out.last_mut() {
        Some(top) if top.generator == generator => {
            let sum = top
                .exponent
                .checked_add(exponent)
                .filter(|s| *s != i64::MIN)
                .ok_or(WordError::ExponentOverflow { generator })?;
            if sum == 0 {
                out.pop();
            } else {
                top.exponent = sum;
            }
        }
        _ => out.push(Syllable { generator, exponent }),
    }
    Ok(())
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// The word `s^e` (identity when `e == 0`).
    pub fn generator_power(generator: usize, exponent: i64) -> Result<Self, WordError> {
        free_reduce([(generator, exponent)])
    }

    /// Wraps syllables already known to be freely reduced.
    pub(crate) fn from_reduced(syllables: Vec<Syllable>) -> Self {
        debug_assert!(syllables.iter().all(|s| s.exponent != 0 && s.exponent != i64::MIN));
        debug_assert!(syllables.windows(2).all(|w| w[0].generator != w[1].generator));
        Word { syllables }
    }

    pub fn generator(generator: usize) -> Self {
        Word {
            syllables: vec![Syllable::new(generator, 1)],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    /// Number of syllables.
    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_length(&self) -> u128 {
        self.syllables
            .iter()
            .map(|s| s.exponent.unsigned_abs() as u128)
            .sum()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.generator).max()
    }

    pub fn exponent_sum(&self, generator: usize) -> i128 {
        self.syllables
            .iter()
            .filter(|s| s.generator == generator)
            .map(|s| s.exponent as i128)
            .sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Word) -> Result<Word, WordError> {
        let mut out = self.syllables.clone();
        out.reserve(other.syllables.len());
        let mut rest = other.syllables.iter();
        // cancellation only ever happens at the junction
        for s in rest.by_ref() {
            let before = out.len();
            push_syllable(&mut out, s.generator, s.exponent)?;
            if out.len() > before || out.last().map(|t| t.generator) == Some(s.generator) {
                break;
            }
        }
        out.extend(rest.copied());
        Ok(Word { syllables: out })
    }

    pub fn checked_pow(&self, k: i64) -> Result<Word, WordError> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let count = k.unsigned_abs();
        if let [s] = base.syllables.as_slice() {
            let e = i64::try_from(count)
                .ok()
                .and_then(|c| s.exponent.checked_mul(c))
                .filter(|e| *e != i64::MIN)
                .ok_or(WordError::ExponentOverflow { generator: s.generator })?;
            return Word::generator_power(s.generator, e);
        }
        let mut acc = Word::identity();
        for _ in 0..count {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.syllables.first(), self.syllables.last()) {
            (Some(f), Some(l)) if self.syllables.len() >= 2 => {
                !(f.generator == l.generator && (f.exponent > 0) != (l.exponent > 0))
            }
            _ => true,
        }
    }

    /// Splits `self` as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let mut core = self.syllables.clone();
        let mut conj: Vec<Syllable> = Vec::new();
        while core.len() >= 2 {
            let f = core[0];
            let l = core[core.len() - 1];
            if f.generator != l.generator || (f.exponent > 0) == (l.exponent > 0) {
                break;
            }
            let g = f.generator;
            match f.exponent.unsigned_abs().cmp(&l.exponent.unsigned_abs()) {
                Ordering::Equal => {
                    conj.push(f);
                    core.pop();
                    core.remove(0);
                }
                Ordering::Less => {
                    conj.push(f);
                    core.remove(0);
                    let last = core.len() - 1;
                    core[last].exponent = l.exponent + f.exponent;
                }
                Ordering::Greater => {
                    conj.push(Syllable::new(g, -l.exponent));
                    core.pop();
                    core[0].exponent = f.exponent + l.exponent;
                }
            }
        }
        // conj syllables alternate generators except when the same generator
        // is peeled twice in a row, so rebuild through free reduction
        let conjugator = free_reduce(conj.iter().map(|s| (s.generator, s.exponent)))
            .expect("peeled exponents are bounded by the input exponents");
        (Word { syllables: core }, conjugator)
    }

    /// The prefix of `self` consisting of the first `letters` letters.
    pub fn letter_prefix(&self, letters: u128) -> Word {
        let mut remaining = letters;
        let mut out = Vec::new();
        for s in &self.syllables {
            if remaining == 0 {
                break;
            }
            let len = s.exponent.unsigned_abs() as u128;
            if len <= remaining {
                out.push(*s);
                remaining -= len;
            } else {
                let part = remaining as i64 * s.exponent.signum();
                out.push(Syllable::new(s.generator, part));
                remaining = 0;
            }
        }
        Word { syllables: out }
    }

    /// Maximal decomposition `self = root^e` with `e >= 2`, if any.
    ///
    /// Works on the cyclic syllable sequence (first and last syllable merged
    /// when they share a generator); its minimal rotation period is found
    /// with a prefix-function scan of the sequence against itself.
    pub fn proper_power(&self) -> Result<Option<(Word, u64)>, WordError> {
        if !self.is_cyclically_reduced() {
            return Err(WordError::NotCyclicallyReduced);
        }
        let syl = &self.syllables;
        if syl.is_empty() {
            return Ok(None);
        }
        if let [s] = syl.as_slice() {
            let e = s.exponent.unsigned_abs();
            return Ok((e >= 2).then(|| (Word::generator(s.generator).checked_pow(s.exponent.signum()).unwrap(), e)));
        }
        let mut cyclic: Vec<Syllable> = syl.clone();
        if cyclic[0].generator == cyclic[cyclic.len() - 1].generator {
            let last = cyclic.pop().unwrap();
            cyclic[0].exponent = cyclic[0]
                .exponent
                .checked_add(last.exponent)
                .ok_or(WordError::ExponentOverflow { generator: last.generator })?;
        }
        let k = cyclic.len();
        if k == 1 {
            // impossible for a freely reduced word with >= 2 syllables
            unreachable!("merged cyclic word collapsed to a single syllable");
        }
        let period = minimal_rotation_period(&cyclic);
        let e = (k / period) as u64;
        if e < 2 {
            return Ok(None);
        }
        let root = self.letter_prefix(self.letter_length() / e as u128);
        Ok(Some((root, e)))
    }
}

/// Smallest `p > 0` such that rotating `seq` by `p` gives `seq` back.
fn minimal_rotation_period<T: PartialEq>(seq: &[T]) -> usize {
    let n = seq.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && seq[i] != seq[k] {
            k = fail[k - 1];
        }
        if seq[i] == seq[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

impl Mul for &Word {
    type Output = Word;

    /// Panics on exponent overflow; use [`Word::checked_mul`] to handle it.
    fn mul(self, rhs: &Word) -> Word {
        self.checked_mul(rhs).expect("exponent overflow in word product")
    }
}

/// Formats a word against a generator name table.
pub struct WordDisplay<'a> {
    pub(crate) word: &'a Word,
    pub(crate) names: &'a [String],
    pub(crate) separator: &'a str,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(self.separator)?;
            }
            let name = self
                .names
                .get(s.generator)
                .map(String::as_str)
                .unwrap_or("?");
            if s.exponent == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

impl Word {
    /// Display with generator names, syllables joined by spaces.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            names,
            separator: " ",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[(usize, i64)]) -> Word {
        free_reduce(raw.iter().copied()).unwrap()
    }

    const A: usize = 0;
    const T: usize = 1;

    #[test]
    fn free_reduce_examples() {
        assert!(w(&[(A, 1), (A, -1)]).is_identity());
        assert_eq!(w(&[(A, 2), (A, 3)]).syllables(), &[Syllable::new(A, 5)]);
        assert!(w(&[(T, 1), (A, 2), (A, -2), (T, -1)]).is_identity());
    }

    #[test]
    fn overflow_is_an_error() {
        assert_eq!(
            free_reduce([(A, i64::MAX), (A, 1)]),
            Err(WordError::ExponentOverflow { generator: A })
        );
        assert!(free_reduce([(A, i64::MIN)]).is_err());
        assert!(w(&[(A, i64::MAX)]).checked_pow(2).is_err());
    }

    #[test]
    fn group_operations() {
        let u = w(&[(T, 1), (A, 2)]);
        assert_eq!(u.inverse(), w(&[(A, -2), (T, -1)]));
        assert!((&u * &u.inverse()).is_identity());
        assert_eq!(w(&[(A, 1)]).checked_pow(-3).unwrap(), w(&[(A, -3)]));
        let v = w(&[(A, 1), (T, 1), (A, 1)]);
        assert_eq!(v.checked_pow(2).unwrap(), w(&[(A, 1), (T, 1), (A, 2), (T, 1), (A, 1)]));
        assert!(v.checked_pow(0).unwrap().is_identity());
    }

    #[test]
    fn junction_cancellation_cascades() {
        let u = w(&[(A, 1), (T, 2), (A, 3)]);
        let v = w(&[(A, -3), (T, -2), (A, 5)]);
        assert_eq!(&u * &v, w(&[(A, 6)]));
    }

    #[test]
    fn cyclic_reduction_examples() {
        let (core, c) = w(&[(A, 1), (T, 2), (A, -1)]).cyclically_reduce();
        assert_eq!(core, w(&[(T, 2)]));
        assert_eq!(c, w(&[(A, 1)]));

        let r = w(&[(T, 1), (A, 2), (T, -1), (A, -4)]);
        assert_eq!(r.cyclically_reduce(), (r.clone(), Word::identity()));
        assert_eq!(Word::identity().cyclically_reduce(), (Word::identity(), Word::identity()));

        // unequal boundary exponents leave a remainder in the core
        let x = w(&[(A, 2), (T, 1), (A, -5)]);
        let (core, c) = x.cyclically_reduce();
        assert_eq!(core, w(&[(T, 1), (A, -3)]));
        assert_eq!(&(&c * &core) * &c.inverse(), x);
    }

    #[test]
    fn proper_power_examples() {
        assert_eq!(w(&[(A, 4)]).proper_power().unwrap(), Some((w(&[(A, 1)]), 4)));
        assert_eq!(w(&[(A, -4)]).proper_power().unwrap(), Some((w(&[(A, -1)]), 4)));
        assert_eq!(w(&[(T, 1), (A, 2), (T, -1), (A, -4)]).proper_power().unwrap(), None);
        assert_eq!(
            w(&[(A, 2), (T, 2), (A, 2), (T, 2)]).proper_power().unwrap(),
            Some((w(&[(A, 2), (T, 2)]), 2))
        );
        assert_eq!(w(&[(A, 1)]).proper_power().unwrap(), None);
        assert_eq!(Word::identity().proper_power().unwrap(), None);
        assert_eq!(
            w(&[(A, 1), (T, 1), (A, -1)]).proper_power(),
            Err(WordError::NotCyclicallyReduced)
        );
    }

    #[test]
    fn proper_power_with_split_boundary_syllable() {
        // (a t a)^2 = a t a^2 t a : the root straddles a merged syllable
        let root = w(&[(A, 1), (T, 1), (A, 1)]);
        let sq = root.checked_pow(2).unwrap();
        assert_eq!(sq.proper_power().unwrap(), Some((root, 2)));
        // (a t^-1 a^2)^3
        let root = w(&[(A, 1), (T, -1), (A, 2)]);
        let cube = root.checked_pow(3).unwrap();
        assert_eq!(cube.proper_power().unwrap(), Some((root, 3)));
    }

    #[test]
    fn rotation_period() {
        assert_eq!(minimal_rotation_period(&[1, 2, 1, 2]), 2);
        assert_eq!(minimal_rotation_period(&[1, 2, 1]), 3);
        assert_eq!(minimal_rotation_period(&[7, 7, 7]), 1);
    }
}
