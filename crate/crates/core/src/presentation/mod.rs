//! Free-group words and finite group presentations.

mod parse;
mod word;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

pub use parse::{parse_presentation, ParseError, Position};
pub use word::{free_reduce, Syllable, Word, WordDisplay, WordError};

use crate::intlinalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("relator {relator} uses generator index {index}, but only {count} generators exist")]
    GeneratorOutOfRange {
        relator: usize,
        index: usize,
        count: usize,
    },
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidGeneratorName(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A named generator and its position in the generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator<'a> {
    pub name: &'a str,
    pub index: usize,
}

/// A finite presentation `< s_1, ..., s_n | r_1, ..., r_m >`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        for (i, name) in names.iter().enumerate() {
            let mut chars = name.chars();
            let valid = chars.next().is_some_and(parse::is_ident_start)
                && chars.all(parse::is_ident_continue);
            if !valid {
                return Err(PresentationError::InvalidGeneratorName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(PresentationError::DuplicateGenerator(name.clone()));
            }
        }
        for (j, r) in relators.iter().enumerate() {
            if let Some(index) = r.max_generator().filter(|g| *g >= names.len()) {
                return Err(PresentationError::GeneratorOutOfRange {
                    relator: j,
                    index,
                    count: names.len(),
                });
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Convenience constructor with generator names given as string slices.
    pub fn with_names(names: &[&str], relators: Vec<Word>) -> Result<Self, PresentationError> {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), relators)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator<'_>> {
        self.names
            .iter()
            .enumerate()
            .map(|(index, name)| Generator { name, index })
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        w.display(&self.names)
    }

    /// Relators that are proper powers after cyclic reduction, with their exponent.
    pub fn proper_power_relators(&self) -> Vec<(usize, u64)> {
        self.relators
            .iter()
            .enumerate()
            .filter_map(|(j, r)| {
                let (core, _) = r.cyclically_reduce();
                core.proper_power()
                    .ok()
                    .flatten()
                    .map(|(_, e)| (j, e))
            })
            .collect()
    }

    /// Exponent-sum matrix: rows are generators, columns are relators.
    pub fn abelianized_relator_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.generator_count(), self.relator_count());
        for (j, r) in self.relators.iter().enumerate() {
            for s in r.syllables() {
                m[(s.generator, j)] += BigInt::from(s.exponent);
            }
        }
        m
    }
}

impl std::str::FromStr for Presentation {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.names.join(", "))?;
        for (j, r) in self.relators.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, " {}", r.display(&self.names))?;
        }
        f.write_str(" >")
    }
}
