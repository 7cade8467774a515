use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::word::Symbol;

use super::Morphism;

/// An endomorphism together with a letter `a` such that `φ(a) = aw`, `w ≠ ε`,
/// and `|φⁿ(a)|` grows without bound.
///
/// Growth is certified by requiring every letter reachable from `a` to have
/// a non-empty image: then `|φⁿ⁺¹(a)| ≥ |φⁿ(a)| + 1`. Erasing morphisms
/// are therefore never substitutions, even when the orbit of `a` would
/// still grow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    morphism: Morphism,
    letter: Symbol,
}

impl Substitution {
    pub fn new(morphism: Morphism, letter: Symbol) -> Result<Self> {
        if !morphism.is_endomorphism() {
            return Err(Error::NotASubstitution(format!(
                "{morphism} is not an endomorphism"
            )));
        }
        if letter.index() >= morphism.domain().len() {
            return Err(Error::NotASubstitution(format!(
                "letter id {} outside the alphabet",
                letter.0
            )));
        }
        let c = morphism.domain().char_of(letter);
        let image = morphism.image_symbols(letter);
        if image.len() < 2 || image[0] != letter {
            return Err(Error::NotASubstitution(format!(
                "{morphism} is not prolongable on {c:?}"
            )));
        }
        if let Some(e) = reachable(&morphism, letter)
            .into_iter()
            .find(|&s| morphism.image_symbols(s).is_empty())
        {
            return Err(Error::NotASubstitution(format!(
                "{morphism} erases {:?}, reachable from {c:?}",
                morphism.domain().char_of(e)
            )));
        }
        Ok(Substitution { morphism, letter })
    }

    pub fn with_letter(morphism: Morphism, letter: char) -> Result<Self> {
        let s = morphism
            .domain()
            .symbol(letter)
            .ok_or(Error::UnknownSymbol(letter))?;
        Self::new(morphism, s)
    }

    /// Every letter the morphism can be prolonged on, in alphabet order.
    pub fn all(morphism: &Morphism) -> Vec<Substitution> {
        morphism
            .domain()
            .symbols()
            .filter_map(|s| Substitution::new(morphism.clone(), s).ok())
            .collect()
    }

    /// Prolongs on the first letter (in alphabet order) that allows it.
    pub fn first(morphism: Morphism) -> Result<Self> {
        Self::all(&morphism)
            .into_iter()
            .next()
            .ok_or_else(|| Error::NotASubstitution(format!("{morphism} has no prolongable letter")))
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    pub fn letter(&self) -> Symbol {
        self.letter
    }

    pub fn letter_char(&self) -> char {
        self.morphism.domain().char_of(self.letter)
    }
}

impl Deref for Substitution {
    type Target = Morphism;

    fn deref(&self) -> &Morphism {
        &self.morphism
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.morphism)
    }
}

fn reachable(m: &Morphism, start: Symbol) -> Vec<Symbol> {
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        for &t in m.image_symbols(seen[i]) {
            if !seen.contains(&t) {
                seen.push(t);
            }
        }
        i += 1;
    }
    seen
}
