//! Morphisms of free monoids, substitutions and their fixed points.

mod code;
mod matrix;
mod oracle;
mod substitution;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use code::Collision;
pub use matrix::IncidenceMatrix;
pub use oracle::{PrefixOracle, ScanPolicy};
pub use substitution::Substitution;

use crate::error::{Error, Result};
use crate::word::{check_same, Alphabet, Symbol, Word};

/// A morphism given by the images of the letters of its domain.
///
/// Equality is letterwise equality of images over equal alphabets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    domain: Arc<Alphabet>,
    codomain: Arc<Alphabet>,
    images: Vec<Vec<Symbol>>,
}

impl Morphism {
    pub fn new(domain: Arc<Alphabet>, codomain: Arc<Alphabet>, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.len() {
            return Err(Error::Parse(format!(
                "{} images given for a {}-letter domain",
                images.len(),
                domain.len()
            )));
        }
        let images = images
            .into_iter()
            .map(|w| check_same(&codomain, w.alphabet()).map(|_| w.into_symbols()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            domain,
            codomain,
            images,
        })
    }

    pub(crate) fn from_raw(
        domain: Arc<Alphabet>,
        codomain: Arc<Alphabet>,
        images: Vec<Vec<Symbol>>,
    ) -> Self {
        debug_assert_eq!(images.len(), domain.len());
        Morphism {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(alphabet: Arc<Alphabet>) -> Self {
        let images = alphabet.symbols().map(|s| vec![s]).collect();
        Morphism {
            domain: alphabet.clone(),
            codomain: alphabet,
            images,
        }
    }

    /// Parses `a->ab;b->aa`. The domain is the set of left-hand letters, the
    /// codomain additionally contains every letter used in an image; both
    /// are sorted.
    pub fn parse(text: &str) -> Result<Self> {
        let rules = split_rules(text)?;
        let domain: BTreeSet<char> = rules.iter().map(|(c, _)| *c).collect();
        let mut codomain = domain.clone();
        for (_, image) in &rules {
            codomain.extend(image.chars());
        }
        let domain = Alphabet::new(domain)?;
        let codomain = Alphabet::new(codomain)?;
        Self::from_rules(domain, codomain, &rules)
    }

    /// Parses rules over explicitly given alphabets.
    pub fn parse_over(domain: Arc<Alphabet>, codomain: Arc<Alphabet>, text: &str) -> Result<Self> {
        let rules = split_rules(text)?;
        Self::from_rules(domain, codomain, &rules)
    }

    fn from_rules(
        domain: Arc<Alphabet>,
        codomain: Arc<Alphabet>,
        rules: &[(char, String)],
    ) -> Result<Self> {
        let mut images: Vec<Option<Vec<Symbol>>> = vec![None; domain.len()];
        for (c, image) in rules {
            let s = domain.symbol(*c).ok_or(Error::UnknownSymbol(*c))?;
            if images[s.index()].is_some() {
                return Err(Error::Parse(format!("letter {c:?} has two rules")));
            }
            images[s.index()] = Some(Word::parse(&codomain, image)?.into_symbols());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| {
                    Error::Parse(format!("no rule for letter {:?}", domain.chars()[i]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            domain,
            codomain,
            images,
        })
    }

    pub fn domain(&self) -> &Arc<Alphabet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Alphabet> {
        &self.codomain
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn image(&self, s: Symbol) -> Word {
        Word::from_raw(self.codomain.clone(), self.images[s.index()].clone())
    }

    pub(crate) fn image_symbols(&self, s: Symbol) -> &[Symbol] {
        &self.images[s.index()]
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(Vec::is_empty)
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        check_same(&self.domain, w.alphabet())?;
        Ok(Word::from_raw(
            self.codomain.clone(),
            self.apply_symbols(w.symbols()),
        ))
    }

    pub(crate) fn apply_symbols(&self, w: &[Symbol]) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(w.len() * self.max_image_len().max(1));
        for &s in w {
            out.extend_from_slice(&self.images[s.index()]);
        }
        out
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        check_same(&self.domain, &inner.codomain)?;
        let images = inner
            .images
            .iter()
            .map(|img| self.apply_symbols(img))
            .collect();
        Ok(Morphism {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            images,
        })
    }

    /// `k`-fold self-composition; `power(0)` is the identity.
    pub fn power(&self, k: u32) -> Result<Morphism> {
        check_same(&self.domain, &self.codomain)?;
        let mut out = Morphism::identity(self.domain.clone());
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut m = IncidenceMatrix::zeros(self.codomain.len(), self.domain.len());
        for (b, img) in self.images.iter().enumerate() {
            for a in img {
                m.increment(a.index(), b);
            }
        }
        m
    }

    /// Smallest `k` such that every letter occurs in the `k`-th iterated
    /// image of every letter, searched up to Wielandt's bound `(n-1)²+1`.
    pub fn primitivity_exponent(&self) -> Option<usize> {
        if !self.is_endomorphism() {
            return None;
        }
        self.incidence_matrix().primitivity_exponent()
    }

    pub fn is_primitive(&self) -> bool {
        self.primitivity_exponent().is_some()
    }

    /// Two distinct words with equal images, if the morphism is not injective.
    pub fn collision(&self) -> Option<(Word, Word)> {
        code::find_collision(&self.images).map(|(x, y)| {
            let word = |seq: Vec<usize>| {
                Word::from_raw(
                    self.domain.clone(),
                    seq.into_iter().map(|i| Symbol(i as u8)).collect(),
                )
            };
            (word(x), word(y))
        })
    }

    pub fn is_injective(&self) -> bool {
        self.collision().is_none()
    }

    /// Rules in domain order, `a->ab;b->aa`.
    pub fn rules(&self) -> String {
        self.domain
            .symbols()
            .map(|s| {
                format!(
                    "{}->{}",
                    self.domain.char_of(s),
                    self.codomain.render(&self.images[s.index()])
                )
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn split_rules(text: &str) -> Result<Vec<(char, String)>> {
    let mut rules = Vec::new();
    for rule in text.split(';').map(str::trim).filter(|r| !r.is_empty()) {
        let (lhs, rhs) = rule
            .split_once("->")
            .ok_or_else(|| Error::Parse(format!("rule {rule:?} lacks '->'")))?;
        let mut lhs_chars = lhs.trim().chars();
        let letter = match (lhs_chars.next(), lhs_chars.next()) {
            (Some(c), None) => c,
            _ => {
                return Err(Error::Parse(format!(
                    "left side of {rule:?} must be one letter"
                )))
            }
        };
        rules.push((letter, rhs.trim().to_owned()));
    }
    if rules.is_empty() {
        return Err(Error::Parse("no rules given".into()));
    }
    Ok(rules)
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rules())
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Morphism::parse(s)
    }
}
