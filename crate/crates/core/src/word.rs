//! Finite words over small explicit alphabets.
//!
//! Every [`Word`] carries the alphabet it was built over; operations that
//! combine two words reject mismatched alphabets instead of silently
//! reinterpreting symbol ids. Occurrence scanning here is the naive sliding
//! window and serves as the reference every other module is checked against.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A letter, identified by its index in the owning [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Display characters used for derived alphabets, in order.
const DIGIT_CHARS: &str = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";

/// An ordered list of distinct printable characters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alphabet {
    chars: Vec<char>,
}

impl Alphabet {
    pub fn new(chars: impl IntoIterator<Item = char>) -> Result<Arc<Self>> {
        let chars: Vec<char> = chars.into_iter().collect();
        for (i, c) in chars.iter().enumerate() {
            if chars[..i].contains(c) {
                return Err(Error::DuplicateSymbol(*c));
            }
        }
        if chars.len() > u8::MAX as usize {
            return Err(Error::Parse(format!(
                "alphabet of {} letters is too large",
                chars.len()
            )));
        }
        Ok(Arc::new(Alphabet { chars }))
    }

    /// The alphabet `{0, 1, ..., k-1}` used for derived words.
    pub fn digits(k: usize) -> Arc<Self> {
        assert!(
            k <= DIGIT_CHARS.len(),
            "derived alphabet of {k} letters is not supported"
        );
        Arc::new(Alphabet {
            chars: DIGIT_CHARS.chars().take(k).collect(),
        })
    }

    /// Parses an alphabet written as its letters in order, e.g. `"abc"`.
    pub fn parse(text: &str) -> Result<Arc<Self>> {
        Self::new(text.chars())
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn symbol(&self, c: char) -> Option<Symbol> {
        self.chars
            .iter()
            .position(|&d| d == c)
            .map(|i| Symbol(i as u8))
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.chars[s.index()]
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.chars.len()).map(|i| Symbol(i as u8))
    }

    pub fn render(&self, symbols: &[Symbol]) -> String {
        symbols.iter().map(|&s| self.char_of(s)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.chars.iter().collect();
        f.write_str(&s)
    }
}

pub(crate) fn check_same(expected: &Alphabet, found: &Alphabet) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

/// A finite word; the empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(alphabet: Arc<Alphabet>, symbols: Vec<Symbol>) -> Result<Self> {
        if let Some(s) = symbols.iter().find(|s| s.index() >= alphabet.len()) {
            return Err(Error::Parse(format!(
                "symbol id {} outside alphabet {alphabet}",
                s.0
            )));
        }
        Ok(Word { alphabet, symbols })
    }

    pub(crate) fn from_raw(alphabet: Arc<Alphabet>, symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.iter().all(|s| s.index() < alphabet.len()));
        Word { alphabet, symbols }
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Word {
            alphabet,
            symbols: Vec::new(),
        }
    }

    pub fn parse(alphabet: &Arc<Alphabet>, text: &str) -> Result<Self> {
        let symbols = text
            .chars()
            .map(|c| alphabet.symbol(c).ok_or(Error::UnknownSymbol(c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word {
            alphabet: alphabet.clone(),
            symbols,
        })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn first(&self) -> Option<Symbol> {
        self.symbols.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.symbols.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_same(&self.alphabet, &other.alphabet)?;
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(Word {
            alphabet: self.alphabet.clone(),
            symbols,
        })
    }

    pub fn push(&mut self, s: Symbol) {
        assert!(s.index() < self.alphabet.len());
        self.symbols.push(s);
    }

    pub fn slice(&self, range: Range<usize>) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            symbols: self.symbols[range].to_vec(),
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.slice(0..n.min(self.len()))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && other.symbols.starts_with(&self.symbols)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && other.symbols.ends_with(&self.symbols)
    }

    /// `p⁻¹w`: removes the prefix `p`, if it is one.
    pub fn strip_prefix(&self, p: &Word) -> Option<Word> {
        p.is_prefix_of(self)
            .then(|| self.slice(p.len()..self.len()))
    }

    /// `wv⁻¹`: removes the suffix `v`, if it is one.
    pub fn strip_suffix(&self, v: &Word) -> Option<Word> {
        v.is_suffix_of(self)
            .then(|| self.slice(0..self.len() - v.len()))
    }

    /// Distinct letters in order of first occurrence.
    pub fn letters_by_first_occurrence(&self) -> Vec<Symbol> {
        let mut seen = Vec::new();
        for &s in &self.symbols {
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        seen
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(&self.symbols))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Renders a word, writing the empty word as `ε`.
pub fn show(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_owned()
    } else {
        w.to_string()
    }
}

/// All positions `i` with `x[i..i+|w|] == w`, ascending. The empty word
/// occurs at every position `0..=|x|`.
pub fn scan(w: &[Symbol], x: &[Symbol]) -> Vec<usize> {
    if w.len() > x.len() {
        return Vec::new();
    }
    if w.is_empty() {
        return (0..=x.len()).collect();
    }
    x.windows(w.len())
        .enumerate()
        .filter_map(|(i, window)| (window == w).then_some(i))
        .collect()
}

pub fn occurrences(w: &Word, x: &Word) -> Result<Vec<usize>> {
    check_same(&x.alphabet, &w.alphabet)?;
    Ok(scan(&w.symbols, &x.symbols))
}

/// Distinct windows of length `len` in `x`.
pub fn factors(x: &Word, len: usize) -> Result<BTreeSet<Word>> {
    if len > x.len() {
        return Err(Error::OutOfRange {
            requested: len,
            available: x.len(),
        });
    }
    Ok(factor_set(&x.symbols, len)
        .into_iter()
        .map(|symbols| Word {
            alphabet: x.alphabet.clone(),
            symbols,
        })
        .collect())
}

pub(crate) fn factor_set(x: &[Symbol], len: usize) -> BTreeSet<Vec<Symbol>> {
    if len == 0 {
        return BTreeSet::from([Vec::new()]);
    }
    x.windows(len).map(<[Symbol]>::to_vec).collect()
}

/// One-letter left and right extensions of a factor.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extensions {
    pub left: BTreeSet<Symbol>,
    pub right: BTreeSet<Symbol>,
}

impl Extensions {
    pub fn is_left_special(&self) -> bool {
        self.left.len() >= 2
    }

    pub fn is_right_special(&self) -> bool {
        self.right.len() >= 2
    }
}

/// Extensions of `w` within `x`, or `None` if `w` does not occur in `x`.
pub(crate) fn extension_sets(w: &[Symbol], x: &[Symbol]) -> Option<Extensions> {
    let occ = scan(w, x);
    if occ.is_empty() {
        return None;
    }
    let mut ext = Extensions::default();
    for i in occ {
        if i > 0 {
            ext.left.insert(x[i - 1]);
        }
        if let Some(&s) = x.get(i + w.len()) {
            ext.right.insert(s);
        }
    }
    Some(ext)
}

/// Left and right extensions of `w` as observed in the finite word `x`.
///
/// These are lower bounds on the extension sets in any infinite word
/// having `x` as a prefix.
pub fn extensions(w: &Word, x: &Word) -> Result<Extensions> {
    check_same(&x.alphabet, &w.alphabet)?;
    extension_sets(&w.symbols, &x.symbols).ok_or_else(|| Error::NotAFactor(show(w)))
}
