//! Standard episturmian morphisms `L_a`, their compositions `L_z`, and the
//! cyclic-shift families `{L_cyc^k(z) : 1 ≤ k ≤ |z|}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::morphism::{Morphism, Substitution};
use crate::word::{Alphabet, Symbol, Word};

/// The subscript word `z` of `L_z`; its alphabet is the alphabet `L_z` acts on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpiWord(Word);

impl EpiWord {
    pub fn new(z: Word) -> Self {
        EpiWord(z)
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.0.alphabet()
    }

    /// First letter of the alphabet missing from `z`, if any.
    pub fn missing_letter(&self) -> Option<char> {
        let alphabet = self.alphabet();
        alphabet
            .symbols()
            .find(|s| !self.0.symbols().contains(s))
            .map(|s| alphabet.char_of(s))
    }
}

/// `L_a`: `a ↦ a` and `b ↦ ab` for every other letter `b`.
pub fn generator(a: Symbol, alphabet: &Arc<Alphabet>) -> Result<Morphism> {
    if a.index() >= alphabet.len() {
        return Err(Error::Parse(format!(
            "letter id {} outside alphabet {alphabet}",
            a.0
        )));
    }
    let images = alphabet
        .symbols()
        .map(|b| if b == a { vec![a] } else { vec![a, b] })
        .collect();
    Ok(Morphism::from_raw(
        alphabet.clone(),
        alphabet.clone(),
        images,
    ))
}

/// `L_z = L_{z_1} ∘ L_{z_2} ∘ ⋯ ∘ L_{z_n}`; `L_z` applies `L_{z_n}` first.
pub fn epi_morphism(z: &EpiWord) -> Morphism {
    let alphabet = z.alphabet();
    let mut out = Morphism::identity(alphabet.clone());
    for &a in z.word().symbols().iter().rev() {
        let g = generator(a, alphabet).expect("letters of z belong to its alphabet");
        out = g.compose(&out).expect("same alphabet");
    }
    out
}

/// `k`-fold application of `z_1⋯z_n ↦ z_n z_1⋯z_{n-1}`.
pub fn cyc(z: &Word, k: usize) -> Result<Word> {
    if z.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = z.len();
    let shift = k % n;
    let mut symbols = z.symbols()[n - shift..].to_vec();
    symbols.extend_from_slice(&z.symbols()[..n - shift]);
    Ok(Word::from_raw(z.alphabet().clone(), symbols))
}

/// One distinct morphism of a family, with every shift index producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub shifts: Vec<usize>,
    pub subscript: Word,
    pub morphism: Morphism,
}

impl FamilyMember {
    /// `L_v` as a substitution prolongable on the first letter of `v`.
    pub fn substitution(&self) -> Result<Substitution> {
        let first = self.subscript.first().ok_or(Error::EmptyWord)?;
        Substitution::new(self.morphism.clone(), first)
    }
}

/// `{L_cyc^k(z) : k = 1..=|z|}`, deduplicated by morphism equality.
pub fn family(z: &EpiWord) -> Result<Vec<FamilyMember>> {
    if z.word().is_empty() {
        return Err(Error::EmptyWord);
    }
    if let Some(c) = z.missing_letter() {
        return Err(Error::MissingLetter(c));
    }
    let mut members: Vec<FamilyMember> = Vec::new();
    for k in 1..=z.word().len() {
        let subscript = cyc(z.word(), k)?;
        let morphism = epi_morphism(&EpiWord::new(subscript.clone()));
        match members.iter_mut().find(|m| m.morphism == morphism) {
            Some(m) => m.shifts.push(k),
            None => members.push(FamilyMember {
                shifts: vec![k],
                subscript,
                morphism,
            }),
        }
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    fn epi(text: &str) -> EpiWord {
        registry::parse_epi_word(text).unwrap()
    }

    #[test]
    fn generators() {
        let abc = Alphabet::parse("abc").unwrap();
        let lc = generator(Symbol(2), &abc).unwrap();
        assert_eq!(lc.rules(), "a->ca;b->cb;c->c");
        let a = Alphabet::parse("a").unwrap();
        assert_eq!(
            generator(Symbol(0), &a).unwrap(),
            Morphism::identity(a.clone())
        );
        assert!(generator(Symbol(1), &a).is_err());
    }

    #[test]
    fn compositions() {
        assert_eq!(epi_morphism(&epi("ab")).rules(), "a->aba;b->ab");
        let tau = registry::tribonacci();
        assert_eq!(epi_morphism(&epi("abc")), tau.power(3).unwrap());
        let empty = epi("@ab");
        assert_eq!(
            epi_morphism(&empty),
            Morphism::identity(empty.alphabet().clone())
        );
    }

    #[test]
    fn cyclic_shift() {
        let z = epi("abc");
        assert_eq!(cyc(z.word(), 1).unwrap().to_string(), "cab");
        assert_eq!(cyc(z.word(), 2).unwrap().to_string(), "bca");
        assert_eq!(cyc(z.word(), 3).unwrap().to_string(), "abc");
        assert_eq!(
            cyc(&Word::empty(z.alphabet().clone()), 1),
            Err(Error::EmptyWord)
        );
    }

    #[test]
    fn families() {
        let f = family(&epi("abc")).unwrap();
        assert_eq!(f.len(), 3);
        let subs: Vec<String> = f.iter().map(|m| m.subscript.to_string()).collect();
        assert_eq!(subs, vec!["cab", "bca", "abc"]);
        assert_eq!(family(&epi("ab")).unwrap().len(), 2);
        assert_eq!(family(&epi("a@ab")), Err(Error::MissingLetter('b')));
        // aa: both shifts give the same morphism.
        let f = family(&epi("aa")).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].shifts, vec![1, 2]);
    }

    #[test]
    fn members_are_substitutions() {
        for m in family(&epi("abc")).unwrap() {
            let s = m.substitution().unwrap();
            assert_eq!(s.letter(), m.subscript.first().unwrap());
        }
    }
}
