//! Return words and derived words of factors of a fixed point.
//!
//! Return words are numbered by order of first appearance in the
//! factorization `u = p r_{i_0} r_{i_1} ⋯`, which makes every derived word
//! start with `0`. Finite prefixes can never prove that the return set is
//! complete, so scans double the prefix until the set of return words
//! survives a doubling unchanged and every return word has been seen twice;
//! the outcome is recorded in [`ReturnStructure::is_stable`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::{PrefixOracle, ScanPolicy};
use crate::word::{check_same, show, Alphabet, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReturnStructure {
    factor: Word,
    returns: Vec<Word>,
    #[serde(skip)]
    counts: Vec<usize>,
    skip_prefix: Word,
    derived: Word,
    stable: bool,
    scan_length: usize,
}

impl ReturnStructure {
    pub fn factor(&self) -> &Word {
        &self.factor
    }

    /// `r_0, r_1, …` in order of first appearance.
    pub fn returns(&self) -> &[Word] {
        &self.returns
    }

    /// How often each return word was seen in the scanned prefix.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// The prefix `p` such that `w` occurs in `pw` exactly once.
    pub fn skip_prefix(&self) -> &Word {
        &self.skip_prefix
    }

    /// The determined prefix of the derived word, over `{0, …, k-1}`.
    pub fn derived(&self) -> &Word {
        &self.derived
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    /// Length of the fixed-point prefix that was scanned.
    pub fn scan_length(&self) -> usize {
        self.scan_length
    }

    /// `|p| + Σ |r_{d_j}|`: the position of the last occurrence of the
    /// factor that closed a return word.
    pub fn covered_length(&self) -> usize {
        self.skip_prefix.len()
            + self
                .derived
                .symbols()
                .iter()
                .map(|d| self.returns[d.index()].len())
                .sum::<usize>()
    }

    /// `p · r_{d_0} · r_{d_1} ⋯`, which equals the fixed point up to
    /// [`covered_length`](Self::covered_length).
    pub fn reconstruct(&self) -> Word {
        let mut symbols = self.skip_prefix.symbols().to_vec();
        for d in self.derived.symbols() {
            symbols.extend_from_slice(self.returns[d.index()].symbols());
        }
        Word::from_raw(self.factor.alphabet().clone(), symbols)
    }

    pub fn index_of(&self, r: &[Symbol]) -> Option<usize> {
        self.returns.iter().position(|x| x.symbols() == r)
    }
}

/// Return words to `w` in the fixed point behind `oracle`.
pub fn return_words(
    w: &Word,
    oracle: &mut PrefixOracle,
    policy: ScanPolicy,
) -> Result<ReturnStructure> {
    scan_returns(w, oracle, policy, 1)
}

/// The first `n` letters of the derived word to `w`.
pub fn derived_word(w: &Word, oracle: &mut PrefixOracle, n: usize) -> Result<Word> {
    derived_word_with(w, oracle, n, ScanPolicy::default())
}

pub fn derived_word_with(
    w: &Word,
    oracle: &mut PrefixOracle,
    n: usize,
    policy: ScanPolicy,
) -> Result<Word> {
    let rs = scan_returns(w, oracle, policy, n)?;
    Ok(rs.derived.prefix(n))
}

/// `{ r·w : r ∈ R(w) }`, in return-word order.
pub fn complete_return_words(rs: &ReturnStructure) -> Vec<Word> {
    rs.returns
        .iter()
        .map(|r| {
            r.concat(&rs.factor)
                .expect("returns share the factor's alphabet")
        })
        .collect()
}

/// Scans until the return set is stable and at least `min_derived`
/// derived letters are known, or the budget runs out.
pub fn scan_returns(
    w: &Word,
    oracle: &mut PrefixOracle,
    policy: ScanPolicy,
    min_derived: usize,
) -> Result<ReturnStructure> {
    check_same(oracle.substitution().domain(), w.alphabet())?;
    let budget = policy.budget.max(w.len() + 1);
    let mut len = policy.initial.max(4 * (w.len() + 1)).min(budget);
    let mut previous: Option<Vec<Vec<Symbol>>> = None;
    loop {
        let occ = oracle.occurrences(w.symbols(), len);
        let exhausted = len >= budget;
        if occ.len() < 2 {
            if exhausted {
                return Err(if occ.is_empty() {
                    Error::NotAFactor(show(w))
                } else {
                    Error::InsufficientData {
                        factor: show(w),
                        scanned: len,
                    }
                });
            }
            len = (len * 2).min(budget);
            continue;
        }

        let text = &oracle.symbols()[..len];
        let mut returns: Vec<Vec<Symbol>> = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut digits = Vec::with_capacity(occ.len() - 1);
        for pair in occ.windows(2) {
            let r = &text[pair[0]..pair[1]];
            let i = match returns.iter().position(|x| x == r) {
                Some(i) => i,
                None => {
                    returns.push(r.to_vec());
                    counts.push(0);
                    returns.len() - 1
                }
            };
            counts[i] += 1;
            digits.push(Symbol(i as u8));
        }

        let unchanged = previous.as_ref() == Some(&returns);
        let seen_twice = counts.iter().all(|&c| c >= 2);
        let enough = digits.len() >= min_derived;
        if (unchanged && seen_twice && enough) || (exhausted && enough) {
            let alphabet = w.alphabet();
            let derived_alphabet = Alphabet::digits(returns.len());
            return Ok(ReturnStructure {
                factor: w.clone(),
                returns: returns
                    .into_iter()
                    .map(|r| Word::from_raw(alphabet.clone(), r))
                    .collect(),
                counts,
                skip_prefix: Word::from_raw(alphabet.clone(), text[..occ[0]].to_vec()),
                derived: Word::from_raw(derived_alphabet, digits),
                stable: unchanged && seen_twice,
                scan_length: len,
            });
        }
        if exhausted {
            return Err(Error::InsufficientData {
                factor: show(w),
                scanned: len,
            });
        }
        previous = Some(returns);
        len = (len * 2).min(budget);
    }
}
