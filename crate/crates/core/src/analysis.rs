//! Special factors, bispecial enumeration, the period-doubling map
//! `Φ(v) = ψ(v)a`, and ancestors of factors under a substitution.
//!
//! Extension sets are read off a finite prefix and only ever grow with
//! the prefix, so every result here comes from doubling the prefix until
//! the answer survives one doubling unchanged.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::{PrefixOracle, ScanPolicy};
use crate::registry;
use crate::word::{check_same, factor_set, scan, show, Alphabet, Extensions, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialKind {
    None,
    LeftSpecial,
    RightSpecial,
    Bispecial,
}

impl SpecialKind {
    pub fn of(ext: &Extensions) -> Self {
        match (ext.is_left_special(), ext.is_right_special()) {
            (true, true) => SpecialKind::Bispecial,
            (true, false) => SpecialKind::LeftSpecial,
            (false, true) => SpecialKind::RightSpecial,
            (false, false) => SpecialKind::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialClass {
    pub factor: Word,
    pub kind: SpecialKind,
    pub left: String,
    pub right: String,
    pub stable: bool,
    pub scan_length: usize,
}

fn render_set(alphabet: &Alphabet, set: &BTreeSet<Symbol>) -> String {
    set.iter().map(|&s| alphabet.char_of(s)).collect()
}

fn oracle_extensions(w: &[Symbol], oracle: &mut PrefixOracle, len: usize) -> Option<Extensions> {
    let occ = oracle.occurrences(w, len);
    if occ.is_empty() {
        return None;
    }
    let text = &oracle.symbols()[..len];
    let mut ext = Extensions::default();
    for i in occ {
        if i > 0 {
            ext.left.insert(text[i - 1]);
        }
        if let Some(&s) = text.get(i + w.len()) {
            ext.right.insert(s);
        }
    }
    Some(ext)
}

/// Classifies `w` by its extension sets, doubling the scanned prefix until
/// they are unchanged across one doubling.
pub fn classify_special(
    w: &Word,
    oracle: &mut PrefixOracle,
    policy: ScanPolicy,
) -> Result<SpecialClass> {
    check_same(oracle.substitution().domain(), w.alphabet())?;
    let budget = policy.budget.max(w.len() + 1);
    let mut len = policy.initial.max(8 * (w.len() + 1)).min(budget);
    let mut previous = oracle_extensions(w.symbols(), oracle, len);
    loop {
        let next_len = (len * 2).min(budget);
        let current = oracle_extensions(w.symbols(), oracle, next_len);
        let stable = current.is_some() && current == previous;
        if stable || next_len == len {
            let ext = current.ok_or_else(|| Error::NotAFactor(show(w)))?;
            let alphabet = w.alphabet();
            return Ok(SpecialClass {
                factor: w.clone(),
                kind: SpecialKind::of(&ext),
                left: render_set(alphabet, &ext.left),
                right: render_set(alphabet, &ext.right),
                stable,
                scan_length: next_len,
            });
        }
        previous = current;
        len = next_len;
    }
}

/// Extension sets of every factor up to some length, from one prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageScan {
    alphabet: Arc<Alphabet>,
    prefix: Vec<Symbol>,
    by_length: Vec<BTreeMap<Vec<Symbol>, Extensions>>,
    stable: bool,
    scan_length: usize,
}

impl LanguageScan {
    fn build(alphabet: &Arc<Alphabet>, text: &[Symbol], max_len: usize) -> Self {
        let mut by_length = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len.min(text.len()) {
            let mut map: BTreeMap<Vec<Symbol>, Extensions> = factor_set(text, len)
                .into_iter()
                .map(|f| (f, Extensions::default()))
                .collect();
            for x in text.windows(len + 1).collect::<BTreeSet<_>>() {
                if let Some(e) = map.get_mut(&x[..len]) {
                    e.right.insert(x[len]);
                }
                if let Some(e) = map.get_mut(&x[1..]) {
                    e.left.insert(x[0]);
                }
            }
            by_length.push(map);
        }
        LanguageScan {
            alphabet: alphabet.clone(),
            prefix: text[..max_len.min(text.len())].to_vec(),
            by_length,
            stable: false,
            scan_length: text.len(),
        }
    }

    pub fn max_len(&self) -> usize {
        self.by_length.len().saturating_sub(1)
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }

    pub fn scan_length(&self) -> usize {
        self.scan_length
    }

    fn word(&self, symbols: &[Symbol]) -> Word {
        Word::from_raw(self.alphabet.clone(), symbols.to_vec())
    }

    /// Factors of length `len`, lexicographically.
    pub fn factors(&self, len: usize) -> Vec<Word> {
        self.by_length
            .get(len)
            .map_or_else(Vec::new, |m| m.keys().map(|f| self.word(f)).collect())
    }

    pub fn extensions(&self, w: &Word) -> Option<&Extensions> {
        self.by_length.get(w.len())?.get(w.symbols())
    }

    /// Factors of the given kind, sorted by length then lexicographically.
    pub fn of_kind(&self, keep: impl Fn(SpecialKind) -> bool) -> Vec<Word> {
        self.by_length
            .iter()
            .flat_map(|m| m.iter())
            .filter(|(_, e)| keep(SpecialKind::of(e)))
            .map(|(f, _)| self.word(f))
            .collect()
    }

    pub fn bispecial(&self) -> Vec<Word> {
        self.of_kind(|k| k == SpecialKind::Bispecial)
    }

    pub fn right_special(&self) -> Vec<Word> {
        self.of_kind(|k| matches!(k, SpecialKind::RightSpecial | SpecialKind::Bispecial))
    }

    pub fn left_special(&self) -> Vec<Word> {
        self.of_kind(|k| matches!(k, SpecialKind::LeftSpecial | SpecialKind::Bispecial))
    }

    /// Right special prefixes of the fixed point, shortest first.
    pub fn right_special_prefixes(&self) -> Vec<Word> {
        (0..self.by_length.len())
            .filter(|&len| {
                self.by_length[len]
                    .get(&self.prefix[..len])
                    .is_some_and(Extensions::is_right_special)
            })
            .map(|len| self.word(&self.prefix[..len]))
            .collect()
    }
}

/// Scans factors up to `max_len` until the whole table of extension sets
/// is unchanged across a doubling.
pub fn scan_language(
    oracle: &mut PrefixOracle,
    max_len: usize,
    policy: ScanPolicy,
) -> LanguageScan {
    let alphabet = oracle.substitution().domain().clone();
    let budget = policy.budget.max(max_len + 2);
    let mut len = policy.initial.max(64 * (max_len + 1)).min(budget);
    oracle.ensure(len);
    let mut previous = LanguageScan::build(&alphabet, &oracle.symbols()[..len], max_len);
    loop {
        let next_len = (len * 2).min(budget);
        oracle.ensure(next_len);
        let mut current = LanguageScan::build(&alphabet, &oracle.symbols()[..next_len], max_len);
        let stable = current.by_length == previous.by_length;
        if stable || next_len == len {
            current.stable = stable;
            return current;
        }
        previous = current;
        len = next_len;
    }
}

/// Bispecial factors of length at most `max_len`, by length then
/// lexicographically.
pub fn bispecial_factors(
    oracle: &mut PrefixOracle,
    max_len: usize,
    policy: ScanPolicy,
) -> Vec<Word> {
    scan_language(oracle, max_len, policy).bispecial()
}

/// `Φ(v) = ψ(v)·a` for the period doubling substitution `ψ`.
pub fn phi_map(v: &Word) -> Result<Word> {
    let psi = registry::period_doubling();
    let mut out = psi.apply(v)?;
    out.push(Symbol(0));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ancestor {
    pub word: Word,
    /// `y` in `y·w·y′ = φ(u)`.
    pub left: Word,
    /// `y′` in `y·w·y′ = φ(u)`.
    pub right: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AncestorReport {
    pub factor: Word,
    pub ancestors: Vec<Ancestor>,
    pub ambiguous: bool,
    /// Admissible factors whose image contains the factor more than once.
    pub ambiguous_witnesses: Vec<Word>,
    pub scan_length: usize,
}

impl AncestorReport {
    /// Re-checks every witness: `y·w·y′ = φ(u)` with `|y| < |φ(u_1)|`,
    /// `|y′| < |φ(u_n)|` and a single occurrence of `w` in `φ(u)`.
    pub fn verify(&self, oracle: &PrefixOracle) -> bool {
        let phi = oracle.substitution();
        self.ancestors.iter().all(|a| {
            let (Some(first), Some(last)) = (a.word.first(), a.word.last()) else {
                return false;
            };
            let image = phi
                .apply(&a.word)
                .expect("ancestors live on the domain alphabet");
            let rebuilt = a.left.concat(&self.factor).and_then(|x| x.concat(&a.right));
            rebuilt.as_ref() == Ok(&image)
                && a.left.len() < phi.image_symbols(first).len()
                && a.right.len() < phi.image_symbols(last).len()
                && scan(self.factor.symbols(), image.symbols()).len() == 1
        })
    }
}

/// All ancestors of `w` under the substitution behind `oracle`.
///
/// A candidate `u` satisfies `|u| ≤ |φ(u)| < |w| + 2·max|φ(a)|`, so
/// factors up to that length are searched exhaustively.
pub fn ancestors(
    w: &Word,
    oracle: &mut PrefixOracle,
    policy: ScanPolicy,
) -> Result<AncestorReport> {
    check_same(oracle.substitution().domain(), w.alphabet())?;
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let phi = oracle.substitution().clone();
    if phi.is_erasing() {
        return Err(Error::NotASubstitution(format!("{phi} is erasing")));
    }
    let bound = w.len() + 2 * phi.max_image_len();
    let language = scan_language(oracle, bound, policy);
    if language.extensions(w).is_none() {
        return Err(Error::NotAFactor(show(w)));
    }

    let mut report = AncestorReport {
        factor: w.clone(),
        ancestors: Vec::new(),
        ambiguous: false,
        ambiguous_witnesses: Vec::new(),
        scan_length: language.scan_length(),
    };
    for len in 1..=bound {
        for u in language.factors(len) {
            let image = phi.apply_symbols(u.symbols());
            let first_len = phi.image_symbols(u.symbols()[0]).len();
            let last_len = phi.image_symbols(u.symbols()[len - 1]).len();
            let occ = scan(w.symbols(), &image);
            let admissible: Vec<usize> = occ
                .iter()
                .copied()
                .filter(|&i| i < first_len && image.len() - i - w.len() < last_len)
                .collect();
            let Some(&i) = admissible.first() else {
                continue;
            };
            if occ.len() == 1 {
                let alphabet = w.alphabet().clone();
                report.ancestors.push(Ancestor {
                    word: u,
                    left: Word::from_raw(alphabet.clone(), image[..i].to_vec()),
                    right: Word::from_raw(alphabet, image[i + w.len()..].to_vec()),
                });
            } else {
                report.ambiguous = true;
                report.ambiguous_witnesses.push(u);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::Substitution;

    fn z() -> PrefixOracle {
        PrefixOracle::new(Substitution::first(registry::period_doubling()).unwrap())
    }

    fn word(o: &PrefixOracle, text: &str) -> Word {
        Word::parse(o.substitution().domain(), text).unwrap()
    }

    fn strings(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn classification_in_period_doubling() {
        let mut o = z();
        let p = ScanPolicy::default();
        for (w, kind) in [
            ("a", SpecialKind::Bispecial),
            ("aa", SpecialKind::Bispecial),
            ("b", SpecialKind::None),
            ("", SpecialKind::Bispecial),
            ("aaa", SpecialKind::None),
        ] {
            let class = classify_special(&word(&o, w), &mut o, p).unwrap();
            assert_eq!(class.kind, kind, "{w:?}");
            assert!(class.stable);
        }
        let b = classify_special(&word(&o, "b"), &mut o, p).unwrap();
        assert_eq!((b.left.as_str(), b.right.as_str()), ("a", "a"));
        assert!(matches!(
            classify_special(&word(&o, "bb"), &mut o, p),
            Err(Error::NotAFactor(_))
        ));
    }

    #[test]
    fn bispecials_up_to_seven() {
        let mut o = z();
        let bs = bispecial_factors(&mut o, 7, ScanPolicy::default());
        assert_eq!(strings(&bs), vec!["", "a", "aa", "aba", "ababa", "abaaaba"]);
        assert_eq!(
            strings(&bispecial_factors(&mut o, 0, ScanPolicy::default())),
            vec![""]
        );
    }

    #[test]
    fn short_factors_of_period_doubling() {
        let mut o = z();
        let lang = scan_language(&mut o, 4, ScanPolicy::default());
        assert_eq!(strings(&lang.factors(2)), vec!["aa", "ab", "ba"]);
        let f4 = strings(&lang.factors(4));
        assert!(f4.contains(&"aaab".to_string()));
        assert!(!f4.contains(&"aaaa".to_string()));
        assert_eq!(
            strings(&lang.right_special_prefixes()),
            vec!["", "a", "aba"]
        );
    }

    #[test]
    fn phi_orbit() {
        let o = z();
        assert_eq!(phi_map(&word(&o, "")).unwrap().to_string(), "a");
        assert_eq!(phi_map(&word(&o, "a")).unwrap().to_string(), "aba");
        assert_eq!(phi_map(&word(&o, "aa")).unwrap().to_string(), "ababa");
        assert_eq!(phi_map(&word(&o, "aba")).unwrap().to_string(), "abaaaba");
    }

    #[test]
    fn ancestors_in_period_doubling() {
        let mut o = z();
        let p = ScanPolicy::default();
        let aa = ancestors(&word(&o, "aa"), &mut o, p).unwrap();
        assert_eq!(
            aa.ancestors
                .iter()
                .map(|a| a.word.to_string())
                .collect::<Vec<_>>(),
            vec!["b"]
        );
        assert!(aa.ambiguous);
        assert!(aa.ambiguous_witnesses.iter().any(|u| u.to_string() == "ba"));
        assert!(aa.verify(&o));

        let aba = ancestors(&word(&o, "aba"), &mut o, p).unwrap();
        assert_eq!(
            aba.ancestors
                .iter()
                .map(|a| a.word.to_string())
                .collect::<Vec<_>>(),
            vec!["aa", "ab"]
        );
        assert!(!aba.ambiguous);
        assert!(aba.verify(&o));

        let img = ancestors(&word(&o, "abaaab"), &mut o, p).unwrap();
        assert_eq!(
            img.ancestors
                .iter()
                .map(|a| a.word.to_string())
                .collect::<Vec<_>>(),
            vec!["aba"]
        );
        assert!(!img.ambiguous);

        assert!(matches!(
            ancestors(&word(&o, "bb"), &mut o, p),
            Err(Error::NotAFactor(_))
        ));
        assert_eq!(ancestors(&word(&o, ""), &mut o, p), Err(Error::EmptyWord));
    }
}
