//! Substitutions fixing derived words.
//!
//! For a prefix `w` of the fixed point of a primitive `φ`, every `φ(r_i)`
//! splits uniquely into return words to `w`, and the index sequences define
//! a substitution `δ` fixing the derived word to `w`. For a general factor
//! `w` with shortest containing prefix `pw`, splitting `p⁻¹ r_i p` into
//! return words to `w` gives a morphism `α` with `d(w) = α(d(pw))`.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::morphism::{Morphism, PrefixOracle, ScanPolicy, Substitution};
use crate::returns::{scan_returns, ReturnStructure};
use crate::word::{check_same, scan, show, Alphabet, Symbol, Word};

/// A bijection between two alphabets of equal size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Renaming {
    from: Arc<Alphabet>,
    to: Arc<Alphabet>,
    map: Vec<Symbol>,
}

impl Renaming {
    pub fn new(from: Arc<Alphabet>, to: Arc<Alphabet>, map: Vec<Symbol>) -> Result<Self> {
        let bijective = from.len() == to.len()
            && map.len() == from.len()
            && map.iter().all(|s| s.index() < to.len())
            && map.iter().all_unique();
        if !bijective {
            return Err(Error::Parse(format!("not a bijection from {from} to {to}")));
        }
        Ok(Renaming { from, to, map })
    }

    pub fn identity(alphabet: Arc<Alphabet>) -> Self {
        let map = alphabet.symbols().collect();
        Renaming {
            from: alphabet.clone(),
            to: alphabet,
            map,
        }
    }

    pub fn from_alphabet(&self) -> &Arc<Alphabet> {
        &self.from
    }

    pub fn to_alphabet(&self) -> &Arc<Alphabet> {
        &self.to
    }

    pub fn map(&self, s: Symbol) -> Symbol {
        self.map[s.index()]
    }

    /// True when every letter keeps its display character.
    pub fn is_identity(&self) -> bool {
        self.from
            .symbols()
            .all(|s| self.from.char_of(s) == self.to.char_of(self.map(s)))
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        check_same(&self.from, w.alphabet())?;
        Ok(Word::from_raw(
            self.to.clone(),
            w.symbols().iter().map(|&s| self.map(s)).collect(),
        ))
    }

    pub fn inverse(&self) -> Renaming {
        let mut inv = vec![Symbol(0); self.map.len()];
        for (i, &s) in self.map.iter().enumerate() {
            inv[s.index()] = Symbol(i as u8);
        }
        Renaming {
            from: self.to.clone(),
            to: self.from.clone(),
            map: inv,
        }
    }

    /// `π ∘ m ∘ π⁻¹` for an endomorphism `m` of the source alphabet.
    pub fn conjugate(&self, m: &Morphism) -> Result<Morphism> {
        check_same(&self.from, m.domain())?;
        check_same(&self.from, m.codomain())?;
        let inv = self.inverse();
        let images = self
            .to
            .symbols()
            .map(|t| {
                m.image_symbols(inv.map(t))
                    .iter()
                    .map(|&s| self.map(s))
                    .collect()
            })
            .collect();
        Ok(Morphism::from_raw(self.to.clone(), self.to.clone(), images))
    }

    fn all(from: &Arc<Alphabet>, to: &Arc<Alphabet>) -> impl Iterator<Item = Renaming> {
        let (from, to) = (from.clone(), to.clone());
        let n = from.len();
        let same_size = n == to.len();
        to.symbols()
            .collect::<Vec<_>>()
            .into_iter()
            .permutations(n)
            .filter(move |_| same_size)
            .map(move |map| Renaming {
                from: from.clone(),
                to: to.clone(),
                map,
            })
    }
}

impl fmt::Display for Renaming {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .from
            .symbols()
            .map(|s| format!("{}->{}", self.from.char_of(s), self.to.char_of(self.map(s))))
            .collect();
        f.write_str(&pairs.join(","))
    }
}

impl Serialize for Renaming {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Splits `x` into return words to the factor of `rs`, using the
/// occurrences of the factor in `x·w` as delimiters.
fn decompose(x: &[Symbol], rs: &ReturnStructure) -> Result<Vec<usize>> {
    let w = rs.factor();
    let mut text = x.to_vec();
    text.extend_from_slice(w.symbols());
    let occ = scan(w.symbols(), &text);
    let fail = || {
        if rs.is_stable() {
            Error::Decomposition {
                word: show(&Word::from_raw(w.alphabet().clone(), x.to_vec())),
                factor: show(w),
            }
        } else {
            Error::InsufficientData {
                factor: show(w),
                scanned: rs.scan_length(),
            }
        }
    };
    if occ.first() != Some(&0) || occ.last() != Some(&x.len()) {
        return Err(fail());
    }
    occ.windows(2)
        .map(|pair| rs.index_of(&text[pair[0]..pair[1]]).ok_or_else(fail))
        .collect()
}

fn digit_morphism(domain: usize, codomain: usize, decompositions: &[Vec<usize>]) -> Morphism {
    let images = decompositions
        .iter()
        .map(|d| d.iter().map(|&i| Symbol(i as u8)).collect())
        .collect();
    Morphism::from_raw(Alphabet::digits(domain), Alphabet::digits(codomain), images)
}

/// A derived substitution `δ` with the splittings `φ(r_i) = r_{s_1}⋯r_{s_ℓ}`
/// that define it.
#[derive(Debug, Clone)]
pub struct DerivationCertificate {
    source: Substitution,
    returns: ReturnStructure,
    decompositions: Vec<Vec<usize>>,
    derived: Substitution,
}

impl DerivationCertificate {
    pub fn source(&self) -> &Substitution {
        &self.source
    }

    pub fn prefix(&self) -> &Word {
        self.returns.factor()
    }

    pub fn returns(&self) -> &ReturnStructure {
        &self.returns
    }

    pub fn decompositions(&self) -> &[Vec<usize>] {
        &self.decompositions
    }

    /// `δ`, prolongable on `0`.
    pub fn derived(&self) -> &Substitution {
        &self.derived
    }

    /// Re-concatenates the named return words and compares with `φ(r_i)`.
    pub fn verify(&self) -> bool {
        let r = self.returns.returns();
        self.decompositions.iter().enumerate().all(|(i, dec)| {
            let rebuilt: Vec<Symbol> = dec
                .iter()
                .flat_map(|&j| r[j].symbols().iter().copied())
                .collect();
            rebuilt == self.source.apply_symbols(r[i].symbols())
                && self
                    .derived
                    .image_symbols(Symbol(i as u8))
                    .iter()
                    .map(|s| s.index())
                    .eq(dec.iter().copied())
        })
    }
}

impl Serialize for DerivationCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateView::from(self).serialize(serializer)
    }
}

#[derive(Serialize)]
struct CertificateView {
    source: String,
    prefix: String,
    returns: Vec<String>,
    decompositions: Vec<String>,
    derived: String,
}

impl From<&DerivationCertificate> for CertificateView {
    fn from(c: &DerivationCertificate) -> Self {
        CertificateView {
            source: c.source.rules(),
            prefix: c.prefix().to_string(),
            returns: c
                .returns
                .returns()
                .iter()
                .map(ToString::to_string)
                .collect(),
            decompositions: c
                .derived
                .domain()
                .symbols()
                .map(|i| c.derived.image(i).to_string())
                .collect(),
            derived: c.derived.rules(),
        }
    }
}

/// Durand's construction for a prefix `w` of the fixed point behind `oracle`.
pub fn durand_substitution(w: &Word, oracle: &mut PrefixOracle) -> Result<DerivationCertificate> {
    durand_substitution_with(w, oracle, ScanPolicy::default())
}

pub fn durand_substitution_with(
    w: &Word,
    oracle: &mut PrefixOracle,
    policy: ScanPolicy,
) -> Result<DerivationCertificate> {
    let source = oracle.substitution().clone();
    check_same(source.domain(), w.alphabet())?;
    if !source.is_primitive() {
        return Err(Error::NonPrimitive(source.rules()));
    }
    if !w.is_prefix_of(&oracle.fixed_point_prefix(w.len())) {
        return Err(Error::NotAPrefix(show(w)));
    }
    let returns = scan_returns(w, oracle, policy, 1)?;
    let decompositions = returns
        .returns()
        .iter()
        .map(|r| decompose(&source.apply_symbols(r.symbols()), &returns))
        .collect::<Result<Vec<_>>>()?;
    let k = returns.returns().len();
    let delta = digit_morphism(k, k, &decompositions);
    let derived = Substitution::new(delta, Symbol(0)).map_err(|_| Error::Decomposition {
        word: "φ(r_0)".into(),
        factor: show(w),
    })?;

    // Two independent routes to the derived word must agree.
    let scanned = returns.derived();
    let mut fixed = PrefixOracle::new(derived.clone());
    if fixed.fixed_point_prefix(scanned.len()).symbols() != scanned.symbols() {
        return Err(Error::Decomposition {
            word: show(scanned),
            factor: show(w),
        });
    }
    Ok(DerivationCertificate {
        source,
        returns,
        decompositions,
        derived,
    })
}

/// The morphism `α` with `d(w) = α(d(pw))`, `pw` the shortest prefix
/// containing `w`.
#[derive(Debug, Clone)]
pub struct LinkMorphism {
    prefix_returns: ReturnStructure,
    factor_returns: ReturnStructure,
    decompositions: Vec<Vec<usize>>,
    morphism: Morphism,
}

impl LinkMorphism {
    /// `p`.
    pub fn skip(&self) -> &Word {
        self.factor_returns.skip_prefix()
    }

    /// Return structure of `pw`.
    pub fn prefix_returns(&self) -> &ReturnStructure {
        &self.prefix_returns
    }

    /// Return structure of `w`.
    pub fn factor_returns(&self) -> &ReturnStructure {
        &self.factor_returns
    }

    pub fn decompositions(&self) -> &[Vec<usize>] {
        &self.decompositions
    }

    pub fn morphism(&self) -> &Morphism {
        &self.morphism
    }

    /// Re-checks `p⁻¹ r_i p = r̃_{s_1}⋯r̃_{s_ℓ}` and that `α` maps the
    /// scanned derived prefix of `pw` onto a prefix-compatible word with
    /// the scanned derived prefix of `w`.
    pub fn verify(&self) -> bool {
        let p = self.skip().symbols();
        let targets = self.factor_returns.returns();
        let splits_ok = self
            .prefix_returns
            .returns()
            .iter()
            .zip(&self.decompositions)
            .all(|(r, dec)| {
                let mut conj = r.symbols().to_vec();
                conj.extend_from_slice(p);
                let conj = &conj[p.len()..];
                let rebuilt: Vec<Symbol> = dec
                    .iter()
                    .flat_map(|&j| targets[j].symbols().iter().copied())
                    .collect();
                rebuilt == conj
            });
        let image = self
            .morphism
            .apply_symbols(self.prefix_returns.derived().symbols());
        let target = self.factor_returns.derived().symbols();
        let overlap = image.len().min(target.len());
        splits_ok && image[..overlap] == target[..overlap]
    }
}

impl Serialize for LinkMorphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            factor: String,
            skip: String,
            prefix_returns: Vec<String>,
            factor_returns: Vec<String>,
            decompositions: Vec<String>,
            morphism: String,
        }
        View {
            factor: self.factor_returns.factor().to_string(),
            skip: self.skip().to_string(),
            prefix_returns: self
                .prefix_returns
                .returns()
                .iter()
                .map(ToString::to_string)
                .collect(),
            factor_returns: self
                .factor_returns
                .returns()
                .iter()
                .map(ToString::to_string)
                .collect(),
            decompositions: self
                .morphism
                .domain()
                .symbols()
                .map(|i| self.morphism.image(i).to_string())
                .collect(),
            morphism: self.morphism.rules(),
        }
        .serialize(serializer)
    }
}

pub fn link_morphism(w: &Word, oracle: &mut PrefixOracle) -> Result<LinkMorphism> {
    link_morphism_with(w, oracle, ScanPolicy::default())
}

pub fn link_morphism_with(
    w: &Word,
    oracle: &mut PrefixOracle,
    policy: ScanPolicy,
) -> Result<LinkMorphism> {
    let factor_returns = scan_returns(w, oracle, policy, 1)?;
    let p = factor_returns.skip_prefix().clone();
    let pw = p.concat(w)?;
    let prefix_returns = scan_returns(&pw, oracle, policy, 1)?;
    let decompositions = prefix_returns
        .returns()
        .iter()
        .map(|r| {
            let mut conj = r.symbols().to_vec();
            conj.extend_from_slice(p.symbols());
            decompose(&conj[p.len()..], &factor_returns)
        })
        .collect::<Result<Vec<_>>>()?;
    let morphism = digit_morphism(
        prefix_returns.returns().len(),
        factor_returns.returns().len(),
        &decompositions,
    );
    let link = LinkMorphism {
        prefix_returns,
        factor_returns,
        decompositions,
        morphism,
    };
    if !link.verify() {
        return Err(Error::Decomposition {
            word: show(&pw),
            factor: show(w),
        });
    }
    Ok(link)
}

/// Whether `α ∘ γ = β ∘ α` letterwise.
pub fn check_semiconjugacy(alpha: &Morphism, gamma: &Morphism, beta: &Morphism) -> Result<bool> {
    check_same(alpha.domain(), gamma.domain())?;
    check_same(alpha.domain(), gamma.codomain())?;
    check_same(alpha.codomain(), beta.domain())?;
    check_same(alpha.codomain(), beta.codomain())?;
    Ok(alpha.compose(gamma)? == beta.compose(alpha)?)
}

/// A bijection `π` with `π(d)` and `target` agreeing on the first `n`
/// letters, searched over all bijections between the two alphabets.
pub fn find_renaming(d: &Word, target: &Word, n: usize) -> Option<Renaming> {
    if d.len() < n || target.len() < n {
        return None;
    }
    let (x, y) = (&d.symbols()[..n], &target.symbols()[..n]);
    Renaming::all(d.alphabet(), target.alphabet())
        .find(|pi| x.iter().zip(y).all(|(&a, &b)| pi.map(a) == b))
}

/// Whether the first `n` letters of `d` are, after renaming, the first `n`
/// letters of the fixed point of `sigma`. Alphabets of different sizes
/// never match.
pub fn fixed_up_to_renaming(d: &Word, sigma: &Substitution, n: usize) -> Result<Option<Renaming>> {
    if d.len() < n {
        return Err(Error::InsufficientData {
            factor: show(d),
            scanned: d.len(),
        });
    }
    if d.alphabet().len() != sigma.domain().len() {
        return Ok(None);
    }
    let target = PrefixOracle::new(sigma.clone()).fixed_point_prefix(n);
    Ok(find_renaming(d, &target, n))
}

/// A bijection `π` with `π ∘ delta ∘ π⁻¹ = sigma`, if any.
pub fn conjugating_renaming(delta: &Morphism, sigma: &Morphism) -> Option<Renaming> {
    if !delta.is_endomorphism() || !sigma.is_endomorphism() {
        return None;
    }
    Renaming::all(delta.domain(), sigma.domain())
        .find(|pi| pi.conjugate(delta).as_ref() == Ok(sigma))
}
