//! Return words, derived words and derivation-closed sets of primitive
//! substitutions.
//!
//! The crate works on finite prefixes of fixed points of substitutions. A
//! [`PrefixOracle`] grows the prefix of a fixed point on demand; on top of
//! it the crate computes
//!
//! - return words and derived words of any factor ([`returns`]),
//! - Durand's derived substitution for prefixes and the linking morphism for
//!   arbitrary factors, together with renaming and semiconjugacy checks
//!   ([`derivation`]),
//! - special and bispecial factors and ancestors ([`analysis`]),
//! - standard episturmian morphisms `L_z` and their cyclic families
//!   ([`episturmian`]),
//! - horizon-bounded checks that a set of substitutions is closed under
//!   derivation ([`closure`]).
//!
//! ```
//! use substitutive::{registry, returns, PrefixOracle, Substitution, Word};
//!
//! let psi = Substitution::first(registry::period_doubling())?;
//! let mut z = PrefixOracle::new(psi);
//! assert_eq!(z.fixed_point_prefix(20).to_string(), "abaaabababaaabaaabaa");
//!
//! let a = Word::parse(z.substitution().domain(), "a")?;
//! let d = returns::derived_word(&a, &mut z, 13)?;
//! assert_eq!(d.to_string(), "0110001101101");
//! # Ok::<(), substitutive::Error>(())
//! ```
//!
//! Every statement about an infinite word is checked on a prefix only;
//! results carry their scan lengths and horizons.

pub mod analysis;
pub mod catalogue;
pub mod cli;
pub mod closure;
pub mod derivation;
pub mod episturmian;
mod error;
pub mod morphism;
pub mod registry;
pub mod returns;
pub mod word;

pub use error::{Error, Result};
pub use morphism::{IncidenceMatrix, Morphism, PrefixOracle, ScanPolicy, Substitution};
pub use word::{Alphabet, Symbol, Word};
