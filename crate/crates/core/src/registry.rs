//! Named morphisms and the literal syntax accepted wherever a morphism is
//! expected.
//!
//! | name         | rules                              |
//! |--------------|------------------------------------|
//! | `pd`         | `a->ab;b->aa` (period doubling)    |
//! | `xi`         | `0->011;1->0`                      |
//! | `nu`         | `0->01;1->02020101;2->0202`        |
//! | `eta`        | `0->;1->010202;2->01`              |
//! | `trib`       | `a->ab;b->ac;c->a` (Tribonacci)    |
//! | `epi:<z>`    | standard episturmian `L_z`         |
//!
//! `epi:<z>` acts on the sorted letters of `z`; `epi:<z>@<alphabet>` names
//! the alphabet explicitly, e.g. `epi:a@ab`. Anything else is parsed as a
//! rule literal such as `a->ab;b->aa`.

use crate::episturmian::{epi_morphism, EpiWord};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{Alphabet, Word};

pub const PERIOD_DOUBLING: &str = "a->ab;b->aa";
pub const XI: &str = "0->011;1->0";
pub const NU: &str = "0->01;1->02020101;2->0202";
pub const ETA: &str = "0->;1->010202;2->01";
pub const TRIBONACCI: &str = "a->ab;b->ac;c->a";

pub const NAMES: [&str; 5] = ["pd", "xi", "nu", "eta", "trib"];

pub fn period_doubling() -> Morphism {
    Morphism::parse(PERIOD_DOUBLING).expect("built-in rules parse")
}

pub fn xi() -> Morphism {
    Morphism::parse(XI).expect("built-in rules parse")
}

pub fn nu() -> Morphism {
    Morphism::parse(NU).expect("built-in rules parse")
}

pub fn eta() -> Morphism {
    Morphism::parse(ETA).expect("built-in rules parse")
}

pub fn tribonacci() -> Morphism {
    Morphism::parse(TRIBONACCI).expect("built-in rules parse")
}

/// Resolves a registry name, an `epi:` literal or a rule literal.
pub fn resolve(spec: &str) -> Result<Morphism> {
    let spec = spec.trim();
    match spec {
        "pd" => return Ok(period_doubling()),
        "xi" => return Ok(xi()),
        "nu" => return Ok(nu()),
        "eta" => return Ok(eta()),
        "trib" => return Ok(tribonacci()),
        _ => {}
    }
    if let Some(rest) = spec.strip_prefix("epi:") {
        return Ok(epi_morphism(&parse_epi_word(rest)?));
    }
    if spec.contains("->") {
        return Morphism::parse(spec);
    }
    Err(Error::Parse(format!("unknown morphism {spec:?}")))
}

/// Parses `z` or `z@alphabet` into an episturmian subscript word.
pub fn parse_epi_word(text: &str) -> Result<EpiWord> {
    let (z, alphabet) = match text.split_once('@') {
        Some((z, a)) => (z, Alphabet::parse(a)?),
        None => {
            let mut letters: Vec<char> = text.chars().collect();
            letters.sort_unstable();
            letters.dedup();
            if letters.is_empty() {
                return Err(Error::Parse(
                    "epi: needs a word or an explicit alphabet".into(),
                ));
            }
            (text, Alphabet::new(letters)?)
        }
    };
    Ok(EpiWord::new(Word::parse(&alphabet, z)?))
}
