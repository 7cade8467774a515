//! The morphism linking derived words of `pw` and `w`, and the
//! semiconjugacies it satisfies for the period doubling word.
//!
//! Run with `cargo run --example link_and_semiconjugacy`.

use substitutive::derivation::{check_semiconjugacy, link_morphism};
use substitutive::returns::derived_word;
use substitutive::{registry, PrefixOracle, Substitution, Word};

fn main() -> Result<(), substitutive::Error> {
    let mut z = PrefixOracle::new(Substitution::first(registry::period_doubling())?);
    for factor in ["aa", "b", "baa", "aaa"] {
        let w = Word::parse(z.substitution().domain(), factor)?;
        let link = link_morphism(&w, &mut z)?;
        println!(
            "w = {factor}: p = {}, alpha = {}",
            link.skip(),
            link.morphism()
        );
        assert!(link.verify());
    }

    let w = Word::parse(z.substitution().domain(), "aa")?;
    let alpha = link_morphism(&w, &mut z)?.morphism().clone();
    let xi = registry::xi();
    println!(
        "\nalpha xi^2 = nu alpha: {}",
        check_semiconjugacy(&alpha, &xi.power(2)?, &registry::nu())?
    );
    println!(
        "alpha xi   = eta alpha: {}",
        check_semiconjugacy(&alpha, &xi, &registry::eta())?
    );

    let v = PrefixOracle::new(Substitution::first(xi)?).fixed_point_prefix(30);
    println!(
        "\nalpha(fixed point of xi) = {}…",
        alpha.apply(&v)?.prefix(40)
    );
    println!(
        "derived word of aa       = {}…",
        derived_word(&w, &mut z, 40)?
    );
    Ok(())
}
