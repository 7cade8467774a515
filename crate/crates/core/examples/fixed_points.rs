//! Fixed points of the built-in substitutions and of a rule literal.
//!
//! Run with `cargo run --example fixed_points`.

use substitutive::{registry, Morphism, PrefixOracle, Substitution};

fn main() -> Result<(), substitutive::Error> {
    for name in registry::NAMES {
        let m = registry::resolve(name)?;
        let prolongable = Substitution::all(&m);
        if prolongable.is_empty() {
            println!("{name:5} {m}: no growing fixed point");
            continue;
        }
        for sub in prolongable {
            let letter = sub.letter_char();
            let mut oracle = PrefixOracle::new(sub);
            println!("{name:5} from {letter}: {}", oracle.fixed_point_prefix(40));
        }
        println!(
            "      primitive: {}, injective: {}",
            m.is_primitive(),
            m.is_injective()
        );
    }

    let thue_morse: Morphism = "a->ab;b->ba".parse()?;
    for sub in Substitution::all(&thue_morse) {
        let letter = sub.letter_char();
        println!(
            "Thue-Morse from {letter}: {}",
            PrefixOracle::new(sub).fixed_point_prefix(32)
        );
    }
    println!(
        "incidence matrix exponent of trib: {:?}",
        registry::tribonacci().primitivity_exponent()
    );
    Ok(())
}
