//! Durand's derived substitution of prefixes, with its certificate.
//!
//! Run with `cargo run --example durand`.

use substitutive::derivation::durand_substitution;
use substitutive::{registry, PrefixOracle, Substitution};

fn main() -> Result<(), substitutive::Error> {
    for name in ["pd", "trib", "xi", "nu"] {
        let mut oracle = PrefixOracle::new(Substitution::first(registry::resolve(name)?)?);
        for n in [1, 2, 5] {
            let prefix = oracle.fixed_point_prefix(n);
            let c = durand_substitution(&prefix, &mut oracle)?;
            println!("{name} prefix {prefix}: delta = {}", c.derived().morphism());
            for (i, (r, dec)) in c
                .returns()
                .returns()
                .iter()
                .zip(c.decompositions())
                .enumerate()
            {
                let parts: Vec<String> = dec.iter().map(|j| format!("r{j}")).collect();
                println!("  r{i} = {r}, phi(r{i}) = {}", parts.join(" "));
            }
            assert!(c.verify());
            let fp = PrefixOracle::new(c.derived().clone()).fixed_point_prefix(30);
            println!("  fixed point of delta: {fp}…");
        }
    }
    Ok(())
}
