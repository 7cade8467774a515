//! Horizon-bounded checks that sets of substitutions are closed under
//! derivation.
//!
//! Run with `cargo run --release --example closure`.

use substitutive::closure::{check_closed, ClosureParams};
use substitutive::word::show;
use substitutive::{registry, Morphism};

fn main() -> Result<(), substitutive::Error> {
    let params = ClosureParams::default();
    let sets: [&[&str]; 5] = [
        &["pd", "xi", "nu"],
        &["xi", "nu"],
        &["epi:abc", "epi:bca", "epi:cab"],
        &["trib"],
        &["pd"],
    ];
    for set in sets {
        let members = set
            .iter()
            .map(|s| registry::resolve(s))
            .collect::<Result<Vec<Morphism>, _>>()?;
        let report = check_closed(&members, &params)?;
        println!("{{{}}}: {}", set.join(", "), report.verdict);
        for e in report.entries.iter().take(6) {
            match &e.matched {
                Some(m) => println!(
                    "  {:8} -> {}@{} via {}",
                    show(&e.factor),
                    m.member,
                    m.letter,
                    m.renaming
                ),
                None => println!(
                    "  {:8} -> unmatched, derived {}…",
                    show(&e.factor),
                    e.derived.prefix(20)
                ),
            }
        }
        if !report.reverify(&members) {
            println!("  re-verification failed");
        }
    }
    Ok(())
}
