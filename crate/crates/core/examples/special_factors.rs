//! Special factors, bispecial factors and ancestors.
//!
//! Run with `cargo run --example special_factors`.

use substitutive::analysis::{ancestors, classify_special, phi_map, scan_language};
use substitutive::word::show;
use substitutive::{registry, PrefixOracle, ScanPolicy, Substitution, Word};

fn main() -> Result<(), substitutive::Error> {
    let policy = ScanPolicy::default();
    let mut z = PrefixOracle::new(Substitution::first(registry::period_doubling())?);
    for factor in ["a", "b", "aa", "ab", "aba"] {
        let c = classify_special(
            &Word::parse(z.substitution().domain(), factor)?,
            &mut z,
            policy,
        )?;
        println!(
            "{factor:4} {:?}: left {{{}}}, right {{{}}}",
            c.kind, c.left, c.right
        );
    }

    let scan = scan_language(&mut z, 30, policy);
    println!("\nbispecial factors up to length 30:");
    for v in scan.bispecial() {
        let image = phi_map(&v)?;
        println!("  {:30} Phi -> {}", show(&v), image);
    }

    for factor in ["aa", "aba", "abaaab"] {
        let r = ancestors(
            &Word::parse(z.substitution().domain(), factor)?,
            &mut z,
            policy,
        )?;
        let found: Vec<String> = r.ancestors.iter().map(|a| a.word.to_string()).collect();
        println!(
            "\nancestors of {factor}: {found:?}, ambiguous: {}",
            r.ambiguous
        );
    }

    let mut trib = PrefixOracle::new(Substitution::first(registry::tribonacci())?);
    let scan = scan_language(&mut trib, 12, policy);
    println!("\nright special factors of the Tribonacci word:");
    for v in scan.right_special() {
        println!("  {}", show(&v));
    }
    Ok(())
}
