//! Return words and derived words of factors of the period doubling word.
//!
//! Run with `cargo run --example return_words`.

use substitutive::returns::{complete_return_words, return_words};
use substitutive::word::show;
use substitutive::{registry, PrefixOracle, ScanPolicy, Substitution, Word};

fn main() -> Result<(), substitutive::Error> {
    let mut z = PrefixOracle::new(Substitution::first(registry::period_doubling())?);
    println!("z = {}…", z.fixed_point_prefix(40));
    for factor in ["a", "b", "aa", "aba", "abaa", "baaab"] {
        let w = Word::parse(z.substitution().domain(), factor)?;
        let rs = return_words(&w, &mut z, ScanPolicy::default())?;
        println!("\nfactor {factor}, skip prefix {}", show(rs.skip_prefix()));
        for (i, (r, c)) in rs
            .returns()
            .iter()
            .zip(complete_return_words(&rs))
            .enumerate()
        {
            println!("  r{i} = {r:10} complete: {c}");
        }
        println!("  derived: {}…", rs.derived().prefix(40));
        println!(
            "  stable after scanning {} letters: {}",
            rs.scan_length(),
            rs.is_stable()
        );
        assert_eq!(rs.reconstruct(), z.fixed_point_prefix(rs.covered_length()));
    }
    Ok(())
}
