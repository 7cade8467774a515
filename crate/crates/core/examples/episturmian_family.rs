//! Standard episturmian morphisms and the families `{L_cyc^k(z)}`.
//!
//! Run with `cargo run --example episturmian_family`.

use substitutive::closure::{verify_family_theorem, ClosureParams};
use substitutive::episturmian::{epi_morphism, family};
use substitutive::registry;
use substitutive::word::show;

fn main() -> Result<(), substitutive::Error> {
    let t3 = registry::tribonacci().power(3)?;
    println!("trib^3 = {t3}");
    println!("L_abc  = {}", registry::resolve("epi:abc")?);

    for subscript in ["ab", "abc", "aab", "abca"] {
        let z = registry::parse_epi_word(subscript)?;
        println!("\nL_{subscript} = {}", epi_morphism(&z));
        for member in family(&z)? {
            println!(
                "  k = {:?}: L_{} = {}",
                member.shifts, member.subscript, member.morphism
            );
        }
        let report = verify_family_theorem(&z, &ClosureParams::new(15, 500))?;
        println!("  closure: {}", report.closure.verdict);
        for s in report.shifts.iter().take(4) {
            println!(
                "  prefix {} fixed by shifts {:?}",
                show(&s.prefix),
                s.shifts
            );
        }
    }

    match family(&registry::parse_epi_word("a@ab")?) {
        Ok(_) => println!("\nunexpected family for a over {{a,b}}"),
        Err(e) => println!("\nfamily of a over {{a,b}}: {e}"),
    }
    Ok(())
}
