//! Reference values for period doubling, Tribonacci and the episturmian
//! family `{L_abc, L_bca, L_cab}`, each recomputed and compared.

use serde::{Deserialize, Serialize};

use crate::analysis::{ancestors, classify_special, scan_language, SpecialKind};
use crate::closure::{
    check_closed, derived_representatives, verify_family_theorem, ClosureParams, FactorSelection,
};
use crate::derivation::{
    check_semiconjugacy, durand_substitution, fixed_up_to_renaming, link_morphism,
};
use crate::episturmian::{family, generator, EpiWord};
use crate::error::Result;
use crate::morphism::{Morphism, PrefixOracle, ScanPolicy, Substitution};
use crate::registry;
use crate::returns::{derived_word, return_words};
use crate::word::{extensions, factors, Alphabet, Word};

/// Outcome of one reference check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn eq(name: &str, found: impl ToString, expected: &str) -> Check {
        let found = found.to_string();
        let passed = found == expected;
        let detail = if passed {
            found
        } else {
            format!("expected {expected}, found {found}")
        };
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }

    fn holds(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<Check>) -> Check {
        r.unwrap_or_else(|e| Check::holds(name, false, format!("error: {e}")))
    }
}

fn z() -> PrefixOracle {
    PrefixOracle::new(Substitution::first(registry::period_doubling()).expect("a is prolongable"))
}

fn word(oracle: &PrefixOracle, text: &str) -> Word {
    Word::parse(oracle.substitution().domain(), text).expect("letters of the reference alphabet")
}

fn list(words: &[Word]) -> String {
    words
        .iter()
        .map(crate::word::show)
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs every reference check with the given closure parameters.
///
/// The closure checks dominate the running time; the remaining checks are
/// instantaneous.
pub fn reference_checks(params: &ClosureParams) -> Vec<Check> {
    let mut out = Vec::new();
    let policy = ScanPolicy::default();
    let mut run =
        |name: &str, f: &dyn Fn() -> Result<Check>| out.push(Check::from_result(name, f()));

    run("fixed point of pd, 20 letters", &|| {
        Ok(Check::eq(
            "fixed point of pd, 20 letters",
            z().fixed_point_prefix(20),
            "abaaabababaaabaaabaa",
        ))
    });
    run("fixed point of trib, 21 letters", &|| {
        let mut t = PrefixOracle::new(Substitution::first(registry::tribonacci())?);
        Ok(Check::eq(
            "fixed point of trib, 21 letters",
            t.fixed_point_prefix(21),
            "abacabaabacababacabaa",
        ))
    });
    run("fixed point of xi, 13 letters", &|| {
        let mut x = PrefixOracle::new(Substitution::first(registry::xi())?);
        Ok(Check::eq(
            "fixed point of xi, 13 letters",
            x.fixed_point_prefix(13),
            "0110001101101",
        ))
    });
    run("pd(ab) = abaa", &|| {
        let psi = registry::period_doubling();
        Ok(Check::eq(
            "pd(ab) = abaa",
            psi.apply(&Word::parse(psi.domain(), "ab")?)?,
            "abaa",
        ))
    });
    run("trib^3 = L_abc", &|| {
        let t3 = registry::tribonacci().power(3)?;
        let l = registry::resolve("epi:abc")?;
        Ok(Check::holds("trib^3 = L_abc", t3 == l, t3.rules()))
    });
    run("eta is not primitive", &|| {
        Ok(Check::holds(
            "eta is not primitive",
            !registry::eta().is_primitive(),
            registry::ETA,
        ))
    });
    run("L_a over {a,b} is a->a;b->ab and not primitive", &|| {
        let ab = Alphabet::parse("ab")?;
        let l = generator(ab.symbol('a').expect("a in ab"), &ab)?;
        Ok(Check::holds(
            "L_a over {a,b} is a->a;b->ab and not primitive",
            l.rules() == "a->a;b->ab" && !l.is_primitive(),
            l.rules(),
        ))
    });
    run("factors of length 2 of z: aa,ab,ba", &|| {
        let mut z = z();
        let prefix = z.fixed_point_prefix(4096);
        let f: Vec<Word> = factors(&prefix, 2)?.into_iter().collect();
        Ok(Check::eq(
            "factors of length 2 of z: aa,ab,ba",
            list(&f),
            "aa,ab,ba",
        ))
    });
    run("aaab is a factor of z, aaaa is not", &|| {
        let mut z = z();
        let prefix = z.fixed_point_prefix(4096);
        let f = factors(&prefix, 4)?;
        let ok = f.contains(&word(&z, "aaab")) && !f.contains(&word(&z, "aaaa"));
        Ok(Check::holds(
            "aaab is a factor of z, aaaa is not",
            ok,
            "length-4 factors of a 4096-letter prefix",
        ))
    });
    run("extensions of b: {a},{a}", &|| {
        let mut z = z();
        let prefix = z.fixed_point_prefix(4096);
        let e = extensions(&word(&z, "b"), &prefix)?;
        let render = |s: &std::collections::BTreeSet<crate::Symbol>| {
            prefix
                .alphabet()
                .render(&s.iter().copied().collect::<Vec<_>>())
        };
        Ok(Check::eq(
            "extensions of b: {a},{a}",
            format!("{},{}", render(&e.left), render(&e.right)),
            "a,a",
        ))
    });
    run("extensions of a: {a,b},{a,b}", &|| {
        let mut z = z();
        let prefix = z.fixed_point_prefix(4096);
        let e = extensions(&word(&z, "a"), &prefix)?;
        let render = |s: &std::collections::BTreeSet<crate::Symbol>| {
            prefix
                .alphabet()
                .render(&s.iter().copied().collect::<Vec<_>>())
        };
        Ok(Check::eq(
            "extensions of a: {a,b},{a,b}",
            format!("{},{}", render(&e.left), render(&e.right)),
            "ab,ab",
        ))
    });
    for (factor, expected) in [
        ("a", "ab,a"),
        ("aa", "a,aababab,aab"),
        ("abaa", "abaaabab,abaa"),
    ] {
        let name = format!("return words to {factor}: {expected}");
        run(&name.clone(), &|| {
            let mut z = z();
            let rs = return_words(&word(&z, factor), &mut z, policy)?;
            Ok(Check::eq(&name, list(rs.returns()), expected))
        });
    }
    run("derived word of a: 0110001101101", &|| {
        let mut z = z();
        let d = derived_word(&word(&z, "a"), &mut z, 13)?;
        Ok(Check::eq(
            "derived word of a: 0110001101101",
            d,
            "0110001101101",
        ))
    });
    run("Durand substitution of pd at a is xi", &|| {
        let mut z = z();
        let c = durand_substitution(&word(&z, "a"), &mut z)?;
        Ok(Check::holds(
            "Durand substitution of pd at a is xi",
            c.derived().rules() == registry::XI && c.verify(),
            c.derived().rules(),
        ))
    });
    run("link morphism at aa: p = ab, 0->01;1->02", &|| {
        let mut z = z();
        let l = link_morphism(&word(&z, "aa"), &mut z)?;
        let found = format!("p={} {}", l.skip(), l.morphism().rules());
        Ok(Check::eq(
            "link morphism at aa: p = ab, 0->01;1->02",
            found,
            "p=ab 0->01;1->02",
        ))
    });
    run("alpha xi^2 = nu alpha", &|| {
        let alpha = Morphism::parse("0->01;1->02")?;
        let ok = check_semiconjugacy(&alpha, &registry::xi().power(2)?, &registry::nu())?;
        Ok(Check::holds(
            "alpha xi^2 = nu alpha",
            ok,
            alpha.compose(&registry::xi().power(2)?)?.rules(),
        ))
    });
    run("alpha xi = eta alpha", &|| {
        let alpha = Morphism::parse("0->01;1->02")?;
        let ok = check_semiconjugacy(&alpha, &registry::xi(), &registry::eta())?;
        Ok(Check::holds(
            "alpha xi = eta alpha",
            ok,
            alpha.compose(&registry::xi())?.rules(),
        ))
    });
    run("derived word of a is fixed by xi", &|| {
        let mut z = z();
        let d = derived_word(&word(&z, "a"), &mut z, 13)?;
        let pi = fixed_up_to_renaming(&d, &Substitution::first(registry::xi())?, 13)?;
        let ok = pi.as_ref().is_some_and(|p| p.is_identity());
        Ok(Check::holds(
            "derived word of a is fixed by xi",
            ok,
            format!("{d}"),
        ))
    });
    run("derived word of aa is fixed by nu (500 letters)", &|| {
        let mut z = z();
        let d = derived_word(&word(&z, "aa"), &mut z, 500)?;
        let pi = fixed_up_to_renaming(&d, &Substitution::first(registry::nu())?, 500)?;
        let ok = pi.as_ref().is_some_and(|p| p.is_identity());
        Ok(Check::holds(
            "derived word of aa is fixed by nu (500 letters)",
            ok,
            d.prefix(20).to_string(),
        ))
    });
    run("a and aa are bispecial, b is not special", &|| {
        let mut z = z();
        let kinds: Vec<SpecialKind> = ["a", "aa", "b"]
            .iter()
            .map(|w| classify_special(&word(&z, w), &mut z, policy).map(|c| c.kind))
            .collect::<Result<_>>()?;
        let ok = kinds
            == [
                SpecialKind::Bispecial,
                SpecialKind::Bispecial,
                SpecialKind::None,
            ];
        Ok(Check::holds(
            "a and aa are bispecial, b is not special",
            ok,
            format!("{kinds:?}"),
        ))
    });
    run(
        "trib has one right special factor per length up to 10",
        &|| {
            let mut t = PrefixOracle::new(Substitution::first(registry::tribonacci())?);
            let scan = scan_language(&mut t, 10, policy);
            let counts: Vec<usize> = (0..=10)
                .map(|n| scan.right_special().iter().filter(|w| w.len() == n).count())
                .collect();
            Ok(Check::holds(
                "trib has one right special factor per length up to 10",
                counts.iter().all(|&c| c == 1),
                format!("{counts:?}"),
            ))
        },
    );
    run("ancestors of aa: b, ambiguous", &|| {
        let mut z = z();
        let r = ancestors(&word(&z, "aa"), &mut z, policy)?;
        let found: Vec<Word> = r.ancestors.iter().map(|a| a.word.clone()).collect();
        Ok(Check::eq(
            "ancestors of aa: b, ambiguous",
            format!("{} {}", list(&found), r.ambiguous),
            "b true",
        ))
    });
    run("ancestors of aba: aa,ab, unambiguous", &|| {
        let mut z = z();
        let r = ancestors(&word(&z, "aba"), &mut z, policy)?;
        let found: Vec<Word> = r.ancestors.iter().map(|a| a.word.clone()).collect();
        Ok(Check::eq(
            "ancestors of aba: aa,ab, unambiguous",
            format!("{} {}", list(&found), r.ambiguous),
            "aa,ab false",
        ))
    });
    run("family of abc: L_abc, L_bca, L_cab", &|| {
        let fam = family(&registry::parse_epi_word("abc")?)?;
        let mut subs: Vec<String> = fam.iter().map(|m| m.subscript.to_string()).collect();
        subs.sort();
        Ok(Check::eq(
            "family of abc: L_abc, L_bca, L_cab",
            subs.join(","),
            "abc,bca,cab",
        ))
    });
    run("family of a over {a,b} is rejected", &|| {
        let z: EpiWord = registry::parse_epi_word("a@ab")?;
        let r = family(&z);
        Ok(Check::holds(
            "family of a over {a,b} is rejected",
            r.is_err(),
            r.err().map(|e| e.to_string()).unwrap_or_default(),
        ))
    });
    run(
        "pd has two derived words up to length 20, prefixes one",
        &|| {
            let psi = Substitution::first(registry::period_doubling())?;
            let p = ClosureParams {
                max_factor_len: 20,
                ..*params
            };
            let all = derived_representatives(&psi, &p)?;
            let pre = derived_representatives(&psi, &p.with_selection(FactorSelection::Prefixes))?;
            let found: Vec<Word> = all.entries.iter().map(|r| r.factor.clone()).collect();
            Ok(Check::holds(
                "pd has two derived words up to length 20, prefixes one",
                found.len() == 2 && pre.entries.len() == 1,
                format!(
                    "representatives {}; prefix representatives {}",
                    list(&found),
                    pre.entries.len()
                ),
            ))
        },
    );
    run(
        "derived words of xi up to length 15 are fixed by xi or nu",
        &|| {
            let xi = Substitution::first(registry::xi())?;
            let p = ClosureParams {
                max_factor_len: 15,
                ..*params
            };
            let reps = derived_representatives(&xi, &p)?;
            let targets = [
                Substitution::first(registry::xi())?,
                Substitution::first(registry::nu())?,
            ];
            let mut ok = reps.failures.is_empty();
            for r in &reps.entries {
                let mut hit = false;
                for t in &targets {
                    hit |= fixed_up_to_renaming(&r.derived, t, p.horizon)?.is_some();
                }
                ok &= hit;
            }
            Ok(Check::holds(
                "derived words of xi up to length 15 are fixed by xi or nu",
                ok,
                format!("{} representatives", reps.entries.len()),
            ))
        },
    );
    for set in [
        vec!["pd", "xi", "nu"],
        vec!["xi", "nu"],
        vec!["epi:abc", "epi:bca", "epi:cab"],
        vec!["trib"],
    ] {
        let name = format!("{{{}}} is closed under derivation", set.join(","));
        run(&name.clone(), &|| {
            let members = set
                .iter()
                .map(|s| registry::resolve(s))
                .collect::<Result<Vec<_>>>()?;
            let report = check_closed(&members, params)?;
            Ok(Check::holds(
                &name,
                report.verdict.is_verified(),
                report.verdict.to_string(),
            ))
        });
    }
    run("family of abc fixes one word up to renaming", &|| {
        let report = verify_family_theorem(&registry::parse_epi_word("abc")?, params)?;
        let all_three = report.shifts.iter().all(|s| s.shifts == [1, 2, 3]);
        Ok(Check::holds(
            "family of abc fixes one word up to renaming",
            report.is_verified() && all_three,
            report.closure.verdict.to_string(),
        ))
    });
    out
}
