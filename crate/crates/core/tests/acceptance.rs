//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every reference value is recomputed with the plain-string oracle in
//! `common` as well as through the library.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use substitutive::analysis::{ancestors, classify_special, phi_map, scan_language, SpecialKind};
use substitutive::closure::{check_closed, ClosureParams, Verdict};
use substitutive::derivation::{
    check_semiconjugacy, durand_substitution, fixed_up_to_renaming, link_morphism,
};
use substitutive::episturmian::{epi_morphism, family, EpiWord};
use substitutive::registry::{self, ETA, NU, PERIOD_DOUBLING, TRIBONACCI, XI};
use substitutive::returns::{complete_return_words, derived_word, return_words};
use substitutive::{Alphabet, Morphism, PrefixOracle, ScanPolicy, Substitution, Word};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn oracle(m: Morphism) -> PrefixOracle {
    PrefixOracle::new(Substitution::first(m).unwrap())
}

fn z() -> PrefixOracle {
    oracle(registry::period_doubling())
}

fn w(o: &PrefixOracle, text: &str) -> Word {
    Word::parse(o.substitution().domain(), text).unwrap()
}

fn strings(ws: &[Word]) -> Vec<String> {
    ws.iter().map(ToString::to_string).collect()
}

const LONG: usize = 1 << 17;

fn fixed_points() -> Outcome {
    for (rules, start, n, expected) in [
        (PERIOD_DOUBLING, 'a', 20, "abaaabababaaabaaabaa"),
        (TRIBONACCI, 'a', 21, "abacabaabacababacabaa"),
        (XI, '0', 13, "0110001101101"),
    ] {
        let lib = oracle(Morphism::parse(rules).unwrap())
            .fixed_point_prefix(n)
            .to_string();
        let naive = common::fixpoint(rules, start, n);
        ensure!(
            lib == expected && naive == expected,
            "{rules}: library {lib}, oracle {naive}, expected {expected}"
        );
    }
    Ok(())
}

fn return_word_lists() -> Outcome {
    let text = common::fixpoint(PERIOD_DOUBLING, 'a', LONG);
    for (factor, expected) in [
        ("a", &["ab", "a"][..]),
        ("aa", &["a", "aababab", "aab"]),
        ("abaa", &["abaaabab", "abaa"]),
    ] {
        let mut o = z();
        let lib = strings(
            return_words(&w(&o, factor), &mut o, ScanPolicy::default())
                .unwrap()
                .returns(),
        );
        let (naive, _) = common::returns(factor, &text);
        ensure!(
            lib == expected && naive == expected,
            "R({factor}): library {lib:?}, oracle {naive:?}"
        );
    }
    Ok(())
}

fn derived_words() -> Outcome {
    let text = common::fixpoint(PERIOD_DOUBLING, 'a', LONG);
    let mut o = z();
    let da = derived_word(&w(&o, "a"), &mut o, 2000).unwrap();
    ensure!(
        da.prefix(13).to_string() == "0110001101101",
        "d(a) starts {}",
        da.prefix(13)
    );
    let naive_da = common::returns("a", &text).1;
    ensure!(
        naive_da[..2000] == da.to_string(),
        "d(a) disagrees with the oracle"
    );

    let daa = derived_word(&w(&o, "aa"), &mut o, 2000).unwrap();
    let nu_fp = common::fixpoint(NU, '0', 2000);
    ensure!(
        daa.to_string() == nu_fp,
        "d(aa) is not the fixed point of nu"
    );
    ensure!(
        common::returns("aa", &text).1[..2000] == nu_fp,
        "oracle d(aa) is not the fixed point of nu"
    );
    let pi =
        fixed_up_to_renaming(&daa, &Substitution::first(registry::nu()).unwrap(), 2000).unwrap();
    ensure!(
        pi.is_some_and(|p| p.is_identity()),
        "renaming for d(aa) is not the identity"
    );

    for factor in ["b", "ab", "aba"] {
        let d = derived_word(&w(&o, factor), &mut o, 2000).unwrap();
        ensure!(d == da, "d({factor}) differs from d(a)");
        ensure!(
            common::returns(factor, &text).1[..2000] == naive_da[..2000],
            "oracle d({factor}) differs from d(a)"
        );
    }
    Ok(())
}

fn durand_certificates() -> Outcome {
    for (source, prefix) in [
        (registry::period_doubling(), "a"),
        (registry::period_doubling(), "ab"),
        (registry::xi(), "0"),
    ] {
        let mut o = oracle(source.clone());
        let c = durand_substitution(&w(&o, prefix), &mut o).unwrap();
        let delta = c.derived().morphism();
        ensure!(delta.rules() == XI, "durand({source}, {prefix}) = {delta}");
        ensure!(c.verify(), "certificate for {prefix} does not verify");
        let rules = common::rules(&source.rules());
        let r = strings(c.returns().returns());
        for (i, dec) in c.decompositions().iter().enumerate() {
            let rebuilt: String = dec.iter().map(|&j| r[j].as_str()).collect();
            ensure!(
                rebuilt == common::apply(&rules, &r[i]),
                "phi(r{i}) does not split as {dec:?}"
            );
        }
        ensure!(
            delta.is_primitive() && common::primitive_by_iteration(&delta.rules()),
            "delta not primitive"
        );
    }
    Ok(())
}

fn link() -> Outcome {
    let mut o = z();
    let l = link_morphism(&w(&o, "aa"), &mut o).unwrap();
    ensure!(l.skip().to_string() == "ab", "p = {}", l.skip());
    ensure!(
        l.morphism().rules() == "0->01;1->02",
        "alpha = {}",
        l.morphism()
    );
    ensure!(l.verify(), "link certificate does not verify");

    let text = common::fixpoint(PERIOD_DOUBLING, 'a', LONG);
    let first = common::positions("aa", &text)[0];
    ensure!(
        text[..first] == *"ab",
        "oracle skip prefix {}",
        &text[..first]
    );
    let d_abaa = common::returns("abaa", &text).1;
    let d_aa = common::returns("aa", &text).1;
    let image = common::apply(&common::rules("0->01;1->02"), &d_abaa);
    let n = image.len().min(d_aa.len());
    ensure!(
        n > 1000 && image[..n] == d_aa[..n],
        "alpha(d(abaa)) does not match d(aa)"
    );
    Ok(())
}

fn semiconjugacies() -> Outcome {
    let alpha = Morphism::parse("0->01;1->02").unwrap();
    let xi2 = registry::xi().power(2).unwrap();
    ensure!(
        check_semiconjugacy(&alpha, &xi2, &registry::nu()).unwrap(),
        "alpha xi^2 != nu alpha"
    );
    ensure!(
        check_semiconjugacy(&alpha, &registry::xi(), &registry::eta()).unwrap(),
        "alpha xi != eta alpha"
    );

    let (a, x, n, e) = (
        common::rules("0->01;1->02"),
        common::rules(XI),
        common::rules(NU),
        common::rules(ETA),
    );
    for c in ["0", "1"] {
        ensure!(
            common::apply(&a, &common::apply(&x, &common::apply(&x, c)))
                == common::apply(&n, &common::apply(&a, c)),
            "oracle: alpha xi^2 ({c})"
        );
        ensure!(
            common::apply(&a, &common::apply(&x, c)) == common::apply(&e, &common::apply(&a, c)),
            "oracle: alpha xi ({c})"
        );
    }
    let transported = common::apply(&a, &common::fixpoint(XI, '0', 2000));
    let nu_fp = oracle(registry::nu()).fixed_point_prefix(2000).to_string();
    ensure!(
        transported[..2000] == nu_fp,
        "alpha(fixed point of xi) is not the fixed point of nu"
    );
    Ok(())
}

fn naive_ancestors(factor: &str, text: &str) -> (BTreeSet<String>, bool) {
    let psi = common::rules(PERIOD_DOUBLING);
    let bound = factor.len() + 4;
    let mut found = BTreeSet::new();
    let mut ambiguous = false;
    for len in 1..=bound {
        for u in common::factors(text, len) {
            let image = common::apply(&psi, &u);
            let first = psi[&u.chars().next().unwrap()].len();
            let last = psi[&u.chars().last().unwrap()].len();
            let occ = common::positions(factor, &image);
            let admissible = occ
                .iter()
                .any(|&i| i < first && image.len() - i - factor.len() < last);
            match (admissible, occ.len()) {
                (true, 1) => {
                    found.insert(u);
                }
                (true, _) => ambiguous = true,
                _ => {}
            }
        }
    }
    (found, ambiguous)
}

fn specials_and_ancestors() -> Outcome {
    let policy = ScanPolicy::default();
    let text = common::fixpoint(PERIOD_DOUBLING, 'a', 1 << 14);
    let mut o = z();
    for (factor, kind) in [
        ("a", SpecialKind::Bispecial),
        ("aa", SpecialKind::Bispecial),
        ("b", SpecialKind::None),
    ] {
        let c = classify_special(&w(&o, factor), &mut o, policy).unwrap();
        let (l, r) = common::extensions(factor, &text);
        let naive = (l.len() > 1, r.len() > 1);
        ensure!(c.kind == kind, "{factor} classified {:?}", c.kind);
        ensure!(
            naive == (kind != SpecialKind::None, kind != SpecialKind::None),
            "oracle extensions of {factor}: {l:?} {r:?}"
        );
    }

    for (factor, expected, ambiguous) in [("aa", &["b"][..], true), ("aba", &["aa", "ab"], false)] {
        let report = ancestors(&w(&o, factor), &mut o, policy).unwrap();
        let lib: Vec<String> = report
            .ancestors
            .iter()
            .map(|a| a.word.to_string())
            .collect();
        ensure!(
            lib == expected && report.ambiguous == ambiguous,
            "A({factor}) = {lib:?}, ambiguous {}",
            report.ambiguous
        );
        ensure!(
            report.verify(&o),
            "ancestor witnesses for {factor} do not verify"
        );
        let (naive, naive_amb) = naive_ancestors(factor, &text);
        ensure!(
            naive.iter().eq(expected.iter()) && naive_amb == ambiguous,
            "oracle A({factor}) = {naive:?}"
        );
    }

    let expected = ["", "a", "aa", "aba", "ababa", "abaaaba"];
    let lib: Vec<String> = scan_language(&mut o, 7, policy)
        .bispecial()
        .iter()
        .map(ToString::to_string)
        .collect();
    ensure!(lib == expected, "bispecials {lib:?}");
    let mut naive = vec![String::new()];
    for len in 1..=7 {
        for f in common::factors(&text, len) {
            let (l, r) = common::extensions(&f, &text);
            if l.len() > 1 && r.len() > 1 {
                naive.push(f);
            }
        }
    }
    ensure!(naive == expected, "oracle bispecials {naive:?}");
    let psi = common::rules(PERIOD_DOUBLING);
    for v in expected.iter().filter(|v| v.len() > 2) {
        let lib_pre = expected
            .iter()
            .any(|u| phi_map(&w(&o, u)).unwrap().to_string() == *v);
        let naive_pre = expected.iter().any(|u| common::apply(&psi, u) + "a" == *v);
        ensure!(
            lib_pre && naive_pre,
            "{v} is not a Phi-image of a shorter bispecial"
        );
    }
    Ok(())
}

fn episturmian() -> Outcome {
    let t3 = registry::tribonacci().power(3).unwrap();
    let l_abc = registry::resolve("epi:abc").unwrap();
    ensure!(t3 == l_abc, "trib^3 = {t3}, L_abc = {l_abc}");
    let naive_t3: Vec<String> = ["a", "b", "c"]
        .iter()
        .map(|c| {
            let r = common::rules(TRIBONACCI);
            common::apply(&r, &common::apply(&r, &common::apply(&r, c)))
        })
        .collect();
    ensure!(
        l_abc.rules() == format!("a->{};b->{};c->{}", naive_t3[0], naive_t3[1], naive_t3[2]),
        "oracle trib^3 {naive_t3:?}"
    );

    let fam = family(&registry::parse_epi_word("abc").unwrap()).unwrap();
    let distinct: BTreeSet<String> = fam.iter().map(|m| m.morphism.rules()).collect();
    ensure!(
        fam.len() == 3 && distinct.len() == 3,
        "family of abc has {} members",
        fam.len()
    );

    let letters = ['a', 'b', 'c'];
    let mut cases = 0;
    for k in 1..=3 {
        let alphabet = Alphabet::new(letters[..k].iter().copied()).unwrap();
        for n in 1..=4u32 {
            for code in 0..k.pow(n) {
                let mut z = String::new();
                let mut c = code;
                for _ in 0..n {
                    z.push(letters[c % k]);
                    c /= k;
                }
                let lz = epi_morphism(&EpiWord::new(Word::parse(&alphabet, &z).unwrap()));
                let all_occur = letters[..k].iter().all(|c| z.contains(*c));
                ensure!(
                    lz.is_primitive() == all_occur,
                    "L_{z} over {alphabet}: primitive {}",
                    lz.is_primitive()
                );
                ensure!(
                    common::primitive_by_iteration(&lz.rules()) == all_occur,
                    "oracle: L_{z} over {alphabet}"
                );
                cases += 1;
            }
        }
    }
    ensure!(cases == 4 + 30 + 120, "{cases} subscripts enumerated");
    Ok(())
}

fn closure_theorems() -> Outcome {
    let params = ClosureParams::new(30, 2000);
    for set in [
        &["pd", "xi", "nu"][..],
        &["xi", "nu"],
        &["epi:abc", "epi:bca", "epi:cab"],
        &["trib"],
    ] {
        let members: Vec<Morphism> = set.iter().map(|s| registry::resolve(s).unwrap()).collect();
        let report = check_closed(&members, &params).unwrap();
        ensure!(report.verdict.is_verified(), "{set:?}: {}", report.verdict);
        ensure!(
            report.reverify(&members),
            "{set:?}: matches do not re-verify"
        );
        for e in &report.entries {
            let m = e.matched.as_ref().unwrap();
            let naive_fp = common::fixpoint(&m.member, m.letter, 2000);
            let renamed = m
                .renaming
                .apply(&e.derived.prefix(2000))
                .unwrap()
                .to_string();
            ensure!(
                renamed == naive_fp,
                "{set:?}: {} of {} does not rename onto {}",
                e.factor,
                e.source,
                m.member
            );
        }
    }

    let report = check_closed(&[registry::period_doubling()], &params).unwrap();
    match &report.verdict {
        Verdict::NotVerified { counterexample, .. } => ensure!(
            counterexample == "a",
            "{{pd}} counterexample {counterexample}"
        ),
        v => return Err(format!("{{pd}}: {v}")),
    }
    // Neither bijection {0,1} -> {a,b} carries d(a) onto the fixed point of pd.
    let da = common::returns("a", &common::fixpoint(PERIOD_DOUBLING, 'a', LONG)).1;
    let pd_fp = common::fixpoint(PERIOD_DOUBLING, 'a', 2000);
    for (zero, one) in [('a', 'b'), ('b', 'a')] {
        let renamed: String = da[..2000]
            .chars()
            .map(|c| if c == '0' { zero } else { one })
            .collect();
        ensure!(
            renamed != pd_fp,
            "oracle: d(a) renames onto the fixed point of pd"
        );
    }
    Ok(())
}

const CASES: usize = 200;

fn sources() -> Vec<(&'static str, String)> {
    ["pd", "trib", "xi", "nu", "epi:abc", "epi:bca"]
        .iter()
        .map(|s| (*s, registry::resolve(s).unwrap().rules()))
        .collect()
}

fn random_factor(rng: &mut ChaCha8Rng, text: &str, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    let start = rng.gen_range(0..2000);
    text[start..start + len].to_owned()
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let policy = ScanPolicy::default();
    let texts: Vec<(&str, String, String)> = sources()
        .into_iter()
        .map(|(name, rules)| {
            let start = rules.chars().next().unwrap();
            (
                name,
                rules.clone(),
                common::fixpoint(&rules, start, 1 << 16),
            )
        })
        .collect();

    // Extension invariance for factors that are not special on one side.
    let mut checked = 0;
    while checked < CASES {
        let (name, rules, text) = &texts[rng.gen_range(0..2)];
        let f = random_factor(&mut rng, text, 10);
        let (left, right) = common::extensions(&f, text);
        let mut o = oracle(Morphism::parse(rules).unwrap());
        let d = derived_word(&w(&o, &f), &mut o, 300).unwrap();
        if right.len() == 1 {
            let ext = format!("{f}{}", right.iter().next().unwrap());
            ensure!(
                derived_word(&w(&o, &ext), &mut o, 300).unwrap() == d,
                "{name}: d({f}) != d({ext})"
            );
            checked += 1;
        }
        if left.len() == 1 {
            let ext = format!("{}{f}", left.iter().next().unwrap());
            ensure!(
                derived_word(&w(&o, &ext), &mut o, 300).unwrap() == d,
                "{name}: d({f}) != d({ext})"
            );
            checked += 1;
        }
    }

    // Reconstruction and the two-occurrence property, against the oracle.
    for case in 0..CASES {
        let (name, rules, text) = &texts[case % texts.len()];
        let f = random_factor(&mut rng, text, 12);
        let mut o = oracle(Morphism::parse(rules).unwrap());
        let rs = return_words(&w(&o, &f), &mut o, policy).unwrap();
        let covered = rs.covered_length();
        ensure!(
            rs.reconstruct() == o.fixed_point_prefix(covered),
            "{name}: reconstruction fails for {f}"
        );
        ensure!(
            text.len() < covered || text[..covered] == rs.reconstruct().to_string(),
            "{name}: oracle reconstruction for {f}"
        );
        let (naive, naive_d) = common::returns(&f, &text[..rs.scan_length().min(text.len())]);
        if rs.scan_length() <= text.len() {
            ensure!(
                naive == strings(rs.returns()) && naive_d == rs.derived().to_string(),
                "{name}: oracle returns to {f}"
            );
        }
        for c in complete_return_words(&rs) {
            let c = c.to_string();
            let occ = common::positions(&f, &c);
            ensure!(
                occ == [0, c.len() - f.len()],
                "{name}: complete return word {c} to {f} has occurrences {occ:?}"
            );
        }
    }

    // Durand fixed points against scanned derived words, for prefixes.
    for case in 0..CASES {
        let (name, rules, text) = &texts[case % 2];
        let n = rng.gen_range(1..=60);
        let prefix = &text[..n];
        let mut o = oracle(Morphism::parse(rules).unwrap());
        let c = durand_substitution(&w(&o, prefix), &mut o).unwrap();
        let fp = PrefixOracle::new(c.derived().clone())
            .fixed_point_prefix(300)
            .to_string();
        let scanned = derived_word(&w(&o, prefix), &mut o, 300)
            .unwrap()
            .to_string();
        let naive = common::returns(prefix, text).1;
        ensure!(
            fp == scanned && naive.len() >= 300 && naive[..300] == fp,
            "{name}: Durand fixed point differs for prefix {prefix}"
        );
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 fixed points", fixed_points),
        ("2 return words", return_word_lists),
        ("3 derived words", derived_words),
        ("4 Durand certificates", durand_certificates),
        ("5 link morphism", link),
        ("6 semiconjugacies", semiconjugacies),
        ("7 special factors and ancestors", specials_and_ancestors),
        ("8 episturmian morphisms", episturmian),
        ("9 closure under derivation", closure_theorems),
        ("10 randomized properties", property_suites),
    ];
    let mut failed = 0;
    for (name, criterion) in criteria {
        let started = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(criterion)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!(
                "PASS  criterion {name} ({:.1}s)",
                started.elapsed().as_secs_f64()
            ),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
