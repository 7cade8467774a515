use std::process::Command;

use substitutive::cli::{run, Report};

fn args(line: &str) -> Vec<String> {
    std::iter::once("substitutive".to_owned())
        .chain(line.split_whitespace().map(str::to_owned))
        .collect()
}

fn ok(line: &str) -> String {
    let out = run(args(line));
    assert_eq!(out.status, 0, "{line}: {}", out.stderr);
    out.stdout
}

#[test]
fn reference_invocations() {
    assert_eq!(ok("fixpoint pd --len 20"), "abaaabababaaabaaabaa");
    assert_eq!(ok("derive pd --factor aa --len 6"), "010202");
    let durand = ok("durand pd --prefix a");
    assert_eq!(durand.lines().next(), Some("0->011;1->0"));
    assert!(durand.contains("phi(r0) = abaa = r0 r1 r1"));
    assert!(durand.contains("phi(r1) = ab = r0"));
    assert_eq!(ok("fixpoint trib --len 21"), "abacabaabacababacabaa");
    assert_eq!(ok("fixpoint xi --len 13"), "0110001101101");
    assert_eq!(
        ok("link pd --factor aa").lines().next(),
        Some("0->01;1->02")
    );
}

#[test]
fn rule_literals_and_letters() {
    assert_eq!(ok("fixpoint a->ab;b->aa --len 8"), "abaaabab");
    assert_eq!(ok("fixpoint a->aab;b->bba --letter b --len 6"), "bbabba");
    assert_eq!(ok("fixpoint epi:ab --len 8"), "abaababa");
}

#[test]
fn json_and_text_carry_the_same_report() {
    for line in [
        "fixpoint pd --len 30",
        "returns pd --factor aa",
        "derive nu --factor 0 --len 40",
        "durand pd --prefix ab",
        "link pd --factor b",
        "special pd --factor aa",
        "special trib --max-factor-len 6",
        "ancestors pd --factor aba",
        "epi abc",
        "epi ab --verify --max-factor-len 10 --horizon 300",
        "closure xi nu --max-factor-len 10 --horizon 300",
        "closure pd --max-factor-len 8 --horizon 200 --no-reduction",
        "verify-paper --max-factor-len 10 --horizon 300",
    ] {
        let text = run(args(line));
        let json = run(args(&format!("{line} --json")));
        assert_eq!(text.status, json.status, "{line}");
        let report: Report =
            serde_json::from_str(&json.stdout).unwrap_or_else(|e| panic!("{line}: {e}"));
        assert_eq!(report.render_text(), text.stdout, "{line}");
        assert_eq!(report.to_json(), json.stdout, "{line}");
    }
}

#[test]
fn exit_statuses() {
    assert_eq!(run(args("fixpoint pd --len x")).status, 2);
    assert_eq!(run(args("derive pd")).status, 2);
    assert_eq!(run(args("frobnicate")).status, 2);
    assert_eq!(run(args("fixpoint nosuch")).status, 2);
    assert_eq!(run(args("durand pd --prefix aa")).status, 2);
    assert_eq!(run(args("returns pd --factor bb")).status, 2);
    assert_eq!(run(args("epi a@ab")).status, 2);
    assert_eq!(run(args("closure eta")).status, 2);

    let failed = run(args("closure pd --max-factor-len 10 --horizon 300"));
    assert_eq!(failed.status, 1);
    assert!(
        failed
            .stdout
            .ends_with("has unmatched derived word 01100011011011000110…"),
        "{}",
        failed.stdout
    );
    assert!(failed.stdout.contains("factor a of a->ab;b->aa@a"));
    assert_eq!(run(args("--help")).status, 0);
}

#[test]
fn verify_paper_is_deterministic() {
    let first = run(args("verify-paper --max-factor-len 12 --horizon 300"));
    let second = run(args("verify-paper --max-factor-len 12 --horizon 300"));
    assert_eq!(first, second);
    assert_eq!(first.status, 0, "{}", first.stdout);
}

#[test]
fn binary_runs_the_reference_checks() {
    let bin = env!("CARGO_BIN_EXE_substitutive");
    let out = Command::new(bin).args(["verify-paper"]).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{stdout}");
    assert!(stdout.lines().all(|l| !l.starts_with("FAIL")));
    assert!(stdout.trim_end().ends_with("checks passed"));
    let again = Command::new(bin).args(["verify-paper"]).output().unwrap();
    assert_eq!(String::from_utf8(again.stdout).unwrap(), stdout);

    let out = Command::new(bin)
        .args(["fixpoint", "pd", "--len", "20"])
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "abaaabababaaabaaabaa\n"
    );
    let out = Command::new(bin)
        .args(["durand", "pd", "--prefix", "aa"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("not a prefix"));
    let out = Command::new(bin)
        .args(["closure", "pd", "--max-factor-len", "8", "--horizon", "200"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
