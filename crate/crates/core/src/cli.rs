//! Command-line front end.
//!
//! Every subcommand produces a [`Report`], rendered either as text or, with
//! `--json`, as its serde encoding. Exit status is 0 on success, 1 when a
//! check fails and 2 when the arguments are invalid.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::analysis::{self, SpecialKind};
use crate::catalogue::{reference_checks, Check};
use crate::closure::{self, ClosureParams, ClosureReport, FactorSelection};
use crate::derivation;
use crate::episturmian::family;
use crate::error::Result;
use crate::morphism::{Morphism, PrefixOracle, ScanPolicy, Substitution};
use crate::registry;
use crate::returns;
use crate::word::{show, Word};

#[derive(Debug, Parser)]
#[command(
    name = "substitutive",
    version,
    about = "Return words and derived words of substitutive words"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Longest prefix the scanner may generate.
    #[arg(long, global = true, default_value_t = ScanPolicy::default().budget)]
    pub budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

/// A morphism (registry name, `epi:<z>` or rule literal) and its letter.
#[derive(Debug, Args)]
pub struct Source {
    /// `pd`, `xi`, `nu`, `eta`, `trib`, `epi:<z>` or rules like `a->ab;b->aa`.
    pub morphism: String,
    /// Prolongable letter whose fixed point is used; defaults to the first.
    #[arg(long)]
    pub letter: Option<char>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prefix of the fixed point.
    Fixpoint {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        len: usize,
    },
    /// Return words to a factor.
    Returns {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        factor: String,
    },
    /// Prefix of the derived word of a factor.
    Derive {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        factor: String,
        #[arg(long, default_value_t = 20)]
        len: usize,
    },
    /// Durand's derived substitution for a prefix.
    Durand {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        prefix: String,
    },
    /// The morphism linking the derived words of `pw` and `w`.
    Link {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        factor: String,
    },
    /// Special-factor class of a factor, or all bispecial factors.
    Special {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        factor: Option<String>,
        /// Longest bispecial factor listed when no factor is given.
        #[arg(long, default_value_t = 7)]
        max_factor_len: usize,
    },
    /// Ancestors of a factor.
    Ancestors {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        factor: String,
    },
    /// The family `{L_cyc^k(z)}` of a subscript word `z` (or `z@alphabet`).
    Epi {
        subscript: String,
        /// Also check that the family is closed under derivation.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Check that a set of substitutions is closed under derivation.
    Closure {
        #[arg(required = true)]
        members: Vec<String>,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Recompute every reference value and print a pass/fail table.
    VerifyPaper {
        #[command(flatten)]
        closure: ClosureArgs,
    },
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[arg(long, default_value_t = ClosureParams::default().max_factor_len)]
    pub max_factor_len: usize,
    #[arg(long, default_value_t = ClosureParams::default().horizon)]
    pub horizon: usize,
    /// Check every factor instead of the right special prefixes and bispecials.
    #[arg(long)]
    pub no_reduction: bool,
}

impl ClosureArgs {
    fn params(&self, policy: ScanPolicy) -> ClosureParams {
        let selection = if self.no_reduction {
            FactorSelection::All
        } else {
            FactorSelection::Reduced
        };
        ClosureParams {
            max_factor_len: self.max_factor_len,
            horizon: self.horizon,
            policy,
            selection,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedWord {
    pub name: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub word: String,
    pub image: String,
    pub parts: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AncestorEntry {
    pub word: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyEntry {
    pub subscript: String,
    pub shifts: Vec<usize>,
    pub rules: String,
    pub primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureEntry {
    pub source: String,
    pub factor: String,
    pub derived_prefix: String,
    pub member: Option<String>,
    pub renaming: Option<String>,
    pub method: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSummary {
    pub members: Vec<String>,
    pub max_factor_len: usize,
    pub horizon: usize,
    pub selection: String,
    pub entries: Vec<ClosureEntry>,
    pub failures: Vec<NamedWord>,
    pub verified: bool,
    pub verdict: String,
}

impl From<&ClosureReport> for ClosureSummary {
    fn from(r: &ClosureReport) -> Self {
        ClosureSummary {
            members: r.members.clone(),
            max_factor_len: r.max_factor_len,
            horizon: r.horizon,
            selection: format!("{:?}", r.selection).to_lowercase(),
            entries: r
                .entries
                .iter()
                .map(|e| ClosureEntry {
                    source: e.source.clone(),
                    factor: show(&e.factor),
                    derived_prefix: e.derived.prefix(20).to_string(),
                    member: e
                        .matched
                        .as_ref()
                        .map(|m| format!("{}@{}", m.member, m.letter)),
                    renaming: e.matched.as_ref().map(|m| m.renaming.to_string()),
                    method: e
                        .matched
                        .as_ref()
                        .map(|m| format!("{:?}", m.method).to_lowercase()),
                })
                .collect(),
            failures: r
                .failures
                .iter()
                .map(|f| NamedWord {
                    name: show(&f.factor),
                    word: f.error.clone(),
                })
                .collect(),
            verified: r.verdict.is_verified(),
            verdict: r.verdict.to_string(),
        }
    }
}

/// Data produced by one subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Fixpoint {
        morphism: String,
        letter: char,
        prefix: String,
    },
    Returns {
        morphism: String,
        letter: char,
        factor: String,
        skip_prefix: String,
        returns: Vec<String>,
        derived_prefix: String,
        stable: bool,
        scan_length: usize,
    },
    Derive {
        morphism: String,
        letter: char,
        factor: String,
        derived: String,
    },
    Durand {
        morphism: String,
        letter: char,
        prefix: String,
        returns: Vec<String>,
        splits: Vec<Split>,
        derived: String,
    },
    Link {
        morphism: String,
        letter: char,
        factor: String,
        skip: String,
        prefix_returns: Vec<String>,
        factor_returns: Vec<String>,
        splits: Vec<Split>,
        link: String,
    },
    Special {
        factor: String,
        kind: String,
        left: String,
        right: String,
        stable: bool,
        scan_length: usize,
    },
    Bispecial {
        max_factor_len: usize,
        factors: Vec<String>,
        stable: bool,
        scan_length: usize,
    },
    Ancestors {
        factor: String,
        ancestors: Vec<AncestorEntry>,
        ambiguous: bool,
        witnesses: Vec<String>,
    },
    Epi {
        subscript: String,
        members: Vec<FamilyEntry>,
        closure: Option<ClosureSummary>,
    },
    Closure(ClosureSummary),
    Checks {
        checks: Vec<Check>,
    },
}

impl Report {
    /// Whether the report records a failed check.
    pub fn failed(&self) -> bool {
        match self {
            Report::Closure(c) => !c.verified,
            Report::Epi {
                closure: Some(c), ..
            } => !c.verified,
            Report::Checks { checks } => checks.iter().any(|c| !c.passed),
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Fixpoint { prefix, .. } => s.push_str(prefix),
            Report::Derive { derived, .. } => s.push_str(derived),
            Report::Returns {
                morphism,
                letter,
                factor,
                skip_prefix,
                returns,
                derived_prefix,
                stable,
                scan_length,
            } => {
                let _ = writeln!(s, "fixed point of {morphism} from {letter}");
                let _ = writeln!(s, "factor: {factor}");
                let _ = writeln!(s, "skip prefix: {skip_prefix}");
                for (i, r) in returns.iter().enumerate() {
                    let _ = writeln!(s, "r{i} = {r}");
                }
                let _ = writeln!(s, "derived prefix: {derived_prefix}");
                let _ = write!(s, "stable: {stable} (scanned {scan_length} letters)");
            }
            Report::Durand {
                morphism,
                letter,
                prefix,
                returns,
                splits,
                derived,
            } => {
                let _ = writeln!(s, "{derived}");
                let _ = writeln!(
                    s,
                    "fixed point of {morphism} from {letter}, prefix {prefix}"
                );
                for (i, r) in returns.iter().enumerate() {
                    let _ = writeln!(s, "r{i} = {r}");
                }
                render_splits(&mut s, |i| format!("phi(r{i})"), splits);
            }
            Report::Link {
                morphism,
                letter,
                factor,
                skip,
                prefix_returns,
                factor_returns,
                splits,
                link,
            } => {
                let _ = writeln!(s, "{link}");
                let _ = writeln!(
                    s,
                    "fixed point of {morphism} from {letter}, factor {factor}, p = {skip}"
                );
                for (i, r) in prefix_returns.iter().enumerate() {
                    let _ = writeln!(s, "return to pw: r{i} = {r}");
                }
                for (i, r) in factor_returns.iter().enumerate() {
                    let _ = writeln!(s, "return to w: r{i} = {r}");
                }
                render_splits(&mut s, |i| format!("p^-1 r{i} p"), splits);
            }
            Report::Special {
                factor,
                kind,
                left,
                right,
                stable,
                scan_length,
            } => {
                let _ = writeln!(s, "{factor}: {kind}");
                let _ = writeln!(s, "left extensions: {left}");
                let _ = writeln!(s, "right extensions: {right}");
                let _ = write!(s, "stable: {stable} (scanned {scan_length} letters)");
            }
            Report::Bispecial {
                max_factor_len,
                factors,
                stable,
                scan_length,
            } => {
                let _ = writeln!(s, "bispecial factors up to length {max_factor_len}:");
                for f in factors {
                    let _ = writeln!(s, "  {f}");
                }
                let _ = write!(s, "stable: {stable} (scanned {scan_length} letters)");
            }
            Report::Ancestors {
                factor,
                ancestors,
                ambiguous,
                witnesses,
            } => {
                let _ = writeln!(s, "ancestors of {factor}:");
                for a in ancestors {
                    let _ = writeln!(s, "  {} (y = {}, y' = {})", a.word, a.left, a.right);
                }
                let _ = write!(s, "ambiguous: {ambiguous}");
                if !witnesses.is_empty() {
                    let _ = write!(s, " ({})", witnesses.join(", "));
                }
            }
            Report::Epi {
                subscript,
                members,
                closure,
            } => {
                let _ = writeln!(s, "family of {subscript}:");
                for m in members {
                    let shifts: Vec<String> = m.shifts.iter().map(ToString::to_string).collect();
                    let _ = writeln!(
                        s,
                        "  L_{} = {} (k = {}, primitive: {})",
                        m.subscript,
                        m.rules,
                        shifts.join(","),
                        m.primitive
                    );
                }
                if let Some(c) = closure {
                    render_closure(&mut s, c);
                }
            }
            Report::Closure(c) => render_closure(&mut s, c),
            Report::Checks { checks } => {
                for c in checks {
                    let _ = writeln!(
                        s,
                        "{}  {}: {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
                let passed = checks.iter().filter(|c| c.passed).count();
                let _ = write!(s, "{passed}/{} checks passed", checks.len());
            }
        }
        s
    }
}

fn render_splits(s: &mut String, lhs: impl Fn(usize) -> String, splits: &[Split]) {
    for (i, sp) in splits.iter().enumerate() {
        let parts: Vec<String> = sp.parts.iter().map(|j| format!("r{j}")).collect();
        let _ = writeln!(s, "{} = {} = {}", lhs(i), sp.image, parts.join(" "));
    }
    if s.ends_with('\n') {
        s.pop();
    }
}

fn render_closure(s: &mut String, c: &ClosureSummary) {
    let _ = writeln!(s, "members: {}", c.members.join(" | "));
    let _ = writeln!(
        s,
        "selection: {}, L = {}, N = {}",
        c.selection, c.max_factor_len, c.horizon
    );
    for e in &c.entries {
        match (&e.member, &e.renaming, &e.method) {
            (Some(m), Some(r), Some(how)) => {
                let _ = writeln!(
                    s,
                    "  {} {}: {}… fixed by {m} via {r} ({how})",
                    e.source, e.factor, e.derived_prefix
                );
            }
            _ => {
                let _ = writeln!(
                    s,
                    "  {} {}: {}… unmatched",
                    e.source, e.factor, e.derived_prefix
                );
            }
        }
    }
    for f in &c.failures {
        let _ = writeln!(s, "  failed on {}: {}", f.name, f.word);
    }
    let _ = write!(s, "{}", c.verdict);
}

/// Rendered output and exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    status: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    status: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let stdout = if cli.json {
                report.to_json()
            } else {
                report.render_text()
            };
            let stderr = match &report {
                Report::Checks { checks } => checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| format!("failed check: {}\n", c.name))
                    .collect(),
                _ if report.failed() => "check failed\n".to_owned(),
                _ => String::new(),
            };
            Outcome {
                status: i32::from(report.failed()),
                stdout,
                stderr,
            }
        }
        Err(e) => Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn oracle(source: &Source) -> Result<PrefixOracle> {
    let m = registry::resolve(&source.morphism)?;
    let sub = match source.letter {
        Some(c) => Substitution::with_letter(m, c)?,
        None => Substitution::first(m)?,
    };
    Ok(PrefixOracle::new(sub))
}

fn parse_factor(oracle: &PrefixOracle, text: &str) -> Result<Word> {
    let text = if text == "ε" { "" } else { text };
    Word::parse(oracle.substitution().domain(), text)
}

fn splits(words: &[Word], images: &[Word], decompositions: &[Vec<usize>]) -> Vec<Split> {
    words
        .iter()
        .zip(images)
        .zip(decompositions)
        .map(|((w, img), parts)| Split {
            word: w.to_string(),
            image: img.to_string(),
            parts: parts.clone(),
        })
        .collect()
}

fn kind_name(kind: SpecialKind) -> &'static str {
    match kind {
        SpecialKind::None => "not special",
        SpecialKind::LeftSpecial => "left special",
        SpecialKind::RightSpecial => "right special",
        SpecialKind::Bispecial => "bispecial",
    }
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Report> {
    let policy = ScanPolicy {
        budget: cli.budget,
        ..ScanPolicy::default()
    };
    let describe = |o: &PrefixOracle| (o.substitution().rules(), o.substitution().letter_char());
    Ok(match &cli.command {
        Command::Fixpoint { source, len } => {
            let mut o = oracle(source)?;
            let (morphism, letter) = describe(&o);
            Report::Fixpoint {
                morphism,
                letter,
                prefix: o.fixed_point_prefix(*len).to_string(),
            }
        }
        Command::Returns { source, factor } => {
            let mut o = oracle(source)?;
            let w = parse_factor(&o, factor)?;
            let rs = returns::return_words(&w, &mut o, policy)?;
            let (morphism, letter) = describe(&o);
            Report::Returns {
                morphism,
                letter,
                factor: show(&w),
                skip_prefix: show(rs.skip_prefix()),
                returns: rs.returns().iter().map(ToString::to_string).collect(),
                derived_prefix: rs.derived().prefix(40).to_string(),
                stable: rs.is_stable(),
                scan_length: rs.scan_length(),
            }
        }
        Command::Derive {
            source,
            factor,
            len,
        } => {
            let mut o = oracle(source)?;
            let w = parse_factor(&o, factor)?;
            let d = returns::derived_word_with(&w, &mut o, *len, policy)?;
            let (morphism, letter) = describe(&o);
            Report::Derive {
                morphism,
                letter,
                factor: show(&w),
                derived: d.prefix(*len).to_string(),
            }
        }
        Command::Durand { source, prefix } => {
            let mut o = oracle(source)?;
            let w = parse_factor(&o, prefix)?;
            let c = derivation::durand_substitution_with(&w, &mut o, policy)?;
            let r = c.returns().returns();
            let images = r
                .iter()
                .map(|x| c.source().apply(x))
                .collect::<Result<Vec<_>>>()?;
            let (morphism, letter) = describe(&o);
            Report::Durand {
                morphism,
                letter,
                prefix: w.to_string(),
                returns: r.iter().map(ToString::to_string).collect(),
                splits: splits(r, &images, c.decompositions()),
                derived: c.derived().rules(),
            }
        }
        Command::Link { source, factor } => {
            let mut o = oracle(source)?;
            let w = parse_factor(&o, factor)?;
            let l = derivation::link_morphism_with(&w, &mut o, policy)?;
            let r = l.prefix_returns().returns();
            let images: Vec<Word> = r
                .iter()
                .map(|x| {
                    let mut v = x.symbols().to_vec();
                    v.extend_from_slice(l.skip().symbols());
                    Word::new(x.alphabet().clone(), v[l.skip().len()..].to_vec())
                })
                .collect::<Result<_>>()?;
            let (morphism, letter) = describe(&o);
            Report::Link {
                morphism,
                letter,
                factor: w.to_string(),
                skip: show(l.skip()),
                prefix_returns: r.iter().map(ToString::to_string).collect(),
                factor_returns: l
                    .factor_returns()
                    .returns()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
                splits: splits(r, &images, l.decompositions()),
                link: l.morphism().rules(),
            }
        }
        Command::Special {
            source,
            factor: Some(factor),
            ..
        } => {
            let mut o = oracle(source)?;
            let w = parse_factor(&o, factor)?;
            let c = analysis::classify_special(&w, &mut o, policy)?;
            Report::Special {
                factor: show(&c.factor),
                kind: kind_name(c.kind).into(),
                left: c.left,
                right: c.right,
                stable: c.stable,
                scan_length: c.scan_length,
            }
        }
        Command::Special {
            source,
            factor: None,
            max_factor_len,
        } => {
            let mut o = oracle(source)?;
            let scan = analysis::scan_language(&mut o, *max_factor_len, policy);
            Report::Bispecial {
                max_factor_len: *max_factor_len,
                factors: scan.bispecial().iter().map(show).collect(),
                stable: scan.is_stable(),
                scan_length: scan.scan_length(),
            }
        }
        Command::Ancestors { source, factor } => {
            let mut o = oracle(source)?;
            let w = parse_factor(&o, factor)?;
            let r = analysis::ancestors(&w, &mut o, policy)?;
            Report::Ancestors {
                factor: show(&r.factor),
                ancestors: r
                    .ancestors
                    .iter()
                    .map(|a| AncestorEntry {
                        word: a.word.to_string(),
                        left: show(&a.left),
                        right: show(&a.right),
                    })
                    .collect(),
                ambiguous: r.ambiguous,
                witnesses: r
                    .ambiguous_witnesses
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            }
        }
        Command::Epi {
            subscript,
            verify,
            closure,
        } => {
            let z = registry::parse_epi_word(subscript)?;
            let members = family(&z)?
                .into_iter()
                .map(|m| FamilyEntry {
                    subscript: m.subscript.to_string(),
                    shifts: m.shifts,
                    primitive: m.morphism.is_primitive(),
                    rules: m.morphism.rules(),
                })
                .collect();
            let closure = if *verify {
                let report = closure::verify_family_theorem(&z, &closure.params(policy))?;
                let mut summary = ClosureSummary::from(&report.closure);
                if !report.is_verified() {
                    summary.verified = false;
                }
                Some(summary)
            } else {
                None
            };
            Report::Epi {
                subscript: z.word().to_string(),
                members,
                closure,
            }
        }
        Command::Closure { members, closure } => {
            let members = members
                .iter()
                .map(|m| registry::resolve(m))
                .collect::<Result<Vec<Morphism>>>()?;
            let report = closure::check_closed(&members, &closure.params(policy))?;
            Report::Closure(ClosureSummary::from(&report))
        }
        Command::VerifyPaper { closure } => Report::Checks {
            checks: reference_checks(&closure.params(policy)),
        },
    })
}
