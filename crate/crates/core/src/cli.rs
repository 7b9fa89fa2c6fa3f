//! The `evidential` command line.
//!
//! ```text
//! evidential combine FILE [--decimal K] [--unnormalized]
//! evidential condition FILE [--entry NAME] (--delta LABELS | --geometric SET) [--json]
//! evidential discount FILE --eps P/Q [--entry NAME] [--json]
//! evidential check --rule RULE [--general-A] [--trials N] [--seed S] [--discounted]
//!                  [--witness-dir DIR]
//! evidential check --replay WITNESS.json [--rule RULE]
//! evidential convert FILE
//! ```
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 not combinable,
//! 3 a check found a failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::axioms::{run_check, search_counterexamples_with, GeneratorConfig, SearchOptions};
use crate::combination::{dempster_combine_masses, unnormalized_combine_masses, CRuleId};
use crate::conditioning::{condition_source, discount_mass, discount_source, geometric_condition};
use crate::error::{Error, Result};
use crate::evidence::{Entry, EntryBody, EvidenceDocument};
use crate::mass::MassFunction;
use crate::rational::{parse_rational, render, to_decimal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_COMBINABLE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "evidential",
    version,
    about = "Exact Dempster-Shafer combination and C-rule checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Decimal {
    /// Also print K-digit decimal approximations.
    #[arg(long, value_name = "K")]
    decimal: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Dempster-combine every entry and print the resulting masses.
    Combine {
        file: PathBuf,
        #[command(flatten)]
        decimal: Decimal,
        /// Conjunctive sum without normalization (mass may land on {}).
        #[arg(long)]
        unnormalized: bool,
    },
    /// Bayesian conditioning on underlying labels, or geometric conditioning on a subset of theta.
    Condition {
        file: PathBuf,
        #[arg(long)]
        entry: Option<String>,
        /// Comma-separated omega labels to condition on.
        #[arg(
            long,
            value_delimiter = ',',
            required_unless_present = "geometric",
            conflicts_with = "geometric"
        )]
        delta: Option<Vec<String>>,
        /// Comma-separated elements of theta.
        #[arg(long, value_delimiter = ',')]
        geometric: Option<Vec<u32>>,
        #[command(flatten)]
        decimal: Decimal,
        /// Print the conditioned entry as an evidence document.
        #[arg(long)]
        json: bool,
    },
    /// Move a fraction eps of every entry's mass onto theta.
    Discount {
        file: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        entry: Option<String>,
        #[command(flatten)]
        decimal: Decimal,
        #[arg(long)]
        json: bool,
    },
    /// Search for counterexamples to the constraints and assumptions, or replay a witness file.
    Check {
        #[arg(long, required_unless_present = "replay")]
        rule: Option<String>,
        /// Also check assumption A on random product subsets.
        #[arg(long = "general-A")]
        general_a: bool,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Discount every generated source so theta is always focal.
        #[arg(long)]
        discounted: bool,
        /// Write each shrunk witness to DIR/RULE-AXIOM.json.
        #[arg(long, value_name = "DIR")]
        witness_dir: Option<PathBuf>,
        /// Re-run the check recorded in a witness file.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["general_a", "discounted", "witness_dir"])]
        replay: Option<PathBuf>,
    },
    /// Rewrite mass entries as canonical sources and sources as mass entries.
    Convert { file: PathBuf },
}

struct Out {
    stdout: String,
    code: i32,
}

impl Out {
    fn ok(stdout: String) -> Self {
        Out {
            stdout,
            code: EXIT_OK,
        }
    }
}

/// Runs one command. `args` excludes the program name.
pub fn run_command<I, T>(args: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv =
        std::iter::once(OsString::from("evidential")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => CommandOutput {
            code: out.code,
            stdout: out.stdout,
            stderr: String::new(),
        },
        Err(e) => CommandOutput {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(command: Command) -> Result<Out> {
    match command {
        Command::Combine {
            file,
            decimal,
            unnormalized,
        } => combine(&load(&file)?, decimal.decimal, unnormalized).map(Out::ok),
        Command::Condition {
            file,
            entry,
            delta,
            geometric,
            decimal,
            json,
        } => {
            let doc = load(&file)?;
            let e = pick(&doc, entry.as_deref())?;
            let src = e.source()?;
            let result = match (delta, geometric) {
                (Some(labels), _) => {
                    let mut members = Vec::with_capacity(labels.len());
                    for l in &labels {
                        let x = src
                            .omega()
                            .elements()
                            .iter()
                            .copied()
                            .find(|&x| src.label(x) == Some(l.as_str()))
                            .ok_or_else(|| {
                                Error::Invalid(format!(
                                    "entry {:?} has no underlying element {l:?}",
                                    e.name
                                ))
                            })?;
                        members.push(x);
                    }
                    condition_source(&src, &members.into_iter().collect())?
                }
                (None, Some(a)) => geometric_condition(&src, &a.into_iter().collect())?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let out = Entry {
                name: e.name.clone(),
                body: EntryBody::Source(result),
            };
            emit(&doc, vec![out], decimal.decimal, json).map(Out::ok)
        }
        Command::Discount {
            file,
            eps,
            entry,
            decimal,
            json,
        } => {
            let doc = load(&file)?;
            let eps = parse_rational(&eps)?;
            let chosen: Vec<&Entry> = match &entry {
                Some(name) => vec![doc.entry(name)?],
                None => doc.entries.iter().collect(),
            };
            let mut out = Vec::with_capacity(chosen.len());
            for e in chosen {
                let body = match &e.body {
                    EntryBody::Mass(m) => EntryBody::Mass(discount_mass(m, &eps)?),
                    EntryBody::Source(s) => EntryBody::Source(discount_source(s, &eps)?),
                };
                out.push(Entry {
                    name: e.name.clone(),
                    body,
                });
            }
            emit(&doc, out, decimal.decimal, json).map(Out::ok)
        }
        Command::Check {
            replay: Some(path),
            rule,
            ..
        } => replay(&path, rule.as_deref()),
        Command::Check {
            rule,
            general_a,
            trials,
            seed,
            discounted,
            witness_dir,
            replay: None,
        } => {
            let rule: CRuleId = rule.as_deref().unwrap_or_default().parse()?;
            let cfg = GeneratorConfig {
                seed,
                trials,
                discounted,
                ..Default::default()
            };
            let opts = SearchOptions {
                general_a,
                ..Default::default()
            };
            check(rule, &cfg, &opts, witness_dir.as_deref())
        }
        Command::Convert { file } => {
            let doc = load(&file)?;
            let mut converted = doc.clone();
            for e in &mut converted.entries {
                e.body = match &e.body {
                    EntryBody::Mass(m) => EntryBody::Source(crate::source::source_from_mass(m)?),
                    EntryBody::Source(s) => EntryBody::Mass(s.mass()?),
                };
            }
            Ok(Out::ok(converted.to_json()))
        }
    }
}

fn load(path: &Path) -> Result<EvidenceDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    EvidenceDocument::parse(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn pick<'a>(doc: &'a EvidenceDocument, name: Option<&str>) -> Result<&'a Entry> {
    match (name, doc.entries.as_slice()) {
        (Some(n), _) => doc.entry(n),
        (None, [only]) => Ok(only),
        (None, _) => Err(Error::Invalid(format!(
            "file has {} entries; choose one with --entry",
            doc.entries.len()
        ))),
    }
}

/// One `{set}: p/q` line per focal element, in canonical subset order.
pub fn render_masses(m: &MassFunction, decimal: Option<usize>) -> String {
    let mut s = String::new();
    for (set, w) in m.iter() {
        match decimal {
            Some(k) => writeln!(s, "{set}: {} ({})", render(w), to_decimal(w, k)),
            None => writeln!(s, "{set}: {}", render(w)),
        }
        .expect("writing to a String");
    }
    s
}

fn combine(doc: &EvidenceDocument, decimal: Option<usize>, unnormalized: bool) -> Result<String> {
    let masses = doc.masses()?;
    if masses.is_empty() {
        return Err(Error::Invalid(
            "nothing to combine: the file has no entries".into(),
        ));
    }
    let m = if unnormalized {
        unnormalized_combine_masses(&masses)?
    } else {
        dempster_combine_masses(&masses)?
    };
    Ok(render_masses(&m, decimal))
}

fn emit(
    doc: &EvidenceDocument,
    entries: Vec<Entry>,
    decimal: Option<usize>,
    json: bool,
) -> Result<String> {
    if json {
        let out = EvidenceDocument {
            theta: doc.theta.clone(),
            entries,
            witness: None,
        };
        return Ok(out.to_json());
    }
    let mut s = String::new();
    let headed = entries.len() > 1;
    for e in &entries {
        if headed {
            s.push_str(&format!("[{}]\n", e.name));
        }
        s.push_str(&render_masses(&e.mass()?, decimal));
    }
    Ok(s)
}

fn check(
    rule: CRuleId,
    cfg: &GeneratorConfig,
    opts: &SearchOptions,
    witness_dir: Option<&Path>,
) -> Result<Out> {
    let report = search_counterexamples_with(&rule, cfg, opts)?;
    let mut s = report.to_string();
    for (axiom, v) in &report.failures {
        let Some(doc) = EvidenceDocument::from_verdict(v, rule) else {
            continue;
        };
        let json = doc.to_json();
        match witness_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
                let path = dir.join(format!("{rule}-{axiom}.json"));
                std::fs::write(&path, &json)
                    .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
                writeln!(s, "witness {axiom}: {}", path.display()).expect("writing to a String");
            }
            None => {
                writeln!(s, "witness {axiom}:").expect("writing to a String");
                s.push_str(&json);
            }
        }
    }
    let code = if report.clean() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(Out { stdout: s, code })
}

fn replay(path: &Path, rule: Option<&str>) -> Result<Out> {
    let doc = load(path)?;
    let w = doc
        .witness
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("{}: no witness section", path.display())))?;
    let rule: CRuleId = match rule {
        Some(r) => r.parse()?,
        None => w.rule,
    };
    let s = doc.structure()?;
    let conditioning = doc.conditioning(&s)?;
    let v = run_check(w.axiom, &rule, &s, &conditioning)?;
    let code = if v.failed() {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    };
    Ok(Out {
        stdout: format!("{v}\n"),
        code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Subset;

    #[test]
    fn unknown_rule_is_a_parse_error() {
        let out = run_command(["check", "--rule", "bogus", "--trials", "1"]);
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stderr.contains("unknown rule"), "{}", out.stderr);
    }

    #[test]
    fn bad_flags_exit_one_and_help_exits_zero() {
        assert_eq!(run_command(["combine"]).code, EXIT_INVALID);
        assert_eq!(run_command(["frobnicate"]).code, EXIT_INVALID);
        let help = run_command(["--help"]);
        assert_eq!(help.code, EXIT_OK);
        assert!(help.stdout.contains("combine"));
    }

    #[test]
    fn missing_file_is_reported() {
        let out = run_command(["combine", "/nonexistent/evidence.json"]);
        assert_eq!(out.code, EXIT_INVALID);
        assert!(out.stderr.contains("/nonexistent/evidence.json"));
    }

    #[test]
    fn render_masses_lists_in_canonical_order() {
        let theta = crate::frame::Frame::new([1, 2]).unwrap();
        let m = MassFunction::new(
            theta,
            [
                (Subset::from([1, 2]), crate::rational::frac(1, 3)),
                (Subset::from([2]), crate::rational::frac(2, 3)),
            ],
        )
        .unwrap();
        assert_eq!(render_masses(&m, None), "{2}: 2/3\n{1,2}: 1/3\n");
        assert_eq!(
            render_masses(&m, Some(3)),
            "{2}: 2/3 (0.667)\n{1,2}: 1/3 (0.333)\n"
        );
    }
}
