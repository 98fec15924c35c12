//! The subcommands. Each returns the process exit code, or an error that
//! `main` reports with exit code 2.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use qopt_core::{
    decide_with_context, default_alphabet, encode_min_models, optimal, oracle_check, outcomes,
    parse_problem, render_problem, render_rule_body, satisfaction_degree, union, Alphabet, Atom,
    EnumLimits, Interpretation, Problem,
};

use crate::report::VerdictReport;
use crate::{Common, EquivalenceArgs};

const MAX_ATOMS_VAR: &str = "QOPT_MAX_ATOMS";

fn read_problem(path: &Path) -> Result<Problem> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_problem(&text).with_context(|| format!("{}", path.display()))
}

fn parse_atoms(names: &[String]) -> Result<Vec<Atom>> {
    names
        .iter()
        .map(|n| n.trim())
        .filter(|n| !n.is_empty())
        .map(|n| Atom::new(n).map_err(anyhow::Error::from))
        .collect()
}

fn limits() -> Result<EnumLimits> {
    match std::env::var(MAX_ATOMS_VAR) {
        Ok(v) => {
            let cap: usize = v.trim().parse().with_context(|| {
                format!("{MAX_ATOMS_VAR} must be a non-negative integer, got {v:?}")
            })?;
            Ok(EnumLimits::uniform(cap))
        }
        Err(_) => Ok(EnumLimits::default()),
    }
}

/// The atoms of all inputs plus any `--alphabet` extras.
fn alphabet<'a>(
    problems: impl IntoIterator<Item = &'a Problem>,
    extra: &[String],
) -> Result<Alphabet> {
    Ok(default_alphabet(problems)
        .extended(parse_atoms(extra)?)
        .with_limits(limits()?))
}

/// Smaller interpretations first, then lexicographically.
fn sorted<'a>(set: impl IntoIterator<Item = &'a Interpretation>) -> Vec<&'a Interpretation> {
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    v
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn lines<'a>(set: impl IntoIterator<Item = &'a Interpretation>) -> String {
    sorted(set).into_iter().map(|i| format!("{i}\n")).collect()
}

pub fn evaluate(files: &[PathBuf], common: &Common, optimal_only: bool) -> Result<ExitCode> {
    let problems = files
        .iter()
        .map(|f| read_problem(f))
        .collect::<Result<Vec<_>>>()?;
    let a = alphabet(&problems, &common.alphabet)?;
    let p = problems
        .iter()
        .fold(Problem::empty(), |acc, q| union(&acc, q));
    let m = common.semantics.into();
    let set = if optimal_only {
        optimal(&p, m, &a)?
    } else {
        outcomes(&p, m, &a)?
    };
    emit(&lines(&set.members))?;
    Ok(ExitCode::SUCCESS)
}

pub fn degrees(file: &Path, interp: &str) -> Result<ExitCode> {
    let p = read_problem(file)?;
    let names: Vec<String> = if interp.trim() == "{}" {
        Vec::new()
    } else {
        interp.split(',').map(str::to_owned).collect()
    };
    let i = Interpretation::new(parse_atoms(&names)?);
    let mut out = String::new();
    for r in p.selector.rules() {
        out.push_str(&format!(
            "{}\t{}\t{}\n",
            r.rank(),
            render_rule_body(r),
            satisfaction_degree(&i, r)
        ));
    }
    emit(&out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn compare(
    file1: &Path,
    file2: &Path,
    eq: &EquivalenceArgs,
    witness: bool,
    json: bool,
) -> Result<ExitCode> {
    let p = read_problem(file1)?;
    let q = read_problem(file2)?;
    let a = alphabet([&p, &q], &eq.common.alphabet)?;
    let mode = eq.mode();
    let m = eq.common.semantics.into();
    let v = decide_with_context(&p, &q, mode, m, &a)?;
    let out = if json {
        let mut s = serde_json::to_string_pretty(&VerdictReport::new(mode, m, &v))?;
        s.push('\n');
        s
    } else {
        let mut s = String::from(if v.equivalent {
            "equivalent\n"
        } else {
            "not equivalent\n"
        });
        if witness && !v.equivalent {
            if let Some(c) = v.failed_condition {
                s.push_str(&format!("condition: {c}\n"));
            }
            if let Some(w) = &v.witness {
                s.push_str(&format!("witness: {w}\n"));
            }
            match &v.separating_context {
                Some(ctx) => {
                    s.push_str("context:\n");
                    s.push_str(&render_problem(ctx));
                }
                None => s.push_str("context: none found\n"),
            }
        }
        s
    };
    emit(&out)?;
    Ok(if v.equivalent {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn oracle(
    file1: &Path,
    file2: &Path,
    eq: &EquivalenceArgs,
    budget: usize,
    seed: u64,
) -> Result<ExitCode> {
    let p = read_problem(file1)?;
    let q = read_problem(file2)?;
    let a = alphabet([&p, &q], &eq.common.alphabet)?;
    let report = oracle_check(
        &p,
        &q,
        eq.mode(),
        eq.common.semantics.into(),
        &a,
        budget,
        seed,
    )?;
    let mut s = format!(
        "agreed: {}\nchecked: {}\n",
        if report.agreed { "yes" } else { "no" },
        report.checked
    );
    if let Some(d) = &report.first_disagreement {
        s.push_str(&format!(
            "gadget: {}\ncontext:\n{}",
            d.tag,
            render_problem(&d.context)
        ));
        s.push_str("optimal (first):\n");
        s.push_str(&lines(&d.left.members));
        s.push_str("optimal (second):\n");
        s.push_str(&lines(&d.right.members));
    }
    emit(&s)?;
    Ok(if report.agreed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

pub fn encode(file: &Path, extra: &[String]) -> Result<ExitCode> {
    let p = read_problem(file)?;
    if !p.selector.is_empty() {
        bail!(
            "{}: the input must be a theory without preference rules",
            file.display()
        );
    }
    let universe = parse_atoms(extra)?.into_iter().collect();
    let enc = encode_min_models(&p.generator, Some(&universe))?;
    emit(&render_problem(&enc.problem))?;
    Ok(ExitCode::SUCCESS)
}
