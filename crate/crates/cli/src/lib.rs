//! Command dispatch for the `gl6j` binary. Every command produces one JSON
//! document; keys are sorted and rationals are `"p/q"` strings.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gl6j_core::action::{check_semi_invariant, Weight};
use gl6j_core::exec::Exec;
use gl6j_core::index::Letter;
use gl6j_core::poly::{format_rational, Monomial, Rational, SparsePoly, Variable};
use gl6j_core::seminv::{expand_with, infer_weights, parse_expr, BracketSpec, Expansion};
use gl6j_core::sixj::{build_problem_with, selection_set_with, sixj_oracle, sixj_value_with, SixJProblem, FAMILY_NAMES};
use gl6j_core::weyl::{collect_determinants, membership_check, young_overlay_with};

pub const THREADS_ENV: &str = "GL6J_THREADS";

#[derive(Debug, Parser)]
#[command(name = "gl6j", version, about = "Exact gl(n) semi-invariants and 6j-symbols")]
pub struct Cli {
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Worker threads for the data-parallel loops; 1 runs sequentially.
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a bracket expression into Z-variables.
    Expand(ExprArgs),
    /// Check that the expansion of a bracket expression is a semi-invariant.
    Check(ExprArgs),
    /// Apply a Young symmetrizer to a monomial in matrix elements.
    Overlay(OverlayArgs),
    /// List the selection set of a 6j problem.
    Selection(SixJArgs),
    /// Evaluate a 6j-symbol.
    Sixj(SixJArgs),
}

#[derive(Debug, Args)]
pub struct ExprArgs {
    #[arg(long)]
    pub n: u8,
    /// Bracket expression, e.g. `((a1 a2 b1)(b2 c1 c2))` or `(aabc)^2`.
    pub expr: String,
}

#[derive(Debug, Args)]
pub struct OverlayArgs {
    /// Highest weight, comma separated, e.g. `2,1,0`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub weight: Vec<u32>,
    /// Matrix elements `x<lower>^<upper>`, e.g. `a1^1 a2^1 a3^2`.
    pub monomial: String,
}

#[derive(Debug, Args)]
pub struct SixJArgs {
    #[arg(long)]
    pub n: u8,
    #[arg(long)]
    pub f1: String,
    #[arg(long)]
    pub f2: String,
    #[arg(long)]
    pub f3: String,
    #[arg(long)]
    pub f4: String,
    /// Also evaluate by direct differentiation.
    #[arg(long)]
    pub oracle: bool,
}

/// A finished command: the JSON document plus a one-line summary.
pub struct Report {
    pub doc: Value,
    pub summary: String,
}

fn exec_for(threads: Option<usize>) -> Exec {
    match threads {
        Some(1) => Exec::Sequential,
        _ => Exec::default(),
    }
}

pub fn run(command: &Command, threads: Option<usize>) -> Result<Report> {
    let exec = exec_for(threads);
    match command {
        Command::Expand(a) => expand_cmd(a, exec),
        Command::Check(a) => check_cmd(a, exec),
        Command::Overlay(a) => overlay_cmd(a, exec),
        Command::Selection(a) => selection_cmd(a, exec),
        Command::Sixj(a) => sixj_cmd(a, exec),
    }
}

fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn weight(w: &Weight) -> Value {
    json!(w.components())
}

fn letter_weights(spec: &BracketSpec) -> Value {
    let w = infer_weights(spec);
    json!({ "a": weight(&w[0]), "b": weight(&w[1]), "c": weight(&w[2]) })
}

fn terms(p: &SparsePoly) -> Value {
    p.terms().map(|(m, c)| json!({ "monomial": m.to_string(), "coeff": q(c) })).collect()
}

fn parse(text: &str, n: u8, what: &str) -> Result<BracketSpec> {
    parse_expr(text, n).with_context(|| format!("{what}: cannot parse `{text}`"))
}

/// A JSON integer, or its decimal string when it does not fit in 64 bits.
fn integer(decimal: &str) -> Value {
    decimal.parse::<i64>().map_or_else(|_| json!(decimal), |v| json!(v))
}

fn expansion_doc(e: &Expansion) -> Value {
    let mut poly = Vec::new();
    for terms in &e.factor_terms {
        for (z, c) in terms {
            poly.push(json!({ "zvar": z.to_string(), "coeff": integer(&c.to_string()) }));
        }
    }
    let mut doc = json!({
        "spec": e.spec.to_string(),
        "n": e.spec.n,
        "weights": letter_weights(&e.spec),
        "poly": poly,
        "powers": e.spec.factors.iter().map(|f| f.power).collect::<Vec<_>>(),
        "determinant_form": e.det_poly().to_string(),
    });
    if e.is_zero() {
        doc["warning"] = json!("zero expansion");
    }
    doc
}

fn expand_cmd(a: &ExprArgs, exec: Exec) -> Result<Report> {
    let spec = parse(&a.expr, a.n, "expression")?;
    let e = expand_with(&spec, exec)?;
    let count: usize = e.factor_terms.iter().map(Vec::len).sum();
    let summary = match e.is_zero() {
        true => format!("{spec}: zero expansion"),
        false => format!("{spec}: {count} Z-variables, {} determinant terms", e.det_poly().len()),
    };
    Ok(Report { doc: expansion_doc(&e), summary })
}

fn check_cmd(a: &ExprArgs, exec: Exec) -> Result<Report> {
    let spec = parse(&a.expr, a.n, "expression")?;
    let e = expand_with(&spec, exec)?;
    if e.is_zero() {
        bail!("{spec} expands to zero; nothing to check");
    }
    let r = check_semi_invariant(&e.det_poly(), spec.n, exec)?;
    let summary = match &r.weight {
        Some(w) => format!("{spec}: semi-invariant of weight {w}"),
        None => format!("{spec}: not a semi-invariant"),
    };
    let doc = json!({
        "spec": spec.to_string(),
        "is_semi_invariant": r.is_semi_invariant,
        "weight": r.weight.as_ref().map(weight),
    });
    Ok(Report { doc, summary })
}

/// Parses `a1^1 a2^1 a3^2`: letter, lower index, `^`, upper index.
pub fn parse_matrix_monomial(text: &str) -> Result<Monomial> {
    let mut pairs = Vec::new();
    for token in text.split_whitespace() {
        let mut chars = token.chars();
        let letter = chars.next().and_then(Letter::from_char);
        let rest = chars.as_str();
        let (Some(letter), Some((lower, upper))) = (letter, rest.split_once('^')) else {
            bail!("bad matrix element `{token}`, expected e.g. `a2^1`");
        };
        let col: u8 = lower.parse().with_context(|| format!("bad lower index in `{token}`"))?;
        let row: u8 = upper.parse().with_context(|| format!("bad upper index in `{token}`"))?;
        pairs.push((Variable::matrix(letter, row, col), 1));
    }
    if pairs.is_empty() {
        bail!("empty monomial");
    }
    Ok(Monomial::from_pairs(pairs))
}

fn overlay_cmd(a: &OverlayArgs, exec: Exec) -> Result<Report> {
    let w = Weight(a.weight.clone());
    let m = parse_matrix_monomial(&a.monomial)?;
    let p = young_overlay_with(&m, &w, exec)?;
    let collected = collect_determinants(&p, w.rank() as u8).ok();
    let member = match &collected {
        Some(c) if !c.is_zero() => Some(membership_check(c, &w)?),
        _ => None,
    };
    let summary = format!("overlay of {m} for weight {w}: {} terms", p.len());
    let doc = json!({
        "monomial": m.to_string(),
        "weight": weight(&w),
        "result": terms(&p),
        "rendered": p.to_string(),
        "determinant_form": collected.as_ref().map(ToString::to_string),
        "in_representation": member,
    });
    Ok(Report { doc, summary })
}

fn problem(a: &SixJArgs, exec: Exec) -> Result<SixJProblem> {
    let specs = [
        parse(&a.f1, a.n, "f1")?,
        parse(&a.f2, a.n, "f2")?,
        parse(&a.f3, a.n, "f3")?,
        parse(&a.f4, a.n, "f4")?,
    ];
    Ok(build_problem_with(a.n, [&specs[0], &specs[1], &specs[2], &specs[3]], exec)?)
}

fn family_weights(p: &SixJProblem) -> Value {
    let map: serde_json::Map<String, Value> =
        FAMILY_NAMES.iter().zip(&p.weights).map(|(name, w)| (name.to_string(), weight(w))).collect();
    Value::Object(map)
}

fn specs_doc(p: &SixJProblem) -> Value {
    p.expansions.iter().map(|e| e.spec.to_string()).collect()
}

fn selection_cmd(a: &SixJArgs, exec: Exec) -> Result<Report> {
    let p = problem(a, exec)?;
    let sel = selection_set_with(&p, exec);
    let supports: Vec<Vec<String>> = (0..4).map(|i| p.support(i).iter().map(|m| m.to_string()).collect()).collect();
    let doc = json!({
        "specs": specs_doc(&p),
        "weights": family_weights(&p),
        "warnings": p.warnings,
        "supports": supports,
        "selection_size": sel.len(),
        "quadruples": sel.quadruples,
    });
    let summary = format!("selection set of {} quadruples", sel.len());
    Ok(Report { doc, summary })
}

fn sixj_cmd(a: &SixJArgs, exec: Exec) -> Result<Report> {
    let p = problem(a, exec)?;
    let sel = selection_set_with(&p, exec);
    let value = sixj_value_with(&p, &sel, exec);
    let mut doc = json!({
        "specs": specs_doc(&p),
        "weights": family_weights(&p),
        "warnings": p.warnings,
        "selection_size": sel.len(),
        "value": q(&value),
    });
    let mut summary = format!("6j-symbol = {} over {} quadruples", format_rational(&value), sel.len());
    if a.oracle {
        let o = sixj_oracle(&p);
        summary.push_str(&format!(", oracle {}", format_rational(&o)));
        doc["oracle"] = q(&o);
        doc["oracle_agrees"] = json!(o == value);
    }
    for w in &p.warnings {
        summary.push_str(&format!("\nwarning: {w}"));
    }
    Ok(Report { doc, summary })
}

/// The error document: `{"error": {"kind", "message", "causes"}}`.
pub fn error_doc(err: &anyhow::Error) -> Value {
    use gl6j_core::error::Error as E;
    let kind = match err.chain().find_map(|e| e.downcast_ref::<E>()) {
        Some(E::Syntax { .. }) => "syntax",
        Some(E::Invalid(_)) => "invalid_expression",
        Some(E::RankMismatch { .. } | E::InvalidRank(_) | E::IndexOutOfRange { .. }) => "rank",
        Some(E::ZeroPolynomial) => "zero_polynomial",
        Some(E::NotCollectable) => "not_collectable",
        Some(E::Input(_)) => "input",
        None if err.chain().any(|e| e.is::<std::io::Error>()) => "io",
        None => "input",
    };
    let offset = err.chain().find_map(|e| match e.downcast_ref::<E>() {
        Some(E::Syntax { offset, .. }) => Some(*offset),
        _ => None,
    });
    let causes: Vec<String> = err.chain().skip(1).map(ToString::to_string).collect();
    json!({ "error": { "kind": kind, "message": err.to_string(), "causes": causes, "offset": offset } })
}

/// Pretty JSON with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values serialize");
    s.push('\n');
    s
}
