use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use qelab::identities::{level, prove_identity_with, Fragment, ProveOptions, Verdict};
use qelab::prop::is_tautology;
use qelab::qe::{decide_with, eliminate_with, matrix, QeOptions, TheoryId};
use qelab::syntax::parse_equation;
use qelab::{parse_formula, parse_term, Error, Signature};

const EXIT_FALSE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_SIZE: u8 = 4;

/// Quantifier elimination and decision procedures for order and addition
/// theories, and identity checking over the positive reals.
///
/// Exit status: 0 true/proved/numeric-only, 1 false/disproved, 2 parse or
/// signature error, 3 unsupported theory or feature, 4 size cap exceeded.
#[derive(Parser)]
#[command(name = "qelab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print one JSON object {command, input, result, elapsed_ms}.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample points for numeric identity checks.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,
    /// Fail with exit 4 when a disjunctive normal form exceeds this many clauses.
    #[arg(long, global = true)]
    max_clauses: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a quantifier-free equivalent of a formula.
    Qe {
        /// dlo, zdiscrete, ndiscrete, divgroup, zmod, npres, zpres or qlin.
        #[arg(long, visible_alias = "sig")]
        theory: String,
        /// Formula text, or `-` for standard input.
        formula: String,
    },
    /// Decide a sentence; `prop` decides propositional tautologies.
    Decide {
        #[arg(long, visible_alias = "sig")]
        theory: String,
        formula: String,
    },
    /// Prove or refute an identity `lhs = rhs` (one argument) or `lhs rhs`.
    ProveId {
        /// plus, times, exp1, plustimes, timesexp or hsa.
        #[arg(long, visible_alias = "theory")]
        sig: String,
        #[arg(num_args = 1..=2, required = true)]
        terms: Vec<String>,
    },
    /// Print the level (1, 2, or 3 for anything higher) of a {1,+,*,^} term.
    Level { term: String },
    /// List the axioms of a theory.
    Axioms {
        #[arg(long, visible_alias = "sig")]
        theory: String,
        /// Instantiate schemas at this index instead of printing them symbolically.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Print the axiomatizability matrix of the number structures.
    ///
    /// ✓ axiomatizable, × not recursively axiomatizable, – not applicable,
    /// ? open: the real exponential field is axiomatizable exactly when
    /// the weak Schanuel conjecture holds (Macintyre–Wilkie).
    Matrix,
}

struct Outcome {
    text: String,
    result: Json,
    code: u8,
}

impl Outcome {
    fn ok(text: String, result: Json) -> Outcome {
        Outcome { text, result, code: 0 }
    }
}

fn read_input(text: &str) -> Result<String, Error> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut buf = String::new();
    std::io::stdin()
        .read_to_string(&mut buf)
        .map_err(|e| Error::Precondition(format!("cannot read standard input: {e}")))?;
    Ok(buf.trim().to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::Signature { .. }
        | Error::SignatureMismatch { .. }
        | Error::NotASentence(_)
        | Error::NonLinear(_)
        | Error::NotPropositional(_) => EXIT_INPUT,
        Error::Size { .. } => EXIT_SIZE,
        _ => EXIT_UNSUPPORTED,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Signature { .. } | Error::SignatureMismatch { .. } => "signature",
        Error::NotASentence(_) => "not-a-sentence",
        Error::NonLinear(_) => "non-linear",
        Error::Size { .. } => "size",
        Error::Overflow => "overflow",
        _ => "unsupported",
    }
}

fn qe_options(cli: &Cli) -> QeOptions {
    match cli.max_clauses {
        Some(n) => QeOptions::with_max_clauses(n),
        None => QeOptions::default(),
    }
}

fn verdict_json(v: &Verdict) -> Json {
    match v {
        Verdict::Proved => json!({ "verdict": "proved" }),
        Verdict::Disproved { assignment, lhs, rhs } => json!({
            "verdict": "disproved",
            "assignment": assignment.iter().map(|(k, q)| (k.clone(), json!(q.to_string()))).collect::<serde_json::Map<_, _>>(),
            "lhs": lhs.to_string(),
            "rhs": rhs.to_string(),
        }),
        Verdict::NumericOnly { trials, tol } => json!({ "verdict": "numeric-only", "trials": trials, "tol": tol }),
    }
}

fn run(cli: &Cli, input: &str) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Qe { theory, .. } => {
            let th: TheoryId = theory.parse()?;
            let f = parse_formula(input, &th.signature())?;
            let out = eliminate_with(th, &f, &qe_options(cli))?.to_string();
            Ok(Outcome::ok(out.clone(), json!(out)))
        }
        Command::Decide { theory, .. } => {
            let truth = if theory == "prop" {
                is_tautology(&parse_formula(input, &Signature::propositional())?)?
            } else {
                let th: TheoryId = theory.parse()?;
                decide_with(th, &parse_formula(input, &th.signature())?, &qe_options(cli))?
            };
            let code = if truth { 0 } else { EXIT_FALSE };
            Ok(Outcome { text: truth.to_string(), result: json!(truth), code })
        }
        Command::ProveId { sig, terms } => {
            let fragment: Fragment = sig.parse()?;
            let any = Signature::permissive();
            let (lhs, rhs) = match terms.as_slice() {
                [_] => parse_equation(input, &any)?,
                [_, r] => (parse_term(input, &any)?, parse_term(&read_input(r)?, &any)?),
                _ => unreachable!("clap enforces one or two terms"),
            };
            let opts = ProveOptions { trials: cli.trials, seed: cli.seed, ..ProveOptions::default() };
            let v = prove_identity_with(fragment, &lhs, &rhs, &opts)?;
            let code = if v.is_disproved() { EXIT_FALSE } else { 0 };
            Ok(Outcome { text: v.to_string(), result: verdict_json(&v), code })
        }
        Command::Level { .. } => {
            let t = parse_term(input, &Fragment::Hsa.signature())?;
            let l = level(&t);
            Ok(Outcome::ok(l.to_string(), json!(l)))
        }
        Command::Axioms { theory, n } => {
            let th: TheoryId = theory.parse()?;
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for ax in th.axioms() {
                let text = match (n, ax.min_index) {
                    (Some(n), Some(min)) if *n < min => continue,
                    (Some(n), Some(_)) => ax.text(*n),
                    _ => ax.schema_text(),
                };
                let label = match (ax.min_index, n) {
                    (Some(min), None) => format!("{} (n >= {min})", ax.name),
                    (Some(_), Some(n)) => format!("{} (n = {n})", ax.name),
                    (None, _) => ax.name.to_string(),
                };
                lines.push(format!("{label}: {text}"));
                items.push(json!({ "name": ax.name, "schema": ax.is_schema(), "text": text }));
            }
            let header = format!("{} {}", th.name(), th.structure());
            Ok(Outcome::ok(
                format!("{header}\n{}", lines.join("\n")),
                json!({ "theory": th.name(), "structure": th.structure(), "axioms": items }),
            ))
        }
        Command::Matrix => {
            let m = matrix();
            let rows: Vec<Json> = m
                .rows
                .iter()
                .map(|(label, cells)| json!({ "label": label, "cells": cells.iter().map(|c| c.symbol()).collect::<Vec<_>>() }))
                .collect();
            Ok(Outcome::ok(m.to_string().trim_end().to_string(), json!({ "columns": m.columns, "rows": rows })))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Qe { .. } => "qe",
        Command::Decide { .. } => "decide",
        Command::ProveId { .. } => "prove-id",
        Command::Level { .. } => "level",
        Command::Axioms { .. } => "axioms",
        Command::Matrix => "matrix",
    }
}

fn raw_input(c: &Command) -> Option<&str> {
    match c {
        Command::Qe { formula, .. } | Command::Decide { formula, .. } => Some(formula),
        Command::ProveId { terms, .. } => Some(&terms[0]),
        Command::Level { term } => Some(term),
        Command::Axioms { theory, .. } => Some(theory),
        Command::Matrix => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let input = raw_input(&cli.command).map(read_input).transpose();
    let (input, outcome) = match input {
        Ok(text) => {
            let text = text.unwrap_or_default();
            let out = run(&cli, &text);
            (text, out)
        }
        Err(e) => (String::new(), Err(e)),
    };
    let echoed = match &cli.command {
        Command::ProveId { terms, .. } if terms.len() == 2 => format!("{input} = {}", terms[1]),
        _ => input,
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let code = match outcome {
        Ok(out) => {
            if cli.json {
                let obj = json!({ "command": command_name(&cli.command), "input": echoed, "result": out.result, "elapsed_ms": elapsed_ms });
                emit(&obj.to_string());
            } else {
                emit(&out.text);
            }
            out.code
        }
        Err(e) => {
            if cli.json {
                let err = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
                let obj = json!({ "command": command_name(&cli.command), "input": echoed, "result": err, "elapsed_ms": elapsed_ms });
                emit(&obj.to_string());
            } else {
                eprintln!("error: {e}");
            }
            exit_code(&e)
        }
    };
    ExitCode::from(code)
}

/// Prints a line; a closed pipe (e.g. `| head`) is not an error.
fn emit(line: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}
