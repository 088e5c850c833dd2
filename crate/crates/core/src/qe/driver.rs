use crate::additive::cooper;
use crate::error::{Error, Result};
use crate::linear::{and, from_formula, negate, or, to_formula, LForm, LinearAtom, Lit};
use crate::syntax::{free_vars, Formula, DEFAULT_MAX_CLAUSES};

use super::TheoryId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QeOptions {
    /// Cap on the number of DNF clauses of a matrix.
    pub max_clauses: usize,
    /// Cap on the node count of intermediate results.
    pub max_size: usize,
    /// When a DNF exceeds `max_clauses`, eliminate on the whole formula
    /// instead of failing.
    pub fallback: bool,
}

/// Default cap on intermediate formula size, in nodes.
pub const DEFAULT_MAX_SIZE: usize = 5_000_000;

impl Default for QeOptions {
    fn default() -> QeOptions {
        QeOptions { max_clauses: DEFAULT_MAX_CLAUSES, max_size: DEFAULT_MAX_SIZE, fallback: true }
    }
}

impl QeOptions {
    /// A strict clause cap: exceeding it is an error.
    pub fn with_max_clauses(max_clauses: usize) -> QeOptions {
        QeOptions { max_clauses, fallback: false, ..QeOptions::default() }
    }
}

fn check_signature(th: TheoryId, f: &Formula) -> Result<()> {
    th.signature().check_formula(f).map_err(|e| match e {
        Error::Signature { symbol, .. } => {
            Error::UnsupportedSymbol { symbol, context: format!("theory {th}") }
        }
        other => other,
    })
}

/// A quantifier-free equivalent of `f` in the standard model of `th`.
pub fn eliminate(th: TheoryId, f: &Formula) -> Result<Formula> {
    eliminate_with(th, f, &QeOptions::default())
}

pub fn eliminate_with(th: TheoryId, f: &Formula, opts: &QeOptions) -> Result<Formula> {
    Ok(to_formula(&eliminate_lform(th, f, opts)?, th.style()))
}

/// Like [`eliminate_with`] but returns the internal literal form.
pub fn eliminate_lform(th: TheoryId, f: &Formula, opts: &QeOptions) -> Result<LForm> {
    check_signature(th, f)?;
    qe(th, f, opts)
}

/// Truth value of a sentence in the standard model of `th`.
pub fn decide(th: TheoryId, f: &Formula) -> Result<bool> {
    decide_with(th, f, &QeOptions::default())
}

pub fn decide_with(th: TheoryId, f: &Formula, opts: &QeOptions) -> Result<bool> {
    check_signature(th, f)?;
    let free = free_vars(f);
    if !free.is_empty() {
        return Err(Error::NotASentence(free));
    }
    let lf = qe(th, f, opts)?;
    lf.eval(&Default::default())
        .ok_or_else(|| Error::Precondition(format!("elimination left variables behind: {lf:?}")))
}

/// Exact evaluation of a variable-free, quantifier-free formula.
pub fn eval_ground(th: TheoryId, f: &Formula) -> Result<bool> {
    check_signature(th, f)?;
    if !f.is_quantifier_free() || !free_vars(f).is_empty() {
        return Err(Error::NonGround(f.to_string()));
    }
    match from_formula(f, th.domain())? {
        LForm::Top => Ok(true),
        LForm::Bot => Ok(false),
        other => other.eval(&Default::default()).ok_or_else(|| Error::NonGround(f.to_string())),
    }
}

fn qe(th: TheoryId, f: &Formula, opts: &QeOptions) -> Result<LForm> {
    let dom = th.domain();
    let out = match f {
        Formula::Exists(x, g) => {
            let body = qe(th, g, opts)?;
            elim_exists(th, x, &body, opts)?
        }
        Formula::Forall(x, g) => {
            let body = negate(&qe(th, g, opts)?, dom);
            negate(&elim_exists(th, x, &body, opts)?, dom)
        }
        Formula::Not(g) => negate(&qe(th, g, opts)?, dom),
        Formula::And(fs) => and(fs.iter().map(|g| qe(th, g, opts)).collect::<Result<_>>()?),
        Formula::Or(fs) => or(fs.iter().map(|g| qe(th, g, opts)).collect::<Result<_>>()?),
        Formula::Implies(a, b) => or(vec![negate(&qe(th, a, opts)?, dom), qe(th, b, opts)?]),
        Formula::Iff(a, b) => {
            let a = qe(th, a, opts)?;
            let b = qe(th, b, opts)?;
            or(vec![
                and(vec![a.clone(), b.clone()]),
                and(vec![negate(&a, dom), negate(&b, dom)]),
            ])
        }
        atomic => from_formula(atomic, dom)?,
    };
    let size = out.size();
    if size > opts.max_size {
        return Err(Error::Size { clauses: size, cap: opts.max_size });
    }
    Ok(out)
}

/// `∃x φ` for a negation-free `φ`.
fn elim_exists(th: TheoryId, x: &str, phi: &LForm, opts: &QeOptions) -> Result<LForm> {
    if !phi.contains(x) {
        return Ok(phi.clone());
    }
    match phi {
        LForm::Or(fs) => Ok(or(fs.iter().map(|g| elim_exists(th, x, g, opts)).collect::<Result<_>>()?)),
        LForm::And(fs) => {
            let (bound, mut free): (Vec<LForm>, Vec<LForm>) =
                fs.iter().cloned().partition(|g| g.contains(x));
            free.push(elim_conj(th, x, &and(bound), opts)?);
            Ok(and(free))
        }
        _ => elim_conj(th, x, phi, opts),
    }
}

fn elim_conj(th: TheoryId, x: &str, phi: &LForm, opts: &QeOptions) -> Result<LForm> {
    if th.is_presburger() {
        return Ok(cooper(x, phi, th.domain()));
    }
    let clauses = match dnf(phi, opts.max_clauses) {
        Ok(c) => c,
        Err(Error::Size { .. }) if opts.fallback => return Ok(th.eliminate_formula(x, phi)),
        Err(e) => return Err(e),
    };
    let mut cases = Vec::new();
    for clause in clauses {
        let mut free = Vec::new();
        let mut atoms = Vec::new();
        for l in clause {
            match LinearAtom::from_lit(&l, x) {
                Some(a) => atoms.push(a),
                None => free.push(LForm::Lit(l)),
            }
        }
        if and(free.clone()) == LForm::Bot {
            continue;
        }
        free.push(th.eliminate_clause(x, &atoms));
        cases.push(and(free));
    }
    Ok(or(cases))
}

/// Clauses of the disjunctive normal form; fails beyond `cap` clauses.
fn dnf(f: &LForm, cap: usize) -> Result<Vec<Vec<Lit>>> {
    Ok(match f {
        LForm::Top => vec![Vec::new()],
        LForm::Bot => Vec::new(),
        LForm::Lit(l) => vec![vec![l.clone()]],
        LForm::Or(fs) => {
            let mut out = Vec::new();
            for g in fs {
                out.extend(dnf(g, cap)?);
                if out.len() > cap {
                    return Err(Error::Size { clauses: out.len(), cap });
                }
            }
            out
        }
        LForm::And(fs) => {
            let mut acc: Vec<Vec<Lit>> = vec![Vec::new()];
            for g in fs {
                let part = dnf(g, cap)?;
                let n = acc.len() * part.len();
                if n > cap {
                    return Err(Error::Size { clauses: n, cap });
                }
                acc = acc
                    .iter()
                    .flat_map(|c| {
                        part.iter().map(move |d| {
                            let mut c = c.clone();
                            c.extend(d.iter().cloned());
                            c
                        })
                    })
                    .collect();
            }
            acc
        }
    })
}
