//! Deciding identities in the complete fragments, and best effort in the full
//! {1, +, ×, exp} signature.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::eval_exact;
use super::exppoly::exp_nf;
use super::numeric::{
    differ, eval_numeric, numeric_falsify_seeded, small_points, vars_of, Approx, DEFAULT_TOL,
};
use super::poly::poly_nf;
use super::powerprod::pp_nf;
use super::Fragment;
use crate::error::{Error, Result};
use crate::syntax::Term;

/// Random points tried after the small ones before giving up on a witness.
const SEARCH_TRIALS: usize = 2000;

/// A value of one side of an identity at a counterexample.
#[derive(Debug, Clone)]
pub enum Value {
    Exact(BigRational),
    Approx(Approx),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{q}"),
            Value::Approx(a) => write!(f, "≈{a}"),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Verdict {
    Proved,
    Disproved {
        assignment: BTreeMap<String, BigRational>,
        lhs: Value,
        rhs: Value,
    },
    /// No symbolic proof, but no counterexample in `trials` points either.
    NumericOnly { trials: usize, tol: f64 },
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved)
    }

    pub fn is_disproved(&self) -> bool {
        matches!(self, Verdict::Disproved { .. })
    }
}

pub(crate) fn show_assignment(a: &BTreeMap<String, BigRational>) -> String {
    a.iter().map(|(x, q)| format!("{x} = {q}")).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proved => write!(f, "proved"),
            Verdict::Disproved { assignment, lhs, rhs } => {
                write!(f, "disproved at {}: {lhs} vs {rhs}", show_assignment(assignment))
            }
            Verdict::NumericOnly { trials, tol } => {
                write!(f, "numeric only: no counterexample in {trials} trials (tolerance {tol:e})")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProveOptions {
    /// Points sampled by the numeric check in the full signature.
    pub trials: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions { trials: 1000, tol: DEFAULT_TOL, seed: 0 }
    }
}

/// Compares both sides at one point; `Ok(None)` when they agree.
fn compare_at(lhs: &Term, rhs: &Term, point: &BTreeMap<String, BigRational>, tol: f64) -> Result<Option<Verdict>> {
    if let (Some(a), Some(b)) = (eval_exact(lhs, point), eval_exact(rhs, point)) {
        return Ok((a != b).then(|| Verdict::Disproved {
            assignment: point.clone(),
            lhs: Value::Exact(a),
            rhs: Value::Exact(b),
        }));
    }
    let a = eval_numeric(lhs, point)?;
    let b = eval_numeric(rhs, point)?;
    Ok(differ(&a, &b, tol).then(|| Verdict::Disproved {
        assignment: point.clone(),
        lhs: Value::Approx(a),
        rhs: Value::Approx(b),
    }))
}

fn random_rational(rng: &mut impl Rng) -> BigRational {
    BigRational::new(rng.gen_range(1..=12).into(), rng.gen_range(1..=4).into())
}

/// Finds a witness for an identity already known to be false.
fn search_counterexample(lhs: &Term, rhs: &Term, opts: &ProveOptions) -> Result<Verdict> {
    let vars = vars_of(&[lhs, rhs]);
    for point in small_points(&vars) {
        match compare_at(lhs, rhs, &point, opts.tol) {
            Ok(Some(v)) => return Ok(v),
            Ok(None) | Err(Error::Overflow) => {}
            Err(e) => return Err(e),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..SEARCH_TRIALS {
        let point = vars.iter().map(|x| (x.clone(), random_rational(&mut rng))).collect();
        match compare_at(lhs, rhs, &point, opts.tol) {
            Ok(Some(v)) => return Ok(v),
            Ok(None) | Err(Error::Overflow) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoCounterexample(SEARCH_TRIALS))
}

pub fn prove_identity(fragment: Fragment, lhs: &Term, rhs: &Term) -> Result<Verdict> {
    prove_identity_with(fragment, lhs, rhs, &ProveOptions::default())
}

pub fn prove_identity_with(fragment: Fragment, lhs: &Term, rhs: &Term, opts: &ProveOptions) -> Result<Verdict> {
    fragment.check(lhs)?;
    fragment.check(rhs)?;
    let same = match fragment {
        Fragment::Plus | Fragment::PlusTimes => poly_nf(lhs)? == poly_nf(rhs)?,
        Fragment::Times | Fragment::Exp1 | Fragment::TimesExp => pp_nf(lhs)? == pp_nf(rhs)?,
        Fragment::Hsa => {
            if let (Some(a), Some(b)) = (exp_nf(lhs), exp_nf(rhs)) {
                if a == b {
                    return Ok(Verdict::Proved);
                }
            }
            return Ok(match numeric_falsify_seeded(lhs, rhs, opts.trials, opts.tol, opts.seed)? {
                Some(ce) => {
                    let exact = (eval_exact(lhs, &ce.assignment), eval_exact(rhs, &ce.assignment));
                    let (l, r) = match exact {
                        (Some(a), Some(b)) if a != b => (Value::Exact(a), Value::Exact(b)),
                        _ => (Value::Approx(ce.lhs), Value::Approx(ce.rhs)),
                    };
                    Verdict::Disproved { assignment: ce.assignment, lhs: l, rhs: r }
                }
                None => Verdict::NumericOnly { trials: opts.trials, tol: opts.tol },
            });
        }
    };
    if same {
        Ok(Verdict::Proved)
    } else {
        search_counterexample(lhs, rhs, opts)
    }
}
