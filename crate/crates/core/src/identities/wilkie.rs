//! Wilkie's identity
//!
//! `(A^u + B^u)^v · (C^v + D^v)^u = (A^v + B^v)^u · (C^u + D^u)^v`
//!
//! with `A = x + 1`, `B = x² + x + 1`, `C = x³ + 1`, `D = x⁴ + x² + 1`. It holds
//! on ℝ⁺ because `C = A·E` and `D = B·E` for `E = x² − x + 1`, but `E` has no
//! term over {1, +, ×, exp}.

use super::numeric::{numeric_falsify, DEFAULT_TOL};
use super::poly::poly_nf_expanding;
use super::prove::{Value, Verdict};
use crate::error::Result;
use crate::syntax::{parse_term, Signature, Term};

/// Trials used for symbolic exponents.
pub const WILKIE_TRIALS: usize = 10_000;

fn fixture(text: &str) -> Term {
    parse_term(text, &Signature::permissive()).expect("fixture parses")
}

pub fn wilkie_a() -> Term {
    fixture("x + 1")
}

pub fn wilkie_b() -> Term {
    fixture("x * x + x + 1")
}

pub fn wilkie_c() -> Term {
    fixture("x * x * x + 1")
}

pub fn wilkie_d() -> Term {
    fixture("x * x * x * x + x * x + 1")
}

/// `x² − x + 1`; uses subtraction, so only for checking the factorizations.
pub fn wilkie_e() -> Term {
    fixture("x * x + -x + 1")
}

/// An exponent of the identity: a positive natural or a variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exponent {
    Nat(u32),
    Symbolic,
}

impl Exponent {
    fn term(self, name: &str) -> Term {
        match self {
            Exponent::Nat(n) => Term::num(n as u64),
            Exponent::Symbolic => Term::var(name),
        }
    }
}

/// Both sides with the exponents in place.
pub fn wilkie_identity(u: Exponent, v: Exponent) -> (Term, Term) {
    let (u, v) = (u.term("u"), v.term("v"));
    let (a, b, c, d) = (wilkie_a(), wilkie_b(), wilkie_c(), wilkie_d());
    let side = |p: &Term, q: &Term| {
        let first = Term::pow(Term::add(Term::pow(a.clone(), p.clone()), Term::pow(b.clone(), p.clone())), q.clone());
        let second = Term::pow(Term::add(Term::pow(c.clone(), q.clone()), Term::pow(d.clone(), q.clone())), p.clone());
        Term::mul(first, second)
    };
    (side(&u, &v), side(&v, &u))
}

/// Concrete exponents are expanded and compared as polynomials; symbolic
/// ones are checked numerically.
pub fn wilkie_check(u: Exponent, v: Exponent) -> Result<Verdict> {
    let (lhs, rhs) = wilkie_identity(u, v);
    if let (Exponent::Nat(p), Exponent::Nat(q)) = (u, v) {
        let max = p.max(q).max(1);
        let (l, r) = (poly_nf_expanding(&lhs, max)?, poly_nf_expanding(&rhs, max)?);
        return Ok(if l == r {
            Verdict::Proved
        } else {
            // Unreachable for a true identity; report the polynomials' first disagreement.
            let x = [("x".to_string(), num_rational::BigRational::from_integer(2.into()))].into();
            Verdict::Disproved {
                lhs: Value::Exact(l.eval(&x).expect("x assigned")),
                rhs: Value::Exact(r.eval(&x).expect("x assigned")),
                assignment: x,
            }
        });
    }
    Ok(match numeric_falsify(&lhs, &rhs, WILKIE_TRIALS, DEFAULT_TOL)? {
        Some(ce) => Verdict::Disproved {
            assignment: ce.assignment,
            lhs: Value::Approx(ce.lhs),
            rhs: Value::Approx(ce.rhs),
        },
        None => Verdict::NumericOnly { trials: WILKIE_TRIALS, tol: DEFAULT_TOL },
    })
}
