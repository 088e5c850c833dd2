use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::syntax::{Formula, Func, Pred, Term};

/// `∃x (a·x² + b·x + c = 0)` over ℝ, for `x`-free `a`, `b`, `c`:
/// `(a² > 0 ∧ b² ≥ 4ac) ∨ (a = 0 ∧ b² > 0) ∨ (a = 0 ∧ b = 0 ∧ c = 0)`.
pub fn quadratic_qe(a: &Term, b: &Term, c: &Term) -> Formula {
    let zero = || Term::num(0);
    let sq = |t: &Term| Term::mul(t.clone(), t.clone());
    let four_ac = Term::mul(Term::mul(Term::num(4), a.clone()), c.clone());
    let geq = |l: Term, r: Term| Formula::or([Formula::lt(r.clone(), l.clone()), Formula::eq(r, l)]);
    Formula::or([
        Formula::and([Formula::lt(zero(), sq(a)), geq(sq(b), four_ac)]),
        Formula::and([Formula::eq(a.clone(), zero()), Formula::lt(zero(), sq(b))]),
        Formula::and([
            Formula::eq(a.clone(), zero()),
            Formula::eq(b.clone(), zero()),
            Formula::eq(c.clone(), zero()),
        ]),
    ])
}

fn eval_term(t: &Term, env: &BTreeMap<String, BigRational>) -> Option<BigRational> {
    Some(match t {
        Term::Var(v) => env.get(v)?.clone(),
        Term::Num(n) => BigRational::from_integer(BigInt::from(n.clone())),
        Term::App(f, args) => {
            let x = eval_term(&args[0], env)?;
            match f {
                Func::Neg => -x,
                Func::Succ => x + BigRational::from_integer(1.into()),
                Func::Add => x + eval_term(&args[1], env)?,
                Func::Mul => x * eval_term(&args[1], env)?,
                Func::Pow => return None,
            }
        }
    })
}

/// Exact truth value of a quantifier-free formula over ℚ with `+`, `−`, `×`.
/// `None` when a variable is unassigned or a term uses exponentiation.
pub fn eval_rational(f: &Formula, env: &BTreeMap<String, BigRational>) -> Option<bool> {
    Some(match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(a) => {
            let l = eval_term(&a.lhs, env)?;
            let r = eval_term(&a.rhs, env)?;
            match &a.pred {
                Pred::Eq => l == r,
                Pred::Lt => l < r,
                Pred::Cong(m) => {
                    let d = l - r;
                    if !d.is_integer() {
                        return None;
                    }
                    (d.to_integer() % BigInt::from(m.clone())).is_zero()
                }
            }
        }
        Formula::Not(g) => !eval_rational(g, env)?,
        Formula::And(fs) => {
            let mut all = true;
            for g in fs {
                all &= eval_rational(g, env)?;
            }
            all
        }
        Formula::Or(fs) => {
            let mut any = false;
            for g in fs {
                any |= eval_rational(g, env)?;
            }
            any
        }
        Formula::Implies(a, b) => !eval_rational(a, env)? || eval_rational(b, env)?,
        Formula::Iff(a, b) => eval_rational(a, env)? == eval_rational(b, env)?,
        Formula::Prop(_) | Formula::Forall(..) | Formula::Exists(..) => return None,
    })
}
