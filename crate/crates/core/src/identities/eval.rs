//! Exact rational evaluation of {1, +, ×, exp, −} terms where possible.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::syntax::{Func, Term};

/// Bit budget for exact powers; larger results are left to numeric evaluation.
const MAX_BITS: u64 = 1 << 16;

fn bits(q: &BigRational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// The value of `t`, or `None` when a variable is unassigned, a power has a
/// non-integer exponent, or the result would exceed the bit budget.
pub fn eval_exact(t: &Term, env: &BTreeMap<String, BigRational>) -> Option<BigRational> {
    match t {
        Term::Var(x) => env.get(x).cloned(),
        Term::Num(n) => Some(BigRational::from_integer(BigInt::from(n.clone()))),
        Term::App(Func::Add, a) => Some(eval_exact(&a[0], env)? + eval_exact(&a[1], env)?),
        Term::App(Func::Mul, a) => Some(eval_exact(&a[0], env)? * eval_exact(&a[1], env)?),
        Term::App(Func::Neg, a) => Some(-eval_exact(&a[0], env)?),
        Term::App(Func::Succ, a) => Some(eval_exact(&a[0], env)? + BigRational::one()),
        Term::App(Func::Pow, a) => {
            let base = eval_exact(&a[0], env)?;
            let e = eval_exact(&a[1], env)?;
            if !e.is_integer() {
                return None;
            }
            let k = e.to_integer().to_i32()?;
            if base.is_one() {
                return Some(base);
            }
            if bits(&base).saturating_mul(k.unsigned_abs() as u64) > MAX_BITS {
                return None;
            }
            if base.is_negative() && k < 0 {
                return None;
            }
            Some(base.pow(k))
        }
    }
}
