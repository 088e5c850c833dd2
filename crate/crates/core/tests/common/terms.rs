//! Random terms of the identity fragments, identity-preserving rewrites, and
//! exact evaluators independent of the library.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use qelab::identities::Fragment;
use qelab::syntax::{Func, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub const TERM_VARS: [&str; 4] = ["x", "y", "z", "w"];

fn ops(fr: Fragment) -> &'static [Func] {
    match fr {
        Fragment::Plus => &[Func::Add],
        Fragment::Times => &[Func::Mul],
        Fragment::Exp1 => &[Func::Pow],
        Fragment::PlusTimes => &[Func::Add, Func::Mul],
        Fragment::TimesExp => &[Func::Mul, Func::Pow],
        Fragment::Hsa => &[Func::Add, Func::Mul, Func::Pow],
    }
}

fn has_one(fr: Fragment) -> bool {
    fr != Fragment::Plus
}

fn leaf<R: Rng>(rng: &mut R, fr: Fragment, nvars: usize) -> Term {
    if has_one(fr) && rng.gen_bool(0.12) {
        Term::num(1)
    } else {
        Term::var(TERM_VARS[rng.gen_range(0..nvars)])
    }
}

/// A random term of depth at most `depth` over the first `nvars` variables.
pub fn random_term<R: Rng>(rng: &mut R, fr: Fragment, depth: usize, nvars: usize) -> Term {
    if depth <= 1 || rng.gen_bool(0.3) {
        return leaf(rng, fr, nvars);
    }
    let f = *ops(fr).choose(rng).unwrap();
    // Keep exponents shallow so exact evaluation stays feasible.
    let right_depth = if f == Func::Pow { (depth - 1).min(2) } else { depth - 1 };
    let a = random_term(rng, fr, depth - 1, nvars);
    let b = random_term(rng, fr, right_depth, nvars);
    Term::App(f, vec![a, b])
}

fn app(f: Func, a: Term, b: Term) -> Term {
    Term::App(f, vec![a, b])
}

/// Valid rewrites at the root of `t` within `fr`.
fn root_rewrites<R: Rng>(t: &Term, fr: Fragment, rng: &mut R) -> Vec<Term> {
    let mut out = Vec::new();
    let allowed = ops(fr);
    let one = Term::num(1);
    for &f in allowed {
        if f == Func::Pow {
            continue;
        }
        if let Term::App(g, args) = t {
            if *g == f {
                let (a, b) = (&args[0], &args[1]);
                out.push(app(f, b.clone(), a.clone()));
                if let Term::App(h, inner) = b {
                    if *h == f {
                        out.push(app(f, app(f, a.clone(), inner[0].clone()), inner[1].clone()));
                    }
                }
                if let Term::App(h, inner) = a {
                    if *h == f {
                        out.push(app(f, inner[0].clone(), app(f, inner[1].clone(), b.clone())));
                    }
                }
            }
        }
    }
    if allowed.contains(&Func::Mul) && has_one(fr) {
        out.push(app(Func::Mul, t.clone(), one.clone()));
        if let Term::App(Func::Mul, args) = t {
            if args[1] == one {
                out.push(args[0].clone());
            }
        }
    }
    if allowed.contains(&Func::Pow) {
        out.push(app(Func::Pow, t.clone(), one.clone()));
        if *t == one {
            let v = Term::var(TERM_VARS[rng.gen_range(0..TERM_VARS.len())]);
            out.push(app(Func::Pow, one.clone(), v));
        }
        if let Term::App(Func::Pow, args) = t {
            let (a, e) = (&args[0], &args[1]);
            if *e == one {
                out.push(a.clone());
            }
            if *a == one {
                out.push(one.clone());
            }
            if let Term::App(Func::Pow, inner) = a {
                // (b^c)^e = (b^e)^c
                out.push(app(Func::Pow, app(Func::Pow, inner[0].clone(), e.clone()), inner[1].clone()));
                if allowed.contains(&Func::Mul) {
                    out.push(app(Func::Pow, inner[0].clone(), app(Func::Mul, inner[1].clone(), e.clone())));
                }
            }
            if allowed.contains(&Func::Mul) {
                if let Term::App(Func::Mul, m) = e {
                    out.push(app(Func::Pow, app(Func::Pow, a.clone(), m[0].clone()), m[1].clone()));
                }
                if let Term::App(Func::Mul, m) = a {
                    out.push(app(
                        Func::Mul,
                        app(Func::Pow, m[0].clone(), e.clone()),
                        app(Func::Pow, m[1].clone(), e.clone()),
                    ));
                }
            }
        }
        if let Term::App(Func::Mul, m) = t {
            if let (Term::App(Func::Pow, p), Term::App(Func::Pow, q)) = (&m[0], &m[1]) {
                if p[1] == q[1] {
                    out.push(app(Func::Pow, app(Func::Mul, p[0].clone(), q[0].clone()), p[1].clone()));
                }
            }
        }
    }
    if allowed.contains(&Func::Add) && allowed.contains(&Func::Mul) {
        if let Term::App(Func::Mul, m) = t {
            if let Term::App(Func::Add, s) = &m[1] {
                out.push(app(
                    Func::Add,
                    app(Func::Mul, m[0].clone(), s[0].clone()),
                    app(Func::Mul, m[0].clone(), s[1].clone()),
                ));
            }
            if let Term::App(Func::Add, s) = &m[0] {
                out.push(app(
                    Func::Add,
                    app(Func::Mul, s[0].clone(), m[1].clone()),
                    app(Func::Mul, s[1].clone(), m[1].clone()),
                ));
            }
        }
        if let Term::App(Func::Add, s) = t {
            if let (Term::App(Func::Mul, p), Term::App(Func::Mul, q)) = (&s[0], &s[1]) {
                if p[0] == q[0] {
                    out.push(app(Func::Mul, p[0].clone(), app(Func::Add, p[1].clone(), q[1].clone())));
                }
            }
        }
    }
    out
}

fn paths(t: &Term, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(prefix.clone());
    if let Term::App(_, args) = t {
        for (i, a) in args.iter().enumerate() {
            prefix.push(i);
            paths(a, prefix, out);
            prefix.pop();
        }
    }
}

fn at<'a>(t: &'a Term, path: &[usize]) -> &'a Term {
    match (t, path) {
        (_, []) => t,
        (Term::App(_, args), [i, rest @ ..]) => at(&args[*i], rest),
        _ => unreachable!(),
    }
}

fn replace(t: &Term, path: &[usize], new: Term) -> Term {
    match (t, path) {
        (_, []) => new,
        (Term::App(f, args), [i, rest @ ..]) => {
            let mut args = args.clone();
            args[*i] = replace(&args[*i], rest, new);
            Term::App(*f, args)
        }
        _ => unreachable!(),
    }
}

/// Applies `steps` random identity-preserving rewrites of `fr`.
pub fn random_rewrite<R: Rng>(t: &Term, fr: Fragment, steps: usize, rng: &mut R) -> Term {
    let mut cur = t.clone();
    for _ in 0..steps {
        let mut all = Vec::new();
        paths(&cur, &mut Vec::new(), &mut all);
        for _ in 0..10 {
            let path = all.choose(rng).unwrap();
            if let Some(new) = root_rewrites(at(&cur, path), fr, rng).choose(rng).cloned() {
                cur = replace(&cur, path, new);
                break;
            }
        }
    }
    cur
}

/// Replaces one leaf with a random leaf; usually breaks the identity.
pub fn mutate<R: Rng>(t: &Term, fr: Fragment, rng: &mut R) -> Term {
    fn go<R: Rng>(t: &Term, target: &mut usize, fr: Fragment, rng: &mut R) -> Term {
        match t {
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| go(a, target, fr, rng)).collect()),
            leaf_term => {
                let hit = *target == 0;
                *target = target.wrapping_sub(1);
                if hit {
                    leaf(rng, fr, TERM_VARS.len())
                } else {
                    leaf_term.clone()
                }
            }
        }
    }
    let leaves = {
        fn count(t: &Term) -> usize {
            match t {
                Term::App(_, a) => a.iter().map(count).sum(),
                _ => 1,
            }
        }
        count(t)
    };
    let mut target = rng.gen_range(0..leaves);
    go(t, &mut target, fr, rng)
}

/// Variables occurring inside some exponent.
pub fn exponent_vars(t: &Term, out: &mut BTreeSet<String>) {
    if let Term::App(f, args) = t {
        if *f == Func::Pow {
            args[1].vars_into(out);
        }
        args.iter().for_each(|a| exponent_vars(a, out));
    }
}

// ---------------------------------------------------------------------------
// Exact evaluation

const MAX_BITS: u64 = 1 << 14;

/// Exact value over ℚ⁺ with integer exponents; `None` if a power has a
/// non-integer exponent or the value grows past the bit budget.
pub fn eval_q(t: &Term, env: &BTreeMap<String, BigRational>) -> Option<BigRational> {
    let v = match t {
        Term::Var(x) => env[x].clone(),
        Term::Num(n) => BigRational::from_integer(BigInt::from(n.clone())),
        Term::App(Func::Add, a) => eval_q(&a[0], env)? + eval_q(&a[1], env)?,
        Term::App(Func::Mul, a) => eval_q(&a[0], env)? * eval_q(&a[1], env)?,
        Term::App(Func::Pow, a) => {
            let b = eval_q(&a[0], env)?;
            let e = eval_q(&a[1], env)?;
            if !e.is_integer() {
                return None;
            }
            if b.is_one() {
                return Some(b);
            }
            let k = e.to_integer().to_u64()?;
            let bits = b.numer().bits() + b.denom().bits();
            if bits.checked_mul(k)? > MAX_BITS {
                return None;
            }
            let mut acc = BigRational::one();
            for _ in 0..k {
                acc *= &b;
            }
            acc
        }
        other => panic!("unexpected term {other:?}"),
    };
    if v.numer().bits() + v.denom().bits() > MAX_BITS || !v.is_positive() {
        return None;
    }
    Some(v)
}

/// A point in (0, ∞)^vars: variables inside exponents take values in
/// {1, 2, 3}, the others small rationals.
pub fn random_positive_point<R: Rng>(
    rng: &mut R,
    vars: &BTreeSet<String>,
    exponent_vars: &BTreeSet<String>,
) -> BTreeMap<String, BigRational> {
    vars.iter()
        .map(|x| {
            let q = if exponent_vars.contains(x) {
                BigRational::from_integer(rng.gen_range(1..=3).into())
            } else {
                BigRational::new(rng.gen_range(1..=12).into(), rng.gen_range(1..=4).into())
            };
            (x.clone(), q)
        })
        .collect()
}

/// `ln` of the value in plain floating point, for points where exact
/// evaluation is out of reach.
pub fn ln_f64(t: &Term, env: &BTreeMap<String, BigRational>) -> f64 {
    fn val(t: &Term, env: &BTreeMap<String, BigRational>) -> f64 {
        match t {
            Term::Var(x) => env[x].to_f64().unwrap().ln(),
            Term::Num(n) => n.to_f64().unwrap().ln(),
            Term::App(Func::Add, a) => {
                let (p, q) = (val(&a[0], env), val(&a[1], env));
                let (hi, lo) = if p > q { (p, q) } else { (q, p) };
                hi + (lo - hi).exp().ln_1p()
            }
            Term::App(Func::Mul, a) => val(&a[0], env) + val(&a[1], env),
            Term::App(Func::Pow, a) => val(&a[1], env).exp() * val(&a[0], env),
            other => panic!("unexpected term {other:?}"),
        }
    }
    val(t, env)
}
