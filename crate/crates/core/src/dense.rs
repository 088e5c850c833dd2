//! Formula-level elimination over ℚ by test points, used when a DNF would be
//! too large. `∃x φ` holds iff `φ` holds at `−∞`, at the root of some
//! equality, or just above the root of some strict inequality/disequality.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linear::{lit, or, Domain, LForm, LinExpr, Lit, Rel};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Point {
    MinusInfinity,
    /// `t / a` with `a > 0`, optionally plus an infinitesimal.
    Root { a: BigInt, t: LinExpr, above: bool },
}

fn sign_lit(rel: Rel, e: LinExpr) -> LForm {
    lit(rel, e, Domain::Q)
}

fn at(l: &Lit, x: &str, p: &Point) -> LForm {
    let c = l.expr.coeff(x);
    if c.is_zero() {
        return LForm::Lit(l.clone());
    }
    let s = l.expr.without(x);
    match p {
        Point::MinusInfinity => match l.rel {
            Rel::Eq => LForm::Bot,
            Rel::Ne => LForm::Top,
            Rel::Lt if c.is_positive() => LForm::Top,
            _ => LForm::Bot,
        },
        Point::Root { a, t, above } => {
            // c·(t/a) + s, scaled by a > 0.
            let e = t.scale(&c).add(&s.scale(a));
            match (&l.rel, above) {
                (rel, false) => sign_lit(rel.clone(), e),
                (Rel::Eq, true) => LForm::Bot,
                (Rel::Ne, true) => LForm::Top,
                (Rel::Lt, true) if c.is_positive() => sign_lit(Rel::Lt, e),
                (Rel::Lt, true) => or(vec![sign_lit(Rel::Lt, e.clone()), sign_lit(Rel::Eq, e)]),
                (rel, true) => unreachable!("{rel:?} over the rationals"),
            }
        }
    }
}

/// `∃x φ` over ℚ for a negation-free `φ` whose literals are `=`, `≠`, `<`.
pub fn elim_dense(x: &str, phi: &LForm) -> LForm {
    if !phi.contains(x) {
        return phi.clone();
    }
    let mut points = vec![Point::MinusInfinity];
    phi.for_each_lit(&mut |l| {
        let c = l.expr.coeff(x);
        if c.is_zero() {
            return;
        }
        // c·x + s = 0  ⟺  x = (−s·sign c) / |c|
        let s = l.expr.without(x);
        let t = if c.is_positive() { s.neg() } else { s };
        let p = Point::Root { a: c.abs(), t, above: l.rel != Rel::Eq };
        if !points.contains(&p) {
            points.push(p);
        }
    });
    let mut cases = Vec::new();
    for p in &points {
        let case = phi.map_lits(&mut |l| at(l, x, p));
        if case == LForm::Top {
            return LForm::Top;
        }
        cases.push(case);
    }
    or(cases)
}
