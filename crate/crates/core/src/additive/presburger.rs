use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linear::{
    and, lcm_all, lit, or, Domain, LForm, LinExpr, LinRel, LinearAtom, Lit, Rel,
};

use super::{divisibility, substitute_into};

/// `∃x ⋀ atoms` over ⟨ℤ; 0, 1, <, {≡ₙ}, −, +⟩ or ⟨ℕ; 0, 1, <, {≡ₙ}, +⟩.
pub fn elim_pres(x: &str, atoms: &[LinearAtom], dom: Domain) -> LForm {
    let conj = and(atoms.iter().map(|a| LForm::Lit(a.to_lit())).collect());
    cooper(x, &conj, dom)
}

fn resimplify(f: &LForm, dom: Domain) -> LForm {
    crate::linear::simplify(f, dom)
}

/// Cooper's test-point elimination of `∃x φ` for a negation-free `φ`.
///
/// After scaling every atom so that `x` has coefficient `±q` and renaming
/// `q·x` to `x` (adding `x ≡ 0 (mod q)`), with `D` the lcm of the moduli:
/// `∃x φ ⟺ ⋁_{1≤j≤D} φ₋∞(j) ∨ ⋁_{b∈B} ⋁_{1≤j≤D} φ(b + j)`, where `B` holds
/// the strict lower bounds, `t - 1` for `x = t` and `t` for `x ≠ t`. The
/// mirrored upper-bound form is used when it has fewer test points.
pub fn cooper(x: &str, phi: &LForm, dom: Domain) -> LForm {
    if !phi.contains(x) {
        return phi.clone();
    }
    let mut phi = phi.clone();
    if dom == Domain::N {
        let nonneg = LinearAtom::new(1, x, LinRel::Gt, LinExpr::constant(-1)).to_lit();
        phi = and(vec![phi, LForm::Lit(nonneg)]);
    }
    if let Some(eq) = top_level_eq(&phi, x) {
        let out = phi.map_lits(&mut |l| match LinearAtom::from_lit(l, x) {
            Some(a) => LForm::Lit(substitute_into(&eq, &a)),
            None => LForm::Lit(l.clone()),
        });
        return resimplify(&and(vec![divisibility(&eq, dom), out]), dom);
    }

    let mut coeffs = Vec::new();
    phi.for_each_lit(&mut |l| {
        if l.contains(x) {
            coeffs.push(l.expr.coeff(x).abs());
        }
    });
    let q = lcm_all(coeffs.iter());
    let mut unit = phi.map_lits(&mut |l| match LinearAtom::from_lit(l, x) {
        Some(a) => {
            let k = &q / &a.coeff;
            let s = a.scaled(&k);
            LForm::Lit(LinearAtom { coeff: BigInt::one(), ..s }.to_lit())
        }
        None => LForm::Lit(l.clone()),
    });
    if !q.is_one() {
        unit = and(vec![unit, LForm::Lit(Lit::new(Rel::Cong(q.clone()), LinExpr::var(x)))]);
    }

    let mut moduli = Vec::new();
    let mut lower_pts: Vec<LinExpr> = Vec::new();
    let mut upper_pts: Vec<LinExpr> = Vec::new();
    let push = |v: &mut Vec<LinExpr>, e: LinExpr| {
        if !v.contains(&e) {
            v.push(e);
        }
    };
    unit.for_each_lit(&mut |l| {
        let Some(a) = LinearAtom::from_lit(l, x) else { return };
        let one = BigInt::one();
        match &a.rel {
            LinRel::Gt => push(&mut lower_pts, a.rhs.clone()),
            LinRel::Lt => push(&mut upper_pts, a.rhs.clone()),
            LinRel::Eq => {
                push(&mut lower_pts, a.rhs.add_constant(&-&one));
                push(&mut upper_pts, a.rhs.add_constant(&one));
            }
            LinRel::Ne => {
                push(&mut lower_pts, a.rhs.clone());
                push(&mut upper_pts, a.rhs.clone());
            }
            LinRel::Cong(m) | LinRel::NotCong(m) => moduli.push(m.clone()),
        }
    });
    let d = lcm_all(moduli.iter());
    let from_below = lower_pts.len() <= upper_pts.len();
    let (points, sign) = if from_below {
        (lower_pts, BigInt::one())
    } else {
        (upper_pts, -BigInt::one())
    };
    let infinite = unit.map_lits(&mut |l| match LinearAtom::from_lit(l, x) {
        Some(a) => match (&a.rel, from_below) {
            (LinRel::Gt, true) | (LinRel::Lt, false) | (LinRel::Eq, _) => LForm::Bot,
            (LinRel::Lt, true) | (LinRel::Gt, false) | (LinRel::Ne, _) => LForm::Top,
            _ => LForm::Lit(l.clone()),
        },
        None => LForm::Lit(l.clone()),
    });

    let at = |f: &LForm, t: &LinExpr| {
        f.map_lits(&mut |l| lit(l.rel.clone(), l.expr.substitute(x, t), dom))
    };
    let mut cases = Vec::new();
    let mut j = BigInt::one();
    while j <= d {
        let case = at(&infinite, &LinExpr::constant(&j * &sign));
        if case == LForm::Top {
            return LForm::Top;
        }
        cases.push(case);
        j += 1;
    }
    for (base, shifts) in test_points(&points, &d, from_below) {
        for k in shifts {
            let case = at(&unit, &base.add_constant(&k));
            if case == LForm::Top {
                return LForm::Top;
            }
            cases.push(case);
        }
    }
    or(cases)
}

/// Test points `b + j` (or `a - j`) for `1 ≤ j ≤ d`, grouped by the
/// non-constant part of `b`. Bounds that differ only by a constant share
/// most of their test points, so each group is a union of merged intervals.
fn test_points(points: &[LinExpr], d: &BigInt, from_below: bool) -> Vec<(LinExpr, Vec<BigInt>)> {
    let mut groups: Vec<(LinExpr, Vec<BigInt>)> = Vec::new();
    for p in points {
        let base = LinExpr { constant: BigInt::zero(), ..p.clone() };
        match groups.iter_mut().find(|(b, _)| *b == base) {
            Some((_, cs)) => cs.push(p.constant.clone()),
            None => groups.push((base, vec![p.constant.clone()])),
        }
    }
    groups
        .into_iter()
        .map(|(base, mut cs)| {
            cs.sort();
            let mut shifts: Vec<BigInt> = Vec::new();
            let mut last: Option<BigInt> = None;
            for c in cs {
                let (lo, hi) = if from_below { (&c + 1, &c + d) } else { (&c - d, &c - 1) };
                let mut k = match &last {
                    Some(l) if *l >= lo => l + 1,
                    _ => lo,
                };
                while k <= hi {
                    shifts.push(k.clone());
                    k += 1;
                }
                last = Some(match last {
                    Some(l) if l > hi => l,
                    _ => hi,
                });
            }
            (base, shifts)
        })
        .collect()
}

/// An equality on `x` that is a conjunct of `phi` (smallest coefficient).
fn top_level_eq(phi: &LForm, x: &str) -> Option<LinearAtom> {
    let items: &[LForm] = match phi {
        LForm::And(items) => items,
        other => std::slice::from_ref(other),
    };
    items
        .iter()
        .filter_map(|f| match f {
            LForm::Lit(l) if l.rel == Rel::Eq => LinearAtom::from_lit(l, x),
            _ => None,
        })
        .min_by(|a, b| a.coeff.cmp(&b.coeff))
}
