//! Eliminators for pure orders: dense (ℚ) and discrete (ℤ, ℕ).
//!
//! Literals arrive solved for the bound variable with coefficient 1, i.e.
//! `x ⋈ t` where `t` is a variable or `0` plus an offset.

use num_bigint::BigInt;
use num_traits::One;

use crate::linear::{and, lit, or, simplify, Domain, LForm, LinExpr, LinRel, LinearAtom, Rel};

/// Substitutes `x := eq.rhs` into every other literal.
fn substitute_first_eq(eqs: &[&LinearAtom], rest: &[LinearAtom], dom: Domain) -> LForm {
    let w0 = &eqs[0].rhs;
    let mut out: Vec<LForm> = rest.iter().map(|a| LForm::Lit(a.at(w0))).collect();
    for e in &eqs[1..] {
        out.push(LForm::Lit(e.at(w0)));
    }
    simplify(&and(out), dom)
}

fn bounds(atoms: &[LinearAtom]) -> (Vec<&LinExpr>, Vec<&LinExpr>) {
    let lowers = atoms.iter().filter(|a| a.rel == LinRel::Gt).map(|a| &a.rhs).collect();
    let uppers = atoms.iter().filter(|a| a.rel == LinRel::Lt).map(|a| &a.rhs).collect();
    (lowers, uppers)
}

/// `∃x ⋀ atoms` over ⟨ℚ; <⟩.
pub fn elim_dlo(x: &str, atoms: &[LinearAtom]) -> LForm {
    debug_assert!(atoms.iter().all(|a| a.var == x && a.coeff.is_one()));
    let eqs: Vec<&LinearAtom> = atoms.iter().filter(|a| a.rel == LinRel::Eq).collect();
    if !eqs.is_empty() {
        let rest: Vec<LinearAtom> = atoms.iter().filter(|a| a.rel != LinRel::Eq).cloned().collect();
        return substitute_first_eq(&eqs, &rest, Domain::Q);
    }
    // Disequalities exclude finitely many points of an open interval.
    let (lowers, uppers) = bounds(atoms);
    let mut out = Vec::new();
    for u in &lowers {
        for v in &uppers {
            out.push(lit(Rel::Lt, u.sub(v), Domain::Q));
        }
    }
    and(out)
}

/// `∃x ⋀ atoms` over ⟨ℤ; <, s⟩ or, with `dom = N`, ⟨ℕ; 0, s, <⟩.
pub fn elim_discrete(x: &str, atoms: &[LinearAtom], dom: Domain) -> LForm {
    debug_assert!(dom.is_integral());
    let mut atoms = atoms.to_vec();
    if dom == Domain::N {
        // 0 ≤ x, written as 0 - 1 < x.
        atoms.push(LinearAtom::new(1, x, LinRel::Gt, LinExpr::constant(-1)));
    }
    let eqs: Vec<&LinearAtom> = atoms.iter().filter(|a| a.rel == LinRel::Eq).collect();
    if !eqs.is_empty() {
        let rest: Vec<LinearAtom> = atoms.iter().filter(|a| a.rel != LinRel::Eq).cloned().collect();
        return substitute_first_eq(&eqs, &rest, dom);
    }
    let (lowers, uppers) = bounds(&atoms);
    let k = atoms.iter().filter(|a| a.rel == LinRel::Ne).count();
    if k == 0 {
        let mut out = Vec::new();
        for u in &lowers {
            for v in &uppers {
                // u < x < v has an integer solution iff u + 1 < v.
                out.push(lit(Rel::Lt, u.add_constant(&BigInt::one()).sub(v), dom));
            }
        }
        return and(out);
    }
    if lowers.is_empty() && uppers.is_empty() {
        return LForm::Top;
    }
    // With k excluded points, one of the k + 1 integers just inside the
    // strongest bound is a witness whenever any witness exists.
    let (anchors, step): (Vec<LinExpr>, i64) = if !lowers.is_empty() {
        (lowers.iter().map(|u| u.add_constant(&BigInt::one())).collect(), 1)
    } else {
        (uppers.iter().map(|v| v.add_constant(&-BigInt::one())).collect(), -1)
    };
    let mut cases = Vec::new();
    for anchor in &anchors {
        for j in 0..=k as i64 {
            let t = anchor.add_constant(&BigInt::from(step * j));
            let lits = atoms.iter().map(|a| LForm::Lit(a.at(&t))).collect();
            cases.push(simplify(&and(lits), dom));
        }
    }
    or(cases)
}
