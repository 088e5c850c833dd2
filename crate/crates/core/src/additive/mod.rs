//! Eliminators for additive structures.

mod crt;
mod divgroup;
mod presburger;
mod qlin;
mod zmod;

pub use crt::{crt_condition, CongruenceSystem};
pub use divgroup::elim_divgroup;
pub use presburger::{cooper, elim_pres};
pub use qlin::elim_qlin;
pub use zmod::elim_zmod;

use num_bigint::BigInt;
use num_traits::One;

use crate::linear::{and, simplify, Domain, LForm, LinRel, LinearAtom, Lit, Rel};

/// The equality used for substitution: smallest coefficient, first on ties.
pub(crate) fn pick_eq(atoms: &[LinearAtom]) -> Option<usize> {
    atoms
        .iter()
        .enumerate()
        .filter(|(_, a)| a.rel == LinRel::Eq)
        .min_by(|(i, a), (j, b)| a.coeff.cmp(&b.coeff).then(i.cmp(j)))
        .map(|(i, _)| i)
}

/// `other[x := R/a]` for the equality `a·x = R`, multiplied through by `a`.
pub(crate) fn substitute_into(eq: &LinearAtom, other: &LinearAtom) -> Lit {
    other.scaled(&eq.coeff).at(&eq.rhs.scale(&other.coeff))
}

/// Over the integers `a·x = R` is solvable iff `a | R`.
pub(crate) fn divisibility(eq: &LinearAtom, dom: Domain) -> LForm {
    if dom.is_integral() && !eq.coeff.is_one() {
        LForm::Lit(Lit::new(Rel::Cong(eq.coeff.clone()), eq.rhs.clone()))
    } else {
        LForm::Top
    }
}

/// Eliminates `x` from a conjunction containing the equality `atoms[i]`.
pub(crate) fn eliminate_by_eq(atoms: &[LinearAtom], i: usize, dom: Domain) -> LForm {
    let eq = &atoms[i];
    let mut out = vec![divisibility(eq, dom)];
    for (j, a) in atoms.iter().enumerate() {
        if j != i {
            out.push(LForm::Lit(substitute_into(eq, a)));
        }
    }
    simplify(&and(out), dom)
}

pub(crate) fn lcm_of_coeffs(atoms: &[LinearAtom]) -> BigInt {
    crate::linear::lcm_all(atoms.iter().map(|a| &a.coeff))
}
