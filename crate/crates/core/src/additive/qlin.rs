use crate::linear::{and, lit, Domain, LForm, LinRel, LinearAtom, Rel};

use super::{eliminate_by_eq, pick_eq};

/// `∃x ⋀ atoms` over ⟨ℚ; 0, <, −, +⟩ by substitution or Fourier–Motzkin.
pub fn elim_qlin(_x: &str, atoms: &[LinearAtom]) -> LForm {
    if let Some(i) = pick_eq(atoms) {
        return eliminate_by_eq(atoms, i, Domain::Q);
    }
    let lowers: Vec<&LinearAtom> = atoms.iter().filter(|a| a.rel == LinRel::Gt).collect();
    let uppers: Vec<&LinearAtom> = atoms.iter().filter(|a| a.rel == LinRel::Lt).collect();
    let mut out = Vec::new();
    for l in &lowers {
        for u in &uppers {
            // l.rhs / l.coeff < u.rhs / u.coeff
            let e = l.rhs.scale(&u.coeff).sub(&u.rhs.scale(&l.coeff));
            out.push(lit(Rel::Lt, e, Domain::Q));
        }
    }
    and(out)
}
