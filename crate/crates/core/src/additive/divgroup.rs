use crate::linear::{Domain, LForm, LinRel, LinearAtom};

use super::{eliminate_by_eq, pick_eq};

/// `∃x ⋀ atoms` over ⟨ℚ; 0, −, +⟩; atoms are equalities and disequalities.
///
/// With an equality `a·x = t` the other atoms are scaled by `a` and `t` is
/// substituted; otherwise the disequalities exclude finitely many points of
/// an infinite group and the conjunction is true.
pub fn elim_divgroup(_x: &str, atoms: &[LinearAtom]) -> LForm {
    debug_assert!(atoms.iter().all(|a| matches!(a.rel, LinRel::Eq | LinRel::Ne)));
    match pick_eq(atoms) {
        Some(i) => eliminate_by_eq(atoms, i, Domain::Q),
        None => LForm::Top,
    }
}
