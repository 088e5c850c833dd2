use num_bigint::BigInt;
use num_traits::One;

use crate::linear::{
    and, lcm_all, or, simplify, Domain, LForm, LinExpr, LinRel, LinearAtom, Lit, Rel,
};

use super::{crt_condition, eliminate_by_eq, lcm_of_coeffs, pick_eq, CongruenceSystem};

/// `∃x ⋀ atoms` over ⟨ℤ; 0, 1, {≡ₙ}, −, +⟩.
///
/// Equalities are substituted. Otherwise each `a·x ≢ r (mod n)` splits into
/// the `n - 1` congruences `a·x ≡ r + i`, every branch is scaled to a common
/// coefficient `q` (so `y = q·x` satisfies `y ≡ 0 (mod q)`) and the
/// resulting congruence system is decided by [`crt_condition`]. When that
/// branching would be large, the clause is instead tested at one point of
/// every residue class modulo the lcm of the moduli, which is exact because
/// the congruence part is periodic and disequalities remove finitely many
/// points.
pub fn elim_zmod(x: &str, atoms: &[LinearAtom]) -> LForm {
    if let Some(i) = pick_eq(atoms) {
        return eliminate_by_eq(atoms, i, Domain::Z);
    }
    let mut branching = 1usize;
    for a in atoms {
        if let LinRel::NotCong(m) = &a.rel {
            let k = usize::try_from(m - 1u32).unwrap_or(usize::MAX);
            branching = branching.saturating_mul(k);
        }
    }
    if branching > MAX_BRANCHES {
        return by_residues(x, atoms);
    }
    let mut branches: Vec<Vec<LinearAtom>> = vec![Vec::new()];
    for a in atoms {
        match &a.rel {
            LinRel::Cong(_) => branches.iter_mut().for_each(|b| b.push(a.clone())),
            LinRel::NotCong(m) => {
                let mut next = Vec::new();
                let mut i = BigInt::one();
                while &i < m {
                    let shifted = LinearAtom {
                        rel: LinRel::Cong(m.clone()),
                        rhs: a.rhs.add_constant(&i),
                        ..a.clone()
                    };
                    for b in &branches {
                        let mut b = b.clone();
                        b.push(shifted.clone());
                        next.push(b);
                    }
                    i += 1;
                }
                branches = next;
            }
            // Disequalities are moot once a residue class is non-empty.
            _ => {}
        }
    }
    or(branches.iter().map(|b| solve_congruences(b)).collect())
}

const MAX_BRANCHES: usize = 256;

fn by_residues(_x: &str, atoms: &[LinearAtom]) -> LForm {
    let q = lcm_of_coeffs(atoms);
    let mut unit = Vec::new();
    let mut moduli = vec![q.clone()];
    for a in atoms {
        if matches!(a.rel, LinRel::Cong(_) | LinRel::NotCong(_)) {
            let s = a.scaled(&(&q / &a.coeff));
            if let LinRel::Cong(m) | LinRel::NotCong(m) = &s.rel {
                moduli.push(m.clone());
            }
            unit.push(LinearAtom { coeff: BigInt::one(), ..s });
        }
    }
    let d = lcm_all(moduli.iter());
    let mut cases = Vec::new();
    let mut j = BigInt::one();
    while j <= d {
        let at = LinExpr::constant(j.clone());
        let mut conj: Vec<LForm> = unit.iter().map(|a| LForm::Lit(a.at(&at))).collect();
        if !q.is_one() {
            conj.push(LForm::Lit(Lit::new(Rel::Cong(q.clone()), at.clone())));
        }
        let case = simplify(&and(conj), Domain::Z);
        if case == LForm::Top {
            return LForm::Top;
        }
        cases.push(case);
        j += 1;
    }
    or(cases)
}

fn solve_congruences(congs: &[LinearAtom]) -> LForm {
    let q = lcm_of_coeffs(congs);
    let mut items = Vec::new();
    if !q.is_one() {
        items.push((q.clone(), LinExpr::zero()));
    }
    for a in congs {
        let k = &q / &a.coeff;
        let LinRel::Cong(m) = &a.rel else { unreachable!() };
        items.push((m * &k, a.rhs.scale(&k)));
    }
    crt_condition(&CongruenceSystem::new(items))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{to_formula, LinExpr, Style};

    #[test]
    fn evenness() {
        // x = v + v, solved for v: 2·v = x.
        let atoms = [LinearAtom::new(2, "v", LinRel::Eq, LinExpr::var("x"))];
        let out = to_formula(&elim_zmod("v", &atoms), Style::Additive);
        assert_eq!(out.to_string(), "x = 0 (mod 2)");
    }

    #[test]
    fn coprime_moduli_with_exclusion() {
        let atoms = [
            LinearAtom::new(1, "x", LinRel::Cong(2.into()), LinExpr::constant(1)),
            LinearAtom::new(1, "x", LinRel::Cong(3.into()), LinExpr::constant(2)),
            LinearAtom::new(1, "x", LinRel::Ne, LinExpr::var("y")),
        ];
        assert_eq!(elim_zmod("x", &atoms), LForm::Top);
    }

    #[test]
    fn parity_obstruction() {
        let atoms = [LinearAtom::new(2, "x", LinRel::Eq, LinExpr::constant(1))];
        assert_eq!(elim_zmod("x", &atoms), LForm::Bot);
    }

    #[test]
    fn negated_congruence_branches() {
        // 2x ≢ 0 (mod 4) ∧ x ≡ 0 (mod 2) is unsatisfiable.
        let atoms = [
            LinearAtom::new(2, "x", LinRel::NotCong(4.into()), LinExpr::zero()),
            LinearAtom::new(1, "x", LinRel::Cong(2.into()), LinExpr::zero()),
        ];
        assert_eq!(elim_zmod("x", &atoms), LForm::Bot);
    }

    #[test]
    fn many_negated_congruences_use_residues() {
        // x avoids every residue mod 8: unsatisfiable, but 7^8 branches.
        let all: Vec<LinearAtom> = (0..8)
            .map(|i| LinearAtom::new(1, "x", LinRel::NotCong(8.into()), LinExpr::constant(i)))
            .collect();
        assert_eq!(elim_zmod("x", &all), LForm::Bot);
        assert_eq!(elim_zmod("x", &all[1..]), LForm::Top);
    }
}
