//! Axiom lists of the eight theories; schemas are instantiated on demand.

use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{parse_formula, Formula};

use super::TheoryId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Plain(&'static str),
    /// `{n}` marks the schema index.
    Schema(&'static str),
    /// `∀x ⋁_{i<n} x ≡ₙ i`.
    Residues,
    /// `⋀_{0<i<n} i ≢ₙ 0`.
    NonZeroResidues,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axiom {
    pub name: &'static str,
    /// Smallest admissible index for a schema; `None` for a single sentence.
    pub min_index: Option<u64>,
    theory: TheoryId,
    shape: Shape,
}

impl Axiom {
    pub fn is_schema(&self) -> bool {
        self.min_index.is_some()
    }

    /// Source text of the instance with index `n` (ignored for sentences).
    pub fn text(&self, n: u64) -> String {
        match self.shape {
            Shape::Plain(s) => s.to_string(),
            Shape::Schema(s) => s.replace("{n}", &n.to_string()),
            Shape::Residues => {
                let cases: Vec<String> = (0..n).map(|i| format!("x = {i} (mod {n})")).collect();
                format!("forall x. ({})", cases.join(" | "))
            }
            Shape::NonZeroResidues => {
                let cases: Vec<String> = (1..n).map(|i| format!("{i} != 0 (mod {n})")).collect();
                cases.join(" & ")
            }
        }
    }

    /// The schema with a symbolic index.
    pub fn schema_text(&self) -> String {
        match self.shape {
            Shape::Plain(s) => s.to_string(),
            Shape::Schema(s) => s.replace("{n}", "n"),
            Shape::Residues => "forall x. (x = 0 (mod n) | ... | x = n - 1 (mod n))".into(),
            Shape::NonZeroResidues => "1 != 0 (mod n) & ... & n - 1 != 0 (mod n)".into(),
        }
    }

    pub fn instance(&self, n: u64) -> Result<Formula> {
        if let Some(min) = self.min_index {
            if n < min {
                return Err(Error::Precondition(format!("{} needs n >= {min}", self.name)));
            }
        }
        parse_formula(&self.text(n), &self.theory.signature())
    }

    /// The sentence itself, or the instances with index up to `max_n`.
    pub fn instances(&self, max_n: u64) -> Result<Vec<Formula>> {
        match self.min_index {
            None => Ok(vec![self.instance(0)?]),
            Some(min) => (min..=max_n).map(|n| self.instance(n)).collect(),
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.min_index {
            None => write!(f, "{}: {}", self.name, self.schema_text()),
            Some(min) => write!(f, "{}_n: {}   (n >= {min})", self.name, self.schema_text()),
        }
    }
}

const A_LT: Shape = Shape::Plain("forall x y. (x < y -> !y < x)");
const T_LT: Shape = Shape::Plain("forall x y z. (x < y & y < z -> x < z)");
const L_LT: Shape = Shape::Plain("forall x y. (x < y | x = y | y < x)");
const D_LT: Shape = Shape::Plain("forall x y. (x < y -> exists w. (x < w & w < y))");
const U_LT: Shape = Shape::Plain("forall x. exists u. x < u");
const B_LT: Shape = Shape::Plain("forall x. exists v. v < x");
const S_LT: Shape = Shape::Plain("forall x y. (x < y <-> (s(x) < y | s(x) = y))");
const S_LT_PLUS: Shape = Shape::Plain("forall x y. (x < y <-> (x + 1 < y | x + 1 = y))");
const P_LT: Shape = Shape::Plain("forall x. exists w. s(w) = x");
const P_LT_PLUS: Shape = Shape::Plain("forall x. exists w. w + 1 = x");
const Z_LT: Shape = Shape::Plain("forall x. 0 <= x");
const P0_LT: Shape = Shape::Plain("forall x. exists w. (0 < x -> s(w) = x)");
const P0_LT_PLUS: Shape = Shape::Plain("forall x. exists w. (0 < x -> w + 1 = x)");
const A_ADD: Shape = Shape::Plain("forall x y z. x + (y + z) = (x + y) + z");
const C_ADD: Shape = Shape::Plain("forall x y. x + y = y + x");
const U_ADD: Shape = Shape::Plain("forall x. x + 0 = x");
const I_ADD: Shape = Shape::Plain("forall x. x + -x = 0");
const N_ADD: Shape = Shape::Plain("exists u. u != 0");
const T_ADD: Shape = Shape::Schema("forall x. ({n} * x = 0 -> x = 0)");
const D_ADD: Shape = Shape::Schema("forall x. exists v. x = {n} * v");
const E_HAT: Shape = Shape::Schema("forall x y. (x = y (mod {n}) <-> exists u. x = y + {n} * u)");
// Over ℕ the difference may point either way.
const E_HAT_N: Shape =
    Shape::Schema("forall x y. (x = y (mod {n}) <-> exists u. (x = y + {n} * u | y = x + {n} * u))");
const M_ADD: Shape = Shape::Plain("forall x y. (x < y -> exists v. x + v = y)");
const O_ADD: Shape = Shape::Plain("forall x y z. (x < y -> x + z < y + z)");

pub(super) fn axioms(th: TheoryId) -> Vec<Axiom> {
    let plain = |name, shape| Axiom { name, min_index: None, theory: th, shape };
    let schema = |name, min, shape| Axiom { name, min_index: Some(min), theory: th, shape };
    let order = || vec![plain("A<", A_LT), plain("T<", T_LT), plain("L<", L_LT)];
    let group = || vec![plain("A+", A_ADD), plain("C+", C_ADD), plain("U+", U_ADD)];
    let mut out = Vec::new();
    match th {
        TheoryId::Dlo => {
            out.extend(order());
            out.extend([plain("D<", D_LT), plain("U<", U_LT), plain("B<", B_LT)]);
        }
        TheoryId::ZDiscrete => {
            out.extend(order());
            out.extend([plain("S<", S_LT), plain("P<", P_LT)]);
        }
        TheoryId::NDiscrete => {
            out.extend(order());
            out.extend([plain("S<", S_LT), plain("Z<", Z_LT), plain("P<0", P0_LT)]);
        }
        TheoryId::DivGroup => {
            out.extend(group());
            out.extend([
                plain("I+", I_ADD),
                plain("N+", N_ADD),
                schema("T+", 1, T_ADD),
                schema("D+", 1, D_ADD),
            ]);
        }
        TheoryId::ZMod => {
            out.extend(group());
            out.extend([
                plain("I+", I_ADD),
                schema("T+", 1, T_ADD),
                schema("E^+", 2, E_HAT),
                schema("E+", 2, Shape::Residues),
                schema("E'+", 2, Shape::NonZeroResidues),
            ]);
        }
        TheoryId::NPres => {
            out.extend(order());
            out.extend([plain("S<", S_LT_PLUS), plain("Z<", Z_LT), plain("P<0", P0_LT_PLUS)]);
            out.extend(group());
            out.extend([
                schema("E^+", 2, E_HAT_N),
                schema("E+", 2, Shape::Residues),
                plain("M+", M_ADD),
                plain("O+", O_ADD),
            ]);
        }
        TheoryId::ZPres => {
            out.extend(order());
            out.extend([plain("S<", S_LT_PLUS), plain("P<", P_LT_PLUS)]);
            out.extend(group());
            out.extend([plain("I+", I_ADD), schema("E+", 2, Shape::Residues), plain("O+", O_ADD)]);
        }
        TheoryId::QLin => {
            out.extend(order());
            out.extend(group());
            out.extend([
                plain("I+", I_ADD),
                plain("N+", N_ADD),
                schema("D+", 1, D_ADD),
                plain("O+", O_ADD),
            ]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_have_the_documented_shape() {
        let names = |th: TheoryId| th.axioms().iter().map(|a| a.name).collect::<Vec<_>>();
        assert_eq!(names(TheoryId::Dlo), ["A<", "T<", "L<", "D<", "U<", "B<"]);
        assert_eq!(names(TheoryId::DivGroup), ["A+", "C+", "U+", "I+", "N+", "T+", "D+"]);
        assert_eq!(names(TheoryId::ZMod), ["A+", "C+", "U+", "I+", "T+", "E^+", "E+", "E'+"]);
    }

    #[test]
    fn every_instance_parses() {
        for th in TheoryId::ALL {
            for ax in th.axioms() {
                let fs = ax.instances(8).unwrap_or_else(|e| panic!("{th} {}: {e}", ax.name));
                assert!(!fs.is_empty());
            }
        }
    }

    #[test]
    fn residue_schema_text() {
        let ax = TheoryId::ZMod.axioms().into_iter().find(|a| a.name == "E+").unwrap();
        assert_eq!(ax.text(3), "forall x. (x = 0 (mod 3) | x = 1 (mod 3) | x = 2 (mod 3))");
        assert!(ax.instance(1).is_err());
    }
}
