//! Signatures and well-formedness checks.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::ast::{Atom, Formula, Func, Pred, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Constant {
    Zero,
    One,
    MinusOne,
}

/// The non-logical symbols a formula may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub name: String,
    pub constants: BTreeSet<Constant>,
    pub functions: BTreeSet<Func>,
    /// `<` is declared.
    pub order: bool,
    /// The congruences `≡ₙ` for every `n > 1` are declared.
    pub congruence: bool,
    /// `k * t` with a numeral `k` is accepted as the abbreviation `t + ... + t`.
    pub scalar_mul: bool,
    /// Bare identifiers are propositional letters.
    pub propositional: bool,
}

impl Signature {
    fn build(
        name: &str,
        constants: &[Constant],
        functions: &[Func],
        order: bool,
        congruence: bool,
    ) -> Signature {
        let functions: BTreeSet<Func> = functions.iter().copied().collect();
        Signature {
            name: name.to_string(),
            constants: constants.iter().copied().collect(),
            scalar_mul: functions.contains(&Func::Add) && !functions.contains(&Func::Mul),
            functions,
            order,
            congruence,
            propositional: false,
        }
    }

    /// ⟨ℚ; <⟩.
    pub fn dlo() -> Signature {
        Signature::build("dlo", &[], &[], true, false)
    }

    /// ⟨ℤ; <, s⟩.
    pub fn zdiscrete() -> Signature {
        Signature::build("zdiscrete", &[], &[Func::Succ], true, false)
    }

    /// ⟨ℕ; 0, s, <⟩.
    pub fn ndiscrete() -> Signature {
        Signature::build("ndiscrete", &[Constant::Zero], &[Func::Succ], true, false)
    }

    /// ⟨ℚ; 0, −, +⟩.
    pub fn divgroup() -> Signature {
        Signature::build(
            "divgroup",
            &[Constant::Zero],
            &[Func::Neg, Func::Add],
            false,
            false,
        )
    }

    /// ⟨ℤ; 0, 1, {≡ₙ}, −, +⟩.
    pub fn zmod() -> Signature {
        Signature::build(
            "zmod",
            &[Constant::Zero, Constant::One],
            &[Func::Neg, Func::Add],
            false,
            true,
        )
    }

    /// ⟨ℕ; 0, 1, <, {≡ₙ}, +⟩.
    pub fn npres() -> Signature {
        Signature::build(
            "npres",
            &[Constant::Zero, Constant::One],
            &[Func::Add],
            true,
            true,
        )
    }

    /// ⟨ℤ; 0, 1, <, {≡ₙ}, −, +⟩.
    pub fn zpres() -> Signature {
        Signature::build(
            "zpres",
            &[Constant::Zero, Constant::One],
            &[Func::Neg, Func::Add],
            true,
            true,
        )
    }

    /// ⟨ℚ; 0, <, −, +⟩.
    pub fn qlin() -> Signature {
        Signature::build(
            "qlin",
            &[Constant::Zero],
            &[Func::Neg, Func::Add],
            true,
            false,
        )
    }

    /// Propositional letters with the Boolean connectives only.
    pub fn propositional() -> Signature {
        let mut sig = Signature::build("prop", &[], &[], false, false);
        sig.propositional = true;
        sig
    }

    /// Identity fragment over ℝ⁺; `ops` is a subset of `+`, `*`, `^`.
    pub fn identity(name: &str, one: bool, ops: &[Func]) -> Signature {
        let consts: &[Constant] = if one { &[Constant::One] } else { &[] };
        let mut sig = Signature::build(name, consts, ops, false, false);
        sig.scalar_mul = false;
        sig
    }

    /// ⟨ℝ; 0, 1, <, −, +, ×⟩, used to render the quadratic showcase.
    pub fn ordered_field() -> Signature {
        let mut sig = Signature::build(
            "ordered-field",
            &[Constant::Zero, Constant::One],
            &[Func::Neg, Func::Add, Func::Mul],
            true,
            false,
        );
        sig.scalar_mul = false;
        sig
    }

    /// Every symbol the grammar knows; used when no signature is imposed.
    pub fn permissive() -> Signature {
        let mut sig = Signature::build(
            "any",
            &[Constant::Zero, Constant::One, Constant::MinusOne],
            &[Func::Succ, Func::Neg, Func::Add, Func::Mul, Func::Pow],
            true,
            true,
        );
        sig.propositional = true;
        sig
    }

    pub fn by_name(name: &str) -> Option<Signature> {
        Some(match name {
            "dlo" => Signature::dlo(),
            "zdiscrete" => Signature::zdiscrete(),
            "ndiscrete" => Signature::ndiscrete(),
            "divgroup" => Signature::divgroup(),
            "zmod" => Signature::zmod(),
            "npres" => Signature::npres(),
            "zpres" => Signature::zpres(),
            "qlin" => Signature::qlin(),
            "prop" => Signature::propositional(),
            _ => return None,
        })
    }

    pub fn has_const(&self, c: Constant) -> bool {
        self.constants.contains(&c)
    }

    pub fn has_func(&self, f: Func) -> bool {
        self.functions.contains(&f)
    }

    fn reject(&self, symbol: impl Into<String>) -> Error {
        Error::Signature {
            symbol: symbol.into(),
            signature: self.name.clone(),
        }
    }

    /// Checks that every symbol of `t` is declared.
    pub fn check_term(&self, t: &Term) -> Result<()> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Num(n) => self.check_numeral(n),
            Term::App(Func::Mul, args) if !self.has_func(Func::Mul) && self.scalar_mul => {
                match (&args[0], &args[1]) {
                    (Term::Num(_), other) | (other, Term::Num(_)) => self.check_term(other),
                    _ => Err(self.reject("*")),
                }
            }
            Term::App(f, args) => {
                if !self.has_func(*f) {
                    return Err(self.reject(f.symbol()));
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    fn check_numeral(&self, n: &BigUint) -> Result<()> {
        let ok = if n.is_zero() {
            self.has_const(Constant::Zero)
        } else if n.is_one() {
            self.has_const(Constant::One)
        } else {
            self.has_const(Constant::One) && self.has_func(Func::Add)
        };
        if ok {
            Ok(())
        } else {
            Err(self.reject(n.to_string()))
        }
    }

    pub fn check_atom(&self, a: &Atom) -> Result<()> {
        match &a.pred {
            Pred::Eq => {}
            Pred::Lt if !self.order => return Err(self.reject("<")),
            Pred::Lt => {}
            Pred::Cong(n) => {
                if !self.congruence {
                    return Err(self.reject(format!("(mod {n})")));
                }
                if *n < BigUint::from(2u32) {
                    return Err(self.reject(format!("(mod {n})")));
                }
            }
        }
        self.check_term(&a.lhs)?;
        self.check_term(&a.rhs)
    }

    /// Checks that every symbol of `f` is declared.
    pub fn check_formula(&self, f: &Formula) -> Result<()> {
        match f {
            Formula::Top | Formula::Bot => Ok(()),
            Formula::Prop(p) => {
                if self.propositional {
                    Ok(())
                } else {
                    Err(self.reject(p.clone()))
                }
            }
            Formula::Atom(a) => self.check_atom(a),
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
                self.check_formula(g)
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().try_for_each(|g| self.check_formula(g)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                self.check_formula(a)?;
                self.check_formula(b)
            }
        }
    }
}
