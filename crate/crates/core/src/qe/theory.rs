use std::fmt;
use std::str::FromStr;

use crate::additive::{cooper, elim_divgroup, elim_qlin, elim_zmod};
use crate::dense::elim_dense;
use crate::error::Error;
use crate::linear::{Domain, LForm, LinearAtom, Style};
use crate::order::{elim_dlo, elim_discrete};
use crate::syntax::Signature;

use super::axioms::{self, Axiom};

/// The eight structures with an implemented eliminator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoryId {
    Dlo,
    ZDiscrete,
    NDiscrete,
    DivGroup,
    ZMod,
    NPres,
    ZPres,
    QLin,
}

impl TheoryId {
    pub const ALL: [TheoryId; 8] = [
        TheoryId::Dlo,
        TheoryId::ZDiscrete,
        TheoryId::NDiscrete,
        TheoryId::DivGroup,
        TheoryId::ZMod,
        TheoryId::NPres,
        TheoryId::ZPres,
        TheoryId::QLin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoryId::Dlo => "dlo",
            TheoryId::ZDiscrete => "zdiscrete",
            TheoryId::NDiscrete => "ndiscrete",
            TheoryId::DivGroup => "divgroup",
            TheoryId::ZMod => "zmod",
            TheoryId::NPres => "npres",
            TheoryId::ZPres => "zpres",
            TheoryId::QLin => "qlin",
        }
    }

    /// The standard model, e.g. `⟨ℤ; <, s⟩`.
    pub fn structure(self) -> &'static str {
        match self {
            TheoryId::Dlo => "⟨ℚ; <⟩",
            TheoryId::ZDiscrete => "⟨ℤ; <, s⟩",
            TheoryId::NDiscrete => "⟨ℕ; 0, s, <⟩",
            TheoryId::DivGroup => "⟨ℚ; 0, −, +⟩",
            TheoryId::ZMod => "⟨ℤ; 0, 1, {≡ₙ}, −, +⟩",
            TheoryId::NPres => "⟨ℕ; 0, 1, <, {≡ₙ}, +⟩",
            TheoryId::ZPres => "⟨ℤ; 0, 1, <, {≡ₙ}, −, +⟩",
            TheoryId::QLin => "⟨ℚ; 0, <, −, +⟩",
        }
    }

    pub fn signature(self) -> Signature {
        Signature::by_name(self.name()).expect("every theory has a signature")
    }

    pub fn domain(self) -> Domain {
        match self {
            TheoryId::Dlo | TheoryId::DivGroup | TheoryId::QLin => Domain::Q,
            TheoryId::ZDiscrete | TheoryId::ZMod | TheoryId::ZPres => Domain::Z,
            TheoryId::NDiscrete | TheoryId::NPres => Domain::N,
        }
    }

    pub fn style(self) -> Style {
        match self {
            TheoryId::Dlo | TheoryId::ZDiscrete | TheoryId::NDiscrete => Style::Successor,
            _ => Style::Additive,
        }
    }

    /// Presburger theories eliminate whole negation-free formulas (Cooper)
    /// instead of DNF clauses.
    pub fn is_presburger(self) -> bool {
        matches!(self, TheoryId::NPres | TheoryId::ZPres)
    }

    /// `∃x ⋀ atoms` for the clause-based theories.
    pub fn eliminate_clause(self, x: &str, atoms: &[LinearAtom]) -> LForm {
        match self {
            TheoryId::Dlo => elim_dlo(x, atoms),
            TheoryId::ZDiscrete | TheoryId::NDiscrete => elim_discrete(x, atoms, self.domain()),
            TheoryId::DivGroup => elim_divgroup(x, atoms),
            TheoryId::ZMod => elim_zmod(x, atoms),
            TheoryId::QLin => elim_qlin(x, atoms),
            TheoryId::NPres | TheoryId::ZPres => crate::additive::elim_pres(x, atoms, self.domain()),
        }
    }

    /// `∃x φ` without going through a DNF: test points over ℚ, Cooper's
    /// method over ℤ and ℕ (every integer theory here is a Presburger fragment).
    pub fn eliminate_formula(self, x: &str, phi: &LForm) -> LForm {
        match self.domain() {
            Domain::Q => elim_dense(x, phi),
            dom => cooper(x, phi, dom),
        }
    }

    pub fn axioms(self) -> Vec<Axiom> {
        axioms::axioms(self)
    }
}

impl fmt::Display for TheoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoryId, Error> {
        TheoryId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnsupportedSymbol { symbol: s.to_string(), context: "theory name".into() })
    }
}
