//! Identities of the positive reals.
//!
//! The fragments {+}, {1, ×}, {1, exp}, {1, +, ×} and {1, ×, exp} are decided
//! by normal forms. In the full {1, +, ×, exp} signature a sound normal form is
//! tried first and random high-precision evaluation otherwise.

mod eval;
mod exppoly;
mod numeric;
mod poly;
mod powerprod;
mod prove;
mod wilkie;

use std::fmt;
use std::str::FromStr;

pub use eval::eval_exact;
pub use exppoly::{exp_nf, ExpPoly};
pub use numeric::{
    eval_numeric, numeric_falsify, numeric_falsify_seeded, relative_difference, Approx, Counterexample,
    DEFAULT_TOL, PRECISION,
};
pub use poly::{poly_nf, poly_nf_expanding, Monomial, PolyNF};
pub use powerprod::{pp_nf, Factor, PowerProductNF};
pub use prove::{prove_identity, prove_identity_with, ProveOptions, Value, Verdict};
pub use wilkie::{
    wilkie_a, wilkie_b, wilkie_c, wilkie_d, wilkie_e, wilkie_check, wilkie_identity, Exponent, WILKIE_TRIALS,
};

use crate::error::{Error, Result};
use crate::syntax::{Func, Signature, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    /// ⟨ℝ⁺; +⟩
    Plus,
    /// ⟨ℝ⁺; 1, ×⟩
    Times,
    /// ⟨ℝ⁺; 1, exp⟩
    Exp1,
    /// ⟨ℝ⁺; 1, +, ×⟩
    PlusTimes,
    /// ⟨ℝ⁺; 1, ×, exp⟩
    TimesExp,
    /// ⟨ℝ⁺; 1, +, ×, exp⟩
    Hsa,
}

impl Fragment {
    pub const ALL: [Fragment; 6] = [
        Fragment::Plus,
        Fragment::Times,
        Fragment::Exp1,
        Fragment::PlusTimes,
        Fragment::TimesExp,
        Fragment::Hsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fragment::Plus => "plus",
            Fragment::Times => "times",
            Fragment::Exp1 => "exp1",
            Fragment::PlusTimes => "plustimes",
            Fragment::TimesExp => "timesexp",
            Fragment::Hsa => "hsa",
        }
    }

    /// Whether normal-form equality decides validity.
    pub fn is_complete(self) -> bool {
        self != Fragment::Hsa
    }

    pub fn signature(self) -> Signature {
        let (one, ops): (bool, &[Func]) = match self {
            Fragment::Plus => (false, &[Func::Add]),
            Fragment::Times => (true, &[Func::Mul]),
            Fragment::Exp1 => (true, &[Func::Pow]),
            Fragment::PlusTimes => (true, &[Func::Add, Func::Mul]),
            Fragment::TimesExp => (true, &[Func::Mul, Func::Pow]),
            Fragment::Hsa => (true, &[Func::Add, Func::Mul, Func::Pow]),
        };
        Signature::identity(self.name(), one, ops)
    }

    /// Checks that `t` is a term of this fragment.
    pub fn check(self, t: &Term) -> Result<()> {
        self.signature().check_term(t).map_err(|e| match e {
            Error::Signature { symbol, .. } => Error::SignatureMismatch {
                symbol,
                fragment: self.name().to_string(),
            },
            other => other,
        })
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fragment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Fragment> {
        Fragment::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::UnsupportedSymbol {
            symbol: s.to_string(),
            context: "identity fragments".to_string(),
        })
    }
}

/// 1 when every base of a power is a variable or variable-free, 2 when every
/// base is of level 1, and 3 for anything higher.
pub fn level(t: &Term) -> u8 {
    fn walk(t: &Term) -> u8 {
        match t {
            Term::Var(_) | Term::Num(_) => 1,
            Term::App(Func::Pow, args) => {
                let base = &args[0];
                let here = if matches!(base, Term::Var(_)) || base.is_ground() { 1 } else { (walk(base) + 1).min(3) };
                here.max(walk(base)).max(walk(&args[1]))
            }
            Term::App(_, args) => args.iter().map(walk).max().unwrap_or(1),
        }
    }
    walk(t)
}
