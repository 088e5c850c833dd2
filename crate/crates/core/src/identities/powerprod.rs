//! Power products: the free model of the {1, ×, exp} identities.
//!
//! Every such term equals a product of factors `x^e`, where `x` is a variable
//! and `e` is again a power product (`1` for a bare variable). Towers flatten
//! by `(x^y)^z = x^(y·z)` and exponents distribute over products.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::syntax::{Func, Term};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub base: String,
    pub exponent: PowerProductNF,
}

/// Multiset of factors; the empty product is `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerProductNF {
    factors: BTreeMap<Factor, u32>,
}

impl PowerProductNF {
    pub fn one() -> PowerProductNF {
        PowerProductNF::default()
    }

    pub fn var(x: &str) -> PowerProductNF {
        let f = Factor { base: x.to_string(), exponent: PowerProductNF::one() };
        PowerProductNF { factors: BTreeMap::from([(f, 1)]) }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors with their multiplicities, sorted by (base, exponent).
    pub fn factors(&self) -> impl Iterator<Item = (&Factor, u32)> {
        self.factors.iter().map(|(f, &k)| (f, k))
    }

    pub fn mul(&self, other: &PowerProductNF) -> PowerProductNF {
        let mut factors = self.factors.clone();
        for (f, k) in &other.factors {
            *factors.entry(f.clone()).or_default() += k;
        }
        PowerProductNF { factors }
    }

    /// `self ^ e`: every exponent is multiplied by `e`.
    pub fn pow(&self, e: &PowerProductNF) -> PowerProductNF {
        let factors = self
            .factors
            .iter()
            .map(|(f, &k)| {
                let g = Factor { base: f.base.clone(), exponent: f.exponent.mul(e) };
                (g, k)
            })
            .collect();
        PowerProductNF { factors }
    }

    /// A term denoting the same value.
    pub fn to_term(&self) -> Term {
        let mut parts = Vec::new();
        for (f, k) in self.factors() {
            let base = Term::var(f.base.clone());
            let t = if f.exponent.is_one() { base } else { Term::pow(base, f.exponent.to_term()) };
            parts.extend(std::iter::repeat(t).take(k as usize));
        }
        parts.into_iter().reduce(Term::mul).unwrap_or_else(|| Term::num(1))
    }
}

impl fmt::Display for PowerProductNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (fac, k) in self.factors() {
            let s = if fac.exponent.is_one() {
                fac.base.clone()
            } else if fac.exponent.factors.len() == 1
                && fac.exponent.factors.values().all(|&k| k == 1)
                && fac.exponent.factors.keys().all(|g| g.exponent.is_one())
            {
                format!("{}^{}", fac.base, fac.exponent)
            } else {
                format!("{}^({})", fac.base, fac.exponent)
            };
            parts.extend(std::iter::repeat(s).take(k as usize));
        }
        write!(f, "{}", parts.join(" * "))
    }
}

fn unsupported(symbol: &str) -> Error {
    Error::UnsupportedSymbol {
        symbol: symbol.to_string(),
        context: "power-product normal form".to_string(),
    }
}

/// Normal form of a term over {1, ×, exp}.
pub fn pp_nf(t: &Term) -> Result<PowerProductNF> {
    match t {
        Term::Var(x) => Ok(PowerProductNF::var(x)),
        Term::Num(n) if n.is_one() => Ok(PowerProductNF::one()),
        Term::Num(n) => Err(unsupported(&n.to_string())),
        Term::App(Func::Mul, args) => Ok(pp_nf(&args[0])?.mul(&pp_nf(&args[1])?)),
        Term::App(Func::Pow, args) => Ok(pp_nf(&args[0])?.pow(&pp_nf(&args[1])?)),
        Term::App(f, _) => Err(unsupported(f.symbol())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_term, Signature};

    fn nf(s: &str) -> PowerProductNF {
        pp_nf(&parse_term(s, &Signature::permissive()).unwrap()).unwrap()
    }

    #[test]
    fn documented_forms() {
        assert_eq!(nf("(x ^ y) ^ z"), nf("(x ^ z) ^ y"));
        assert_eq!(nf("(x ^ y) ^ z").to_string(), "x^(y * z)");
        assert_eq!(nf("(x * y) ^ z"), nf("x ^ z * y ^ z"));
        assert_eq!(nf("1 ^ x"), PowerProductNF::one());
        assert_eq!(nf("x ^ 1"), nf("x"));
        assert_eq!(nf("x ^ (y * z)"), nf("(x ^ y) ^ z"));
    }

    #[test]
    fn multiplicities_are_kept() {
        assert_ne!(nf("x * x"), nf("x"));
        assert_eq!(nf("x ^ y * x ^ y").to_string(), "x^y * x^y");
        assert_ne!(nf("x ^ y * x ^ z"), nf("x ^ (y * z)"));
    }

    #[test]
    fn round_trip_through_terms() {
        for s in ["x ^ (y ^ z) * y", "(x * y ^ x) ^ (z * z)", "1"] {
            let n = nf(s);
            assert_eq!(pp_nf(&n.to_term()).unwrap(), n, "{s}");
        }
    }

    #[test]
    fn addition_is_rejected() {
        let t = parse_term("x + y", &Signature::permissive()).unwrap();
        assert!(matches!(pp_nf(&t), Err(Error::UnsupportedSymbol { .. })));
    }
}
