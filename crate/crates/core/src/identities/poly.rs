//! Polynomials with natural coefficients: the free model of the {1, +, ×}
//! identities.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::syntax::{Func, Term};

/// A power product of variables; the empty monomial is `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<String, BigUint>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(x: &str) -> Monomial {
        Monomial(BTreeMap::from([(x.to_string(), BigUint::one())]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> BigUint {
        self.0.values().sum()
    }

    pub fn exponent(&self, x: &str) -> BigUint {
        self.0.get(x).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BigUint)> {
        self.0.iter()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (x, e) in &other.0 {
            *out.entry(x.clone()).or_default() += e;
        }
        Monomial(out)
    }
}

/// Graded lexicographic: total degree first, then the exponent of the
/// alphabetically first variable where the two differ.
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let vars: BTreeSet<&String> = self.0.keys().chain(other.0.keys()).collect();
            for x in vars {
                match self.exponent(x).cmp(&other.exponent(x)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(x, e)| if e.is_one() { x.clone() } else { format!("{x}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// A polynomial with positive natural coefficients; never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyNF {
    terms: BTreeMap<Monomial, BigUint>,
}

impl PolyNF {
    pub fn constant(n: BigUint) -> PolyNF {
        assert!(!n.is_zero(), "positive reals have no zero");
        PolyNF { terms: BTreeMap::from([(Monomial::one(), n)]) }
    }

    pub fn var(x: &str) -> PolyNF {
        PolyNF { terms: BTreeMap::from([(Monomial::var(x), BigUint::one())]) }
    }

    /// Monomials with their coefficients in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigUint)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PolyNF) -> PolyNF {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_default() += c;
        }
        PolyNF { terms }
    }

    pub fn mul(&self, other: &PolyNF) -> PolyNF {
        let mut terms: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        PolyNF { terms }
    }

    pub fn pow(&self, k: u32) -> PolyNF {
        assert!(k > 0);
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<&BigUint> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && m.is_one() => Some(c),
            _ => None,
        }
    }

    pub fn eval(&self, env: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(BigInt::from(c.clone()));
            for (x, e) in m.iter() {
                v *= env.get(x)?.pow(e.to_i32()?);
            }
            total += v;
        }
        Some(total)
    }
}

impl fmt::Display for PolyNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| match (m.is_one(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => m.to_string(),
                (false, false) => format!("{c} * {m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn unsupported(symbol: &str) -> Error {
    Error::UnsupportedSymbol {
        symbol: symbol.to_string(),
        context: "polynomial normal form".to_string(),
    }
}

/// Normal form of a term over {1, +, ×}; numerals are sums of `1`.
pub fn poly_nf(t: &Term) -> Result<PolyNF> {
    poly_nf_expanding(t, 0)
}

/// As [`poly_nf`], additionally expanding `s ^ k` when the exponent is a
/// ground {1, +, ×} term of value at most `max_exponent`.
pub fn poly_nf_expanding(t: &Term, max_exponent: u32) -> Result<PolyNF> {
    match t {
        Term::Var(x) => Ok(PolyNF::var(x)),
        Term::Num(n) if n.is_zero() => Err(unsupported("0")),
        Term::Num(n) => Ok(PolyNF::constant(n.clone())),
        Term::App(Func::Add, args) => {
            Ok(poly_nf_expanding(&args[0], max_exponent)?.add(&poly_nf_expanding(&args[1], max_exponent)?))
        }
        Term::App(Func::Mul, args) => {
            Ok(poly_nf_expanding(&args[0], max_exponent)?.mul(&poly_nf_expanding(&args[1], max_exponent)?))
        }
        Term::App(Func::Pow, args) if max_exponent > 0 && args[1].is_ground() => {
            let k = poly_nf_expanding(&args[1], max_exponent)?;
            let k = k.as_constant().and_then(|k| k.to_u32()).filter(|&k| k <= max_exponent);
            match k {
                Some(k) => Ok(poly_nf_expanding(&args[0], max_exponent)?.pow(k)),
                None => Err(unsupported("^")),
            }
        }
        Term::App(f, _) => Err(unsupported(f.symbol())),
    }
}
