//! A sound (not complete) normal form for terms over {1, +, ×, exp}.
//!
//! Terms become sums of monomials with natural coefficients, where a monomial
//! is a product of `b^E` with `b` a variable, a prime, or an irreducible sum,
//! and `E` again such a sum. Rules used: distributivity, `x^(E+F) = x^E·x^F`,
//! `(x^E)^F = x^(E·F)`, `(a·b)^F = a^F·b^F`, `1^F = 1`, and expansion of
//! `S^k` for a small natural `k`. Equal forms imply equal functions on ℝ⁺;
//! unequal forms prove nothing.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::syntax::{Func, Term};

/// Largest natural exponent expanded into a product.
pub const MAX_EXPANSION: u32 = 64;
/// Largest number of monomials an intermediate sum may have.
pub const MAX_TERMS: usize = 20_000;
/// Numeric bases above this are kept whole instead of factored.
const MAX_FACTORED: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    Var(String),
    Prime(BigUint),
    Sum(ExpPoly),
}

/// Product of powers; exponents are non-zero and, for non-variable bases,
/// without constant part.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpMono {
    factors: BTreeMap<Base, ExpPoly>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpPoly {
    terms: BTreeMap<ExpMono, BigUint>,
}

impl ExpMono {
    fn single(base: Base, exponent: ExpPoly) -> ExpMono {
        ExpMono { factors: BTreeMap::from([(base, exponent)]) }
    }

    fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    fn mul(&self, other: &ExpMono) -> ExpMono {
        let mut factors = self.factors.clone();
        for (b, e) in &other.factors {
            let merged = match factors.remove(b) {
                Some(old) => old.add(e),
                None => e.clone(),
            };
            factors.insert(b.clone(), merged);
        }
        ExpMono { factors }
    }
}

impl ExpPoly {
    fn constant(n: BigUint) -> ExpPoly {
        debug_assert!(!n.is_zero());
        ExpPoly { terms: BTreeMap::from([(ExpMono::default(), n)]) }
    }

    fn one() -> ExpPoly {
        ExpPoly::constant(BigUint::one())
    }

    fn mono(m: ExpMono) -> ExpPoly {
        ExpPoly { terms: BTreeMap::from([(m, BigUint::one())]) }
    }

    fn add(&self, other: &ExpPoly) -> ExpPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_default() += c;
        }
        ExpPoly { terms }
    }

    fn mul(&self, other: &ExpPoly) -> Option<ExpPoly> {
        if self.terms.len() * other.terms.len() > MAX_TERMS * 4 {
            return None;
        }
        let mut terms: BTreeMap<ExpMono, BigUint> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        (terms.len() <= MAX_TERMS).then_some(ExpPoly { terms })
    }

    /// Splits off the coefficient of the monomial `1`.
    fn split_constant(&self) -> (BigUint, Option<ExpPoly>) {
        let mut rest = self.clone();
        let k = rest.terms.remove(&ExpMono::default()).unwrap_or_default();
        (k, (!rest.terms.is_empty()).then_some(rest))
    }

    fn pow_nat(&self, k: &BigUint) -> Option<ExpPoly> {
        let k = k.to_u32().filter(|&k| k <= MAX_EXPANSION)?;
        let mut acc = ExpPoly::one();
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Some(acc)
    }

    /// `self ^ r` for a non-constant `r` without constant part.
    fn pow_sym(&self, r: &ExpPoly) -> Option<ExpPoly> {
        let content = self.terms.values().fold(BigUint::zero(), |g, c| g.gcd(c));
        let mut out = numeral_pow(&content, r)?;
        if self.terms.len() == 1 {
            let m = self.terms.keys().next().unwrap();
            for (b, e) in &m.factors {
                let p = ExpPoly::mono(ExpMono::single(b.clone(), e.mul(r)?));
                out = out.mul(&p)?;
            }
        } else {
            let primitive = ExpPoly {
                terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &content)).collect(),
            };
            out = out.mul(&ExpPoly::mono(ExpMono::single(Base::Sum(primitive), r.clone())))?;
        }
        Some(out)
    }

    fn pow(&self, e: &ExpPoly) -> Option<ExpPoly> {
        let (k, rest) = e.split_constant();
        let mut out = if k.is_zero() { ExpPoly::one() } else { self.pow_nat(&k)? };
        if let Some(r) = rest {
            out = out.mul(&self.pow_sym(&r)?)?;
        }
        Some(out)
    }
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `c ^ r` as a product of prime powers.
fn numeral_pow(c: &BigUint, r: &ExpPoly) -> Option<ExpPoly> {
    if c.is_one() {
        return Some(ExpPoly::one());
    }
    let factors = match c.to_u64().filter(|&n| n <= MAX_FACTORED) {
        Some(n) => prime_factors(n).into_iter().map(|(p, k)| (BigUint::from(p), k)).collect(),
        None => vec![(c.clone(), 1)],
    };
    let mut m = ExpMono::default();
    for (p, k) in factors {
        let e = r.mul(&ExpPoly::constant(BigUint::from(k)))?;
        m = m.mul(&ExpMono::single(Base::Prime(p), e));
    }
    Some(ExpPoly::mono(m))
}

/// Normal form of a term over {1, +, ×, exp}; `None` when the term uses
/// other symbols or an expansion exceeds the size guards.
pub fn exp_nf(t: &Term) -> Option<ExpPoly> {
    match t {
        Term::Var(x) => Some(ExpPoly::mono(ExpMono::single(Base::Var(x.clone()), ExpPoly::one()))),
        Term::Num(n) if n.is_zero() => None,
        Term::Num(n) => Some(ExpPoly::constant(n.clone())),
        Term::App(Func::Add, args) => Some(exp_nf(&args[0])?.add(&exp_nf(&args[1])?)),
        Term::App(Func::Mul, args) => exp_nf(&args[0])?.mul(&exp_nf(&args[1])?),
        Term::App(Func::Pow, args) => exp_nf(&args[0])?.pow(&exp_nf(&args[1])?),
        Term::App(..) => None,
    }
}

impl ExpPoly {
    pub fn is_constant_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }
}
