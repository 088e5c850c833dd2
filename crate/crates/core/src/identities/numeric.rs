//! High-precision evaluation over ℝ⁺ and random falsification.

use std::collections::BTreeMap;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::syntax::{Func, Term};

/// Working precision in bits (about 57 decimal digits).
pub const PRECISION: usize = 192;
/// Default relative tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Binary exponents beyond this count as overflow.
const MAX_EXPONENT: i64 = 1 << 24;

const RM: RoundingMode = RoundingMode::ToEven;
/// Correctly rounded `pow` never terminates when the result is exactly
/// representable (e.g. `4^(1/2)`), so powers skip the final rounding.
const RM_POW: RoundingMode = RoundingMode::None;

/// A high-precision number.
#[derive(Debug, Clone)]
pub struct Approx(BigFloat);

impl Approx {
    pub fn as_bigfloat(&self) -> &BigFloat {
        &self.0
    }
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut cc = Consts::new().map_err(|_| fmt::Error)?;
        let s = self.0.format(Radix::Dec, RM, &mut cc).map_err(|_| fmt::Error)?;
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() && x != 0.0 => write!(f, "{x}"),
            _ => {
                // Beyond f64: keep 17 significant digits of the mantissa.
                let (mant, exp) = s.split_once('e').unwrap_or((&s, "0"));
                let mant: String = mant.chars().take(18).collect();
                write!(f, "{}e{}", mant.trim_end_matches('0').trim_end_matches('.'), exp)
            }
        }
    }
}

fn from_integer(n: &BigInt, cc: &mut Consts) -> BigFloat {
    match i64::try_from(n) {
        Ok(k) => BigFloat::from_i64(k, PRECISION),
        Err(_) => BigFloat::parse(&n.to_string(), Radix::Dec, PRECISION, RM, cc),
    }
}

fn from_rational(q: &BigRational, cc: &mut Consts) -> BigFloat {
    from_integer(q.numer(), cc).div(&from_integer(q.denom(), cc), PRECISION, RM)
}

fn to_floats(env: &BTreeMap<String, BigRational>, cc: &mut Consts) -> BTreeMap<String, BigFloat> {
    env.iter().map(|(k, q)| (k.clone(), from_rational(q, cc))).collect()
}

fn checked(x: BigFloat) -> Result<BigFloat> {
    if x.is_nan() || x.is_inf() || x.is_zero() {
        return Err(Error::Overflow);
    }
    match x.exponent() {
        Some(e) if (e as i64).abs() > MAX_EXPONENT => Err(Error::Overflow),
        _ => Ok(x),
    }
}

fn eval_in(t: &Term, env: &BTreeMap<String, BigFloat>, cc: &mut Consts) -> Result<BigFloat> {
    let v = match t {
        Term::Var(x) => env
            .get(x)
            .cloned()
            .ok_or_else(|| Error::Precondition(format!("variable `{x}` is unassigned")))?,
        Term::Num(n) => from_integer(&BigInt::from(n.clone()), cc),
        Term::App(Func::Add, a) => eval_in(&a[0], env, cc)?.add(&eval_in(&a[1], env, cc)?, PRECISION, RM),
        Term::App(Func::Mul, a) => eval_in(&a[0], env, cc)?.mul(&eval_in(&a[1], env, cc)?, PRECISION, RM),
        Term::App(Func::Pow, a) => {
            let base = eval_in(&a[0], env, cc)?;
            let e = eval_in(&a[1], env, cc)?;
            base.pow(&e, PRECISION, RM_POW, cc)
        }
        Term::App(f, _) => {
            return Err(Error::UnsupportedSymbol {
                symbol: f.symbol().to_string(),
                context: "positive-real evaluation".to_string(),
            })
        }
    };
    checked(v)
}

/// Value of a {1, +, ×, exp} term at a positive rational point.
pub fn eval_numeric(t: &Term, env: &BTreeMap<String, BigRational>) -> Result<Approx> {
    let mut cc = Consts::new().expect("constant cache");
    let env = to_floats(env, &mut cc);
    eval_in(t, &env, &mut cc).map(Approx)
}

fn relative(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let diff = a.sub(b, PRECISION, RM).abs();
    let scale = if a.cmp(b) == Some(1) { a } else { b };
    diff.div(scale, PRECISION, RM)
}

/// `|a − b| / max(a, b)` for positive `a`, `b`.
pub fn relative_difference(a: &Approx, b: &Approx) -> f64 {
    Approx(relative(&a.0, &b.0)).to_string().parse().unwrap_or(f64::INFINITY)
}

/// Whether the relative difference of `a` and `b` exceeds `tol`.
pub fn differ(a: &Approx, b: &Approx, tol: f64) -> bool {
    relative(&a.0, &b.0).cmp(&BigFloat::from_f64(tol, PRECISION)) == Some(1)
}

/// A point where two terms differ.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub assignment: BTreeMap<String, BigRational>,
    pub lhs: Approx,
    pub rhs: Approx,
}

/// The small points tried before random search: every assignment from
/// {1, 2, 3, 1/2}, those giving distinct variables distinct values first.
pub fn small_points(vars: &[String]) -> Vec<BTreeMap<String, BigRational>> {
    let values = [(1, 1), (2, 1), (3, 1), (1, 2)].map(|(n, d)| BigRational::new(n.into(), d.into()));
    let mut points: Vec<Vec<usize>> = vec![vec![]];
    for _ in vars {
        points = points
            .into_iter()
            .flat_map(|p| (0..values.len()).map(move |i| [p.clone(), vec![i]].concat()))
            .collect();
    }
    let distinct = |p: &Vec<usize>| {
        let mut q = p.clone();
        q.sort_unstable();
        q.dedup();
        q.len() == p.len()
    };
    let (mut first, rest): (Vec<_>, Vec<_>) = points.into_iter().partition(distinct);
    first.extend(rest);
    first
        .into_iter()
        .map(|p| vars.iter().cloned().zip(p.into_iter().map(|i| values[i].clone())).collect())
        .collect()
}

/// A random point of (0, 10]^vars with three decimals.
pub fn random_point(vars: &[String], rng: &mut impl Rng) -> BTreeMap<String, BigRational> {
    vars.iter()
        .map(|x| (x.clone(), BigRational::new(rng.gen_range(1..=10_000).into(), 1000.into())))
        .collect()
}

pub(crate) fn vars_of(terms: &[&Term]) -> Vec<String> {
    let mut set = std::collections::BTreeSet::new();
    for t in terms {
        t.vars_into(&mut set);
    }
    set.into_iter().collect()
}

/// Searches `trials` points (small ones first, then random ones from
/// (0, 10]) for a relative difference above `tol`.
pub fn numeric_falsify(lhs: &Term, rhs: &Term, trials: usize, tol: f64) -> Result<Option<Counterexample>> {
    numeric_falsify_seeded(lhs, rhs, trials, tol, 0)
}

pub fn numeric_falsify_seeded(
    lhs: &Term,
    rhs: &Term,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<Option<Counterexample>> {
    let vars = vars_of(&[lhs, rhs]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = small_points(&vars);
    let mut cc = Consts::new().expect("constant cache");
    for i in 0..trials {
        let point = match small.get(i) {
            Some(p) if !vars.is_empty() => p.clone(),
            _ => random_point(&vars, &mut rng),
        };
        let env = to_floats(&point, &mut cc);
        let a = Approx(eval_in(lhs, &env, &mut cc)?);
        let b = Approx(eval_in(rhs, &env, &mut cc)?);
        if differ(&a, &b, tol) {
            return Ok(Some(Counterexample { assignment: point, lhs: a, rhs: b }));
        }
        if vars.is_empty() {
            break;
        }
    }
    Ok(None)
}
