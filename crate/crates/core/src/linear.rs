//! Linear normal forms shared by every eliminator.
//!
//! An atom `lhs ⋈ rhs` becomes the literal `E ⋈ 0` with `E = lhs - rhs` a
//! linear expression with integer coefficients. Eliminators work on [`LForm`],
//! a negation-free boolean structure over such literals, and the result is
//! rendered back to a [`Formula`] in the signature of the theory.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::syntax::{Atom, Formula, Func, Pred, Term};

/// Carrier of a theory's standard model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Q,
    Z,
    N,
}

impl Domain {
    pub fn is_integral(self) -> bool {
        self != Domain::Q
    }
}

/// `Σ cᵢ·xᵢ + k` with integer coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LinExpr {
    pub coeffs: BTreeMap<String, BigInt>,
    pub constant: BigInt,
}

impl LinExpr {
    pub fn zero() -> LinExpr {
        LinExpr::default()
    }

    pub fn constant(k: impl Into<BigInt>) -> LinExpr {
        LinExpr { coeffs: BTreeMap::new(), constant: k.into() }
    }

    pub fn var(x: &str) -> LinExpr {
        LinExpr::term(x, BigInt::one())
    }

    pub fn term(x: &str, c: impl Into<BigInt>) -> LinExpr {
        let mut e = LinExpr::zero();
        e.add_term(x, &c.into());
        e
    }

    pub fn coeff(&self, x: &str) -> BigInt {
        self.coeffs.get(x).cloned().unwrap_or_default()
    }

    pub fn contains(&self, x: &str) -> bool {
        self.coeffs.contains_key(x)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, x: &str, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(x.to_string()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(x);
        }
    }

    pub fn add(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        for (x, c) in &other.coeffs {
            out.add_term(x, c);
        }
        out.constant += &other.constant;
        out
    }

    pub fn sub(&self, other: &LinExpr) -> LinExpr {
        self.add(&other.scale(&-BigInt::one()))
    }

    pub fn scale(&self, k: &BigInt) -> LinExpr {
        if k.is_zero() {
            return LinExpr::zero();
        }
        LinExpr {
            coeffs: self.coeffs.iter().map(|(x, c)| (x.clone(), c * k)).collect(),
            constant: &self.constant * k,
        }
    }

    pub fn neg(&self) -> LinExpr {
        self.scale(&-BigInt::one())
    }

    pub fn add_constant(&self, k: &BigInt) -> LinExpr {
        let mut out = self.clone();
        out.constant += k;
        out
    }

    /// The expression with the `x` term removed.
    pub fn without(&self, x: &str) -> LinExpr {
        let mut out = self.clone();
        out.coeffs.remove(x);
        out
    }

    /// `self[x := t]`.
    pub fn substitute(&self, x: &str, t: &LinExpr) -> LinExpr {
        let c = self.coeff(x);
        if c.is_zero() {
            return self.clone();
        }
        self.without(x).add(&t.scale(&c))
    }

    /// Gcd of the variable coefficients; zero for a constant.
    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval_int(&self, env: &BTreeMap<String, BigInt>) -> Option<BigInt> {
        let mut acc = self.constant.clone();
        for (x, c) in &self.coeffs {
            acc += c * env.get(x)?;
        }
        Some(acc)
    }

    pub fn eval_rat(&self, env: &BTreeMap<String, BigRational>) -> Option<BigRational> {
        let mut acc = BigRational::from_integer(self.constant.clone());
        for (x, c) in &self.coeffs {
            acc += BigRational::from_integer(c.clone()) * env.get(x)?;
        }
        Some(acc)
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.coeffs.keys()
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, c) in &self.coeffs {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{x}")?;
            } else {
                write!(f, "{mag}*{x}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_negative() {
            write!(f, " - {}", -&self.constant)
        } else if self.constant.is_positive() {
            write!(f, " + {}", self.constant)
        } else {
            Ok(())
        }
    }
}

/// Linear form of a term; `*` is accepted only with a numeral side.
pub fn linearize(t: &Term) -> Result<LinExpr> {
    Ok(match t {
        Term::Var(x) => LinExpr::var(x),
        Term::Num(n) => LinExpr::constant(BigInt::from(n.clone())),
        Term::App(Func::Succ, a) => linearize(&a[0])?.add_constant(&BigInt::one()),
        Term::App(Func::Neg, a) => linearize(&a[0])?.neg(),
        Term::App(Func::Add, a) => linearize(&a[0])?.add(&linearize(&a[1])?),
        Term::App(Func::Mul, a) => {
            let l = linearize(&a[0])?;
            let r = linearize(&a[1])?;
            if l.is_constant() {
                r.scale(&l.constant)
            } else if r.is_constant() {
                l.scale(&r.constant)
            } else {
                return Err(Error::NonLinear(t.to_string()));
            }
        }
        Term::App(Func::Pow, _) => return Err(Error::NonLinear(t.to_string())),
    })
}

/// Relation of a literal `E ⋈ 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    /// `E ≡ 0 (mod m)`.
    Cong(BigInt),
    NotCong(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub rel: Rel,
    pub expr: LinExpr,
}

impl Lit {
    pub fn new(rel: Rel, expr: LinExpr) -> Lit {
        Lit { rel, expr }
    }

    pub fn contains(&self, x: &str) -> bool {
        self.expr.contains(x)
    }

    fn holds(&self, value: &BigRational) -> bool {
        match &self.rel {
            Rel::Eq => value.is_zero(),
            Rel::Ne => !value.is_zero(),
            Rel::Lt => value.is_negative(),
            Rel::Cong(m) | Rel::NotCong(m) => {
                let divisible = value.is_integer() && value.to_integer().mod_floor(m).is_zero();
                divisible == matches!(self.rel, Rel::Cong(_))
            }
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rel {
            Rel::Eq => write!(f, "{} = 0", self.expr),
            Rel::Ne => write!(f, "{} != 0", self.expr),
            Rel::Lt => write!(f, "{} < 0", self.expr),
            Rel::Cong(m) => write!(f, "{} = 0 (mod {m})", self.expr),
            Rel::NotCong(m) => write!(f, "{} != 0 (mod {m})", self.expr),
        }
    }
}

/// Negation-free boolean combination of literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LForm {
    Top,
    Bot,
    Lit(Lit),
    And(Vec<LForm>),
    Or(Vec<LForm>),
}

impl LForm {
    pub fn contains(&self, x: &str) -> bool {
        match self {
            LForm::Top | LForm::Bot => false,
            LForm::Lit(l) => l.contains(x),
            LForm::And(fs) | LForm::Or(fs) => fs.iter().any(|f| f.contains(x)),
        }
    }

    pub fn for_each_lit<'a>(&'a self, visit: &mut impl FnMut(&'a Lit)) {
        match self {
            LForm::Top | LForm::Bot => {}
            LForm::Lit(l) => visit(l),
            LForm::And(fs) | LForm::Or(fs) => fs.iter().for_each(|f| f.for_each_lit(visit)),
        }
    }

    /// Rebuilds the formula with every literal replaced by `g(lit)`.
    pub fn map_lits(&self, g: &mut impl FnMut(&Lit) -> LForm) -> LForm {
        match self {
            LForm::Top | LForm::Bot => self.clone(),
            LForm::Lit(l) => g(l),
            LForm::And(fs) => and(fs.iter().map(|f| f.map_lits(g)).collect()),
            LForm::Or(fs) => or(fs.iter().map(|f| f.map_lits(g)).collect()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            LForm::Top | LForm::Bot | LForm::Lit(_) => 1,
            LForm::And(fs) | LForm::Or(fs) => 1 + fs.iter().map(LForm::size).sum::<usize>(),
        }
    }

    /// Truth value at a rational point; `None` if a variable is unassigned.
    pub fn eval(&self, env: &BTreeMap<String, BigRational>) -> Option<bool> {
        Some(match self {
            LForm::Top => true,
            LForm::Bot => false,
            LForm::Lit(l) => l.holds(&l.expr.eval_rat(env)?),
            LForm::And(fs) => {
                for f in fs {
                    if !f.eval(env)? {
                        return Some(false);
                    }
                }
                true
            }
            LForm::Or(fs) => {
                for f in fs {
                    if f.eval(env)? {
                        return Some(true);
                    }
                }
                false
            }
        })
    }
}

/// The literal whose truth value is always the opposite, when it is a literal.
fn complement(l: &Lit) -> Option<Lit> {
    let rel = match &l.rel {
        Rel::Eq => Rel::Ne,
        Rel::Ne => Rel::Eq,
        Rel::Cong(m) => Rel::NotCong(m.clone()),
        Rel::NotCong(m) => Rel::Cong(m.clone()),
        Rel::Lt => return None,
    };
    Some(Lit::new(rel, l.expr.clone()))
}

/// Shared body of [`and`] / [`or`]: `unit` is dropped, `zero` absorbs.
fn junction(items: Vec<LForm>, conj: bool) -> LForm {
    let (unit, zero) = if conj { (LForm::Top, LForm::Bot) } else { (LForm::Bot, LForm::Top) };
    let mut out: Vec<LForm> = Vec::new();
    let mut seen: HashSet<LForm> = HashSet::new();
    let mut stack: Vec<LForm> = items.into_iter().rev().collect();
    while let Some(f) = stack.pop() {
        match f {
            f if f == unit => {}
            f if f == zero => return zero,
            LForm::And(inner) if conj => stack.extend(inner.into_iter().rev()),
            LForm::Or(inner) if !conj => stack.extend(inner.into_iter().rev()),
            other => {
                if let LForm::Lit(l) = &other {
                    if complement(l).is_some_and(|c| seen.contains(&LForm::Lit(c))) {
                        return zero;
                    }
                }
                if seen.insert(other.clone()) {
                    out.push(other);
                }
            }
        }
    }
    match out.len() {
        0 => unit,
        1 => out.pop().unwrap(),
        _ if conj => LForm::And(out),
        _ => LForm::Or(out),
    }
}

/// Flattening conjunction with constant folding, duplicate removal and
/// complementary-literal detection.
pub fn and(items: Vec<LForm>) -> LForm {
    junction(items, true)
}

/// Dual of [`and`].
pub fn or(items: Vec<LForm>) -> LForm {
    junction(items, false)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Canonical form of a literal, folded to `Top`/`Bot` when its truth value
/// is fixed by the domain.
pub fn canon(lit: Lit, dom: Domain) -> LForm {
    let Lit { rel, mut expr } = lit;
    if let Rel::Cong(m) | Rel::NotCong(m) = &rel {
        return canon_cong(matches!(rel, Rel::Cong(_)), expr, m.clone());
    }
    if expr.is_constant() {
        let v = BigRational::from_integer(expr.constant.clone());
        return if Lit::new(rel, expr).holds(&v) { LForm::Top } else { LForm::Bot };
    }
    let g = expr.content();
    match rel {
        Rel::Eq | Rel::Ne => {
            let positive = rel == Rel::Eq;
            let fold = if positive { LForm::Bot } else { LForm::Top };
            let k = if dom.is_integral() {
                if !expr.constant.is_multiple_of(&g) {
                    return fold;
                }
                g
            } else {
                g.gcd(&expr.constant)
            };
            expr = LinExpr {
                coeffs: expr.coeffs.iter().map(|(x, c)| (x.clone(), c / &k)).collect(),
                constant: &expr.constant / &k,
            };
            if expr.coeffs.values().next().unwrap().is_negative() {
                expr = expr.neg();
            }
            if dom == Domain::N && same_sign_strict(&expr) {
                return fold;
            }
            LForm::Lit(Lit::new(rel, expr))
        }
        Rel::Lt => {
            if dom.is_integral() {
                let bound = ceil_div(&-&expr.constant, &g);
                expr = LinExpr {
                    coeffs: expr.coeffs.iter().map(|(x, c)| (x.clone(), c / &g)).collect(),
                    constant: -bound,
                };
            } else {
                let k = g.gcd(&expr.constant);
                expr = LinExpr {
                    coeffs: expr.coeffs.iter().map(|(x, c)| (x.clone(), c / &k)).collect(),
                    constant: &expr.constant / &k,
                };
            }
            if dom == Domain::N {
                let all_nonneg = expr.coeffs.values().all(|c| !c.is_negative());
                let all_nonpos = expr.coeffs.values().all(|c| !c.is_positive());
                if all_nonneg && !expr.constant.is_negative() {
                    return LForm::Bot;
                }
                if all_nonpos && expr.constant.is_negative() {
                    return LForm::Top;
                }
            }
            LForm::Lit(Lit::new(Rel::Lt, expr))
        }
        Rel::Cong(_) | Rel::NotCong(_) => unreachable!(),
    }
}

/// Over ℕ, `E = 0` is impossible when every term of `E` has one strict sign.
fn same_sign_strict(e: &LinExpr) -> bool {
    let pos = e.coeffs.values().all(|c| c.is_positive()) && e.constant.is_positive();
    let neg = e.coeffs.values().all(|c| c.is_negative()) && e.constant.is_negative();
    pos || neg
}

fn canon_cong(positive: bool, expr: LinExpr, m: BigInt) -> LForm {
    let truth = |b: bool| if b == positive { LForm::Top } else { LForm::Bot };
    let mut coeffs: BTreeMap<String, BigInt> = expr
        .coeffs
        .iter()
        .map(|(x, c)| (x.clone(), c.mod_floor(&m)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut constant = expr.constant.mod_floor(&m);
    if coeffs.is_empty() {
        return truth(constant.is_zero());
    }
    let d = coeffs.values().fold(m.clone(), |g, c| g.gcd(c));
    if !constant.is_multiple_of(&d) {
        return truth(false);
    }
    let m = &m / &d;
    for c in coeffs.values_mut() {
        *c = &*c / &d;
    }
    constant = &constant / &d;
    if m.is_one() {
        return truth(true);
    }
    if coeffs.len() == 1 {
        // The single coefficient is now a unit modulo m; scale it to 1.
        let c = coeffs.values().next().unwrap().clone();
        let inv = mod_inverse(&c, &m).expect("coprime after reduction");
        for v in coeffs.values_mut() {
            *v = BigInt::one();
        }
        constant = (&constant * &inv).mod_floor(&m);
    }
    let expr = LinExpr { coeffs, constant };
    let rel = if positive { Rel::Cong(m) } else { Rel::NotCong(m) };
    LForm::Lit(Lit::new(rel, expr))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Literal constructor that canonicalises on the way in.
pub fn lit(rel: Rel, expr: LinExpr, dom: Domain) -> LForm {
    canon(Lit::new(rel, expr), dom)
}

/// Canonicalises every literal and re-runs boolean simplification.
pub fn simplify(f: &LForm, dom: Domain) -> LForm {
    f.map_lits(&mut |l| canon(l.clone(), dom))
}

/// Negation, kept negation-free. Over ℚ, `¬(E < 0)` becomes `-E < 0 ∨ E = 0`.
pub fn negate(f: &LForm, dom: Domain) -> LForm {
    match f {
        LForm::Top => LForm::Bot,
        LForm::Bot => LForm::Top,
        LForm::Lit(l) => negate_lit(l, dom),
        LForm::And(fs) => or(fs.iter().map(|g| negate(g, dom)).collect()),
        LForm::Or(fs) => and(fs.iter().map(|g| negate(g, dom)).collect()),
    }
}

pub fn negate_lit(l: &Lit, dom: Domain) -> LForm {
    let e = l.expr.clone();
    match &l.rel {
        Rel::Eq => lit(Rel::Ne, e, dom),
        Rel::Ne => lit(Rel::Eq, e, dom),
        Rel::Cong(m) => lit(Rel::NotCong(m.clone()), e, dom),
        Rel::NotCong(m) => lit(Rel::Cong(m.clone()), e, dom),
        Rel::Lt => {
            if dom.is_integral() {
                lit(Rel::Lt, e.neg().add_constant(&-BigInt::one()), dom)
            } else {
                or(vec![lit(Rel::Lt, e.neg(), dom), lit(Rel::Eq, e, dom)])
            }
        }
    }
}

/// The literal form of an atom.
pub fn atom_lit(a: &Atom, dom: Domain) -> Result<LForm> {
    let e = linearize(&a.lhs)?.sub(&linearize(&a.rhs)?);
    let rel = match &a.pred {
        Pred::Eq => Rel::Eq,
        Pred::Lt => Rel::Lt,
        Pred::Cong(m) => Rel::Cong(BigInt::from(m.clone())),
    };
    Ok(lit(rel, e, dom))
}

/// Converts a quantifier-free formula to an [`LForm`].
pub fn from_formula(f: &Formula, dom: Domain) -> Result<LForm> {
    Ok(match f {
        Formula::Top => LForm::Top,
        Formula::Bot => LForm::Bot,
        Formula::Atom(a) => atom_lit(a, dom)?,
        Formula::Not(g) => negate(&from_formula(g, dom)?, dom),
        Formula::And(fs) => and(fs.iter().map(|g| from_formula(g, dom)).collect::<Result<_>>()?),
        Formula::Or(fs) => or(fs.iter().map(|g| from_formula(g, dom)).collect::<Result<_>>()?),
        Formula::Implies(a, b) => or(vec![
            negate(&from_formula(a, dom)?, dom),
            from_formula(b, dom)?,
        ]),
        Formula::Iff(a, b) => {
            let a = from_formula(a, dom)?;
            let b = from_formula(b, dom)?;
            or(vec![
                and(vec![a.clone(), b.clone()]),
                and(vec![negate(&a, dom), negate(&b, dom)]),
            ])
        }
        Formula::Prop(p) => {
            return Err(Error::UnsupportedSymbol { symbol: p.clone(), context: "linear literal".into() })
        }
        Formula::Forall(..) | Formula::Exists(..) => {
            return Err(Error::Precondition(format!("quantified formula: {f}")))
        }
    })
}

/// How offsets are written back: `s(...)` towers or `+ k` numerals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Successor,
    Additive,
}

fn biguint(k: &BigInt) -> BigUint {
    k.to_biguint().expect("non-negative")
}

fn scaled_var(x: &str, k: &BigInt) -> Term {
    if k.is_one() {
        Term::var(x)
    } else {
        Term::mul(Term::Num(biguint(k)), Term::var(x))
    }
}

/// One side of a rendered relation: variables with positive weights plus a
/// non-negative constant.
fn side(vars: &[(&String, BigInt)], k: &BigInt, style: Style) -> Term {
    match style {
        Style::Successor => {
            let base = match vars {
                [] => Term::num(0),
                [(x, _)] => Term::var(x.as_str()),
                _ => Term::sum(vars.iter().map(|(x, c)| scaled_var(x, c))).unwrap(),
            };
            let depth = u64::try_from(k).expect("offset fits in u64");
            Term::succ_n(base, depth)
        }
        Style::Additive => {
            let mut parts: Vec<Term> = vars.iter().map(|(x, c)| scaled_var(x, c)).collect();
            if !k.is_zero() || parts.is_empty() {
                parts.push(Term::Num(biguint(k)));
            }
            Term::sum(parts).unwrap()
        }
    }
}

/// Renders `E ⋈ 0` as `P ⋈ N` with both sides subtraction-free.
fn split_sides(e: &LinExpr, style: Style) -> (Term, Term) {
    let pos: Vec<_> = e.coeffs.iter().filter(|(_, c)| c.is_positive()).map(|(x, c)| (x, c.clone())).collect();
    let neg: Vec<_> = e.coeffs.iter().filter(|(_, c)| c.is_negative()).map(|(x, c)| (x, -c)).collect();
    let (kp, kn) = if e.constant.is_negative() {
        (BigInt::zero(), -&e.constant)
    } else {
        (e.constant.clone(), BigInt::zero())
    };
    (side(&pos, &kp, style), side(&neg, &kn, style))
}

pub fn lit_to_formula(l: &Lit, style: Style) -> Formula {
    match &l.rel {
        Rel::Cong(m) | Rel::NotCong(m) => {
            let vars: Vec<_> = l.expr.coeffs.iter().map(|(x, c)| (x, c.clone())).collect();
            let lhs = side(&vars, &BigInt::zero(), style);
            let r = (-&l.expr.constant).mod_floor(m);
            let atom = Formula::atom(Pred::Cong(biguint(m)), lhs, Term::Num(biguint(&r)));
            if matches!(l.rel, Rel::Cong(_)) {
                atom
            } else {
                Formula::not(atom)
            }
        }
        rel => {
            let (p, n) = split_sides(&l.expr, style);
            match rel {
                Rel::Eq => Formula::eq(p, n),
                Rel::Ne => Formula::not(Formula::eq(p, n)),
                Rel::Lt => Formula::lt(p, n),
                _ => unreachable!(),
            }
        }
    }
}

pub fn to_formula(f: &LForm, style: Style) -> Formula {
    match f {
        LForm::Top => Formula::Top,
        LForm::Bot => Formula::Bot,
        LForm::Lit(l) => lit_to_formula(l, style),
        LForm::And(fs) => Formula::and(fs.iter().map(|g| to_formula(g, style))),
        LForm::Or(fs) => Formula::or(fs.iter().map(|g| to_formula(g, style))),
    }
}

/// Relation of a literal solved for one variable: `n·x ⋈ t`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinRel {
    Eq,
    Ne,
    Lt,
    Gt,
    Cong(BigInt),
    NotCong(BigInt),
}

/// `coeff·var ⋈ rhs` with `coeff >= 1` and `rhs` free of `var`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearAtom {
    pub coeff: BigInt,
    pub var: String,
    pub rel: LinRel,
    pub rhs: LinExpr,
}

impl LinearAtom {
    pub fn new(coeff: i64, var: &str, rel: LinRel, rhs: LinExpr) -> LinearAtom {
        assert!(coeff >= 1, "coefficient must be positive");
        LinearAtom { coeff: coeff.into(), var: var.to_string(), rel, rhs }
    }

    /// Solves `lit` for `x`; `None` when `x` does not occur.
    pub fn from_lit(l: &Lit, x: &str) -> Option<LinearAtom> {
        let a = l.expr.coeff(x);
        if a.is_zero() {
            return None;
        }
        let rest = l.expr.without(x);
        let (coeff, rhs, flip) = if a.is_positive() {
            (a, rest.neg(), false)
        } else {
            (-a, rest, true)
        };
        let rel = match &l.rel {
            Rel::Eq => LinRel::Eq,
            Rel::Ne => LinRel::Ne,
            Rel::Lt if flip => LinRel::Gt,
            Rel::Lt => LinRel::Lt,
            Rel::Cong(m) => LinRel::Cong(m.clone()),
            Rel::NotCong(m) => LinRel::NotCong(m.clone()),
        };
        Some(LinearAtom { coeff, var: x.to_string(), rel, rhs })
    }

    pub fn to_lit(&self) -> Lit {
        let lhs = LinExpr::term(&self.var, self.coeff.clone());
        let d = lhs.sub(&self.rhs);
        match &self.rel {
            LinRel::Eq => Lit::new(Rel::Eq, d),
            LinRel::Ne => Lit::new(Rel::Ne, d),
            LinRel::Lt => Lit::new(Rel::Lt, d),
            LinRel::Gt => Lit::new(Rel::Lt, d.neg()),
            LinRel::Cong(m) => Lit::new(Rel::Cong(m.clone()), d),
            LinRel::NotCong(m) => Lit::new(Rel::NotCong(m.clone()), d),
        }
    }

    /// Multiplies both sides by `k > 0`; congruence moduli scale along.
    pub fn scaled(&self, k: &BigInt) -> LinearAtom {
        let rel = match &self.rel {
            LinRel::Cong(m) => LinRel::Cong(m * k),
            LinRel::NotCong(m) => LinRel::NotCong(m * k),
            r => r.clone(),
        };
        LinearAtom { coeff: &self.coeff * k, var: self.var.clone(), rel, rhs: self.rhs.scale(k) }
    }

    /// The literal obtained by putting `t` for `coeff·var`.
    pub fn at(&self, t: &LinExpr) -> Lit {
        let d = t.sub(&self.rhs);
        match &self.rel {
            LinRel::Eq => Lit::new(Rel::Eq, d),
            LinRel::Ne => Lit::new(Rel::Ne, d),
            LinRel::Lt => Lit::new(Rel::Lt, d),
            LinRel::Gt => Lit::new(Rel::Lt, d.neg()),
            LinRel::Cong(m) => Lit::new(Rel::Cong(m.clone()), d),
            LinRel::NotCong(m) => Lit::new(Rel::NotCong(m.clone()), d),
        }
    }
}

impl fmt::Display for LinearAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match &self.rel {
            LinRel::Eq => "=".to_string(),
            LinRel::Ne => "!=".to_string(),
            LinRel::Lt => "<".to_string(),
            LinRel::Gt => ">".to_string(),
            LinRel::Cong(m) => format!("=[{m}]"),
            LinRel::NotCong(m) => format!("!=[{m}]"),
        };
        write!(f, "{}*{} {rel} {}", self.coeff, self.var, self.rhs)
    }
}

/// Solves an atom for `x`: x-terms collected on the left with a positive
/// coefficient, everything else on the right.
pub fn lin_normalize(a: &Atom, x: &str) -> Result<LinearAtom> {
    let e = linearize(&a.lhs)?.sub(&linearize(&a.rhs)?);
    let rel = match &a.pred {
        Pred::Eq => Rel::Eq,
        Pred::Lt => Rel::Lt,
        Pred::Cong(m) => Rel::Cong(BigInt::from(m.clone())),
    };
    LinearAtom::from_lit(&Lit::new(rel, e), x)
        .ok_or_else(|| Error::Precondition(format!("`{x}` does not occur in the atom")))
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |l, x| l.lcm(x))
}
