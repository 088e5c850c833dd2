//! Terms and formulas.

use num_bigint::BigUint;

/// Function symbols of the supported signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    /// Successor `s(t)`.
    Succ,
    /// Unary minus.
    Neg,
    Add,
    Mul,
    Pow,
}

impl Func {
    pub fn arity(self) -> usize {
        match self {
            Func::Succ | Func::Neg => 1,
            Func::Add | Func::Mul | Func::Pow => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Func::Succ => "s",
            Func::Neg => "-",
            Func::Add => "+",
            Func::Mul => "*",
            Func::Pow => "^",
        }
    }
}

/// A first-order term. Numerals stand for `1 + ... + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Num(BigUint),
    App(Func, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn num(n: u64) -> Term {
        Term::Num(BigUint::from(n))
    }

    pub fn succ(t: Term) -> Term {
        Term::App(Func::Succ, vec![t])
    }

    pub fn neg(t: Term) -> Term {
        Term::App(Func::Neg, vec![t])
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::App(Func::Add, vec![a, b])
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::App(Func::Mul, vec![a, b])
    }

    pub fn pow(a: Term, b: Term) -> Term {
        Term::App(Func::Pow, vec![a, b])
    }

    /// `s^k(t)`.
    pub fn succ_n(mut t: Term, k: u64) -> Term {
        for _ in 0..k {
            t = Term::succ(t);
        }
        t
    }

    /// Left-nested sum of the given terms; `None` when empty.
    pub fn sum(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::add)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Num(_) => true,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        match self {
            Term::Var(v) => v == x,
            Term::Num(_) => false,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(x)),
        }
    }

    pub fn vars_into(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Num(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.vars_into(out)),
        }
    }

    pub fn contains_func(&self, f: Func) -> bool {
        match self {
            Term::App(g, args) => *g == f || args.iter().any(|a| a.contains_func(f)),
            _ => false,
        }
    }
}

/// Predicate symbols. Equality is logical and always available.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pred {
    Eq,
    Lt,
    /// Congruence modulo `n >= 2`.
    Cong(BigUint),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: Pred,
    pub lhs: Term,
    pub rhs: Term,
}

impl Atom {
    pub fn new(pred: Pred, lhs: Term, rhs: Term) -> Atom {
        Atom { pred, lhs, rhs }
    }

    pub fn contains_var(&self, x: &str) -> bool {
        self.lhs.contains_var(x) || self.rhs.contains_var(x)
    }

    pub fn is_ground(&self) -> bool {
        self.lhs.is_ground() && self.rhs.is_ground()
    }
}

/// First-order formulas.
///
/// `And`/`Or` built through [`Formula::and`]/[`Formula::or`] are flattened and
/// hold at least two children.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bot,
    /// Propositional letter, only available under the propositional signature.
    Prop(String),
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: Pred, lhs: Term, rhs: Term) -> Formula {
        Formula::Atom(Atom::new(pred, lhs, rhs))
    }

    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::atom(Pred::Eq, lhs, rhs)
    }

    pub fn lt(lhs: Term, rhs: Term) -> Formula {
        Formula::atom(Pred::Lt, lhs, rhs)
    }

    pub fn cong(lhs: Term, rhs: Term, modulus: u64) -> Formula {
        Formula::atom(Pred::Cong(BigUint::from(modulus)), lhs, rhs)
    }

    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Flattening conjunction; empty is `Top`, a singleton is its element.
    pub fn and(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for f in items {
            match f {
                Formula::And(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::Top,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    /// Flattening disjunction; empty is `Bot`, a singleton is its element.
    pub fn or(items: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for f in items {
            match f {
                Formula::Or(inner) => out.extend(inner),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::Bot,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }

    pub fn exists(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }

    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Prop(_) => true,
            Formula::Not(inner) => matches!(**inner, Formula::Atom(_) | Formula::Prop(_)),
            _ => false,
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Prop(_) | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Number of quantifier nodes.
    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Prop(_) | Formula::Atom(_) => 0,
            Formula::Not(f) => f.quantifier_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::quantifier_count).sum(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_count() + b.quantifier_count()
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_count(),
        }
    }

    /// Visits every atom, including those under quantifiers.
    pub fn for_each_atom<'a>(&'a self, visit: &mut impl FnMut(&'a Atom)) {
        match self {
            Formula::Atom(a) => visit(a),
            Formula::Top | Formula::Bot | Formula::Prop(_) => {}
            Formula::Not(f) | Formula::Forall(_, f) | Formula::Exists(_, f) => {
                f.for_each_atom(visit)
            }
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.for_each_atom(visit)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.for_each_atom(visit);
                b.for_each_atom(visit);
            }
        }
    }

    /// Applies `g` to every term of every atom.
    pub fn map_terms(&self, g: &impl Fn(&Term) -> Term) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(Atom::new(a.pred.clone(), g(&a.lhs), g(&a.rhs))),
            Formula::Top | Formula::Bot | Formula::Prop(_) => self.clone(),
            Formula::Not(f) => Formula::not(f.map_terms(g)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.map_terms(g)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.map_terms(g)).collect()),
            Formula::Implies(a, b) => Formula::implies(a.map_terms(g), b.map_terms(g)),
            Formula::Iff(a, b) => Formula::iff(a.map_terms(g), b.map_terms(g)),
            Formula::Forall(x, f) => Formula::forall(x.clone(), f.map_terms(g)),
            Formula::Exists(x, f) => Formula::exists(x.clone(), f.map_terms(g)),
        }
    }
}
