//! Random formula generators and brute-force / test-point oracles.
//!
//! The oracles read only the AST: they linearize terms themselves and decide
//! quantifiers by evaluating the body at a finite set of candidate values
//! that is complete for the structure at hand.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use qelab::qe::TheoryId;
use qelab::syntax::{Formula, Func, Pred, Term};
use rand::seq::SliceRandom;
use rand::Rng;

pub mod terms;

pub type Q = Ratio<i128>;

pub const FREE: [&str; 3] = ["x", "y", "z"];
const BOUND: [&str; 3] = ["u", "v", "w"];

// ---------------------------------------------------------------------------
// Generators

#[derive(Debug, Clone, Copy)]
pub struct GenLimits {
    pub max_quantifiers: usize,
    pub max_literals: usize,
    pub max_coeff: u64,
    pub max_modulus: u64,
}

impl Default for GenLimits {
    fn default() -> GenLimits {
        GenLimits { max_quantifiers: 3, max_literals: 6, max_coeff: 5, max_modulus: 8 }
    }
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    th: TheoryId,
    lim: GenLimits,
}

impl<R: Rng> Gen<'_, R> {
    fn var(&mut self, scope: &[String]) -> Term {
        // Prefer the innermost bound variables so quantifiers are rarely vacuous.
        let bound: Vec<&String> = scope.iter().filter(|v| BOUND.contains(&v.as_str())).collect();
        if !bound.is_empty() && self.rng.gen_bool(0.6) {
            let k = bound.len();
            let i = if self.rng.gen_bool(0.6) { k - 1 } else { self.rng.gen_range(0..k) };
            return Term::var(bound[i].as_str());
        }
        Term::var(scope.choose(self.rng).unwrap().as_str())
    }

    fn coeff(&mut self) -> u64 {
        if self.rng.gen_bool(0.5) {
            1
        } else {
            self.rng.gen_range(1..=self.lim.max_coeff)
        }
    }

    fn scaled(&mut self, scope: &[String]) -> Term {
        let k = self.coeff();
        let v = self.var(scope);
        let t = if k == 1 { v } else { Term::mul(Term::num(k), v) };
        let negatable = matches!(self.th, TheoryId::DivGroup | TheoryId::ZMod | TheoryId::ZPres | TheoryId::QLin);
        if negatable && self.rng.gen_bool(0.3) {
            Term::neg(t)
        } else {
            t
        }
    }

    fn linear(&mut self, scope: &[String]) -> Term {
        let numerals = matches!(self.th, TheoryId::ZMod | TheoryId::NPres | TheoryId::ZPres);
        let mut parts = Vec::new();
        for _ in 0..self.rng.gen_range(0..=2) {
            parts.push(self.scaled(scope));
        }
        if numerals && self.rng.gen_bool(0.4) {
            parts.push(Term::num(self.rng.gen_range(1..=5)));
        }
        Term::sum(parts).unwrap_or_else(|| Term::num(0))
    }

    fn term(&mut self, scope: &[String]) -> Term {
        match self.th {
            TheoryId::Dlo => self.var(scope),
            TheoryId::ZDiscrete | TheoryId::NDiscrete => {
                let base = if self.th == TheoryId::NDiscrete && self.rng.gen_bool(0.2) {
                    Term::num(0)
                } else {
                    self.var(scope)
                };
                Term::succ_n(base, self.rng.gen_range(0..=2))
            }
            _ => self.linear(scope),
        }
    }

    fn atom(&mut self, scope: &[String]) -> Formula {
        let (order, cong) = match self.th {
            TheoryId::DivGroup => (false, false),
            TheoryId::ZMod => (false, true),
            TheoryId::NPres | TheoryId::ZPres => (true, true),
            _ => (true, false),
        };
        let l = self.term(scope);
        let r = self.term(scope);
        let roll = self.rng.gen_range(0..10);
        let f = if cong && roll < 3 {
            Formula::cong(l, r, self.rng.gen_range(2..=self.lim.max_modulus))
        } else if order && roll < 7 {
            Formula::lt(l, r)
        } else {
            Formula::eq(l, r)
        };
        if self.rng.gen_bool(0.25) {
            Formula::not(f)
        } else {
            f
        }
    }

    fn formula(&mut self, lits: usize, quants: usize, scope: &mut Vec<String>) -> Formula {
        let unused: Vec<&str> = BOUND.iter().copied().filter(|b| !scope.iter().any(|s| s == b)).collect();
        if quants > 0 && !unused.is_empty() && (lits == 1 || self.rng.gen_bool(0.4)) {
            let v = unused.choose(self.rng).unwrap().to_string();
            scope.push(v.clone());
            let body = self.formula(lits, quants - 1, scope);
            scope.pop();
            return if self.rng.gen_bool(0.5) { Formula::exists(v, body) } else { Formula::forall(v, body) };
        }
        if lits == 1 {
            return self.atom(scope);
        }
        let l1 = self.rng.gen_range(1..lits);
        let q1 = self.rng.gen_range(0..=quants);
        let a = self.formula(l1, q1, scope);
        let b = self.formula(lits - l1, quants - q1, scope);
        let f = match self.rng.gen_range(0..10) {
            0..=3 => Formula::and([a, b]),
            4..=7 => Formula::or([a, b]),
            8 => Formula::implies(a, b),
            _ => Formula::iff(a, b),
        };
        if self.rng.gen_bool(0.15) {
            Formula::not(f)
        } else {
            f
        }
    }
}

/// A random formula of `th`'s signature within `lim`.
pub fn random_formula<R: Rng>(rng: &mut R, th: TheoryId, lim: GenLimits) -> Formula {
    let lits = rng.gen_range(1..=lim.max_literals);
    let quants = rng.gen_range(0..=lim.max_quantifiers);
    let mut scope: Vec<String> = FREE.iter().map(|s| s.to_string()).collect();
    Gen { rng, th, lim }.formula(lits, quants, &mut scope)
}

// ---------------------------------------------------------------------------
// Oracle

/// Maximum number of distinct variable names an oracle formula may use.
const NV: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Form {
    c: [i128; NV],
    k: i128,
}

impl Form {
    fn constant(k: i128) -> Form {
        Form { c: [0; NV], k }
    }

    fn var(i: usize) -> Form {
        let mut f = Form::constant(0);
        f.c[i] = 1;
        f
    }

    fn axpy(&self, o: &Form, m: i128) -> Form {
        let mut out = self.clone();
        for i in 0..NV {
            out.c[i] += m * o.c[i];
        }
        out.k += m * o.k;
        out
    }

    fn scale(&self, m: i128) -> Form {
        Form::constant(0).axpy(self, m)
    }

    fn is_constant(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }

    /// Eliminates variable `w` between two forms that both mention it.
    fn combine(&self, o: &Form, w: usize) -> Form {
        let (a, b) = (self.c[w], o.c[w]);
        let g = a.gcd(&b);
        normalize(self.scale(b / g).axpy(o, -(a / g)))
    }
}

fn normalize(f: Form) -> Form {
    let g = f.c.iter().fold(f.k, |g, c| g.gcd(c));
    if g <= 1 {
        return f;
    }
    let mut out = f;
    out.c.iter_mut().for_each(|c| *c /= g);
    out.k /= g;
    out
}

#[derive(Debug, Clone, Copy)]
enum Rel {
    Eq,
    Lt,
    Cong(i128),
}

#[derive(Debug, Clone)]
struct Binder {
    var: usize,
    /// Forms free of inner bound variables that mention `var`.
    roots: Vec<Form>,
    /// Margin around each root, and the period of the pattern between roots.
    margin: i128,
    period: i128,
}

#[derive(Debug, Clone)]
enum Node {
    Const(bool),
    Atom(Rel, Form),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Quant(bool, Binder, Box<Node>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dom {
    Q,
    Z,
    N,
}

struct Compiler {
    dom: Dom,
    names: Vec<String>,
}

impl Compiler {
    fn index(&mut self, v: &str) -> usize {
        if let Some(i) = self.names.iter().position(|n| n == v) {
            return i;
        }
        assert!(self.names.len() < NV, "too many variables for the oracle");
        self.names.push(v.to_string());
        self.names.len() - 1
    }

    fn linearize(&mut self, t: &Term) -> Form {
        match t {
            Term::Var(v) => Form::var(self.index(v)),
            Term::Num(n) => Form::constant(n.to_string().parse().unwrap()),
            Term::App(Func::Succ, a) => self.linearize(&a[0]).axpy(&Form::constant(1), 1),
            Term::App(Func::Neg, a) => self.linearize(&a[0]).scale(-1),
            Term::App(Func::Add, a) => {
                let l = self.linearize(&a[0]);
                l.axpy(&self.linearize(&a[1]), 1)
            }
            Term::App(Func::Mul, a) => {
                let (l, r) = (self.linearize(&a[0]), self.linearize(&a[1]));
                if l.is_constant() {
                    r.scale(l.k)
                } else {
                    assert!(r.is_constant(), "non-linear product");
                    l.scale(r.k)
                }
            }
            Term::App(Func::Pow, _) => panic!("exponentiation is not linear"),
        }
    }

    fn compile(&mut self, f: &Formula) -> Node {
        match f {
            Formula::Top => Node::Const(true),
            Formula::Bot => Node::Const(false),
            Formula::Prop(_) => panic!("propositional letter"),
            Formula::Atom(a) => {
                let form = self.linearize(&a.lhs).axpy(&self.linearize(&a.rhs), -1);
                let rel = match &a.pred {
                    Pred::Eq => Rel::Eq,
                    Pred::Lt => Rel::Lt,
                    Pred::Cong(m) => Rel::Cong(m.to_string().parse().unwrap()),
                };
                Node::Atom(rel, form)
            }
            Formula::Not(g) => Node::Not(Box::new(self.compile(g))),
            Formula::And(gs) => Node::And(gs.iter().map(|g| self.compile(g)).collect()),
            Formula::Or(gs) => Node::Or(gs.iter().map(|g| self.compile(g)).collect()),
            Formula::Implies(a, b) => {
                let a = self.compile(a);
                Node::Or(vec![Node::Not(Box::new(a)), self.compile(b)])
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.compile(a), self.compile(b));
                Node::Or(vec![
                    Node::And(vec![a.clone(), b.clone()]),
                    Node::And(vec![Node::Not(Box::new(a)), Node::Not(Box::new(b))]),
                ])
            }
            Formula::Exists(x, g) | Formula::Forall(x, g) => {
                let var = self.index(x);
                let body = self.compile(g);
                let binder = self.binder(var, &body);
                Node::Quant(matches!(f, Formula::Exists(..)), binder, Box::new(body))
            }
        }
    }

    fn binder(&self, x: usize, body: &Node) -> Binder {
        let mut atoms: Vec<(Form, Option<i128>)> = Vec::new();
        let mut inner: Vec<usize> = Vec::new();
        collect(body, &mut atoms, &mut inner);
        inner.retain(|&v| v != x);
        let mut seen = Vec::new();
        inner.retain(|v| {
            let fresh = !seen.contains(v);
            seen.push(*v);
            fresh
        });
        // Inner variables matter only when linked to `x` through shared atoms;
        // eliminating an unlinked one never touches an atom containing `x`.
        let mut linked = vec![x];
        loop {
            let before = linked.len();
            for (f, _) in &atoms {
                if linked.iter().any(|&v| f.c[v] != 0) {
                    for &w in &inner {
                        if f.c[w] != 0 && !linked.contains(&w) {
                            linked.push(w);
                        }
                    }
                }
            }
            if linked.len() == before {
                break;
            }
        }
        inner.retain(|w| linked.contains(w));
        let relevant: Vec<&(Form, Option<i128>)> =
            atoms.iter().filter(|(f, _)| linked.iter().any(|&v| f.c[v] != 0)).collect();
        let mut forms: BTreeSet<Form> = relevant.iter().map(|(f, _)| normalize(f.clone())).collect();
        if self.dom == Dom::N {
            // Bound naturals are non-negative.
            forms.extend(inner.iter().map(|&w| Form::var(w)));
        }
        let mut period: i128 = relevant.iter().filter_map(|(_, m)| *m).fold(1, |l, m| l.lcm(&m));
        for &w in &inner {
            let with_w: Vec<Form> = forms.iter().filter(|f| f.c[w] != 0).cloned().collect();
            period *= with_w.iter().fold(1i128, |l, f| l.lcm(&f.c[w].abs()));
            for (i, f) in with_w.iter().enumerate() {
                for g in &with_w[i + 1..] {
                    forms.insert(f.combine(g, w));
                }
            }
        }
        let roots = forms
            .into_iter()
            .filter(|f| f.c[x] != 0 && inner.iter().all(|&w| f.c[w] == 0))
            .collect();
        // Near a root the pattern can be irregular for about one period per
        // eliminated inner quantifier; beyond that it repeats with `period`.
        let margin = period * inner.len() as i128 + relevant.len() as i128 + 2;
        Binder { var: x, roots, margin, period }
    }
}

fn collect(n: &Node, atoms: &mut Vec<(Form, Option<i128>)>, inner: &mut Vec<usize>) {
    match n {
        Node::Const(_) => {}
        Node::Atom(rel, f) => {
            if !f.is_constant() {
                let m = if let Rel::Cong(m) = rel { Some(*m) } else { None };
                atoms.push((f.clone(), m));
            }
        }
        Node::Not(g) => collect(g, atoms, inner),
        Node::And(gs) | Node::Or(gs) => gs.iter().for_each(|g| collect(g, atoms, inner)),
        Node::Quant(_, b, g) => {
            collect(g, atoms, inner);
            inner.push(b.var);
        }
    }
}

/// Values the oracle computes with: `i128` over ℤ and ℕ, `Ratio<i128>` over ℚ.
trait Val: Clone + Ord + std::fmt::Debug {
    fn from_int(k: i128) -> Self;
    fn eval(f: &Form, env: &[Self; NV]) -> Self;
    fn holds(rel: Rel, v: &Self) -> bool;
    fn candidates(b: &Binder, env: &[Self; NV], dom: Dom) -> Vec<Self>;
}

/// `(x-free part, coefficient of x)` of a form at `env`.
fn split<V: Val>(f: &Form, x: usize, env: &[V; NV]) -> (V, i128) {
    let mut rest = f.clone();
    rest.c[x] = 0;
    (V::eval(&rest, env), f.c[x])
}

impl Val for i128 {
    fn from_int(k: i128) -> i128 {
        k
    }

    fn eval(f: &Form, env: &[i128; NV]) -> i128 {
        f.c.iter().zip(env).fold(f.k, |acc, (c, v)| acc + c * v)
    }

    fn holds(rel: Rel, v: &i128) -> bool {
        match rel {
            Rel::Eq => *v == 0,
            Rel::Lt => *v < 0,
            Rel::Cong(m) => v.mod_floor(&m) == 0,
        }
    }

    fn candidates(b: &Binder, env: &[i128; NV], dom: Dom) -> Vec<i128> {
        // Roots as integer intervals [floor, ceil] of rest / -a.
        let mut pts: Vec<i128> = Vec::new();
        for f in &b.roots {
            let (rest, a) = split::<i128>(f, b.var, env);
            let (num, den) = (-rest, a);
            pts.push(Integer::div_floor(&num, &den));
            pts.push(Integer::div_ceil(&num, &den));
        }
        if dom == Dom::N {
            pts.push(0);
        }
        if pts.is_empty() {
            pts.push(0);
        }
        pts.sort_unstable();
        pts.dedup();
        let (m, p) = (b.margin, b.period);
        let lo_bound = if dom == Dom::N { 0 } else { i128::MIN };
        let mut ranges: Vec<(i128, i128)> = Vec::new();
        // Around every root, plus one full period in each gap and beyond the ends.
        ranges.push((pts[0] - m - p, pts[0]));
        for w in pts.windows(2) {
            ranges.push((w[0], (w[0] + m + p).min(w[1])));
            ranges.push(((w[1] - m).max(w[0]), w[1]));
        }
        let last = *pts.last().unwrap();
        ranges.push((last, last + m + p));
        let mut out: Vec<i128> = Vec::new();
        for (lo, hi) in ranges {
            let lo = lo.max(lo_bound);
            if lo <= hi {
                out.extend(lo..=hi);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl Val for Q {
    fn from_int(k: i128) -> Q {
        Q::from_integer(k)
    }

    fn eval(f: &Form, env: &[Q; NV]) -> Q {
        let mut acc = Q::from_integer(f.k);
        for (c, v) in f.c.iter().zip(env) {
            if *c != 0 {
                acc += v * *c;
            }
        }
        acc
    }

    fn holds(rel: Rel, v: &Q) -> bool {
        match rel {
            Rel::Eq => v.is_zero(),
            Rel::Lt => v.is_negative(),
            Rel::Cong(m) => v.is_integer() && v.to_integer().mod_floor(&m) == 0,
        }
    }

    fn candidates(b: &Binder, env: &[Q; NV], _dom: Dom) -> Vec<Q> {
        let mut roots: Vec<Q> = b
            .roots
            .iter()
            .map(|f| {
                let (rest, a) = split::<Q>(f, b.var, env);
                -rest / a
            })
            .collect();
        roots.sort();
        roots.dedup();
        let mut out = roots.clone();
        for w in roots.windows(2) {
            out.push((w[0] + w[1]) / 2);
        }
        match (roots.first(), roots.last()) {
            (Some(lo), Some(hi)) => {
                out.push(lo - 1);
                out.push(hi + 1);
            }
            _ => out.push(Q::zero()),
        }
        out
    }
}

fn eval<V: Val>(n: &Node, env: &mut [V; NV], dom: Dom) -> bool {
    match n {
        Node::Const(b) => *b,
        Node::Atom(rel, f) => V::holds(*rel, &V::eval(f, env)),
        Node::Not(g) => !eval(g, env, dom),
        Node::And(gs) => gs.iter().all(|g| eval(g, env, dom)),
        Node::Or(gs) => gs.iter().any(|g| eval(g, env, dom)),
        Node::Quant(exists, b, g) => {
            let saved = env[b.var].clone();
            let mut result = !*exists;
            for c in V::candidates(b, env, dom) {
                env[b.var] = c;
                if eval(g, env, dom) == *exists {
                    result = *exists;
                    break;
                }
            }
            env[b.var] = saved;
            result
        }
    }
}

pub fn dom_of(th: TheoryId) -> Dom {
    match th {
        TheoryId::Dlo | TheoryId::DivGroup | TheoryId::QLin => Dom::Q,
        TheoryId::ZDiscrete | TheoryId::ZMod | TheoryId::ZPres => Dom::Z,
        TheoryId::NDiscrete | TheoryId::NPres => Dom::N,
    }
}

/// A formula prepared for repeated evaluation in one structure.
pub struct Oracle {
    node: Node,
    dom: Dom,
    names: Vec<String>,
}

impl Oracle {
    pub fn new(th: TheoryId, f: &Formula) -> Oracle {
        Oracle::in_domain(dom_of(th), f)
    }

    pub fn in_domain(dom: Dom, f: &Formula) -> Oracle {
        let mut c = Compiler { dom, names: Vec::new() };
        // Free variables get the first slots so assignments line up.
        for v in FREE {
            c.index(v);
        }
        let node = c.compile(f);
        Oracle { node, dom, names: c.names }
    }

    /// Truth value at an assignment of the free variables (missing ones are 0).
    pub fn eval(&self, env: &BTreeMap<String, Q>) -> bool {
        match self.dom {
            Dom::Q => {
                let mut slots: [Q; NV] = std::array::from_fn(|_| Q::zero());
                for (i, n) in self.names.iter().enumerate() {
                    if let Some(v) = env.get(n) {
                        slots[i] = *v;
                    }
                }
                eval(&self.node, &mut slots, self.dom)
            }
            Dom::Z | Dom::N => {
                let mut slots = [0i128; NV];
                for (i, n) in self.names.iter().enumerate() {
                    if let Some(v) = env.get(n) {
                        assert!(v.is_integer(), "integer structure needs integer values");
                        slots[i] = v.to_integer();
                    }
                }
                eval(&self.node, &mut slots, self.dom)
            }
        }
    }

    /// Rough upper bound on candidate evaluations along the deepest binder chain.
    pub fn cost(&self) -> f64 {
        fn go(n: &Node) -> f64 {
            match n {
                Node::Const(_) | Node::Atom(..) => 1.0,
                Node::Not(g) => go(g),
                Node::And(gs) | Node::Or(gs) => gs.iter().map(go).sum(),
                Node::Quant(_, b, g) => {
                    let per = (b.roots.len() as f64 * 2.0 + 2.0) * (2 * b.margin + b.period + 1) as f64;
                    per * go(g)
                }
            }
        }
        go(&self.node)
    }
}

/// A random assignment of the free variables: integers in [-8, 8] over ℤ,
/// [0, 12] over ℕ, and fractions with denominator ≤ 3 in [-8, 8] over ℚ.
pub fn random_assignment<R: Rng>(rng: &mut R, dom: Dom) -> BTreeMap<String, Q> {
    FREE.iter()
        .map(|v| {
            let q = match dom {
                Dom::Z => Q::from_integer(rng.gen_range(-8..=8)),
                Dom::N => Q::from_integer(rng.gen_range(0..=12)),
                Dom::Q => {
                    let d = rng.gen_range(1..=3);
                    Q::new(rng.gen_range(-8 * d..=8 * d), d)
                }
            };
            (v.to_string(), q)
        })
        .collect()
}
