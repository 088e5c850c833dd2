//! ASCII pretty-printer; the output re-parses to the same tree.

use std::fmt::{self, Display, Write};

use super::ast::{Atom, Formula, Func, Pred, Term};

// Term precedence levels, loosest first.
const SUM: u8 = 0;
const PROD: u8 = 1;
const POW: u8 = 2;
const BASE: u8 = 3;

fn term_level(t: &Term) -> u8 {
    match t {
        Term::App(Func::Add, _) => SUM,
        Term::App(Func::Mul, _) => PROD,
        Term::App(Func::Pow, _) => POW,
        _ => BASE,
    }
}

fn write_term_at(out: &mut String, t: &Term, min: u8) {
    if term_level(t) < min {
        out.push('(');
        write_term(out, t);
        out.push(')');
    } else {
        write_term(out, t);
    }
}

fn write_term(out: &mut String, t: &Term) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Num(n) => write!(out, "{n}").unwrap(),
        Term::App(Func::Succ, args) => {
            out.push_str("s(");
            write_term(out, &args[0]);
            out.push(')');
        }
        Term::App(Func::Neg, args) => {
            out.push('-');
            write_term_at(out, &args[0], BASE);
        }
        Term::App(Func::Add, args) => {
            write_term_at(out, &args[0], SUM);
            match &args[1] {
                Term::App(Func::Neg, inner) => {
                    out.push_str(" - ");
                    write_term_at(out, &inner[0], PROD);
                }
                rhs => {
                    out.push_str(" + ");
                    write_term_at(out, rhs, PROD);
                }
            }
        }
        Term::App(Func::Mul, args) => {
            write_term_at(out, &args[0], PROD);
            out.push_str(" * ");
            write_term_at(out, &args[1], POW);
        }
        Term::App(Func::Pow, args) => {
            write_term_at(out, &args[0], BASE);
            out.push_str(" ^ ");
            write_term_at(out, &args[1], POW);
        }
    }
}

fn write_atom(out: &mut String, a: &Atom, negated: bool) {
    write_term(out, &a.lhs);
    let rel = match (&a.pred, negated) {
        (Pred::Lt, false) => " < ",
        (Pred::Lt, true) => unreachable!("negated order atoms render through `!`"),
        (_, false) => " = ",
        (_, true) => " != ",
    };
    out.push_str(rel);
    write_term(out, &a.rhs);
    if let Pred::Cong(n) = &a.pred {
        write!(out, " (mod {n})").unwrap();
    }
}

/// Children of connectives are wrapped unless they are literals or constants.
fn is_tight(f: &Formula) -> bool {
    match f {
        Formula::Top | Formula::Bot | Formula::Prop(_) | Formula::Atom(_) => true,
        Formula::Not(_) => true,
        _ => false,
    }
}

fn write_child(out: &mut String, f: &Formula) {
    if is_tight(f) {
        write_formula(out, f);
    } else {
        out.push('(');
        write_formula(out, f);
        out.push(')');
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Top => out.push_str("true"),
        Formula::Bot => out.push_str("false"),
        Formula::Prop(p) => out.push_str(p),
        Formula::Atom(a) => write_atom(out, a, false),
        Formula::Not(inner) => match &**inner {
            Formula::Atom(a) if a.pred != Pred::Lt => write_atom(out, a, true),
            g => {
                out.push('!');
                write_child(out, g);
            }
        },
        Formula::And(fs) | Formula::Or(fs) => {
            let sep = if matches!(f, Formula::And(_)) { " & " } else { " | " };
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write_child(out, g);
            }
        }
        Formula::Implies(a, b) => {
            write_child(out, a);
            out.push_str(" -> ");
            write_child(out, b);
        }
        Formula::Iff(a, b) => {
            write_child(out, a);
            out.push_str(" <-> ");
            write_child(out, b);
        }
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let q = if matches!(f, Formula::Forall(..)) { "forall" } else { "exists" };
            write!(out, "{q} {x}. ").unwrap();
            match &**body {
                Formula::Forall(..) | Formula::Exists(..) => write_formula(out, body),
                g => write_child(out, g),
            }
        }
    }
}

pub fn render_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t);
    out
}

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

impl Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
