//! Free variables, substitution, renaming and the NNF/DNF passes.

use std::collections::BTreeSet;

use super::ast::{Formula, Term};
use crate::error::{Error, Result};

/// Default cap on the number of DNF clauses.
pub const DEFAULT_MAX_CLAUSES: usize = 100_000;

pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_free(f, &mut Vec::new(), &mut out);
    out
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match f {
        Formula::Top | Formula::Bot | Formula::Prop(_) => {}
        Formula::Atom(a) => {
            let mut vs = BTreeSet::new();
            a.lhs.vars_into(&mut vs);
            a.rhs.vars_into(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        }
        Formula::Not(g) => collect_free(g, bound, out),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| collect_free(g, bound, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_free(a, bound, out);
            collect_free(b, bound, out);
        }
        Formula::Forall(x, g) | Formula::Exists(x, g) => {
            bound.push(x.clone());
            collect_free(g, bound, out);
            bound.pop();
        }
    }
}

/// Every variable name occurring in `f`, bound or free.
pub fn all_vars(f: &Formula) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    f.for_each_atom(&mut |a| {
        a.lhs.vars_into(&mut out);
        a.rhs.vars_into(&mut out);
    });
    collect_binders(f, &mut out);
    out
}

fn collect_binders(f: &Formula, out: &mut BTreeSet<String>) {
    match f {
        Formula::Forall(x, g) | Formula::Exists(x, g) => {
            out.insert(x.clone());
            collect_binders(g, out);
        }
        Formula::Not(g) => collect_binders(g, out),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| collect_binders(g, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_binders(a, out);
            collect_binders(b, out);
        }
        _ => {}
    }
}

/// `base_k` for the smallest `k >= 1` not in `used`.
pub fn fresh_name(base: &str, used: &BTreeSet<String>) -> String {
    (1..)
        .map(|k| format!("{base}_{k}"))
        .find(|cand| !used.contains(cand))
        .unwrap()
}

pub fn substitute_term(t: &Term, x: &str, s: &Term) -> Term {
    match t {
        Term::Var(v) if v == x => s.clone(),
        Term::Var(_) | Term::Num(_) => t.clone(),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| substitute_term(a, x, s)).collect()),
    }
}

/// Capture-avoiding `f[x := t]`.
pub fn substitute(f: &Formula, x: &str, t: &Term) -> Formula {
    let mut t_vars = BTreeSet::new();
    t.vars_into(&mut t_vars);
    subst_rec(f, x, t, &t_vars)
}

fn subst_rec(f: &Formula, x: &str, t: &Term, t_vars: &BTreeSet<String>) -> Formula {
    match f {
        Formula::Top | Formula::Bot | Formula::Prop(_) => f.clone(),
        Formula::Atom(_) => f.map_terms(&|u| substitute_term(u, x, t)),
        Formula::Not(g) => Formula::not(subst_rec(g, x, t, t_vars)),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| subst_rec(g, x, t, t_vars)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| subst_rec(g, x, t, t_vars)).collect()),
        Formula::Implies(a, b) => {
            Formula::implies(subst_rec(a, x, t, t_vars), subst_rec(b, x, t, t_vars))
        }
        Formula::Iff(a, b) => Formula::iff(subst_rec(a, x, t, t_vars), subst_rec(b, x, t, t_vars)),
        Formula::Forall(y, body) | Formula::Exists(y, body) => {
            let is_forall = matches!(f, Formula::Forall(..));
            let rebuild = |v: String, b: Formula| {
                if is_forall {
                    Formula::forall(v, b)
                } else {
                    Formula::exists(v, b)
                }
            };
            if y == x || !free_vars(body).contains(x) {
                return f.clone();
            }
            if t_vars.contains(y) {
                let mut used = all_vars(body);
                used.extend(t_vars.iter().cloned());
                used.insert(x.to_string());
                let y2 = fresh_name(y, &used);
                let renamed = subst_rec(body, y, &Term::Var(y2.clone()), &BTreeSet::from([y2.clone()]));
                rebuild(y2, subst_rec(&renamed, x, t, t_vars))
            } else {
                rebuild(y.clone(), subst_rec(body, x, t, t_vars))
            }
        }
    }
}

/// Renames binders so that no two quantifiers bind the same name and no
/// binder shadows a free variable.
pub fn rename_bound_apart(f: &Formula) -> Formula {
    let mut used = all_vars(f);
    let mut seen: BTreeSet<String> = free_vars(f);
    rename_rec(f, &mut used, &mut seen)
}

fn rename_rec(f: &Formula, used: &mut BTreeSet<String>, seen: &mut BTreeSet<String>) -> Formula {
    match f {
        Formula::Top | Formula::Bot | Formula::Prop(_) | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(rename_rec(g, used, seen)),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| rename_rec(g, used, seen)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| rename_rec(g, used, seen)).collect()),
        Formula::Implies(a, b) => {
            let a = rename_rec(a, used, seen);
            Formula::implies(a, rename_rec(b, used, seen))
        }
        Formula::Iff(a, b) => {
            let a = rename_rec(a, used, seen);
            Formula::iff(a, rename_rec(b, used, seen))
        }
        Formula::Forall(y, body) | Formula::Exists(y, body) => {
            let (name, body) = if seen.contains(y) {
                let y2 = fresh_name(y, used);
                used.insert(y2.clone());
                let b = substitute(body, y, &Term::Var(y2.clone()));
                (y2, b)
            } else {
                (y.clone(), (**body).clone())
            };
            seen.insert(name.clone());
            let body = rename_rec(&body, used, seen);
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(name, body)
            } else {
                Formula::exists(name, body)
            }
        }
    }
}

/// Negation normal form: `->`/`<->` compiled away, negations only on atoms.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, true)
}

fn nnf(f: &Formula, pos: bool) -> Formula {
    match f {
        Formula::Top => if pos { Formula::Top } else { Formula::Bot },
        Formula::Bot => if pos { Formula::Bot } else { Formula::Top },
        Formula::Prop(_) | Formula::Atom(_) => {
            if pos {
                f.clone()
            } else {
                Formula::not(f.clone())
            }
        }
        Formula::Not(g) => nnf(g, !pos),
        Formula::And(fs) => {
            let items = fs.iter().map(|g| nnf(g, pos));
            if pos { Formula::and(items) } else { Formula::or(items) }
        }
        Formula::Or(fs) => {
            let items = fs.iter().map(|g| nnf(g, pos));
            if pos { Formula::or(items) } else { Formula::and(items) }
        }
        Formula::Implies(a, b) => {
            if pos {
                Formula::or([nnf(a, false), nnf(b, true)])
            } else {
                Formula::and([nnf(a, true), nnf(b, false)])
            }
        }
        Formula::Iff(a, b) => {
            if pos {
                Formula::and([
                    Formula::or([nnf(a, false), nnf(b, true)]),
                    Formula::or([nnf(a, true), nnf(b, false)]),
                ])
            } else {
                Formula::or([
                    Formula::and([nnf(a, true), nnf(b, false)]),
                    Formula::and([nnf(a, false), nnf(b, true)]),
                ])
            }
        }
        Formula::Forall(x, g) => {
            if pos {
                Formula::forall(x.clone(), nnf(g, true))
            } else {
                Formula::exists(x.clone(), nnf(g, false))
            }
        }
        Formula::Exists(x, g) => {
            if pos {
                Formula::exists(x.clone(), nnf(g, true))
            } else {
                Formula::forall(x.clone(), nnf(g, false))
            }
        }
    }
}

/// Clauses of the DNF of a quantifier-free NNF formula. `[]` is false and
/// `[[]]` is true.
pub fn dnf_clauses(f: &Formula, max_clauses: usize) -> Result<Vec<Vec<Formula>>> {
    match f {
        Formula::Top => Ok(vec![vec![]]),
        Formula::Bot => Ok(vec![]),
        Formula::Prop(_) | Formula::Atom(_) | Formula::Not(_) => {
            if !f.is_literal() {
                return Err(Error::Precondition(format!("not in NNF: {f}")));
            }
            Ok(vec![vec![f.clone()]])
        }
        Formula::Or(fs) => {
            let mut out = Vec::new();
            for g in fs {
                out.extend(dnf_clauses(g, max_clauses)?);
                if out.len() > max_clauses {
                    return Err(Error::Size { clauses: out.len(), cap: max_clauses });
                }
            }
            Ok(out)
        }
        Formula::And(fs) => {
            let mut acc: Vec<Vec<Formula>> = vec![vec![]];
            for g in fs {
                let right = dnf_clauses(g, max_clauses)?;
                let n = acc.len().saturating_mul(right.len());
                if n > max_clauses {
                    return Err(Error::Size { clauses: n, cap: max_clauses });
                }
                let mut next = Vec::with_capacity(n);
                for l in &acc {
                    for r in &right {
                        let mut c = l.clone();
                        for lit in r {
                            if !c.contains(lit) {
                                c.push(lit.clone());
                            }
                        }
                        next.push(c);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
        _ => Err(Error::Precondition(format!(
            "DNF needs a quantifier-free NNF formula: {f}"
        ))),
    }
}

/// Disjunctive normal form of a quantifier-free NNF formula.
pub fn to_dnf(f: &Formula, max_clauses: usize) -> Result<Formula> {
    let clauses = dnf_clauses(f, max_clauses)?;
    Ok(Formula::or(clauses.into_iter().map(Formula::and)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn free_variable_examples() {
        let f = Formula::exists("x", Formula::lt(Term::var("u"), Term::var("x")));
        assert_eq!(free_vars(&f), BTreeSet::from(["u".to_string()]));
        let g = Formula::forall(
            "x",
            Formula::exists("y", Formula::lt(Term::var("x"), Term::var("y"))),
        );
        assert!(free_vars(&g).is_empty());
        let h = Formula::eq(Term::add(Term::var("x"), Term::var("y")), Term::var("z"));
        assert_eq!(free_vars(&h).len(), 3);
    }

    #[test]
    fn substitution_avoids_capture() {
        let f = Formula::exists("y", Formula::lt(Term::var("x"), Term::var("y")));
        let g = substitute(&f, "x", &Term::var("y"));
        assert_eq!(
            g,
            Formula::exists("y_1", Formula::lt(Term::var("y"), Term::var("y_1")))
        );
        assert_eq!(substitute(&Formula::Top, "x", &Term::var("z")), Formula::Top);
        let h = substitute(
            &Formula::lt(Term::var("x"), Term::var("y")),
            "x",
            &Term::var("w0"),
        );
        assert_eq!(h, Formula::lt(Term::var("w0"), Term::var("y")));
    }

    #[test]
    fn nnf_examples() {
        let a = p("a");
        let b = p("b");
        assert_eq!(
            to_nnf(&Formula::not(Formula::and([a.clone(), b.clone()]))),
            Formula::or([Formula::not(a.clone()), Formula::not(b.clone())])
        );
        assert_eq!(to_nnf(&Formula::not(Formula::not(a.clone()))), a);
        assert_eq!(
            to_nnf(&Formula::implies(a.clone(), b.clone())),
            Formula::or([Formula::not(a), b])
        );
    }

    #[test]
    fn dnf_examples() {
        let (a, b, c, d) = (p("a"), p("b"), p("c"), p("d"));
        let f = Formula::and([Formula::or([a.clone(), b.clone()]), c.clone()]);
        assert_eq!(
            to_dnf(&f, 10).unwrap(),
            Formula::or([
                Formula::and([a.clone(), c.clone()]),
                Formula::and([b.clone(), c.clone()])
            ])
        );
        assert_eq!(to_dnf(&a, 10).unwrap(), a);
        let g = Formula::and([Formula::or([a.clone(), b.clone()]), Formula::or([c.clone(), d.clone()])]);
        let clauses = dnf_clauses(&g, 10).unwrap();
        assert_eq!(clauses.len(), 4);
        assert!(matches!(dnf_clauses(&g, 3), Err(Error::Size { .. })));
    }

    #[test]
    fn renaming_separates_binders() {
        let f = Formula::and([
            Formula::exists("x", Formula::lt(Term::var("x"), Term::var("y"))),
            Formula::exists("x", Formula::lt(Term::var("y"), Term::var("x"))),
            Formula::exists("y", Formula::eq(Term::var("y"), Term::var("y"))),
        ]);
        let g = rename_bound_apart(&f);
        let Formula::And(items) = &g else { panic!() };
        let binders: Vec<_> = items
            .iter()
            .map(|i| match i {
                Formula::Exists(x, _) => x.clone(),
                _ => panic!(),
            })
            .collect();
        assert_eq!(binders, ["x", "x_1", "y_1"]);
        assert_eq!(free_vars(&g), free_vars(&f));
    }
}
