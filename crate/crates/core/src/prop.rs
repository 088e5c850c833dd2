//! Truth-table semantics and the canonical full disjunctive normal form.
//!
//! Atoms are opaque: a propositional letter is named by itself and a
//! first-order atom by its rendering.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::syntax::{render, Formula};

/// Rows are enumerated exhaustively, so the atom count is capped.
pub const MAX_ATOMS: usize = 20;

fn atom_name(f: &Formula) -> Option<String> {
    match f {
        Formula::Prop(p) => Some(p.clone()),
        Formula::Atom(_) => Some(render(f)),
        _ => None,
    }
}

/// Atom names in first-occurrence order.
pub fn atoms(f: &Formula) -> Result<Vec<String>> {
    let mut out = Vec::new();
    collect_atoms(f, &mut out)?;
    Ok(out)
}

fn collect_atoms(f: &Formula, out: &mut Vec<String>) -> Result<()> {
    if let Some(name) = atom_name(f) {
        if !out.contains(&name) {
            out.push(name);
        }
        return Ok(());
    }
    match f {
        Formula::Top | Formula::Bot => Ok(()),
        Formula::Not(g) => collect_atoms(g, out),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().try_for_each(|g| collect_atoms(g, out)),
        Formula::Implies(a, b) | Formula::Iff(a, b) => {
            collect_atoms(a, out)?;
            collect_atoms(b, out)
        }
        _ => Err(Error::NotPropositional(render(f))),
    }
}

pub fn eval_prop(f: &Formula, v: &BTreeMap<String, bool>) -> Result<bool> {
    eval_with(f, &|name| v.get(name).copied())
}

fn eval_with(f: &Formula, look: &dyn Fn(&str) -> Option<bool>) -> Result<bool> {
    if let Some(name) = atom_name(f) {
        return look(&name).ok_or(Error::UnassignedAtom(name));
    }
    Ok(match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(g) => !eval_with(g, look)?,
        Formula::And(fs) => {
            for g in fs {
                if !eval_with(g, look)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(fs) => {
            for g in fs {
                if eval_with(g, look)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Implies(a, b) => !eval_with(a, look)? || eval_with(b, look)?,
        Formula::Iff(a, b) => eval_with(a, look)? == eval_with(b, look)?,
        _ => return Err(Error::NotPropositional(render(f))),
    })
}

/// Full DNF over a fixed atom list: one clause per satisfying row.
///
/// A clause is a bit-vector with atom 0 in the most significant position;
/// clauses are kept sorted as unsigned integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullDnf {
    pub atoms: Vec<String>,
    pub clauses: Vec<u32>,
}

impl FullDnf {
    /// Whether atom `i` occurs positively in `clause`.
    pub fn is_positive(&self, clause: u32, i: usize) -> bool {
        clause >> (self.atoms.len() - 1 - i) & 1 == 1
    }
}

impl fmt::Display for FullDnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("false");
        }
        for (n, &c) in self.clauses.iter().enumerate() {
            if n > 0 {
                f.write_str(" | ")?;
            }
            if self.atoms.is_empty() {
                f.write_str("true")?;
                continue;
            }
            let lits: Vec<String> = (0..self.atoms.len())
                .map(|i| {
                    let a = &self.atoms[i];
                    if self.is_positive(c, i) {
                        a.clone()
                    } else {
                        format!("!{a}")
                    }
                })
                .collect();
            if lits.len() > 1 {
                write!(f, "({})", lits.join(" & "))?;
            } else {
                f.write_str(&lits[0])?;
            }
        }
        Ok(())
    }
}

pub fn full_dnf(f: &Formula, atom_order: &[String]) -> Result<FullDnf> {
    let k = atom_order.len();
    if k > MAX_ATOMS {
        return Err(Error::Size { clauses: 1usize << k.min(63), cap: 1 << MAX_ATOMS });
    }
    for a in atoms(f)? {
        if !atom_order.contains(&a) {
            return Err(Error::UnassignedAtom(a));
        }
    }
    let index: BTreeMap<&str, usize> =
        atom_order.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
    let mut clauses = Vec::new();
    for row in 0..(1u32 << k) {
        let look = |name: &str| index.get(name).map(|&i| row >> (k - 1 - i) & 1 == 1);
        if eval_with(f, &look)? {
            clauses.push(row);
        }
    }
    Ok(FullDnf { atoms: atom_order.to_vec(), clauses })
}

fn union_atoms(a: &Formula, b: &Formula) -> Result<Vec<String>> {
    let mut u = atoms(a)?;
    for x in atoms(b)? {
        if !u.contains(&x) {
            u.push(x);
        }
    }
    Ok(u)
}

pub fn equiv(a: &Formula, b: &Formula) -> Result<bool> {
    let u = union_atoms(a, b)?;
    Ok(full_dnf(a, &u)? == full_dnf(b, &u)?)
}

pub fn is_tautology(a: &Formula) -> Result<bool> {
    equiv(a, &Formula::Top)
}
