//! Grammar, AST, printer and the structural passes every theory shares.

mod ast;
mod parser;
mod render;
mod signature;
mod transform;

pub use ast::{Atom, Formula, Func, Pred, Term};
pub use parser::{parse_equation, parse_formula, parse_term};
pub use render::{render, render_term};
pub use signature::{Constant, Signature};
pub use transform::{
    all_vars, dnf_clauses, fresh_name, free_vars, rename_bound_apart, substitute,
    substitute_term, to_dnf, to_nnf, DEFAULT_MAX_CLAUSES,
};
