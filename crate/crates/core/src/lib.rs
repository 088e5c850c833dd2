//! Quantifier elimination and decision procedures for order/addition
//! structures, a propositional engine, and an identity prover for positive
//! reals with `+`, `*` and exponentiation.

pub mod additive;
pub mod dense;
pub mod error;
pub mod identities;
pub mod linear;
pub mod order;
pub mod qe;
pub mod prop;
pub mod syntax;

pub use error::{Error, Result};
pub use syntax::{parse_formula, parse_term, render, Formula, Signature, Term};
