//! The elimination driver, sentence decision and the theory registry.

mod axioms;
mod driver;
mod matrix;
mod quadratic;
mod theory;

pub use axioms::Axiom;
pub use driver::{
    decide, decide_with, eliminate, eliminate_lform, eliminate_with, eval_ground, QeOptions, DEFAULT_MAX_SIZE,
};
pub use matrix::{matrix, Cell, Matrix};
pub use quadratic::{eval_rational, quadratic_qe};
pub use theory::TheoryId;
