use std::collections::BTreeSet;

use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: expected one of {expected:?}, found {found}")]
    Parse {
        offset: usize,
        expected: BTreeSet<String>,
        found: String,
    },
    #[error("symbol `{symbol}` is not declared in signature `{signature}`")]
    Signature { symbol: String, signature: String },
    #[error("normal form has {clauses} clauses, exceeding the cap of {cap}")]
    Size { clauses: usize, cap: usize },
    #[error("unsupported symbol `{symbol}` for {context}")]
    UnsupportedSymbol { symbol: String, context: String },
    #[error("term `{0}` is not linear")]
    NonLinear(String),
    #[error("formula is not a sentence; free variables: {0:?}")]
    NotASentence(BTreeSet<String>),
    #[error("formula is not ground: {0}")]
    NonGround(String),
    #[error("atom `{0}` has no truth value in the assignment")]
    UnassignedAtom(String),
    #[error("formula is not propositional: {0}")]
    NotPropositional(String),
    #[error("term uses `{symbol}`, which is outside fragment `{fragment}`")]
    SignatureMismatch { symbol: String, fragment: String },
    #[error("no counterexample found in {0} random points")]
    NoCounterexample(usize),
    #[error("numeric evaluation overflowed the precision budget")]
    Overflow,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
