//! Concrete syntax, parser, printer and desugaring.

mod ast;
mod desugar;
mod lexer;
mod parser;
mod printer;

use thiserror::Error;

pub use ast::{Formula, Program};
pub use desugar::{
    desugar_formula, desugar_program, determining_vectors, is_core_formula, is_core_program, Desugarer,
};
pub use parser::{is_variable_name, parse_expr, parse_formula, parse_program, Expr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("syntax error at line {line}, column {col}: expected one of {}", expected.join(", "))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<String>,
    },
    #[error("nondeterministic program where a deterministic one is required: {0}")]
    NonDeterministicAdjoint(String),
    #[error("bad index: {0}")]
    BadIndex(String),
}
