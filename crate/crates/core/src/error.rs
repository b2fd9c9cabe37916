use thiserror::Error;

use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed fields: {0} and {1}")]
    Mismatch(FieldSpec, FieldSpec),
    #[error("invalid field: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("polynomials over different rings ({0})")]
    RingMismatch(String),
    #[error("operation needs level-0 input, got level {0}")]
    LevelMismatch(u32),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix has wrong shape: {0}")]
    Shape(String),
    #[error("inexact division")]
    Inexact,
}

/// Text-syntax error with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("group order exceeds cap {0}")]
    CapExceeded(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {index} has shape {rows}x{cols}, expected {n}x{n}")]
    BadShape {
        index: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("group has no generators and no dimension")]
    Empty,
    #[error("element {index} is not monomial: {reason}")]
    NotMonomial { index: usize, reason: String },
    #[error("unknown generator `{0}` in relator")]
    UnknownGenerator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModRepError {
    #[error("group algebra k[a,b]/(a^3,b^3) needs characteristic 3, got {0}")]
    WrongCharacteristic(u32),
    #[error("module axioms fail: {0}")]
    Axioms(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FsingError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polynomial is not homogeneous for weights {0:?}")]
    Inhomogeneous(Vec<u32>),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("check failed: {0}")]
    CheckFailed(String),
}
