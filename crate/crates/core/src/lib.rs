//! Exact computations with Frobenius pushforwards of invariant rings of
//! finite groups in positive characteristic.

pub mod builtins;
pub mod error;
pub mod field;
pub mod frobdecomp;
pub mod fsing;
pub mod groups;
pub mod linalg;
pub mod modrep;
pub mod poly;
pub mod ratio;

pub use error::{FieldError, FsingError, GroupError, ModRepError, ParseError, PolyError};
pub use field::{FieldElement, FieldSpec};
pub use frobdecomp::{decompose, DecomposeOptions, Decomposition, DecompositionReport};
pub use groups::io::{parse_group, GroupInput};
pub use groups::{MatrixGroup, DEFAULT_CAP};
pub use linalg::Matrix;
pub use num_rational::Rational64;
pub use poly::FracPolynomial;
