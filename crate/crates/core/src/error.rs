use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("nested map application at position {pos}: map arguments must be powers of X")]
    NestedMap { pos: usize },

    #[error("term {term} of side {side} is not linear in the unknown maps ({maps} map applications)")]
    NotLinear { side: usize, term: usize, maps: usize },

    #[error("inhomogeneous identity: expected degree {expected}, found degree {found} (side {side}, term {term})")]
    Inhomogeneous {
        expected: u32,
        found: u32,
        side: usize,
        term: usize,
    },

    #[error("n must exceed 1 (identity has degree {0})")]
    DegreeTooLow(u32),

    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),

    #[error("unresolved symbol `{0}`: no binding supplied")]
    UnresolvedSymbol(String),

    #[error("element bound to `{0}` is not central")]
    NotCentral(String),

    #[error("element bound to `{0}` is not invertible")]
    NotInvertible(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid component: {0}")]
    InvalidComponent(String),

    #[error("the bimodule has dimension 0 and cannot be faithful")]
    EmptyModule,

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: i64 },

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },

    #[error("algebra is not unital")]
    NotUnital,

    #[error("the compiled system has no solution")]
    Inconsistent,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
