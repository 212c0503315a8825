//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p not prime: {0}")]
    NotPrime(u64),

    #[error("field too large for this representation: p = {p}, n = {n}")]
    FieldTooLarge { p: u64, n: usize },

    #[error("malformed modulus: {0}")]
    MalformedModulus(String),

    #[error("modulus is reducible over F_p: {0}")]
    ReducibleModulus(String),

    #[error("no embedding: {0}")]
    NoEmbedding(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("not a polynomial: {0}")]
    NonPolynomial(String),

    #[error("constant function: {0}")]
    ConstantFunction(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("point is singular on the curve: {0}")]
    SingularPoint(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("target degree {got} below total degree {needed}")]
    DegreeTooSmall { needed: usize, got: usize },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invariant ladder exhausted; rejected candidates (name, degree): {0:?}")]
    LadderExhausted(Vec<(String, usize)>),

    #[error("is_galois_point failed at {point}: |Gamma_P| = {gamma} but projection degree = {degree}")]
    NotGaloisPoint {
        point: String,
        gamma: usize,
        degree: usize,
    },

    #[error("collineation does not stabilize the curve: {0}")]
    NotStabilizing(String),

    #[error("element is not invertible (curve polynomial reducible?): {0}")]
    NotInvertible(String),

    #[error("re-expression failed: {0}")]
    ReExpression(String),

    #[error("fiber over the common line is inconsistent: {0}")]
    FiberInconsistent(String),

    #[error("inner point supplied where an outer point is required: {0}")]
    InnerPoint(String),

    #[error("degenerate affine chart: polynomial does not involve x or y")]
    DegenerateChart,

    #[error("structure clause {clause} violated: {detail}")]
    TheoremViolation { clause: String, detail: String },

    #[error("syntax error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Domain(String),
}
