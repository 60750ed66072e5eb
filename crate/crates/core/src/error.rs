use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix entries length {len} does not match {rows}x{cols}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("generator `{name}` has degree {degree}; generators must have even degree >= 2")]
    BadGeneratorDegree { name: String, degree: u32 },

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("polynomials are over different generator lists")]
    GeneratorMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("expected a class of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("relation has a nonzero constant term; the presented ring would be zero")]
    ConstantRelation,

    #[error("truncation degree {0} must be even")]
    OddTruncation(u32),

    #[error("degree {degree} of the ring is not free (invariant factors {torsion:?})")]
    NotFree { degree: u32, torsion: Vec<String> },

    #[error("invalid bundle class: {0}")]
    InvalidBundle(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("malformed document: {0}")]
    Parse(String),
}
