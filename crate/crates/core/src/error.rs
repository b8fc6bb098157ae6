use num_bigint::BigInt;
use thiserror::Error;

use crate::fan::FanViolation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is empty")]
    Empty,

    #[error("polytope is not full-dimensional")]
    NotFullDimensional,

    #[error("origin is not in the interior of the polytope")]
    OriginNotInterior,

    #[error("polytope has non-integral vertices")]
    NotLattice,

    #[error("malformed fan: {0}")]
    MalformedFan(String),

    #[error("invalid fan: {}", format_violations(.0))]
    InvalidFan(Vec<FanViolation>),

    #[error("fan precondition failed: {0}")]
    FanPrecondition(String),

    #[error("fan is not Fano")]
    NotFano,

    #[error("anticanonical polytope is not reflexive")]
    NotReflexive,

    #[error("class group has torsion (Smith invariants {0:?})")]
    Torsion(Vec<BigInt>),

    #[error("the unit ideal has no minimal primes")]
    UnitIdeal,

    #[error("the zero ideal has empty vanishing locus complement")]
    ZeroIdeal,

    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("inconsistent grading data: {0}")]
    InconsistentGrading(String),

    #[error("degree cone is not pointed: no functional u with |u_i| <= {bound} is positive on all degrees")]
    NotPointed { bound: i64 },

    #[error("relation {relation} is not homogeneous of its declared degree")]
    NotHomogeneous { relation: usize },

    #[error("explicit relations are required")]
    MissingRelations,

    #[error("invalid model parameters: {0}")]
    InvalidModel(String),

    #[error("integer overflow converting {0} to machine integer")]
    Overflow(BigInt),

    #[error("{path}: line {line}: {message}")]
    Syntax {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    FanFile {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_violations(v: &[FanViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
