use thiserror::Error;

use crate::exactmath::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("cyclotomic operands live in different fields: Q(ζ_{left}) and Q(ζ_{right})")]
    MismatchedPrimes { left: u32, right: u32 },

    #[error("attempted to invert zero in Q(ζ_{0})")]
    DivisionByZero(u32),

    #[error("residue {residue} is not a unit modulo {modulus}")]
    NotAUnit { residue: i64, modulus: i64 },

    #[error("value expected to be rational has non-constant coordinates: {0}")]
    NotRational(String),

    #[error("invalid singularity type 1/{m}(1,{a}): {reason}")]
    InvalidSingularity {
        m: u32,
        a: u32,
        reason: &'static str,
    },

    #[error("linear system is singular")]
    SingularSystem,

    #[error("discrepancy coefficient {0} lies outside [0, 1)")]
    DiscrepancyOutOfRange(Rational),

    #[error("singularity 1/{m}(1,{a}) does not belong to an action of order {p}")]
    WrongOrder { m: u32, a: u32, p: u32 },

    #[error("fixed-point count is not integral: (p·e(Z) − e(X)) / (p − 1) − e(C) = {0}")]
    NonIntegralFixedPoints(Rational),

    #[error("group order {order}: K² of the resolution would be {k2}, which is not an integer")]
    NonIntegralK2 { order: u32, k2: Rational },

    #[error("unsupported group order {0}; supported orders are 3, 7, 9 and 21")]
    UnsupportedGroupOrder(u32),

    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("lattice is degenerate")]
    Degenerate,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("pairing {row}·{col} = {value} is not an integer")]
    NonIntegralPairing {
        row: String,
        col: String,
        value: Rational,
    },

    #[error("no admissible glue residue found: {0}")]
    NoGlue(&'static str),

    #[error(
        "m = {m} gives E·ν*K_Z = {degree}, outside the open interval (0, 9/7); only m ∈ {{1, 2}} is admissible"
    )]
    CurveDegreeOutOfRange { m: i64, degree: Rational },

    #[error("constraint `{name}` disagrees with the intersection matrix: hand-coded {hand}, derived {derived}")]
    ConstraintMismatch {
        name: String,
        hand: String,
        derived: String,
    },

    #[error("unsupported fibre type `{0}`; only multiplicative fibres I_k are handled")]
    UnsupportedFibre(String),
}
