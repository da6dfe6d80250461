//! Error type shared by every module of the crate.

use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI prints [`Error::name`] verbatim, so variant names are part of the
/// user-facing contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different cyclotomic fields (conductors {0} and {1})")]
    FieldMismatch(u32, u32),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("bad size: {0}")]
    BadSize(String),
    #[error(
        "abelianization is not infinite cyclic (relator matrix rank {rank}, {gens} generators)"
    )]
    NotInfiniteCyclicAbelianization { rank: usize, gens: usize },
    #[error("meridian has phi = {0}, expected 1")]
    MeridianMismatch(i64),
    #[error("relator {index} does not map to the identity; residual {residual}")]
    RelatorViolation { index: usize, residual: String },
    #[error("image of generator {0} does not have determinant 1")]
    DeterminantNotOne(usize),
    #[error("every candidate denominator vanishes identically")]
    DegeneratePresentation,
    #[error("presentation has {gens} generators and {rels} relators; deficiency one required")]
    NotDeficiencyOne { gens: usize, rels: usize },
    #[error("Delta0 * num / den is not a Laurent polynomial")]
    NonPolynomialQuotient,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("pairing does not match module dimensions: {0}")]
    PairingMismatch(String),
    #[error("subspace is not invariant: generator {gen} moves basis vector {vector} outside it")]
    NotInvariant { gen: usize, vector: usize },
    #[error("no non-trivial cohomology class available")]
    NoCocycle,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Variant name without payload, e.g. `"DegeneratePresentation"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::ZeroArgument => "ZeroArgument",
            Error::NonSquare(..) => "NonSquare",
            Error::BadSize(_) => "BadSize",
            Error::NotInfiniteCyclicAbelianization { .. } => "NotInfiniteCyclicAbelianization",
            Error::MeridianMismatch(_) => "MeridianMismatch",
            Error::RelatorViolation { .. } => "RelatorViolation",
            Error::DeterminantNotOne(_) => "DeterminantNotOne",
            Error::DegeneratePresentation => "DegeneratePresentation",
            Error::NotDeficiencyOne { .. } => "NotDeficiencyOne",
            Error::NonPolynomialQuotient => "NonPolynomialQuotient",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::PairingMismatch(_) => "PairingMismatch",
            Error::NotInvariant { .. } => "NotInvariant",
            Error::NoCocycle => "NoCocycle",
            Error::BadParams(_) => "BadParams",
            Error::Parse { .. } => "Parse",
            Error::Internal(_) => "Internal",
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
