use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operands belong to different quadratic spaces")]
    SpaceMismatch,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite: leading minor {index} is {minor}")]
    NotPositiveDefinite { index: usize, minor: String },
    #[error("form is isotropic: b(v, v) = 0 for v = {witness:?}")]
    IsotropicVector { witness: Vec<String> },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("characteristic 2 is not supported")]
    Characteristic2,
    #[error("cannot specialize t at 0")]
    ZeroEvaluation,
    #[error("matrix is not paraunitary: adjoint * mat - I = {residual}")]
    NotParaunitary { residual: String },
    #[error("matrix does not preserve the form: h^T G h != G")]
    NotOrthogonal,
    #[error("element is not pure (its value at t = 1 is not the identity)")]
    NotPure,
    #[error("element is not in the negative cone")]
    NotNegativeCone,
    #[error("element has positive exponents")]
    PositiveExponentPresent,
    #[error("submodule is not closed under the shift by t^-1")]
    NotShiftClosed,
    #[error("element does not lie in the interval [t^-1, 1]")]
    NotInInterval,
    #[error("normal form adjacency violated between factors {index} and {}", index + 1)]
    AdjacencyViolation { index: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::SpaceMismatch => "SpaceMismatch",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::IsotropicVector { .. } => "IsotropicVector",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::Characteristic2 => "Characteristic2",
            Error::ZeroEvaluation => "ZeroEvaluation",
            Error::NotParaunitary { .. } => "NotParaunitary",
            Error::NotOrthogonal => "NotOrthogonal",
            Error::NotPure => "NotPure",
            Error::NotNegativeCone => "NotNegativeCone",
            Error::PositiveExponentPresent => "PositiveExponentPresent",
            Error::NotShiftClosed => "NotShiftClosed",
            Error::NotInInterval => "NotInInterval",
            Error::AdjacencyViolation { .. } => "AdjacencyViolation",
        }
    }
}
