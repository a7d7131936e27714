use thiserror::Error;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    InvalidField(u64),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("operands have different characteristics")]
    CharacteristicMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("input is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("negative cap")]
    NegativeCap,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("differential check failed: {0}")]
    Differential(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("decomposition residue: {0}")]
    DecompositionResidue(String),
    #[error("hypothesis not certified: {0}")]
    Uncertified(String),
}

impl AlgebraError {
    /// Stable machine-readable code, used in reports and diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            AlgebraError::InvalidField(_) => "E-FIELD",
            AlgebraError::RingMismatch => "E-RING",
            AlgebraError::CharacteristicMismatch => "E-CHAR",
            AlgebraError::ZeroPolynomial => "E-ZERO",
            AlgebraError::Inhomogeneous(_) => "E-INHOM",
            AlgebraError::NegativeCap => "E-CAP",
            AlgebraError::InvalidInput(_) => "E-INPUT",
            AlgebraError::Differential(_) => "E-DIFF",
            AlgebraError::Unsupported(_) => "E-UNSUPPORTED",
            AlgebraError::NotACycle(_) => "E-CYCLE",
            AlgebraError::DecompositionResidue(_) => "E-RESIDUE",
            AlgebraError::Uncertified(_) => "E-UNCERTIFIED",
        }
    }
}
