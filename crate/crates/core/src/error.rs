use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("denominator vanishes at the substitution point: {0}")]
    Pole(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("{0} is outside the index bounds of {1}")]
    OutOfBounds(String, String),
    #[error("the central element C is not allowed in {0}")]
    CentralNotAllowed(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("PBW degree {0} exceeds the configured guard {1}")]
    DegreeGuard(usize, usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("seed {0} is outside the window interior")]
    SeedOutsideInterior(String),
    #[error("numeric parameters required")]
    NumericParametersRequired,
    #[error("annihilator order exceeds bound {0}")]
    AnnihilatorBound(u32),
    #[error("parse error: {0}")]
    Parse(String),
}
