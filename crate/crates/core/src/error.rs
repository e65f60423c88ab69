use thiserror::Error;

/// Errors produced by the library. Variant names are stable and are
/// surfaced verbatim by the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("NotAState: {0}")]
    NotAState(String),
    #[error("NotADistribution: {0}")]
    NotADistribution(String),
    #[error("InvalidDims: {0}")]
    InvalidDims(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("RankExceedsBellSpace: {rank} nonzero eigenvalues but only {capacity} Bell states fit")]
    RankExceedsBellSpace { rank: usize, capacity: usize },
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("IndexMismatch: {0}")]
    IndexMismatch(String),
    #[error("WrongDimension: expected {expected} eigenvalues, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("EnergyOutOfRange: energy {0} outside [0, 2]")]
    EnergyOutOfRange(f64),
    #[error("EnergyMismatch: state energy {actual} differs from requested {requested}")]
    EnergyMismatch { requested: f64, actual: f64 },
    #[error("InfeasibleEnergy: no marginal pair of this spectrum is compatible with energy {0}")]
    InfeasibleEnergy(f64),
    #[error("NonPositiveTemperature: {0}")]
    NonPositiveTemperature(f64),
    #[error("MarginalsNotThermal: {0}")]
    MarginalsNotThermal(String),
    #[error("EnergyNotConserved: before {before}, after {after}")]
    EnergyNotConserved { before: f64, after: f64 },
    #[error("SpectrumMismatch: spectra differ by {0}")]
    SpectrumMismatch(f64),
    #[error("EqualTemperatures: the heat bound diverges when T_A = T_B")]
    EqualTemperatures,
    #[error("InfeasibleMarginals: thermal marginals {0:?} are not reachable on this orbit")]
    InfeasibleMarginals((f64, f64)),
    #[error("InvalidMode: {0}")]
    InvalidMode(String),
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// The bare variant name, e.g. `"NotAState"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotAState(_) => "NotAState",
            Error::NotADistribution(_) => "NotADistribution",
            Error::InvalidDims(_) => "InvalidDims",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RankExceedsBellSpace { .. } => "RankExceedsBellSpace",
            Error::TooLarge(_) => "TooLarge",
            Error::IndexMismatch(_) => "IndexMismatch",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::EnergyOutOfRange(_) => "EnergyOutOfRange",
            Error::EnergyMismatch { .. } => "EnergyMismatch",
            Error::InfeasibleEnergy(_) => "InfeasibleEnergy",
            Error::NonPositiveTemperature(_) => "NonPositiveTemperature",
            Error::MarginalsNotThermal(_) => "MarginalsNotThermal",
            Error::EnergyNotConserved { .. } => "EnergyNotConserved",
            Error::SpectrumMismatch(_) => "SpectrumMismatch",
            Error::EqualTemperatures => "EqualTemperatures",
            Error::InfeasibleMarginals(_) => "InfeasibleMarginals",
            Error::InvalidMode(_) => "InvalidMode",
            Error::Json(_) => "Json",
            Error::Io(_) => "Io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
