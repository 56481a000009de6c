use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("unknown coin kind `{0}`")]
    UnknownCoin(String),
    #[error("coin phases are not unitary: w_uu + w_dd - w_ud - w_du has residual {residual} mod 2pi")]
    NonUnitaryCoin { residual: f64 },
    #[error("horizon must be at least 1")]
    InvalidHorizon,
    #[error("step {requested} exceeds horizon {horizon}")]
    HorizonExceeded { requested: usize, horizon: usize },
    #[error("value must be finite, got {0}")]
    NonFinite(f64),
    #[error("empty grid")]
    EmptyGrid,
    #[error("distribution is flat on the {side} side; no peak")]
    FlatDistribution { side: &'static str },
    #[error("distribution too short for peak search (t = {0}, need t >= 10)")]
    DistributionTooShort(usize),
    #[error("omega = {0} is outside (0, 2pi)")]
    OmegaOutOfRange(f64),
    #[error("qubit ({alpha}, {beta}) has no exact Gaussian-integer representation")]
    UnsupportedQubit { alpha: f64, beta: f64 },
    #[error("exponents ({0}, {1}, {2}, {3}) violate k_uu + k_dd = k_ud + k_du")]
    NonUnitaryExponents(i64, i64, i64, i64),
    #[error("t = {0} must be a positive multiple of 4")]
    NotMultipleOfFour(usize),
    #[error("exact series defect: {0}")]
    SeriesDefect(String),
    #[error("coin kind `{0}` is not supported here")]
    UnsupportedCoinKind(String),
}
