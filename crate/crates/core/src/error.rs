use crate::special_functions::SpecialFunctionError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    SpecialFunction(#[from] SpecialFunctionError),
    #[error("sample count {0} must be even and at least 4")]
    InvalidSampleCount(usize),
    #[error("{samples} samples cannot resolve order {order} without aliasing (need at least {needed})")]
    Aliasing {
        samples: usize,
        order: usize,
        needed: usize,
    },
    #[error("series is not conjugate symmetric (mismatch {mismatch:e} at mode {mode})")]
    NotConjugateSymmetric { mode: i64, mismatch: f64 },
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("symbol table covers |n| <= {table}, series has order {order}")]
    SymbolOrderExceeded { table: usize, order: usize },
    #[error("least-squares system is rank deficient (|R_jj| ratio {ratio:e})")]
    RankDeficient { ratio: f64 },
    #[error("ill-conditioned collocation: residual {residual:e}, condition estimate {condition:e}")]
    IllConditioned { residual: f64, condition: f64 },
    #[error("point (r = {r}, theta = {theta}) lies inside the obstacle")]
    InsideObstacle { r: f64, theta: f64 },
    #[error("at least one probe is required")]
    InsufficientProbes,
}

pub type Result<T> = std::result::Result<T, Error>;
