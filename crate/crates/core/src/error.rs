use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model: {0}")]
    Model(String),
    #[error("invalid pathway: {0}")]
    Pathway(String),
    #[error("line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("level index {0} out of range")]
    LevelIndex(usize),
    #[error("kind {0} requires a doubly excited manifold")]
    ManifoldRequired(u8),
    #[error("unknown contribution kind {0}")]
    Kind(u8),
    #[error("spectral density not integrable: {0}")]
    Integrability(String),
    #[error("no spectral density for pair {0}")]
    MissingDensity(String),
    #[error("quadrature did not reach tolerance {tol:e} (estimate {err:e})")]
    Quadrature { tol: f64, err: f64 },
    #[error("Fock basis too small: trailing population {leak:e} exceeds {tol:e} at n_max={n_max}")]
    Truncation { n_max: usize, leak: f64, tol: f64 },
    #[error("time grid: {0}")]
    Grid(String),
    #[error("temperature and vibrational relaxation cannot be combined")]
    ThermalRelaxation,
    #[error("incompatible options: {0}")]
    Options(String),
}

pub type Result<T> = std::result::Result<T, Error>;
