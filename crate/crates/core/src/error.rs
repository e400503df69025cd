use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gapless mode at k = {k:?} (epsilon_k = {epsilon:e})")]
    GaplessMode { k: Vec<f64>, epsilon: f64 },

    #[error("magnetization collapse: <J^x> = {0:e}")]
    MagnetizationCollapse(f64),

    #[error("pair state unphysical at mode {mode}, t = {t}: |F|^2 - G(G+1) = {excess:e}")]
    Unphysical { mode: usize, t: f64, excess: f64 },

    #[error("non-finite value in integration at t = {0}")]
    Overflow(f64),

    #[error("{what} needs at most {limit} spins, got {n}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("norm drift {drift:e} at t = {t} exceeds tolerance; reduce the time step")]
    NormDrift { t: f64, drift: f64 },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("table error: {0}")]
    Table(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by bad input rather than by a numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidLattice(_)
                | Error::InvalidModel(_)
                | Error::InvalidParameter(_)
                | Error::TooLarge { .. }
                | Error::Table(_)
                | Error::Csv(_)
                | Error::Json(_)
                | Error::Io(_)
        )
    }
}
