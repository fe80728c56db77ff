use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bracket [{lo}, {hi}] does not enclose a sign change")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("root finder did not reach tolerance after {iterations} iterations")]
    MaxIterations { iterations: u32 },

    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {error_estimate:e})")]
    MaxSubdivisions {
        subdivisions: usize,
        error_estimate: f64,
    },

    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("convergence failure: {0}")]
    Convergence(&'static str),

    #[error("mode m = {m} is not allowed for beta = {beta} (kinetic angular momentum vanishes)")]
    InvalidMode { m: i64, beta: f64 },

    #[error("states were built against different physical configurations")]
    ConfigMismatch,

    #[error("degeneracy solver failed: {0}")]
    Solver(&'static str),

    #[error("no admissible extremum index (k_min = {k_min}, k_max = {k_max})")]
    EmptyGrid { k_min: i64, k_max: i64 },

    #[error("radial function vanishes at r = {r}")]
    NodeSingularity { r: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }
}
