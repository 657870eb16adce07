use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A denominator q-shifted factorial vanishes before the series terminates.
    #[error("series does not terminate cleanly: denominator parameter {param} vanishes at term {term}")]
    Termination { param: String, term: usize },

    #[error("variable mode inconsistent with series shape: {0}")]
    Mode(String),

    #[error("inadmissible parameters: {0}")]
    Admissibility(String),

    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("moment did not converge: {0}")]
    Convergence(String),

    /// A moment fell between the zero and nonzero thresholds.
    #[error("indeterminate moment at t = {t_power}: normalized value {normalized:e}")]
    Indeterminate { t_power: usize, normalized: f64 },

    #[error("coincident roots: {0}")]
    Degenerate(String),

    #[error("parameters sit on a region boundary: {0}")]
    Boundary(String),

    #[error("root refinement budget exhausted after {0} bisections")]
    RefinementBudget(usize),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
