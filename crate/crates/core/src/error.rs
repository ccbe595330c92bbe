use thiserror::Error;

/// Errors raised by mesh construction, assembly, the linear solver and the time loop.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    /// The extrapolated conductivity dropped to (or below) the guard threshold
    /// somewhere in the domain; the weighted stiffness operator would not be SPD.
    #[error("conductivity not positive: min value {min:.3e} at element {element}")]
    ConductivityNotPositive { min: f64, element: usize },

    #[error("CG did not converge after {iterations} iterations (relative residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("matrix not positive definite: pivot {pivot:.3e} in row {row}")]
    NotPositiveDefinite { row: usize, pivot: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("order of convergence undefined: {0}")]
    InvalidEoc(String),

    #[error("time step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Self {
        match self {
            e @ Error::AtStep { .. } => e,
            e => Error::AtStep {
                step,
                source: Box::new(e),
            },
        }
    }

    /// Innermost error, skipping step annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtStep { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for failures of the numerical solve (as opposed to bad input).
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self.root(),
            Error::ConductivityNotPositive { .. } | Error::NoConvergence { .. } | Error::NotPositiveDefinite { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
