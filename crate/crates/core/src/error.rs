use std::fmt;

/// Pipeline stage, used to label errors bubbling out of [`crate::rule::build_rule`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Chi,
    Expansion,
    Roots,
    Weights,
    Lambda,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Chi => "chi estimate",
            Stage::Expansion => "legendre expansion",
            Stage::Roots => "root finding",
            Stage::Weights => "weights",
            Stage::Lambda => "lambda",
        };
        f.write_str(name)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the admissible domain")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("could not bracket eigenvalue #{index} after {doublings} doublings")]
    Bracket { index: usize, doublings: usize },

    #[error("rayleigh quotient iteration did not converge in {iterations} iterations (residual {residual:e})")]
    RqiNoConvergence { iterations: usize, residual: f64 },

    #[error("newton iteration did not converge in {iterations} iterations (last iterate {last})")]
    NewtonNoConvergence { iterations: usize, last: f64 },

    #[error("newton iterate {last} left (-1, 1)")]
    NewtonDiverged { last: f64 },

    #[error("root {index} predicted at {x}, too close to the endpoint")]
    RootNearEndpoint { index: usize, x: f64 },

    #[error("failed at root {index}: {source}")]
    Root {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("derivative at node {index} is {value:e}, below the underflow guard")]
    TinyDerivative { index: usize, value: f64 },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error("rule file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at_stage(self, stage: Stage) -> Self {
        Error::Stage { stage, source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
