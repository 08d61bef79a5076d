use thiserror::Error;

use crate::multigraph::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("pair {{{u},{v}}} has multiplicity {count}, at most 3 is allowed")]
    Multiplicity { u: usize, v: usize, count: usize },

    #[error("coloring covers {got} vertices, graph has {expected}")]
    ColoringMismatch { expected: usize, got: usize },

    #[error("unbalanced coloring: {black} black vs {white} white")]
    Unbalanced { black: usize, white: usize },

    #[error("structure partition failed: {0}")]
    Partition(String),

    /// Outside the supported class: K4, not cubic, disconnected or has a claw.
    #[error("graph is outside the supported class: {}", .0.summary())]
    NotApplicable(Box<ValidationReport>),

    #[error("graph has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),

    #[error("no connected wiring found after {attempts} attempts")]
    Unsatisfiable { attempts: usize },

    #[error("desired-bisection search exhausted; instance:\n{dump}")]
    SearchExhausted { dump: String },

    #[error("diamond reduction failed: {0}")]
    Reduction(String),

    #[error("lift failed: {0}")]
    Lift(String),

    #[error("certificate check failed: {message}; instance:\n{dump}")]
    Certificate { message: String, dump: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status for this error: 1 for input problems, 2 for
    /// precondition failures, 3 for internal invariant breaches.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::VertexOutOfRange { .. }
            | Error::Loop(_)
            | Error::Multiplicity { .. }
            | Error::ColoringMismatch { .. }
            | Error::Io(_)
            | Error::Json(_) => 1,
            Error::Unbalanced { .. }
            | Error::Partition(_)
            | Error::NotApplicable(_)
            | Error::TooLarge { .. }
            | Error::InvalidRecipe(_)
            | Error::Unsatisfiable { .. } => 2,
            Error::SearchExhausted { .. } | Error::Reduction(_) | Error::Lift(_) | Error::Certificate { .. } => 3,
        }
    }
}
