use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("point {at} coincides with point {first}")]
    DuplicatePoint { at: usize, first: usize },
    #[error("instance contains no points")]
    Empty,
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("segments share endpoint {0}")]
    SharedEndpoint(usize),
    #[error("admissible edges do not connect the vertex set ({components} components remain)")]
    Disconnected { components: usize },
    #[error("points are not collinear (residual {residual:.3e}, tolerance {tolerance:.3e})")]
    NotCollinear { residual: f64, tolerance: f64 },
    #[error("points are not concyclic (residual {residual:.3e}, tolerance {tolerance:.3e})")]
    NotConcyclic { residual: f64, tolerance: f64 },
    #[error("{what} is {actual}, oracle limit is {limit}")]
    TooLarge { what: &'static str, actual: usize, limit: usize },
    #[error("edge ({0}, {1}) references an unknown point")]
    UnknownPoint(usize, usize),
    #[error("edge ({0}, {1}) joins a red and a blue point")]
    InvalidEdge(usize, usize),
    #[error("reference solution is not an RBP spanning graph")]
    InfeasibleReference,
    #[error("invalid generator parameter: {0}")]
    Generator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
