use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("slope comparison between two infinite values")]
    InfiniteComparison,
    #[error("arithmetic on an infinite slope")]
    InfiniteArithmetic,
    #[error("wall is not a semicircle")]
    NotSemicircle,
    #[error("ray beta = {beta} has nonpositive twisted degree {degree}")]
    NonPositiveDegree { beta: String, degree: String },
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
