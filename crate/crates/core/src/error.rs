use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("series has zero constant term and cannot be inverted")]
    NotAUnit,
    #[error("substituted series must have zero constant term")]
    NonzeroConstantTerm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate model: {0}")]
    DegenerateModel(String),
    #[error("operation not supported for this model: {0}")]
    UnsupportedModel(String),
    #[error("input must be antiholomorphic, found holomorphic variable in {0}")]
    NotAntiholomorphic(String),
    #[error("input must be holomorphic, found antiholomorphic variable in {0}")]
    NotHolomorphic(String),
    #[error("degree bound {degree} is below the Segre multiplicity {k}")]
    DegreeBelowMultiplicity { degree: u32, k: u32 },
    #[error("truncation order {order} is below the degree bound {degree}")]
    OrderBelowDegree { order: u32, degree: u32 },
    #[error("not a model table: {0}")]
    NotAModel(String),
    #[error("empty symmetric profile")]
    EmptyProfile,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
