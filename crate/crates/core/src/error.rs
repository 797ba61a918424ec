use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("system is not overdetermined: need m > n >= 1, got m = {m}, n = {n}")]
    NotOverdetermined { m: u64, n: u64 },
    #[error("index {index} is outside 0..={max}")]
    IndexOutOfRange { index: u64, max: u64 },
    #[error("degree {degree} is outside the validity range {range}")]
    DegreeOutOfRange { degree: u64, range: String },
    #[error("family size must be positive")]
    EmptyFamily,
    #[error("enclosure width must be positive")]
    NonPositiveWidth,
    #[error("family size {family_size} exceeds the cross-validation ceiling {ceiling}")]
    CeilingExceeded { family_size: u64, ceiling: u64 },
    #[error("parameter {name} = {value} is outside {range}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        range: &'static str,
    },
    #[error("cannot parse {input:?} as a rational number")]
    ParseRational { input: String },
}
