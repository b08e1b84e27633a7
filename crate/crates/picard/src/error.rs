use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos} in {input:?}: {msg}")]
    Parse {
        input: String,
        pos: usize,
        msg: String,
    },
    #[error("the zero vector has no canonical representative")]
    ZeroVector,
    #[error("gcd(0, 0) is undefined")]
    GcdZero,
    #[error("matrix is not in SU(2,1; Z[i]): {0}")]
    NotInGamma(&'static str),
    #[error("closure exceeded cap of {cap} elements; group is infinite or larger than expected")]
    CapExceeded { cap: usize },
    #[error("element has infinite order or order above cap {cap}")]
    InfiniteOrder { cap: u32 },
    #[error("vector has third coordinate 0: cusp direction of P0, not a point of D")]
    CuspDirection,
    #[error("vector is not interior to D: {0}")]
    NotInterior(&'static str),
    #[error("point too close to the boundary of D (y < {min_y})")]
    BoundaryGuard { min_y: f64 },
    #[error("family is not strongly admissible")]
    NotAdmissible,
    #[error("optimizer did not converge within the evaluation budget")]
    NoConvergence,
    #[error("trivial group: its fixed set is all of D")]
    TrivialGroup,
    #[error("classification ambiguous: {0}")]
    Ambiguous(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(input: &str, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            input: input.to_owned(),
            pos,
            msg: msg.into(),
        }
    }
}
