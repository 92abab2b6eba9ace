use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("group closure exceeded the element cap ({cap})")]
    CapExceeded { cap: usize },

    #[error("chain enumeration exceeded the chain cap ({cap})")]
    ChainCapExceeded { cap: usize },

    #[error("{0} is not prime")]
    InvalidPrime(u64),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("generator images do not extend to a homomorphism")]
    NotAHomomorphism,

    #[error("map is not an automorphism: {0}")]
    NotAnAutomorphism(String),

    #[error("no usable prime place below the search bound ({bound})")]
    PlaceSelectionFailure { bound: u64 },

    #[error("constructed chain partner missing from the enumerated classes (bug)")]
    PairingFailure,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
