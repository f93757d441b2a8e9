use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not an extended rational")]
    ZeroOverZero,

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: &'static str },

    #[error("Farey order must be at least 1")]
    ZeroFareyOrder,

    #[error("maximum denominator must be at least 1")]
    ZeroMaxDenominator,

    #[error("expected a positive finite rational, got {0}")]
    NotPositiveFinite(String),

    #[error("{0} and {1} are not Z-distinct")]
    NotZDistinct(String, String),

    #[error("not a vertex of the topograph: {0}")]
    InvalidVertex(String),

    #[error("determinant of {0} is not +1 or -1")]
    NotUnimodular(String),

    #[error("{0} is not a member of SL2(Z>=0)")]
    NotMonoidMember(String),

    #[error("depth {depth} exceeds the safety cap {cap} (raise it with --max-depth-cap)")]
    DepthCap { depth: usize, cap: usize },

    #[error("unknown {what} {value:?}")]
    Unknown { what: &'static str, value: String },
}

impl Error {
    pub(crate) fn parse(input: &str, reason: &'static str) -> Self {
        Error::Parse {
            input: input.to_owned(),
            reason,
        }
    }
}
