use thiserror::Error;

/// Errors produced by the library. The CLI maps these onto exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `±1` has no rotation axis.
    #[error("central element has no well-defined axis")]
    Central,

    #[error("bad tangle: {0}")]
    BadTangle(String),

    #[error("link not knot: {0}")]
    LinkNotKnot(String),

    #[error("two-bridge regime: knot is SU(2)-simple")]
    TwoBridgeRegime,

    #[error("infeasible angle selector {0:?}")]
    Infeasible((u32, u32, u32)),

    #[error("no irreducible representation found for triangle group {0:?}")]
    NoIrreducibleRep((u32, u32, u32)),

    #[error("no sign vector makes the tuples conjugate")]
    NotConjugate,

    #[error("conjugator is not unique (nullity {0})")]
    NonUnique(usize),

    /// The slope is the Seifert fibre slope of the second exterior, whose
    /// preimage is the meridian `1/0` of the first.
    #[error("slope maps to meridian ∞")]
    MapsToMeridian,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
