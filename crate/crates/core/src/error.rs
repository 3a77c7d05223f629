use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gmax must be at least 1, got {0}")]
    InvalidGmax(u32),

    #[error("genus {g} not computed: table only covers g <= {gmax}")]
    GenusBeyondTable { g: u32, gmax: u32 },

    #[error("unstable or undefined stratum (g={g}, n={n}): {reason}")]
    UnstableStratum { g: u32, n: u32, reason: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("double factorial undefined for {0} (need m >= -1)")]
    NegativeDoubleFactorial(i64),

    #[error("precision of {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u32),

    #[error("digits did not stabilize below {max_bits} bits of precision")]
    PrecisionExhausted { max_bits: u32 },

    #[error("correlator has {n} insertions, above the configured cap of {cap}")]
    TooManyInsertions { n: usize, cap: usize },

    #[error("unstable correlator: genus {g} with {n} marked points")]
    UnstableCorrelator { g: u32, n: usize },

    #[error("oracle anchor {name} evaluated to {actual}, expected {expected}")]
    AnchorValidation {
        name: &'static str,
        expected: String,
        actual: String,
    },
}
