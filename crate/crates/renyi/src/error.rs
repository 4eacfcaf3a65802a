use core::fmt;

/// Error variants for construction and bound queries.
///
/// Variants split into two families the CLI maps onto distinct exit codes:
/// invalid input data (bad probabilities, bad weights, bad orders) and
/// range/domain failures of otherwise well-formed queries.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A distribution must have at least one entry.
    EmptyDistribution,
    /// A probability entry is negative, NaN or infinite.
    InvalidEntry {
        /// Position of the offending entry.
        index: usize,
        /// The offending value.
        value: f64,
    },
    /// Entries sum too far from 1 to be rescaled (slack is 1e-9).
    NotNormalized {
        /// The pre-normalization sum.
        sum: f64,
    },
    /// A uniform distribution needs a support of at least one point.
    ZeroSupport,
    /// An order must be a non-negative real or infinity.
    InvalidOrder {
        /// The offending value.
        value: f64,
    },
    /// Mixture weights must lie in [0, 1] and be finite.
    InvalidWeight {
        /// The offending weight.
        value: f64,
    },
    /// Mixture weights must sum to 1 within 1e-12.
    WeightsNotNormalized {
        /// The actual sum.
        sum: f64,
    },
    /// Mixture supports must be pairwise distinct.
    DuplicateSupport {
        /// The repeated support size.
        support: usize,
    },
    /// A mixture must have at least one component.
    EmptyMixture,
    /// Paired sequences have inconsistent lengths.
    LengthMismatch {
        /// What was being paired.
        what: &'static str,
        /// Expected length.
        expected: usize,
        /// Actual length.
        actual: usize,
    },
    /// An input sequence violates its required ordering.
    NotSorted {
        /// Which precondition failed.
        what: &'static str,
    },
    /// A query value lies outside its valid interval.
    OutOfRange {
        /// What the value is.
        what: &'static str,
        /// The offending value.
        value: f64,
        /// Inclusive lower end of the valid interval.
        min: f64,
        /// Inclusive upper end of the valid interval.
        max: f64,
    },
    /// Segment endpoints must satisfy `k_hi > k_lo >= 1`.
    InvalidSegment {
        /// Larger support.
        k_hi: usize,
        /// Smaller support.
        k_lo: usize,
    },
    /// The two orders of a diagram query must be strictly increasing.
    OrdersNotIncreasing,
    /// The query needs an alphabet size but none was given.
    MissingAlphabetSize,
    /// No boundary cell contains a preimage of the queried point.
    NoPreimage {
        /// First coordinate of the queried point (nats).
        h1: f64,
        /// Second coordinate of the queried point (nats).
        h2: f64,
    },
    /// Two redundant computations disagreed; this signals a numerics bug,
    /// not a domain condition.
    InternalInconsistency {
        /// What disagreed.
        what: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyDistribution => write!(f, "distribution has no entries"),
            Error::InvalidEntry { index, value } => {
                write!(f, "entry {index} is not a valid probability: {value}")
            }
            Error::NotNormalized { sum } => {
                write!(f, "entries sum to {sum}, more than 1e-9 away from 1")
            }
            Error::ZeroSupport => write!(f, "uniform distribution needs support >= 1"),
            Error::InvalidOrder { value } => {
                write!(f, "order must be a non-negative real or inf, got {value}")
            }
            Error::InvalidWeight { value } => {
                write!(f, "mixture weight must lie in [0, 1], got {value}")
            }
            Error::WeightsNotNormalized { sum } => {
                write!(f, "mixture weights sum to {sum}, not 1")
            }
            Error::DuplicateSupport { support } => {
                write!(f, "mixture repeats support size {support}")
            }
            Error::EmptyMixture => write!(f, "mixture has no components"),
            Error::LengthMismatch {
                what,
                expected,
                actual,
            } => write!(f, "{what}: expected length {expected}, got {actual}"),
            Error::NotSorted { what } => write!(f, "{what}"),
            Error::OutOfRange {
                what,
                value,
                min,
                max,
            } => write!(f, "{what} = {value} outside valid interval [{min}, {max}]"),
            Error::InvalidSegment { k_hi, k_lo } => {
                write!(f, "segment needs k_hi > k_lo >= 1, got ({k_hi}, {k_lo})")
            }
            Error::OrdersNotIncreasing => {
                write!(f, "orders must be strictly increasing and the first positive")
            }
            Error::MissingAlphabetSize => {
                write!(f, "this bound requires a fixed alphabet size n")
            }
            Error::NoPreimage { h1, h2 } => {
                write!(f, "({h1}, {h2}) has no preimage on the boundary surface")
            }
            Error::InternalInconsistency { what } => {
                write!(f, "internal consistency check failed: {what}")
            }
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// True for errors caused by malformed input data (as opposed to
    /// well-formed queries that fall outside a valid range).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::EmptyDistribution
                | Error::InvalidEntry { .. }
                | Error::NotNormalized { .. }
                | Error::InvalidOrder { .. }
                | Error::InvalidWeight { .. }
                | Error::WeightsNotNormalized { .. }
                | Error::DuplicateSupport { .. }
                | Error::EmptyMixture
                | Error::LengthMismatch { .. }
                | Error::NotSorted { .. }
        )
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
