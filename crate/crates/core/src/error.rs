//! Error type shared by every module.

use core::fmt;

/// Failure modes of the certified pipeline.
///
/// `Indeterminate` is the retryable case: the current working precision was
/// not enough to decide a comparison or rounding. [`crate::real::refine`]
/// converts it into `PrecisionExhausted` once the configured cap is reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A comparison or rounding could not be certified at the current
    /// working precision.
    Indeterminate { op: &'static str },
    /// Escalation reached the precision cap without certifying a decision.
    PrecisionExhausted { op: &'static str, cap_bits: u32 },
    /// An operation that requires a non-zero input received zero.
    ZeroInput { op: &'static str },
    /// Input outside the operation's documented domain.
    OutOfDomain {
        op: &'static str,
        detail: &'static str,
    },
    /// An iteration failed to stabilise within its configured cap.
    NonConvergence { op: &'static str, iterations: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Indeterminate { op } => {
                write!(f, "{op}: interval too wide to certify a decision")
            }
            Error::PrecisionExhausted { op, cap_bits } => {
                write!(f, "{op}: undecidable at the precision cap ({cap_bits} bits)")
            }
            Error::ZeroInput { op } => write!(f, "{op}: zero input"),
            Error::OutOfDomain { op, detail } => write!(f, "{op}: {detail}"),
            Error::NonConvergence { op, iterations } => {
                write!(f, "{op}: no convergence after {iterations} iterations")
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
