use thiserror::Error;

/// Errors raised by the arithmetic and tower routines.
///
/// Every variant corresponds to a condition a caller can act on; internal
/// consistency failures (an exact division that was not exact, a trace that
/// left the base field) are reported as [`Error::Internal`] instead of
/// panicking.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different field specifications")]
    SpecMismatch,
    #[error("operands have different precision ({0} vs {1})")]
    PrecisionMismatch(usize, usize),
    #[error("invalid field specification: {0}")]
    InvalidFieldSpec(String),
    #[error("precision exhausted: coefficient of T^{exponent} requested but series is only known below T^{known_to}{}", context_suffix(.context))]
    PrecisionExhausted {
        exponent: i64,
        known_to: i64,
        context: String,
    },
    #[error("series is not a unit")]
    NotAUnit,
    #[error("series is not a p-th power")]
    NotAPthPower,
    #[error("Witt vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("Frobenius is only coordinatewise in characteristic p")]
    WrongCharacteristic,
    #[error("ghost vector is not in the image of the ghost map (component {index} not divisible)")]
    NotDivisible { index: usize },
    #[error("trace left the base field")]
    NotInBaseField,
    #[error("universal polynomials for p = {p}, length {len} are outside the supported window")]
    OracleTooLarge { p: u64, len: usize },
    #[error("point is a pole of coordinate {coordinate}")]
    PoleAtPoint { coordinate: usize },
    #[error("denominator has an irreducible factor of degree > 1; supply a ramification profile instead")]
    UnsupportedDenominator,
    #[error("unit factorization window (i <= {i_max}, j <= {j_max}) is too small; need i <= {need_i}, j <= {need_j}")]
    WindowTooSmall {
        i_max: u64,
        j_max: u32,
        need_i: u64,
        need_j: u32,
    },
    #[error("search bound {0} is too small: a nonzero symbol was found at the bound")]
    BoundTooSmall(u64),
    #[error("valuation profile is empty")]
    EmptyProfile,
    #[error("datum is not normalized: {0}")]
    NotNormalized(String),
    #[error("tower is a constant field extension; the genus sequence is constant")]
    ConstantTower,
    #[error("inconsistent profile: genus at level {level} is not a non-negative integer")]
    NonIntegralGenus { level: u32 },
    #[error("stream horizon {0} is too small for the requested levels")]
    HorizonTooSmall(u32),
    #[error("degree {0} is divisible by p")]
    BadDegree(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

impl Error {
    pub(crate) fn exhausted(exponent: i64, known_to: i64) -> Self {
        Error::PrecisionExhausted {
            exponent,
            known_to,
            context: String::new(),
        }
    }

    /// Attach a location (coordinate, stage, ...) to a precision error.
    pub fn with_context(self, context: impl Into<String>) -> Self {
        match self {
            Error::PrecisionExhausted {
                exponent,
                known_to,
                context: old,
            } => {
                let new = context.into();
                let context = if old.is_empty() {
                    new
                } else {
                    format!("{new}; {old}")
                };
                Error::PrecisionExhausted {
                    exponent,
                    known_to,
                    context,
                }
            }
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
