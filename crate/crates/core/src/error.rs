use std::fmt;

/// Errors raised by the fixed-precision arithmetic, the series kernels and the solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different coefficient rings `Z/p^λ`.
    ContextMismatch,
    /// The requested modulus base is not prime.
    NotPrime(u64),
    /// Working precision must be at least 1.
    ZeroPrecision,
    /// `v_p(a) < v_p(b)` in a fixed-precision division.
    NonIntegralQuotient,
    /// Division by an element whose representative is zero.
    DivisionByZeroRep,
    /// The antiderivative (and hence the solution) is not p-integral at this t-degree.
    NonIntegralCoefficient(usize),
    /// Series inversion needs a unit constant term.
    NonUnitConstantTerm,
    /// Square roots of series are only supported for odd p.
    EvenPrime,
    /// Square root needs a constant term equal to 1.
    BadConstantTerm,
    /// The right-hand side `h` must satisfy `h(0) = 1`.
    RhsConstantTerm,
    /// Output precision κ must be ≥ 1, or ≥ 2 when p = 2.
    KappaTooSmall { p: u64, kappa: u32 },
    /// A rational coefficient has a denominator divisible by p.
    NonIntegralRational,
    /// Any other violated precondition.
    Precondition(String),
    /// Malformed user input.
    InvalidInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "operands belong to different rings Z/p^lambda"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ZeroPrecision => write!(f, "precision lambda must be at least 1"),
            Error::NonIntegralQuotient => write!(f, "quotient is not p-integral"),
            Error::DivisionByZeroRep => write!(f, "division by zero representative"),
            Error::NonIntegralCoefficient(i) => {
                write!(f, "solution is not p-integral at degree {i}")
            }
            Error::NonUnitConstantTerm => write!(f, "constant term is not a unit"),
            Error::EvenPrime => write!(f, "operation requires an odd prime"),
            Error::BadConstantTerm => write!(f, "constant term must be 1"),
            Error::RhsConstantTerm => write!(f, "right-hand side must satisfy h(0) = 1"),
            Error::KappaTooSmall { p, kappa } => {
                write!(f, "kappa = {kappa} is too small for p = {p}")
            }
            Error::NonIntegralRational => write!(f, "rational coefficient is not p-integral"),
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
