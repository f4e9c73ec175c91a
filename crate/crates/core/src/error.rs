use std::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values that must live in the same ambient dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// An integer parameter fell below its admissible minimum.
    NTooSmall { n: usize, min: usize },
    /// A band/interval index outside `1..=kappa0(n)`.
    KappaOutOfRange { kappa: usize, kappa0: usize },
    /// A parameter violated a stated precondition (carries the parameter name).
    ParameterOutOfRange { name: &'static str, detail: String },
    /// A Hermitian form is not divisible by the squared norm; carries the
    /// first inconsistent bidegree block and a rendering of its residual.
    NotDivisible { r: usize, s: usize, residual: String },
    /// The tensor-span containment required before quotient bounds is absent.
    ContainmentViolated,
    /// A degeneracy increment too large to admit any valid step index.
    NoValidK { increment: usize, bound: usize },
    /// A hypothesis of the statement being replayed fails for the input.
    HypothesisViolated { detail: String },
    /// A map is not a proper ball map; carries a sphere point where the
    /// squared norm of the image differs from one, and that value.
    NotProper { point: String, value: String },
    /// A generator could not hit the requested linear rank.
    RankTargetUnreachable { kappa: usize, detail: String },
    /// An exhaustive scan larger than the configured ceiling was refused.
    SearchSpaceTooLarge { size: u128, ceiling: u128 },
    /// Malformed input text (rationals, exponent vectors, file structure).
    Parse { detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NTooSmall { n, min } => write!(f, "n = {n} is below the minimum {min}"),
            Error::KappaOutOfRange { kappa, kappa0 } => {
                write!(f, "kappa = {kappa} outside 1..={kappa0}")
            }
            Error::ParameterOutOfRange { name, detail } => {
                write!(f, "parameter `{name}` out of range: {detail}")
            }
            Error::NotDivisible { r, s, residual } => write!(
                f,
                "not divisible by the squared norm: bidegree ({r},{s}) leaves residual {residual}"
            ),
            Error::ContainmentViolated => {
                write!(f, "tensor-span containment V_(G(x)z) in V_(F(x)z) does not hold")
            }
            Error::NoValidK { increment, bound } => write!(
                f,
                "degeneracy increment {increment} exceeds {bound}, no valid step index <= n-1"
            ),
            Error::HypothesisViolated { detail } => write!(f, "hypothesis violated: {detail}"),
            Error::NotProper { point, value } => write!(
                f,
                "not a proper ball map: squared norm at sphere point {point} is {value}"
            ),
            Error::RankTargetUnreachable { kappa, detail } => {
                write!(f, "cannot reach linear rank {kappa}: {detail}")
            }
            Error::SearchSpaceTooLarge { size, ceiling } => {
                write!(f, "search space of size {size} exceeds ceiling {ceiling}")
            }
            Error::Parse { detail } => write!(f, "parse error: {detail}"),
        }
    }
}

impl std::error::Error for Error {}
