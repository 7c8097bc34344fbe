use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("word `{0}` does not end in y and encodes no index")]
    NotAnIndexWord(String),
    #[error("alphabet mismatch: {0:?} vs {1:?}")]
    Alphabet(crate::Alphabet, crate::Alphabet),
    #[error("leading word of the zero polynomial")]
    ZeroPolynomial,
    #[error("truncation boxes differ: {0} vs {1}")]
    Truncation(crate::Truncation, crate::Truncation),
    #[error("series has constant term {0}, expected 1")]
    NotInvertible(crate::Rational),
    #[error("exponent {0} lies outside the box (u-cap {1})")]
    OutOfBox(String, usize),
    #[error("coefficient is not a polynomial in z = x + y")]
    NotZPolynomial,
    #[error("element does not satisfy (tau - id)(w) = (Delta - id)(w)")]
    NotInDSpace,
    #[error("expected homogeneous polynomials of weight {expected}, found weight {found}")]
    Grade { expected: usize, found: usize },
    #[error("the all-zero exponent vector names the identity map")]
    ZeroSpec,
    #[error("index {0} is not admissible (first part must be at least 2)")]
    DivergentSeries(String),
    #[error("series is not divisible: {0}")]
    NotDivisible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
