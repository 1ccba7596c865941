use alloc::string::String;
use core::fmt;

use crate::field::EligibilityReport;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `d < 2`.
    DTooSmall(u64),
    NotSquarefree(u64),
    /// The continued fraction of `θ_F` produced no unit within the convergent cap.
    UnitSearchExhausted { d: u64, cap: u64 },
    /// Principality of a prime above `q` could not be decided within the search cap.
    SearchExhausted { q: u64, cap: u64 },
    Ineligible(EligibilityReport),
    ZeroElement,
    MOutOfRange { m: u64, max: u64 },
    LOutOfRange(u32),
    /// A class number sum was not divisible by its normalizing constant.
    NonIntegralResult(String),
    MaxDigitsExceeded(usize),
    /// Two computations that must agree did not; always an arithmetic bug.
    InternalInconsistency(String),
    /// Field data too large for the fixed-width Shintani kernels.
    TooLarge(String),
    NonPositive,
    /// A caller-supplied `ρ` is not of full order in `𝔽_{p²}^×`.
    NotGenerator { a: u64, b: u64, p: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DTooSmall(d) => write!(f, "d = {d} is too small, need d >= 2"),
            Error::NotSquarefree(d) => write!(f, "d = {d} is not squarefree"),
            Error::UnitSearchExhausted { d, cap } => {
                write!(f, "no fundamental unit for d = {d} within {cap} convergents")
            }
            Error::SearchExhausted { q, cap } => {
                write!(f, "principality search above q = {q} exceeded bound {cap}")
            }
            Error::Ineligible(report) => write!(f, "ineligible input: {report}"),
            Error::ZeroElement => f.write_str("zero has no multiplicative order"),
            Error::MOutOfRange { m, max } => write!(f, "m = {m} outside 1..={max}"),
            Error::LOutOfRange(l) => write!(f, "Bernoulli index {l} outside 0..=2"),
            Error::NonIntegralResult(msg) => write!(f, "non-integral class number: {msg}"),
            Error::MaxDigitsExceeded(n) => write!(f, "no period found within {n} digits"),
            Error::InternalInconsistency(msg) => write!(f, "internal inconsistency: {msg}"),
            Error::TooLarge(msg) => write!(f, "input too large: {msg}"),
            Error::NonPositive => f.write_str("expansion argument must be positive"),
            Error::NotGenerator { a, b, p } => {
                write!(f, "{a}+{b}θ does not generate the unit group of O_F/{p}O_F")
            }
        }
    }
}

impl Error {
    /// Stable upper-case code used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DTooSmall(_) => "D_TOO_SMALL",
            Error::NotSquarefree(_) => "NOT_SQUAREFREE",
            Error::UnitSearchExhausted { .. } => "UNIT_SEARCH_EXHAUSTED",
            Error::SearchExhausted { .. } => "SEARCH_EXHAUSTED",
            Error::Ineligible(_) => "INELIGIBLE",
            Error::ZeroElement => "ZERO_ELEMENT",
            Error::MOutOfRange { .. } => "M_OUT_OF_RANGE",
            Error::LOutOfRange(_) => "L_OUT_OF_RANGE",
            Error::NonIntegralResult(_) => "NON_INTEGRAL_RESULT",
            Error::MaxDigitsExceeded(_) => "MAX_DIGITS_EXCEEDED",
            Error::InternalInconsistency(_) => "INTERNAL_INCONSISTENCY",
            Error::TooLarge(_) => "TOO_LARGE",
            Error::NonPositive => "NON_POSITIVE",
            Error::NotGenerator { .. } => "NOT_GENERATOR",
        }
    }
}
