//! Exact arithmetic: rationals, Laurent polynomials in one variable `s`,
//! matrices over the rational function field `Q(s)`, rank and drop-locus
//! computations, and truncated power series.

mod elimination;
mod laurent;
mod locus;
mod matrix;
mod poly;
mod rank;
mod series;

pub use laurent::LaurentPolynomial;
pub use locus::{drop_locus, CohomologyJumps, DropLocus, Jump, LocusFactor, RootInterval};
pub use matrix::{RationalFunctionMatrix, RationalMatrix};
pub use poly::Poly;
pub use rank::{
    default_rank_engine, rank_at_parameter, rank_engine, rank_engine_names,
    rank_over_function_field, FractionFree, RankEngine, Specialization,
};
pub use series::{expand_inverse_one_minus_lambda_sq, CountingSeries, SeriesOp};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Exact rational number. `BigRational` keeps the denominator positive and
/// the fraction reduced after every operation.
pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parameter s0 = {0} is not positive")]
    NonPositiveParameter(ExactRational),
    #[error("series truncations differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a plain decimal integer.
pub fn parse_rational(text: &str) -> Result<ExactRational, AlgebraError> {
    let trimmed = text.trim();
    let parsed: Option<ExactRational> = match trimmed.split_once('/') {
        Some((n, d)) => {
            let n: Option<BigInt> = n.trim().parse().ok();
            let d: Option<BigInt> = d.trim().parse().ok();
            match (n, d) {
                (Some(n), Some(d)) if d != BigInt::from(0) => Some(BigRational::new(n, d)),
                _ => None,
            }
        }
        None => trimmed.parse::<BigInt>().ok().map(BigRational::from_integer),
    };
    parsed.ok_or_else(|| AlgebraError::Parse(text.to_string()))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), rat(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), frac(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&frac(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
    }
}
