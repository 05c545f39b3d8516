use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, rat, AlgebraError, ExactRational};

/// Power series in `λ` truncated after degree `p_max`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CountingSeries {
    coefficients: Vec<ExactRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Subtract,
    Multiply,
}

impl CountingSeries {
    pub fn zero(p_max: usize) -> Self {
        Self {
            coefficients: vec![ExactRational::zero(); p_max + 1],
        }
    }

    pub fn one(p_max: usize) -> Self {
        Self::monomial(0, ExactRational::one(), p_max)
    }

    /// `c λ^degree`, or zero if `degree > p_max`.
    pub fn monomial(degree: usize, c: ExactRational, p_max: usize) -> Self {
        let mut s = Self::zero(p_max);
        if degree <= p_max {
            s.coefficients[degree] = c;
        }
        s
    }

    /// Pads with zeros or truncates to `p_max`.
    pub fn from_coefficients(mut coefficients: Vec<ExactRational>, p_max: usize) -> Self {
        coefficients.resize(p_max + 1, ExactRational::zero());
        Self { coefficients }
    }

    pub fn from_counts(counts: &[usize], p_max: usize) -> Self {
        Self::from_coefficients(counts.iter().map(|&c| rat(c as i64)).collect(), p_max)
    }

    pub fn from_i64(values: &[i64], p_max: usize) -> Self {
        Self::from_coefficients(values.iter().map(|&c| rat(c)).collect(), p_max)
    }

    pub fn p_max(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, degree: usize) -> ExactRational {
        self.coefficients
            .get(degree)
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.p_max() != other.p_max() {
            return Err(AlgebraError::TruncationMismatch {
                left: self.p_max(),
                right: other.p_max(),
            });
        }
        Ok(())
    }

    pub fn apply(&self, other: &Self, op: SeriesOp) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let coefficients = match op {
            SeriesOp::Add => self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
            SeriesOp::Subtract => self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a - b)
                .collect(),
            SeriesOp::Multiply => {
                let n = self.coefficients.len();
                let mut out = vec![ExactRational::zero(); n];
                for (i, a) in self.coefficients.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.coefficients[..n - i].iter().enumerate() {
                        out[i + j] += a * b;
                    }
                }
                out
            }
        };
        Ok(Self { coefficients })
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.apply(other, SeriesOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.apply(other, SeriesOp::Subtract)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.apply(other, SeriesOp::Multiply)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `λ^k`, truncating.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coefficients.len();
        let mut coefficients = vec![ExactRational::zero(); n];
        for i in 0..n.saturating_sub(k) {
            coefficients[i + k] = self.coefficients[i].clone();
        }
        Self { coefficients }
    }

    pub fn truncate(&self, p_max: usize) -> Self {
        Self::from_coefficients(self.coefficients.clone(), p_max)
    }

    /// Sum of the coefficients: the value at `λ = 1` of the truncation.
    pub fn sum(&self) -> ExactRational {
        self.coefficients.iter().fold(ExactRational::zero(), |a, b| a + b)
    }

    /// Truncated `(1 + λ)^{-1} = 1 - λ + λ^2 - ...`.
    pub fn inverse_one_plus_lambda(p_max: usize) -> Self {
        Self {
            coefficients: (0..=p_max)
                .map(|i| if i % 2 == 0 { rat(1) } else { rat(-1) })
                .collect(),
        }
    }

    /// First degree where two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.coefficients.len().max(other.coefficients.len());
        (0..n).find(|&i| self.coefficient(i) != other.coefficient(i))
    }
}

/// Truncated expansion of `(1 - λ^2)^{-n}`: the coefficient of `λ^{2k}` is
/// `C(n + k - 1, k)`.
pub fn expand_inverse_one_minus_lambda_sq(n: usize, p_max: usize) -> CountingSeries {
    let mut s = CountingSeries::zero(p_max);
    if n == 0 {
        s.coefficients[0] = ExactRational::one();
        return s;
    }
    let mut binom = BigInt::one();
    for k in 0..=p_max / 2 {
        if k > 0 {
            binom = binom * BigInt::from(n + k - 1) / BigInt::from(k);
        }
        s.coefficients[2 * k] = ExactRational::from_integer(binom.clone());
    }
    s
}

impl fmt::Debug for CountingSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (p_max = {})", self.p_max())
    }
}

/// Renders as `1 + 2λ^2 - 1/2λ^3`; the zero series renders as `0`.
impl fmt::Display for CountingSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = format_rational(&magnitude);
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !magnitude.is_one() {
                        write!(f, "{coeff}")?;
                    }
                    if i == 1 {
                        write!(f, "λ")?;
                    } else {
                        write!(f, "λ^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_and_multiply() {
        let a = CountingSeries::from_i64(&[1, 1], 2);
        let b = CountingSeries::from_i64(&[1, -1], 2);
        assert_eq!(a.add(&b).unwrap(), CountingSeries::from_i64(&[2], 2));
        assert_eq!(a.mul(&b).unwrap(), CountingSeries::from_i64(&[1, 0, -1], 2));
    }

    #[test]
    fn geometric_expansion_cancels() {
        let a = CountingSeries::from_i64(&[1, 0, -1], 4);
        let g = expand_inverse_one_minus_lambda_sq(1, 4);
        assert_eq!(a.mul(&g).unwrap(), CountingSeries::one(4));
    }

    #[test]
    fn inverse_powers() {
        assert_eq!(expand_inverse_one_minus_lambda_sq(1, 4), CountingSeries::from_i64(&[1, 0, 1, 0, 1], 4));
        assert_eq!(expand_inverse_one_minus_lambda_sq(0, 4), CountingSeries::one(4));
        let one = expand_inverse_one_minus_lambda_sq(1, 4);
        assert_eq!(expand_inverse_one_minus_lambda_sq(2, 4), one.mul(&one).unwrap());
        assert_eq!(expand_inverse_one_minus_lambda_sq(2, 4), CountingSeries::from_i64(&[1, 0, 2, 0, 3], 4));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = CountingSeries::one(2);
        let b = CountingSeries::one(3);
        assert_eq!(
            a.add(&b),
            Err(AlgebraError::TruncationMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn display() {
        assert_eq!(CountingSeries::from_i64(&[1, 0, 2, 0, 2], 4).to_string(), "1 + 2λ^2 + 2λ^4");
        assert_eq!(CountingSeries::zero(3).to_string(), "0");
        assert_eq!(CountingSeries::from_i64(&[0, -1, 1], 2).to_string(), "-λ + λ^2");
    }
}
