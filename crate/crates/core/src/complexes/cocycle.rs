use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{ComplexError, SimplicialComplex};
use crate::exactalg::ExactRational;

/// A rational cellular 1-cochain, one value per edge `[v0, v1]` with
/// `v0 < v1`, oriented from `v0` to `v1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneCocycle {
    values: Vec<ExactRational>,
}

impl OneCocycle {
    pub fn zero(complex: &SimplicialComplex) -> Self {
        Self {
            values: vec![ExactRational::zero(); complex.edges().len()],
        }
    }

    /// Values indexed like `complex.edges()`.
    pub fn from_values(complex: &SimplicialComplex, values: Vec<ExactRational>) -> Result<Self, ComplexError> {
        if values.len() != complex.edges().len() {
            return Err(ComplexError::ComplexMismatch(format!(
                "cocycle has {} values for {} edges",
                values.len(),
                complex.edges().len()
            )));
        }
        Ok(Self { values })
    }

    /// Sets the listed oriented edges `(a, b, value)`, meaning the value along
    /// `a -> b`; unlisted edges are zero.
    pub fn from_edges(
        complex: &SimplicialComplex,
        edges: &[(usize, usize, ExactRational)],
    ) -> Result<Self, ComplexError> {
        let mut out = Self::zero(complex);
        for (a, b, value) in edges {
            let idx = complex
                .edge_index(*a, *b)
                .filter(|_| a != b)
                .ok_or(ComplexError::UnknownEdge { a: *a, b: *b })?;
            out.values[idx] = if a < b { value.clone() } else { -value.clone() };
        }
        Ok(out)
    }

    /// `δf[v0 v1] = f(v1) - f(v0)`.
    pub fn coboundary(complex: &SimplicialComplex, f: &[ExactRational]) -> Self {
        Self {
            values: complex.edges().iter().map(|e| &f[e[1]] - &f[e[0]]).collect(),
        }
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    pub fn value(&self, edge: usize) -> &ExactRational {
        &self.values[edge]
    }

    /// Value along the oriented edge `a -> b`.
    pub fn oriented(&self, complex: &SimplicialComplex, a: usize, b: usize) -> Option<ExactRational> {
        let v = &self.values[complex.edge_index(a, b)?];
        Some(if a < b { v.clone() } else { -v.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn negate(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| -v.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Checks `θ[v1v2] - θ[v0v2] + θ[v0v1] = 0` on every 2-simplex.
    pub fn check_closed(&self, complex: &SimplicialComplex) -> Result<(), ComplexError> {
        if self.values.len() != complex.edges().len() {
            return Err(ComplexError::ComplexMismatch("cocycle does not match complex".into()));
        }
        for t in complex.simplices(2) {
            let e = |a, b| &self.values[complex.edge_index(a, b).expect("closed complex")];
            let defect = e(t[1], t[2]) - e(t[0], t[2]) + e(t[0], t[1]);
            if !defect.is_zero() {
                return Err(ComplexError::NotClosed {
                    simplex: t.clone(),
                    defect,
                });
            }
        }
        Ok(())
    }

    /// Least common multiple of the value denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// Values multiplied by [`Self::denominator_lcm`], as machine integers.
    /// These are the `s`-exponents of the twisted differential.
    pub fn integer_exponents(&self) -> Result<Vec<i64>, ComplexError> {
        let l = ExactRational::from_integer(self.denominator_lcm());
        self.values
            .iter()
            .map(|v| {
                (v * &l)
                    .to_integer()
                    .to_i64()
                    .filter(|x| x.unsigned_abs() < 1 << 40)
                    .ok_or(ComplexError::ExponentOverflow)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, rat};

    #[test]
    fn closedness_on_a_triangle() {
        let k = SimplicialComplex::simplex(2);
        // edges [01], [02], [12]
        let ok = OneCocycle::from_values(&k, vec![rat(1), rat(2), rat(1)]).unwrap();
        assert!(ok.check_closed(&k).is_ok());
        let bad = OneCocycle::from_values(&k, vec![rat(1), rat(3), rat(1)]).unwrap();
        assert!(matches!(bad.check_closed(&k), Err(ComplexError::NotClosed { .. })));
    }

    #[test]
    fn coboundaries_are_closed_and_orientation_flips() {
        let k = SimplicialComplex::sphere(2);
        let f: Vec<_> = (0..4).map(|i| frac(i * i, 3)).collect();
        let c = OneCocycle::coboundary(&k, &f);
        assert!(c.check_closed(&k).is_ok());
        assert_eq!(c.oriented(&k, 3, 1), Some(-c.oriented(&k, 1, 3).unwrap()));
        let e = OneCocycle::from_edges(&k, &[(2, 0, rat(5))]).unwrap();
        assert_eq!(e.oriented(&k, 0, 2), Some(rat(-5)));
        assert!(OneCocycle::from_edges(&SimplicialComplex::cycle(4), &[(0, 2, rat(1))]).is_err());
    }

    #[test]
    fn exponent_scaling() {
        let k = SimplicialComplex::cycle(3);
        let c = OneCocycle::from_values(&k, vec![frac(1, 2), frac(1, 3), rat(-1)]).unwrap();
        assert_eq!(c.integer_exponents().unwrap(), vec![3, 2, -6]);
    }
}
