use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use super::{ComplexError, LocalSystem, OneCocycle, SimplicialComplex};
use crate::exactalg::{
    default_rank_engine, drop_locus, rank_at_parameter, AlgebraError, CohomologyJumps, DropLocus,
    ExactRational, LaurentPolynomial, RankEngine, RationalFunctionMatrix,
};

/// A finite cochain complex of `Q(s)`-vector spaces `C^0 -> C^1 -> ...`.
/// `differentials[k]` is the matrix of `C^k -> C^{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedComplex {
    dims: Vec<usize>,
    differentials: Vec<RationalFunctionMatrix>,
    exponent_scale: BigInt,
}

impl TwistedComplex {
    /// Checks shapes only; see [`Self::is_cochain_complex`].
    pub fn from_differentials(
        dims: Vec<usize>,
        differentials: Vec<RationalFunctionMatrix>,
    ) -> Result<Self, ComplexError> {
        if differentials.len() + 1 != dims.len().max(1) {
            return Err(ComplexError::ComplexMismatch(format!(
                "{} differentials for {} degrees",
                differentials.len(),
                dims.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(ComplexError::ComplexMismatch(format!(
                    "differential {k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        Ok(Self {
            dims,
            differentials,
            exponent_scale: BigInt::one(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn degree_count(&self) -> usize {
        self.dims.len()
    }

    pub fn differential(&self, k: usize) -> Option<&RationalFunctionMatrix> {
        self.differentials.get(k)
    }

    pub fn differentials(&self) -> &[RationalFunctionMatrix] {
        &self.differentials
    }

    /// Exponents of `s` are the cocycle values times this factor.
    /// `L` such that the parameter is `s = e^{t / L}`.
    pub fn exponent_scale(&self) -> &BigInt {
        &self.exponent_scale
    }

    pub fn with_exponent_scale(mut self, scale: BigInt) -> Self {
        self.exponent_scale = scale;
        self
    }

    /// `d^{k+1} d^k = 0` as an identity of Laurent matrices.
    pub fn is_cochain_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    /// Generic ranks of the differentials, computed in parallel across
    /// degrees. Each rank is a pure function of its matrix, so the result
    /// does not depend on scheduling.
    pub fn generic_ranks(&self, engine: &dyn RankEngine) -> Vec<usize> {
        self.differentials.par_iter().map(|d| engine.generic_rank(d)).collect()
    }

    /// Generic cohomology dimensions, one per degree.
    pub fn betti_numbers(&self, engine: &dyn RankEngine) -> Vec<usize> {
        dims_from_ranks(&self.dims, &self.generic_ranks(engine))
    }

    /// Cohomology dimensions of the numeric complex at `s = s0 > 0`.
    pub fn dims_at(&self, s0: &ExactRational) -> Result<Vec<usize>, AlgebraError> {
        let ranks = self
            .differentials
            .iter()
            .map(|d| rank_at_parameter(d, s0))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(dims_from_ranks(&self.dims, &ranks))
    }

    pub fn drop_loci(&self) -> Vec<DropLocus> {
        self.differentials.par_iter().map(drop_locus).collect()
    }

    /// Jump set of `H^degree`. Degrees past the top have no cochains.
    pub fn jumps(&self, degree: usize) -> CohomologyJumps {
        let dim = self.dims.get(degree).copied().unwrap_or(0);
        let outgoing = self.differentials.get(degree).map(drop_locus);
        let incoming = degree
            .checked_sub(1)
            .and_then(|k| self.differentials.get(k))
            .map(drop_locus);
        CohomologyJumps::from_loci(dim, outgoing.as_ref(), incoming.as_ref())
    }

    /// Jump sets of every degree, reusing each drop locus twice.
    pub fn all_jumps(&self) -> Vec<CohomologyJumps> {
        let loci = self.drop_loci();
        (0..self.dims.len())
            .map(|k| {
                let incoming = k.checked_sub(1).and_then(|j| loci.get(j));
                CohomologyJumps::from_loci(self.dims[k], loci.get(k), incoming)
            })
            .collect()
    }
}

fn dims_from_ranks(dims: &[usize], ranks: &[usize]) -> Vec<usize> {
    (0..dims.len())
        .map(|k| {
            let out = ranks.get(k).copied().unwrap_or(0);
            let inc = k.checked_sub(1).and_then(|j| ranks.get(j)).copied().unwrap_or(0);
            dims[k] - out - inc
        })
        .collect()
}

/// Checks that the cocycle is closed and the local system flat on `complex`.
pub fn validate(
    complex: &SimplicialComplex,
    system: &LocalSystem,
    cocycle: &OneCocycle,
) -> Result<(), ComplexError> {
    cocycle.check_closed(complex)?;
    system.check_flat(complex)?;
    Ok(())
}

/// Builds the cochain complex of `complex` with coefficients in `system`
/// twisted by `s^{L θ}`, where `L` clears the denominators of `θ`.
///
/// Degree-`k` cochains are indexed by `simplex * rank + fiber`. The
/// differential is
/// `(δc)(v0..v{k+1}) = s^{Lθ[v0v1]} T[v0v1] c(v1..v{k+1}) + Σ_{i≥1} (-1)^i c(..v̂i..)`.
pub fn twisted_complex(
    complex: &SimplicialComplex,
    system: &LocalSystem,
    cocycle: &OneCocycle,
) -> Result<TwistedComplex, ComplexError> {
    validate(complex, system, cocycle)?;
    let exponents = cocycle.integer_exponents()?;
    let rank = system.rank();
    let levels = complex.levels();
    let dims: Vec<usize> = (0..levels).map(|k| complex.count(k) * rank).collect();
    let mut differentials = Vec::with_capacity(levels.saturating_sub(1));
    for k in 0..levels.saturating_sub(1) {
        let mut d = RationalFunctionMatrix::zeros(dims[k + 1], dims[k]);
        for (row, simplex) in complex.simplices(k + 1).iter().enumerate() {
            let r0 = row * rank;
            let edge = complex.edge_index(simplex[0], simplex[1]).expect("closed complex");
            let leading = complex
                .index_of(&simplex[1..])
                .expect("closed complex");
            let twist = LaurentPolynomial::power(exponents[edge]);
            let block = system.transport(edge).to_function_matrix().scale(&twist);
            d.add_block(r0, leading * rank, &block);
            for i in 1..simplex.len() {
                let face = super::simplicial::drop_vertex(simplex, i);
                let col = complex.index_of(&face).expect("closed complex");
                let sign = LaurentPolynomial::constant(crate::exactalg::rat(if i % 2 == 0 { 1 } else { -1 }));
                for a in 0..rank {
                    d.add_to(r0 + a, col * rank + a, &sign);
                }
            }
        }
        differentials.push(d);
    }
    let mut out = TwistedComplex::from_differentials(dims, differentials)?;
    out.exponent_scale = cocycle.denominator_lcm();
    if !out.is_cochain_complex() {
        return Err(ComplexError::NotACochainComplex);
    }
    Ok(out)
}

/// Novikov numbers `β_0..β_top`: generic cohomology dimensions of the
/// twisted complex.
pub fn novikov_numbers(
    complex: &SimplicialComplex,
    system: &LocalSystem,
    cocycle: &OneCocycle,
) -> Result<Vec<usize>, ComplexError> {
    novikov_numbers_with(complex, system, cocycle, default_rank_engine())
}

pub fn novikov_numbers_with(
    complex: &SimplicialComplex,
    system: &LocalSystem,
    cocycle: &OneCocycle,
    engine: Arc<dyn RankEngine>,
) -> Result<Vec<usize>, ComplexError> {
    Ok(twisted_complex(complex, system, cocycle)?.betti_numbers(engine.as_ref()))
}

/// Points `s > 0` where `dim H^degree` exceeds its Novikov number.
pub fn jump_set(
    complex: &SimplicialComplex,
    system: &LocalSystem,
    cocycle: &OneCocycle,
    degree: usize,
) -> Result<CohomologyJumps, ComplexError> {
    Ok(twisted_complex(complex, system, cocycle)?.jumps(degree))
}

/// Ordinary rational Betti numbers.
pub fn betti_numbers(complex: &SimplicialComplex) -> Vec<usize> {
    let system = LocalSystem::trivial(complex, 1);
    let cocycle = OneCocycle::zero(complex);
    novikov_numbers(complex, &system, &cocycle).expect("trivial data is valid")
}

/// Alternating sum of simplex counts.
pub fn euler_characteristic(complex: &SimplicialComplex) -> i64 {
    complex.euler_characteristic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, RationalMatrix};

    fn circle_cocycle(values: [i64; 3]) -> (SimplicialComplex, LocalSystem, OneCocycle) {
        let k = SimplicialComplex::cycle(3);
        let f = LocalSystem::trivial(&k, 1);
        // edges [01], [02], [12]
        let theta = OneCocycle::from_edges(
            &k,
            &[(0, 1, rat(values[0])), (1, 2, rat(values[1])), (0, 2, rat(values[2]))],
        )
        .unwrap();
        (k, f, theta)
    }

    #[test]
    fn twisted_circle() {
        let (k, f, theta) = circle_cocycle([1, 1, -1]);
        let c = twisted_complex(&k, &f, &theta).unwrap();
        assert_eq!(c.dims(), &[3, 3]);
        assert_eq!(c.betti_numbers(&*default_rank_engine()), vec![0, 0]);
        let jumps = c.jumps(0);
        assert_eq!(jumps.background, 0);
        assert_eq!(jumps.jumps.len(), 1);
        assert_eq!(jumps.jumps[0].exact, Some(rat(1)));
        assert_eq!(jumps.jumps[0].dimension, 1);
        assert_eq!(jumps.other_roots, 2);
        assert_eq!(c.dims_at(&rat(1)).unwrap(), vec![1, 1]);
    }

    #[test]
    fn untwisted_circle_and_point() {
        let (k, f, theta) = circle_cocycle([0, 0, 0]);
        assert_eq!(novikov_numbers(&k, &f, &theta).unwrap(), vec![1, 1]);
        assert!(jump_set(&k, &f, &theta, 0).unwrap().jumps.is_empty());
        let p = SimplicialComplex::point();
        assert_eq!(betti_numbers(&p), vec![1]);
    }

    #[test]
    fn disk_is_acyclic_for_any_closed_form() {
        let k = SimplicialComplex::simplex(2);
        let f = LocalSystem::trivial(&k, 1);
        let theta = OneCocycle::from_values(&k, vec![rat(1), rat(2), rat(1)]).unwrap();
        let c = twisted_complex(&k, &f, &theta).unwrap();
        assert_eq!(c.betti_numbers(&*default_rank_engine()), vec![1, 0, 0]);
        assert!(c.jumps(1).jumps.is_empty());
        let bad = OneCocycle::from_values(&k, vec![rat(1), rat(3), rat(1)]).unwrap();
        assert!(matches!(validate(&k, &f, &bad), Err(ComplexError::NotClosed { .. })));
    }

    #[test]
    fn torus_with_one_circle_twisted() {
        let k = SimplicialComplex::torus();
        let f = LocalSystem::trivial(&k, 1);
        // Pull back f(i) = i along the first grid coordinate, wrapping at 3.
        let edges: Vec<_> = k
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (e[0] / 3, e[1] / 3);
                let step = (b + 3 - a) % 3;
                match step {
                    1 => rat(1),
                    2 => rat(-1),
                    _ => rat(0),
                }
            })
            .collect();
        let theta = OneCocycle::from_values(&k, edges).unwrap();
        assert!(theta.check_closed(&k).is_ok());
        assert_eq!(novikov_numbers(&k, &f, &theta).unwrap(), vec![0, 0, 0]);
        assert_eq!(betti_numbers(&k), vec![1, 2, 1]);
    }

    #[test]
    fn mobius_system_on_circle() {
        let k = SimplicialComplex::cycle(3);
        let f = LocalSystem::sign(&k, &[(0, 1)]).unwrap();
        assert_eq!(novikov_numbers(&k, &f, &OneCocycle::zero(&k)).unwrap(), vec![0, 0]);
        let twisted = LocalSystem::from_edges(&k, 2, vec![(0, 1, RationalMatrix::from_i64(&[&[0, 1], &[1, 0]]))]).unwrap();
        assert_eq!(novikov_numbers(&k, &twisted, &OneCocycle::zero(&k)).unwrap(), vec![1, 1]);
    }
}
