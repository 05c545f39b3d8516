//! Exact checks for torus actions with a generalized moment map: the
//! localization identity and fixed-point counts read off equivariant Novikov
//! numbers. All inputs are series or fixed-point data; nothing geometric is
//! computed here.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactalg::{expand_inverse_one_minus_lambda_sq, rat, CountingSeries, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("fixed component {component} has odd index {index}")]
    OddIndex { component: usize, index: usize },
    #[error("fixed component {component}: negative Betti coefficient in degree {degree}")]
    NegativeCoefficient { component: usize, degree: usize },
    #[error("series known through degree {available}, but degree {requested} was requested")]
    TruncationMismatch { requested: usize, available: usize },
    #[error("odd Novikov number in degree {degree} is nonzero")]
    OddNovikovNonzero { degree: usize },
    #[error("local system rank must be positive")]
    ZeroRank,
    #[error(transparent)]
    Violation(#[from] Violation),
}

/// A consistency failure found while reading counts off a series.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("count m_{degree} = {value} is not a non-negative integer")]
    NonIntegerCount { degree: usize, value: ExactRational },
    #[error("even coefficients decrease at degree {degree}")]
    MonotonicityViolation { degree: usize },
    #[error("m_{degree} = {left} but m_{mirror} = {right}")]
    SymmetryViolation {
        degree: usize,
        mirror: usize,
        left: ExactRational,
        right: ExactRational,
    },
    #[error("sum of counts {counted} differs from the stable value divided by the rank, {expected}")]
    TotalMismatch { counted: ExactRational, expected: ExactRational },
    #[error("stable value {stable} differs from rank times Euler characteristic, {expected}")]
    EulerMismatch { stable: ExactRational, expected: ExactRational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedComponent {
    /// Poincaré polynomial of `H^*(Z, F|_Z)`.
    pub betti: CountingSeries,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointData {
    ambient_dimension: usize,
    rank: usize,
    components: Vec<FixedComponent>,
    torus_rank: usize,
}

impl FixedPointData {
    pub fn new(
        ambient_dimension: usize,
        rank: usize,
        components: Vec<FixedComponent>,
        torus_rank: usize,
    ) -> Result<Self, SymplecticError> {
        if rank == 0 {
            return Err(SymplecticError::ZeroRank);
        }
        for (component, z) in components.iter().enumerate() {
            if z.index % 2 == 1 {
                return Err(SymplecticError::OddIndex { component, index: z.index });
            }
            if let Some(degree) = z.betti.coefficients().iter().position(|c| c.is_negative()) {
                return Err(SymplecticError::NegativeCoefficient { component, degree });
            }
        }
        Ok(Self {
            ambient_dimension,
            rank,
            components,
            torus_rank,
        })
    }

    /// `2k` isolated fixed points with the given even indices, each with
    /// fiber of dimension `rank`.
    pub fn isolated(ambient_dimension: usize, rank: usize, indices: &[usize], torus_rank: usize) -> Result<Self, SymplecticError> {
        let components = indices
            .iter()
            .map(|&index| FixedComponent {
                betti: CountingSeries::from_counts(&[rank], 0),
                index,
            })
            .collect();
        Self::new(ambient_dimension, rank, components, torus_rank)
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient_dimension
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// `(1 - λ^2)^{-n_T} Σ_Z λ^{ind Z} P_Z(λ)` through `p_max`.
    pub fn localized_series(&self, p_max: usize) -> CountingSeries {
        let mut sum = CountingSeries::zero(p_max);
        for z in &self.components {
            sum = sum.add(&z.betti.truncate(p_max).shift(z.index)).expect("same truncation");
        }
        sum.mul(&expand_inverse_one_minus_lambda_sq(self.torus_rank, p_max))
            .expect("same truncation")
    }
}

/// Large-degree equivariant dimensions forced by localization: the even and
/// odd totals of the fixed-set cohomology.
pub fn stable_dims_via_localization(fixed_betti: &[usize]) -> (usize, usize) {
    fixed_betti.iter().enumerate().fold((0, 0), |(even, odd), (j, &b)| {
        if j % 2 == 0 {
            (even + b, odd)
        } else {
            (even, odd + b)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectnessReport {
    pub localized: CountingSeries,
    pub novikov: CountingSeries,
    pub first_discrepancy: Option<usize>,
}

impl PerfectnessReport {
    pub fn holds(&self) -> bool {
        self.first_discrepancy.is_none()
    }

    /// Values at `λ = 1` of both truncations.
    pub fn partial_sums(&self) -> (ExactRational, ExactRational) {
        (self.localized.sum(), self.novikov.sum())
    }
}

pub fn perfectness_check(
    data: &FixedPointData,
    novikov: &CountingSeries,
    p_max: usize,
) -> Result<PerfectnessReport, SymplecticError> {
    if novikov.p_max() < p_max {
        return Err(SymplecticError::TruncationMismatch {
            requested: p_max,
            available: novikov.p_max(),
        });
    }
    let localized = data.localized_series(p_max);
    let novikov = novikov.truncate(p_max);
    let first_discrepancy = localized.first_difference(&novikov);
    Ok(PerfectnessReport {
        localized,
        novikov,
        first_discrepancy,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stabilization {
    /// Two equal consecutive even coefficients at degree `>= n` ending at the
    /// truncation; holds the stable value.
    Verified(ExactRational),
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    /// `m_0, ..., m_k` with `k = min(n, p_max)`.
    pub counts: Vec<ExactRational>,
    pub total: ExactRational,
    pub stabilization: Stabilization,
    /// Symmetry needs the series through degree `n`.
    pub symmetry_checked: bool,
    /// `None` when no Euler characteristic was supplied or stabilization is
    /// unverified.
    pub euler_checked: Option<bool>,
    pub degree_zero_anomaly: bool,
    pub violations: Vec<Violation>,
}

impl CountReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty() && !self.degree_zero_anomaly
    }

    /// The first violation as an error.
    pub fn into_result(self) -> Result<Self, SymplecticError> {
        match self.violations.first() {
            Some(v) => Err(v.clone().into()),
            None => Ok(self),
        }
    }
}

/// Shared reading of counts `m_i = (b_i - b_{i-2}) / d` off a sequence `b`.
fn read_counts(
    b: &[ExactRational],
    degrees: impl Iterator<Item = usize> + Clone,
    d: usize,
    n: usize,
    euler: Option<i64>,
) -> CountReport {
    let top = b.len() - 1;
    let d_rat = rat(d as i64);
    let at = |i: usize| b.get(i).cloned().unwrap_or_else(ExactRational::zero);
    let below = |i: usize| if i >= 2 { at(i - 2) } else { ExactRational::zero() };
    let mut violations = Vec::new();

    for i in degrees.clone().filter(|&i| i >= 2 && i <= top) {
        if at(i) < at(i - 2) {
            violations.push(Violation::MonotonicityViolation { degree: i });
        }
    }

    let last = n.min(top);
    let counts: Vec<ExactRational> = (0..=last)
        .map(|i| {
            if degrees.clone().any(|j| j == i) {
                (at(i) - below(i)) / &d_rat
            } else {
                ExactRational::zero()
            }
        })
        .collect();
    for (degree, value) in counts.iter().enumerate() {
        if value.is_negative() || !value.is_integer() {
            violations.push(Violation::NonIntegerCount { degree, value: value.clone() });
        }
    }

    let symmetry_checked = top >= n;
    if symmetry_checked {
        for i in 0..=n / 2 {
            if counts[i] != counts[n - i] {
                violations.push(Violation::SymmetryViolation {
                    degree: i,
                    mirror: n - i,
                    left: counts[i].clone(),
                    right: counts[n - i].clone(),
                });
            }
        }
    }

    let tail: Vec<usize> = (n..=top).filter(|i| i % 2 == 0).collect();
    let stabilization = match tail.as_slice() {
        [.., a, z] if at(*a) == at(*z) => Stabilization::Verified(at(*z)),
        _ => Stabilization::Unverified,
    };
    let total = counts.iter().fold(ExactRational::zero(), |acc, m| acc + m);
    let mut euler_checked = None;
    if let Stabilization::Verified(stable) = &stabilization {
        let expected = stable / &d_rat;
        if total != expected {
            violations.push(Violation::TotalMismatch {
                counted: total.clone(),
                expected,
            });
        }
        if let Some(chi) = euler {
            let expected = rat(chi) * &d_rat;
            let ok = *stable == expected;
            if !ok {
                violations.push(Violation::EulerMismatch {
                    stable: stable.clone(),
                    expected,
                });
            }
            euler_checked = Some(ok);
        }
    }

    CountReport {
        counts,
        total,
        stabilization,
        symmetry_checked,
        euler_checked,
        degree_zero_anomaly: false,
        violations,
    }
}

/// Fixed-point counts from equivariant Novikov numbers of a circle action
/// whose fixed set has no odd cohomology: `m_{2i} = (β_{2i} - β_{2i-2}) / d`
/// and `m_{odd} = 0`, with the monotonicity, symmetry, total and Euler
/// characteristic checks collected in the report.
pub fn fixed_point_counts(
    novikov: &CountingSeries,
    d: usize,
    n: usize,
    p_max: usize,
    euler: Option<i64>,
) -> Result<CountReport, SymplecticError> {
    if d == 0 {
        return Err(SymplecticError::ZeroRank);
    }
    if novikov.p_max() < p_max {
        return Err(SymplecticError::TruncationMismatch {
            requested: p_max,
            available: novikov.p_max(),
        });
    }
    let b = &novikov.coefficients()[..=p_max];
    if let Some(degree) = (1..=p_max).step_by(2).find(|&i| !b[i].is_zero()) {
        return Err(SymplecticError::OddNovikovNonzero { degree });
    }
    Ok(read_counts(b, (0..=p_max).step_by(2), d, n, euler))
}

/// The same reading on equivariant cohomology dimensions of a Hamiltonian
/// action (trivial moment class): `m_i = dim H^i_T - dim H^{i-2}_T`, total
/// `dim H^n_T`, plus a flag when `dim H^0_T = 0`.
pub fn kahler_report(dims: &[usize], n: usize, p_max: usize, euler: Option<i64>) -> CountReport {
    let known = if dims.is_empty() { 1 } else { dims.len() };
    let top = p_max.min(known - 1);
    let b: Vec<ExactRational> = (0..=top).map(|i| rat(dims.get(i).copied().unwrap_or(0) as i64)).collect();
    let mut report = read_counts(&b, 0..=top, 1, n, euler);
    if n <= top {
        report.total = b[n].clone();
    }
    report.degree_zero_anomaly = b[0].is_zero();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::{isolated_case, GroupKind};

    fn sphere() -> FixedPointData {
        FixedPointData::isolated(2, 1, &[0, 2], 1).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn localization_totals() {
        assert_eq!(stable_dims_via_localization(&[2]), (2, 0));
        assert_eq!(stable_dims_via_localization(&[]), (0, 0));
        assert_eq!(stable_dims_via_localization(&[1, 1]), (1, 1));
    }

    #[test]
    fn perfectness_examples() {
        let beta = CountingSeries::from_i64(&[1, 0, 2, 0, 2], 4);
        let r = perfectness_check(&sphere(), &beta, 4).unwrap();
        assert!(r.holds());
        assert_eq!(r.partial_sums(), (rat(5), rat(5)));
        let empty = FixedPointData::new(2, 1, vec![], 1).unwrap();
        assert!(perfectness_check(&empty, &CountingSeries::zero(4), 4).unwrap().holds());
        let short = CountingSeries::from_i64(&[1, 0, 1], 4);
        assert_eq!(perfectness_check(&sphere(), &short, 4).unwrap().first_discrepancy, Some(2));
        assert!(matches!(
            perfectness_check(&sphere(), &CountingSeries::zero(2), 4),
            Err(SymplecticError::TruncationMismatch { .. })
        ));
        assert!(matches!(
            FixedPointData::isolated(2, 1, &[1], 1),
            Err(SymplecticError::OddIndex { .. })
        ));
    }

    #[test]
    fn sphere_counts() {
        let beta = CountingSeries::from_i64(&[1, 0, 2, 0, 2], 4);
        let r = fixed_point_counts(&beta, 1, 2, 4, Some(2)).unwrap();
        assert_eq!(r.counts, ints(&[1, 0, 1]));
        assert_eq!(r.total, rat(2));
        assert_eq!(r.stabilization, Stabilization::Verified(rat(2)));
        assert_eq!(r.euler_checked, Some(true));
        assert!(r.symmetry_checked);
        assert!(r.is_consistent());
        // Reassembling isolated orbits reproduces the localized side.
        let counts: Vec<usize> = r.counts.iter().map(|m| m.to_integer().try_into().unwrap()).collect();
        assert_eq!(isolated_case(&counts, 1, GroupKind::Torus(1), 4), sphere().localized_series(4));
    }

    #[test]
    fn count_failures() {
        let zero = fixed_point_counts(&CountingSeries::zero(4), 1, 2, 4, None).unwrap();
        assert!(zero.counts.iter().all(Zero::is_zero));
        assert_eq!(zero.total, rat(0));
        assert!(zero.is_consistent());

        let r = fixed_point_counts(&CountingSeries::from_i64(&[1, 0, 1, 0, 3], 4), 1, 4, 4, None).unwrap();
        assert_eq!(r.counts, ints(&[1, 0, 0, 0, 2]));
        assert_eq!(r.stabilization, Stabilization::Unverified);
        assert!(matches!(
            r.into_result(),
            Err(SymplecticError::Violation(Violation::SymmetryViolation { degree: 0, mirror: 4, .. }))
        ));

        assert_eq!(
            fixed_point_counts(&CountingSeries::from_i64(&[1, 1], 2), 1, 2, 2, None),
            Err(SymplecticError::OddNovikovNonzero { degree: 1 })
        );
        let dropping = fixed_point_counts(&CountingSeries::from_i64(&[2, 0, 1, 0, 1], 4), 1, 2, 4, None).unwrap();
        assert!(dropping.violations.contains(&Violation::MonotonicityViolation { degree: 2 }));
        let halves = fixed_point_counts(&CountingSeries::from_i64(&[2, 0, 3, 0, 3], 4), 2, 2, 4, None).unwrap();
        assert!(matches!(halves.violations[0], Violation::NonIntegerCount { degree: 2, .. }));
        let euler = fixed_point_counts(&CountingSeries::from_i64(&[1, 0, 2, 0, 2], 4), 1, 2, 4, Some(3)).unwrap();
        assert_eq!(euler.euler_checked, Some(false));
    }

    #[test]
    fn kahler_examples() {
        let r = kahler_report(&[1, 0, 2, 0, 2], 2, 4, None);
        assert_eq!((r.counts.clone(), r.total.clone()), (ints(&[1, 0, 1]), rat(2)));
        assert!(r.is_consistent());
        let r = kahler_report(&[1, 0, 1], 2, 2, None);
        assert_eq!((r.counts.clone(), r.total.clone()), (ints(&[1, 0, 0]), rat(1)));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::SymmetryViolation { .. })));
        let r = kahler_report(&[0, 0, 0], 2, 2, None);
        assert_eq!(r.total, rat(0));
        assert!(r.degree_zero_anomaly);
    }
}
