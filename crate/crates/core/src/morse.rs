//! Equivariant Morse counting series and the Novikov inequalities.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::complexes::{OneCocycle, SimplicialComplex};
use crate::config::Config;
use crate::equivariant::{equivariant_dims, EquivariantData, EquivariantError, EquivariantLocalSystem, FiniteGroup, SimplicialAction};
use crate::exactalg::{
    expand_inverse_one_minus_lambda_sq, rat, AlgebraError, CountingSeries, ExactRational, RationalMatrix,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("component {label}: stabilizer {stabilizer:?} is not a subgroup")]
    NotASubgroup { label: String, stabilizer: Vec<usize> },
    #[error("component {label}: stabilizer order {stabilizer_order} does not divide group order {group_order}")]
    IndexNotDividing {
        label: String,
        stabilizer_order: usize,
        group_order: usize,
    },
    #[error("component {label}: supplied series has negative coefficient at degree {degree}")]
    NegativeSeriesCoefficient { label: String, degree: usize },
    #[error("component {label}: orientation system must have rank 1 with transports and fiber maps ±1")]
    InvalidOrientation { label: String },
    #[error("point {point}: stabilizer element {element} acts nontrivially on the fiber")]
    NontrivialStabilizerAction { point: String, element: usize },
}

/// A critical component given by its own cellular model: the component `Z`,
/// the stabilizer `G_Z` acting on it (as a group in its own right), the
/// restricted local system and the orientation sign system.
#[derive(Debug, Clone)]
pub struct ComponentModel {
    pub complex: SimplicialComplex,
    pub group: FiniteGroup,
    pub action: SimplicialAction,
    pub system: EquivariantLocalSystem,
    pub orientation: EquivariantLocalSystem,
}

#[derive(Debug, Clone)]
pub enum ComponentPayload {
    Model(ComponentModel),
    /// The equivariant Poincaré series, supplied directly.
    Series(CountingSeries),
}

#[derive(Debug, Clone)]
pub struct CriticalComponent {
    pub label: String,
    pub index: usize,
    /// Elements of the ambient group fixing the component.
    pub stabilizer: Vec<usize>,
    pub payload: ComponentPayload,
}

impl CriticalComponent {
    pub fn with_series(label: &str, index: usize, stabilizer: Vec<usize>, series: CountingSeries) -> Self {
        Self {
            label: label.to_string(),
            index,
            stabilizer,
            payload: ComponentPayload::Series(series),
        }
    }
}

fn is_sign(m: &RationalMatrix) -> bool {
    m.rows() == 1 && m.cols() == 1 && (m.get(0, 0) == &rat(1) || m.get(0, 0) == &rat(-1))
}

/// `Σ_i λ^i dim H^i_{G_Z}(Z, F|_Z ⊗ o(Z))` through `p_max`; a supplied
/// series is checked for non-negativity and padded or truncated.
pub fn component_poincare_series(
    component: &CriticalComponent,
    p_max: usize,
    config: &Config,
) -> Result<CountingSeries, MorseError> {
    match &component.payload {
        ComponentPayload::Series(series) => {
            if let Some(degree) = series.coefficients().iter().position(|c| c.is_negative()) {
                return Err(MorseError::NegativeSeriesCoefficient {
                    label: component.label.clone(),
                    degree,
                });
            }
            Ok(series.truncate(p_max))
        }
        ComponentPayload::Model(model) => {
            let o = &model.orientation;
            let base = o.base();
            let valid = o.rank() == 1
                && (0..base.edge_count()).all(|e| is_sign(base.transport(e)))
                && o.fiber_maps().iter().flatten().all(is_sign);
            if !valid {
                return Err(MorseError::InvalidOrientation {
                    label: component.label.clone(),
                });
            }
            let system = model.system.tensor(o)?;
            let data = EquivariantData::new(
                model.complex.clone(),
                model.group.clone(),
                model.action.clone(),
                system,
                OneCocycle::zero(&model.complex),
            )?;
            let dims = equivariant_dims(&data, p_max, config)?;
            Ok(CountingSeries::from_counts(&dims, p_max))
        }
    }
}

/// `Σ_Z λ^{ind Z} |G : G_Z|^{-1} P_Z(λ)` over the listed components. Orbits
/// are not grouped: every component is listed.
pub fn morse_series(
    components: &[CriticalComponent],
    group: &FiniteGroup,
    p_max: usize,
    config: &Config,
) -> Result<CountingSeries, MorseError> {
    Ok(morse_series_with_parts(components, group, p_max, config)?.0)
}

/// The Morse series together with each component's Poincaré series.
pub fn morse_series_with_parts(
    components: &[CriticalComponent],
    group: &FiniteGroup,
    p_max: usize,
    config: &Config,
) -> Result<(CountingSeries, Vec<CountingSeries>), MorseError> {
    let mut total = CountingSeries::zero(p_max);
    let mut parts = Vec::with_capacity(components.len());
    for z in components {
        if !group.is_subgroup(&z.stabilizer) {
            return Err(MorseError::NotASubgroup {
                label: z.label.clone(),
                stabilizer: z.stabilizer.clone(),
            });
        }
        let order = z.stabilizer.len();
        if group.order() % order != 0 {
            return Err(MorseError::IndexNotDividing {
                label: z.label.clone(),
                stabilizer_order: order,
                group_order: group.order(),
            });
        }
        let weight = ExactRational::new(order.into(), group.order().into());
        let p = component_poincare_series(z, p_max, config)?;
        total = total.add(&p.shift(z.index).scale(&weight))?;
        parts.push(p);
    }
    Ok((total, parts))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `Q` vanishes through the truncation.
    Perfect,
    /// `Q` has non-negative integer coefficients.
    Holds,
    /// First failing degree.
    Fails { degree: usize, reason: Failure },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    Negative,
    NonInteger,
}

impl Verdict {
    fn from_coefficients(q: &[ExactRational]) -> Self {
        for (degree, c) in q.iter().enumerate() {
            if c.is_negative() {
                return Self::Fails { degree, reason: Failure::Negative };
            }
            if !c.is_integer() {
                return Self::Fails { degree, reason: Failure::NonInteger };
            }
        }
        if q.iter().all(Zero::is_zero) {
            Self::Perfect
        } else {
            Self::Holds
        }
    }

    pub fn holds(&self) -> bool {
        !matches!(self, Self::Fails { .. })
    }
}

/// `M - N = (1 + λ) Q` checked through `p_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub morse: CountingSeries,
    pub novikov: CountingSeries,
    pub gamma: CountingSeries,
    /// `γ_p - γ_{p-1} + ... ± γ_0` for each `p`.
    pub alternating_sums: Vec<ExactRational>,
    /// `Q = γ (1 + λ)^{-1}`, computed by series division.
    pub remainder: CountingSeries,
    pub verdict: Verdict,
    /// Both routes give the same coefficients and verdict.
    pub routes_agree: bool,
}

pub fn verify_inequalities(morse: &CountingSeries, novikov: &CountingSeries) -> Result<InequalityReport, MorseError> {
    let gamma = morse.sub(novikov)?;
    let p_max = gamma.p_max();
    let alternating_sums: Vec<ExactRational> = (0..=p_max)
        .map(|p| {
            (0..=p).fold(rat(0), |acc, i| {
                let c = gamma.coefficient(i);
                if (p - i) % 2 == 0 {
                    acc + c
                } else {
                    acc - c
                }
            })
        })
        .collect();
    let remainder = gamma.mul(&CountingSeries::inverse_one_plus_lambda(p_max))?;
    let verdict = Verdict::from_coefficients(&alternating_sums);
    let routes_agree = remainder.coefficients() == alternating_sums.as_slice()
        && Verdict::from_coefficients(remainder.coefficients()) == verdict;
    Ok(InequalityReport {
        morse: morse.clone(),
        novikov: novikov.clone(),
        gamma,
        alternating_sums,
        remainder,
        verdict,
        routes_agree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Finite,
    /// A torus of the given rank.
    Torus(usize),
}

/// Morse series of isolated critical orbits: `d P^G(λ) Σ m_i λ^i`, with
/// `P^G = 1` for finite groups and `(1 - λ^2)^{-n}` for a rank-`n` torus.
pub fn isolated_case(counts: &[usize], rank: usize, kind: GroupKind, p_max: usize) -> CountingSeries {
    let orbits = CountingSeries::from_counts(counts, p_max).scale(&rat(rank as i64));
    match kind {
        GroupKind::Finite => orbits,
        GroupKind::Torus(n) => orbits
            .mul(&expand_inverse_one_minus_lambda_sq(n, p_max))
            .expect("same truncation"),
    }
}

/// An isolated critical point with its stabilizer acting on the fiber of
/// `F ⊗ o`.
#[derive(Debug, Clone)]
pub struct IsolatedPoint {
    pub label: String,
    pub stabilizer_action: Vec<(usize, RationalMatrix)>,
}

/// Every stabilizer must act trivially on the fiber datum for the isolated
/// count to apply. For a connected group this holds automatically.
pub fn validate_isolated_stabilizers(points: &[IsolatedPoint], connected_group: bool) -> Result<(), MorseError> {
    if connected_group {
        return Ok(());
    }
    for p in points {
        if let Some((element, _)) = p.stabilizer_action.iter().find(|(_, m)| !m.is_identity()) {
            return Err(MorseError::NontrivialStabilizerAction {
                point: p.label.clone(),
                element: *element,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::LocalSystem;
    use crate::exactalg::frac;

    fn point_model(sign: bool) -> ComponentModel {
        let k = SimplicialComplex::point();
        let g = FiniteGroup::cyclic(2);
        let chi = [rat(1), rat(if sign { -1 } else { 1 })];
        ComponentModel {
            complex: k.clone(),
            group: g.clone(),
            action: SimplicialAction::trivial(&g, 1),
            system: EquivariantLocalSystem::trivial_action(LocalSystem::trivial(&k, 1), &g, 1),
            orientation: EquivariantLocalSystem::scalar_action(LocalSystem::trivial(&k, 1), &chi, 1),
        }
    }

    #[test]
    fn component_series() {
        let config = Config::default();
        let z = |model| CriticalComponent {
            label: "z".into(),
            index: 0,
            stabilizer: vec![0, 1],
            payload: ComponentPayload::Model(model),
        };
        assert_eq!(component_poincare_series(&z(point_model(false)), 2, &config).unwrap(), CountingSeries::one(2));
        assert!(component_poincare_series(&z(point_model(true)), 2, &config).unwrap().is_zero());

        let k = SimplicialComplex::cycle(3);
        let g = FiniteGroup::trivial();
        let circle = CriticalComponent {
            label: "c".into(),
            index: 2,
            stabilizer: vec![0],
            payload: ComponentPayload::Model(ComponentModel {
                complex: k.clone(),
                group: g.clone(),
                action: SimplicialAction::trivial(&g, 3),
                system: EquivariantLocalSystem::trivial_action(LocalSystem::trivial(&k, 1), &g, 3),
                orientation: EquivariantLocalSystem::trivial_action(LocalSystem::trivial(&k, 1), &g, 3),
            }),
        };
        assert_eq!(component_poincare_series(&circle, 3, &config).unwrap(), CountingSeries::from_i64(&[1, 1], 3));
        assert_eq!(morse_series(&[circle], &g, 3, &config).unwrap(), CountingSeries::from_i64(&[0, 0, 1, 1], 3));
    }

    #[test]
    fn morse_series_weights() {
        let config = Config::default();
        let trivial = FiniteGroup::trivial();
        let pts = vec![
            CriticalComponent::with_series("a", 0, vec![0], CountingSeries::one(2)),
            CriticalComponent::with_series("b", 1, vec![0], CountingSeries::one(2)),
        ];
        assert_eq!(morse_series(&pts, &trivial, 2, &config).unwrap(), CountingSeries::from_i64(&[1, 1], 2));
        let z2 = FiniteGroup::cyclic(2);
        let half = vec![CriticalComponent::with_series("a", 0, vec![0], CountingSeries::one(2))];
        assert_eq!(morse_series(&half, &z2, 2, &config).unwrap().coefficient(0), frac(1, 2));
        let bad = vec![CriticalComponent::with_series("a", 0, vec![0, 1], CountingSeries::one(2))];
        assert!(matches!(morse_series(&bad, &FiniteGroup::cyclic(3), 2, &config), Err(MorseError::NotASubgroup { .. })));
        let negative = vec![CriticalComponent::with_series("n", 0, vec![0], CountingSeries::from_i64(&[1, -1], 2))];
        assert!(matches!(
            morse_series(&negative, &trivial, 2, &config),
            Err(MorseError::NegativeSeriesCoefficient { degree: 1, .. })
        ));
    }

    #[test]
    fn inequality_examples() {
        let x = CountingSeries::from_i64(&[1, 1], 4);
        let r = verify_inequalities(&x, &x).unwrap();
        assert_eq!(r.verdict, Verdict::Perfect);
        let m = CountingSeries::from_i64(&[1, 2, 1], 2);
        let n = CountingSeries::from_i64(&[1, 0, 1], 2);
        let r = verify_inequalities(&m, &n).unwrap();
        assert_eq!(r.alternating_sums, vec![rat(0), rat(2), rat(-2)]);
        assert_eq!(r.verdict, Verdict::Fails { degree: 2, reason: Failure::Negative });
        assert!(r.routes_agree);
        let zero = CountingSeries::zero(4);
        assert_eq!(verify_inequalities(&zero, &zero).unwrap().verdict, Verdict::Perfect);
        let half = CountingSeries::from_coefficients(vec![frac(1, 2)], 2);
        let r = verify_inequalities(&half, &CountingSeries::zero(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Fails { degree: 0, reason: Failure::NonInteger });
        assert!(verify_inequalities(&zero, &CountingSeries::zero(3)).is_err());
    }

    #[test]
    fn isolated_examples() {
        assert_eq!(isolated_case(&[1, 1], 1, GroupKind::Finite, 3), CountingSeries::from_i64(&[1, 1], 3));
        assert_eq!(
            isolated_case(&[1, 0, 1], 1, GroupKind::Torus(1), 4),
            CountingSeries::from_i64(&[1, 0, 2, 0, 2], 4)
        );
        assert_eq!(
            isolated_case(&[1, 0, 1], 2, GroupKind::Torus(1), 4),
            CountingSeries::from_i64(&[2, 0, 4, 0, 4], 4)
        );
    }

    #[test]
    fn stabilizer_actions() {
        let ok = IsolatedPoint { label: "p".into(), stabilizer_action: vec![(1, RationalMatrix::identity(1))] };
        let bad = IsolatedPoint { label: "q".into(), stabilizer_action: vec![(1, RationalMatrix::scalar(rat(-1)))] };
        assert!(validate_isolated_stabilizers(&[ok.clone()], false).is_ok());
        assert_eq!(
            validate_isolated_stabilizers(&[ok.clone(), bad.clone()], false),
            Err(MorseError::NontrivialStabilizerAction { point: "q".into(), element: 1 })
        );
        assert!(validate_isolated_stabilizers(&[bad], true).is_ok());
    }
}
