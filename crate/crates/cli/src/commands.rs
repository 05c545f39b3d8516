//! One function per subcommand: build core inputs from a descriptor, run
//! the pipeline, collect a report.

use num_traits::One;

use novikov_core::complexes::{novikov_numbers_with, twisted_complex, SimplicialComplex, TwistedComplex};
use novikov_core::equivariant::{descend_free_quotient, EquivariantError};
use novikov_core::exactalg::{format_rational, CohomologyJumps, CountingSeries};
use novikov_core::morse::{morse_series_with_parts, verify_inequalities, Failure, Verdict};
use novikov_core::novikov::equivariant_novikov;
use novikov_core::symplectic::{
    fixed_point_counts, kahler_report, perfectness_check, stable_dims_via_localization, CountReport, Stabilization,
    SymplecticError, Violation,
};
use novikov_core::Config;

use crate::report::*;
use crate::schema::{self, Descriptor};
use crate::CliError;

const DEFAULT_DEGREE: usize = 2;
const DEFAULT_PMAX: usize = 4;

fn summary(k: &SimplicialComplex) -> ComplexSummary {
    ComplexSummary {
        vertices: k.vertex_count(),
        dimension: k.dimension(),
        simplex_counts: (0..k.levels()).map(|i| k.count(i)).collect(),
    }
}

fn series_entry(s: &CountingSeries) -> SeriesEntry {
    SeriesEntry {
        coefficients: s.coefficients().iter().map(format_rational).collect(),
        text: s.to_string(),
    }
}

fn jump_entries(all: &[CohomologyJumps], complex: &TwistedComplex) -> Vec<DegreeJumps> {
    let scale = complex.exponent_scale();
    all.iter()
        .enumerate()
        .map(|(degree, j)| DegreeJumps {
            degree,
            background: j.background,
            jumps: j
                .jumps
                .iter()
                .map(|jump| {
                    let (lo, hi) = jump.t_interval(scale);
                    let t = match &jump.exact {
                        Some(s) if s.is_one() => "0".to_string(),
                        Some(_) => format!("{lo:.6}"),
                        None => format!("[{lo:.6}, {hi:.6}]"),
                    };
                    JumpEntry {
                        s: jump.exact.as_ref().map(format_rational),
                        s_interval: [format_rational(&jump.lo), format_rational(&jump.hi)],
                        t,
                        dimension: jump.dimension,
                    }
                })
                .collect(),
            other_roots: j.other_roots,
        })
        .collect()
}

pub fn novikov(d: &Descriptor, degree: Option<usize>, jumps: bool, config: &Config) -> Result<NovikovReport, CliError> {
    let space = d.space()?;
    let complex = twisted_complex(&space.complex, &space.system, &space.cocycle)?;
    let all = complex.betti_numbers(config.engine.as_ref());
    let rank = space.system.rank();
    let alternating_sum: i64 = all
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    let expected = rank as i64 * space.complex.euler_characteristic();
    let top = degree.or(d.parameters.degree).unwrap_or(all.len().saturating_sub(1));
    let mut betti = all.clone();
    betti.resize(top + 1, 0);
    let jumps = jumps.then(|| {
        let mut j = jump_entries(&complex.all_jumps(), &complex);
        j.truncate(top + 1);
        j
    });
    Ok(NovikovReport {
        description: d.description.clone(),
        complex: summary(&space.complex),
        rank,
        exponent_scale: complex.exponent_scale().to_string(),
        betti,
        euler: EulerCheck {
            alternating_sum,
            expected,
            holds: alternating_sum == expected,
        },
        jumps,
    })
}

pub fn equivariant(
    d: &Descriptor,
    degree: Option<usize>,
    jumps: bool,
    config: &Config,
) -> Result<EquivariantReport, CliError> {
    let data = d.equivariant()?;
    let top = degree.or(d.parameters.degree).unwrap_or(DEFAULT_DEGREE);
    let result = equivariant_novikov(&data, top, config)?;
    let stability = config.verify_stability.then(|| StabilityEntry {
        acyclicities: [result.acyclicity, result.acyclicity + 1],
        through_degree: top,
        // A disagreement is returned as an error above.
        stable: true,
    });
    let descent = match descend_free_quotient(&data) {
        Ok(q) => {
            let mut dims = q.novikov_numbers(config.engine.as_ref())?;
            dims.resize(top + 1, 0);
            DescentEntry {
                free: true,
                agrees: Some(dims == result.numbers),
                quotient: Some(dims),
            }
        }
        Err(EquivariantError::ActionNotFree { .. }) => DescentEntry {
            free: false,
            quotient: None,
            agrees: None,
        },
        Err(e) => return Err(e.into()),
    };
    let jumps = jumps.then(|| jump_entries(&result.jumps, data.twisted()));
    Ok(EquivariantReport {
        description: d.description.clone(),
        group_order: data.group().order(),
        complex: summary(data.complex()),
        rank: data.system().rank(),
        exponent_scale: data.twisted().exponent_scale().to_string(),
        acyclicity: result.acyclicity,
        betti: result.numbers,
        stability,
        descent,
        jumps,
    })
}

/// A supplied series must reach `p_max`; longer ones are truncated.
fn supplied_series(values: &[String], p_max: usize) -> Result<CountingSeries, CliError> {
    let available = values.len().saturating_sub(1);
    if values.is_empty() || available < p_max {
        return Err(SymplecticError::TruncationMismatch {
            requested: p_max,
            available,
        }
        .into());
    }
    schema::series(values, p_max)
}

pub fn verify(d: &Descriptor, pmax: Option<usize>, config: &Config) -> Result<VerifyReport, CliError> {
    let p_max = pmax.or(d.parameters.pmax).unwrap_or(DEFAULT_PMAX);
    let specs = d
        .critical_components
        .as_ref()
        .ok_or_else(|| CliError::Schema("missing field `critical_components`".into()))?;
    let group = d.group()?;
    let components = specs
        .iter()
        .map(|c| c.build(&group, p_max))
        .collect::<Result<Vec<_>, _>>()?;
    let (morse, parts) = morse_series_with_parts(&components, &group, p_max, config)?;
    let entries = components
        .iter()
        .zip(&parts)
        .map(|(c, p)| ComponentEntry {
            label: c.label.clone(),
            index: c.index,
            stabilizer_order: c.stabilizer.len(),
            series: p.coefficients().iter().map(format_rational).collect(),
            series_text: p.to_string(),
        })
        .collect();
    let (novikov, source) = match (&d.novikov_series, &d.complex) {
        (Some(_), Some(_)) => {
            return Err(CliError::Schema(
                "give either `complex` or `novikov_series`, not both".into(),
            ))
        }
        (Some(values), None) => (supplied_series(values, p_max)?, "supplied"),
        (None, Some(_)) if d.group.is_some() => {
            (equivariant_novikov(&d.equivariant()?, p_max, config)?.series, "computed")
        }
        (None, Some(_)) => {
            let s = d.space()?;
            let numbers = novikov_numbers_with(&s.complex, &s.system, &s.cocycle, config.engine.clone())?;
            (CountingSeries::from_counts(&numbers, p_max), "computed")
        }
        (None, None) => {
            return Err(CliError::Schema(
                "`verify` needs a `complex` or a `novikov_series`".into(),
            ))
        }
    };
    let r = verify_inequalities(&morse, &novikov)?;
    let verdict = match &r.verdict {
        Verdict::Perfect => VerdictEntry {
            status: "perfect".into(),
            degree: None,
            reason: None,
        },
        Verdict::Holds => VerdictEntry {
            status: "holds".into(),
            degree: None,
            reason: None,
        },
        Verdict::Fails { degree, reason } => {
            let q = format_rational(&r.alternating_sums[*degree]);
            let why = match reason {
                Failure::Negative => "is negative",
                Failure::NonInteger => "is not an integer",
            };
            VerdictEntry {
                status: "fails".into(),
                degree: Some(*degree),
                reason: Some(format!("Q_{degree} = {q} {why}")),
            }
        }
    };
    Ok(VerifyReport {
        description: d.description.clone(),
        group_order: group.order(),
        pmax: p_max,
        components: entries,
        morse: series_entry(&r.morse),
        novikov: series_entry(&r.novikov),
        novikov_source: source.into(),
        difference: series_entry(&r.gamma),
        remainder: series_entry(&r.remainder),
        routes_agree: r.routes_agree,
        verdict,
    })
}

fn violation_text(v: &Violation) -> String {
    let kind = match v {
        Violation::NonIntegerCount { .. } => "NonIntegerCount",
        Violation::MonotonicityViolation { .. } => "MonotonicityViolation",
        Violation::SymmetryViolation { .. } => "SymmetryViolation",
        Violation::TotalMismatch { .. } => "TotalMismatch",
        Violation::EulerMismatch { .. } => "EulerMismatch",
    };
    format!("{kind}: {v}")
}

fn counts_entry(r: &CountReport) -> CountsEntry {
    let symmetry_broken = r
        .violations
        .iter()
        .any(|v| matches!(v, Violation::SymmetryViolation { .. }));
    CountsEntry {
        m: r.counts.iter().map(format_rational).collect(),
        total: format_rational(&r.total),
        stable_value: match &r.stabilization {
            Stabilization::Verified(v) => Some(format_rational(v)),
            Stabilization::Unverified => None,
        },
        symmetry_holds: r.symmetry_checked.then_some(!symmetry_broken),
        euler_checked: r.euler_checked,
        degree_zero_anomaly: r.degree_zero_anomaly,
        violations: r.violations.iter().map(violation_text).collect(),
    }
}

pub fn symplectic(d: &Descriptor, pmax: Option<usize>) -> Result<SymplecticReport, CliError> {
    let spec = d
        .fixed_points
        .as_ref()
        .ok_or_else(|| CliError::Schema("missing field `fixed_points`".into()))?;
    let values = d
        .novikov_series
        .as_ref()
        .ok_or_else(|| CliError::Schema("missing field `novikov_series`".into()))?;
    let p_max = pmax
        .or(d.parameters.pmax)
        .unwrap_or(values.len().saturating_sub(1));
    let novikov = supplied_series(values, p_max)?;
    let data = spec.build()?;

    let mut fixed_betti: Vec<usize> = Vec::new();
    for c in &spec.components {
        if fixed_betti.len() < c.betti.len() {
            fixed_betti.resize(c.betti.len(), 0);
        }
        for (j, b) in c.betti.iter().enumerate() {
            fixed_betti[j] += b;
        }
    }
    let (even, odd) = stable_dims_via_localization(&fixed_betti);

    let perfect = perfectness_check(&data, &novikov, p_max)?;
    let counts = fixed_point_counts(&novikov, spec.rank, spec.ambient_dimension, p_max, spec.euler_characteristic)?;
    let hamiltonian = d.equivariant_dims.as_ref().map(|dims| {
        counts_entry(&kahler_report(dims, spec.ambient_dimension, p_max, spec.euler_characteristic))
    });
    Ok(SymplecticReport {
        description: d.description.clone(),
        pmax: p_max,
        fixed_set: FixedSetSummary {
            ambient_dimension: spec.ambient_dimension,
            rank: spec.rank,
            torus_rank: spec.torus_rank,
            components: spec.components.len(),
            euler_characteristic: spec.euler_characteristic,
        },
        stable_dims: [even, odd],
        localized: series_entry(&perfect.localized),
        novikov: series_entry(&perfect.novikov),
        identity_holds: perfect.holds(),
        first_discrepancy: perfect.first_discrepancy,
        counts: counts_entry(&counts),
        hamiltonian,
    })
}
