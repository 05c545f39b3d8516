//! Equivariant Novikov numbers, their jump sets and the Novikov series.

use thiserror::Error;

use crate::config::Config;
use crate::equivariant::{borel_complex, join_resolution, EquivariantData, EquivariantError};
use crate::exactalg::{CohomologyJumps, CountingSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NovikovError {
    #[error(transparent)]
    Equivariant(#[from] EquivariantError),
    #[error("series requested through degree {requested}, computed only through {computed}")]
    TruncationExceedsComputation { requested: usize, computed: usize },
}

/// Generic dimensions of twisted equivariant cohomology in degrees
/// `0..=i_max`, with the jump set of each degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantNovikovResult {
    pub numbers: Vec<usize>,
    pub jumps: Vec<CohomologyJumps>,
    /// Acyclicity of the join resolution used.
    pub acyclicity: usize,
    /// `Σ β_i λ^i`, truncated at `i_max`.
    pub series: CountingSeries,
}

impl EquivariantNovikovResult {
    pub fn i_max(&self) -> usize {
        self.numbers.len() - 1
    }
}

/// Runs the Borel construction with a resolution of acyclicity `i_max + 1`.
/// With `config.verify_stability` the numbers are recomputed at acyclicity
/// `i_max + 2` and must agree.
pub fn equivariant_novikov(
    data: &EquivariantData,
    i_max: usize,
    config: &Config,
) -> Result<EquivariantNovikovResult, NovikovError> {
    let acyclicity = i_max + 1;
    let resolution = join_resolution(data.group(), acyclicity);
    let borel = borel_complex(&resolution, data, config.dimension_limit)?;
    let mut numbers = borel.betti_numbers(config.engine.as_ref());
    numbers.truncate(i_max + 1);
    if config.verify_stability {
        crate::equivariant::stability_check(data, i_max, acyclicity, acyclicity + 1, config)?;
    }
    let mut jumps = borel.complex().all_jumps();
    jumps.truncate(i_max + 1);
    let series = CountingSeries::from_counts(&numbers, i_max);
    Ok(EquivariantNovikovResult {
        numbers,
        jumps,
        acyclicity,
        series,
    })
}

/// The Novikov series truncated at `p_max <= i_max`.
pub fn novikov_series(result: &EquivariantNovikovResult, p_max: usize) -> Result<CountingSeries, NovikovError> {
    if p_max > result.i_max() {
        return Err(NovikovError::TruncationExceedsComputation {
            requested: p_max,
            computed: result.i_max(),
        });
    }
    Ok(result.series.truncate(p_max))
}
