use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::elimination::{bareiss, rational_rank, unit_reduce, SparseRow};
use super::{rat, AlgebraError, ExactRational, RationalFunctionMatrix};

/// A strategy for computing the rank of a matrix over `Q(s)`.
///
/// Every registered engine is exact; they differ only in how they get
/// there, and must agree on every input.
pub trait RankEngine: Send + Sync + fmt::Debug {
    /// Registry key.
    fn name(&self) -> &'static str;

    fn generic_rank(&self, matrix: &RationalFunctionMatrix) -> usize;
}

/// Unit-pivot sparse elimination over `Q[s, 1/s]` followed by Bareiss
/// elimination over `Z[s, 1/s]` on the residual block. The default engine.
#[derive(Debug, Default, Clone, Copy)]
pub struct FractionFree;

impl RankEngine for FractionFree {
    fn name(&self) -> &'static str {
        "fraction-free"
    }

    fn generic_rank(&self, matrix: &RationalFunctionMatrix) -> usize {
        let reduced = unit_reduce(matrix.sparse_rows());
        reduced.rank + bareiss(&reduced.residual).0
    }
}

/// Evaluates at the points `s = 1, 2, ..., D + 1` where `D` bounds the
/// degree of every maximal minor (after clearing row or column powers of
/// `s`), and takes the largest rank seen. A nonzero minor of degree at most
/// `D` has at most `D` positive roots, so one of the points attains the
/// generic rank. Deterministic and exact.
#[derive(Debug, Default, Clone, Copy)]
pub struct Specialization;

impl Specialization {
    /// Upper bound on the degree of any square minor after normalizing
    /// lowest exponents to zero.
    pub fn minor_degree_bound(matrix: &RationalFunctionMatrix) -> u64 {
        let size = matrix.rows().min(matrix.cols());
        let bound_for = |spans: Vec<u64>| -> u64 {
            let mut spans = spans;
            spans.sort_unstable_by(|a, b| b.cmp(a));
            spans.into_iter().take(size).sum()
        };
        let mut row_spans = Vec::with_capacity(matrix.rows());
        let mut col_ranges: Vec<(i64, i64)> = vec![(i64::MAX, i64::MIN); matrix.cols()];
        for r in 0..matrix.rows() {
            let mut range = (i64::MAX, i64::MIN);
            for (c, e) in matrix.row_entries(r) {
                let (lo, hi) = (e.min_exponent().unwrap_or(0), e.max_exponent().unwrap_or(0));
                range = (range.0.min(lo), range.1.max(hi));
                col_ranges[c] = (col_ranges[c].0.min(lo), col_ranges[c].1.max(hi));
            }
            row_spans.push(span(range));
        }
        let col_spans = col_ranges.into_iter().map(span).collect();
        bound_for(row_spans).min(bound_for(col_spans))
    }
}

fn span((lo, hi): (i64, i64)) -> u64 {
    if lo > hi {
        0
    } else {
        (hi - lo) as u64
    }
}

impl RankEngine for Specialization {
    fn name(&self) -> &'static str {
        "specialization"
    }

    fn generic_rank(&self, matrix: &RationalFunctionMatrix) -> usize {
        let full = matrix.rows().min(matrix.cols());
        let bound = Self::minor_degree_bound(matrix);
        let mut best = 0;
        for k in 1..=bound as i64 + 1 {
            let r = specialized_rank(matrix, &rat(k));
            best = best.max(r);
            if best == full {
                break;
            }
        }
        best
    }
}

type EngineFactory = fn() -> Arc<dyn RankEngine>;

fn registry() -> BTreeMap<&'static str, EngineFactory> {
    let mut map: BTreeMap<&'static str, EngineFactory> = BTreeMap::new();
    map.insert("fraction-free", || Arc::new(FractionFree));
    map.insert("specialization", || Arc::new(Specialization));
    map
}

/// Names accepted by [`rank_engine`].
pub fn rank_engine_names() -> Vec<&'static str> {
    registry().keys().copied().collect()
}

/// Looks up a rank engine by name.
pub fn rank_engine(name: &str) -> Option<Arc<dyn RankEngine>> {
    registry().get(name).map(|make| make())
}

pub fn default_rank_engine() -> Arc<dyn RankEngine> {
    Arc::new(FractionFree)
}

/// Rank over the rational function field, with the default engine.
pub fn rank_over_function_field(matrix: &RationalFunctionMatrix) -> usize {
    FractionFree.generic_rank(matrix)
}

/// Rank of the numeric matrix `A(s0)` for `s0 > 0`.
pub fn rank_at_parameter(
    matrix: &RationalFunctionMatrix,
    s0: &ExactRational,
) -> Result<usize, AlgebraError> {
    if !s0.is_positive() {
        return Err(AlgebraError::NonPositiveParameter(s0.clone()));
    }
    Ok(specialized_rank(matrix, s0))
}

fn specialized_rank(matrix: &RationalFunctionMatrix, s0: &ExactRational) -> usize {
    let rows: Vec<SparseRow<ExactRational>> = matrix
        .sparse_rows()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .filter_map(|(c, e)| {
                    let v = e.eval(s0);
                    (!v.is_zero()).then_some((c, v))
                })
                .collect()
        })
        .collect();
    rational_rank(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, LaurentPolynomial};

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    fn engines() -> Vec<Arc<dyn RankEngine>> {
        rank_engine_names().into_iter().map(|n| rank_engine(n).unwrap()).collect()
    }

    #[test]
    fn identity_zero_and_scalar() {
        for engine in engines() {
            assert_eq!(engine.generic_rank(&RationalFunctionMatrix::identity(3)), 3);
            assert_eq!(engine.generic_rank(&RationalFunctionMatrix::zeros(4, 2)), 0);
            let m = RationalFunctionMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)])]]).unwrap();
            assert_eq!(engine.generic_rank(&m), 1, "{}", engine.name());
        }
    }

    #[test]
    fn ranks_at_parameters() {
        let m = RationalFunctionMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)])]]).unwrap();
        assert_eq!(rank_at_parameter(&m, &rat(1)).unwrap(), 0);
        assert_eq!(rank_at_parameter(&m, &rat(2)).unwrap(), 1);
        let d = RationalFunctionMatrix::diagonal(vec![lp(&[(1, 1), (0, -2)]), lp(&[(0, 1)])]);
        assert_eq!(rank_at_parameter(&d, &rat(2)).unwrap(), 1);
        assert_eq!(rank_at_parameter(&d, &frac(5, 2)).unwrap(), 2);
        assert_eq!(
            rank_at_parameter(&d, &rat(0)),
            Err(AlgebraError::NonPositiveParameter(rat(0)))
        );
        assert!(rank_at_parameter(&d, &rat(-1)).is_err());
    }

    #[test]
    fn specialization_needs_enough_points() {
        // Minor (s-1)(s-2)(s-3) vanishes at the first three evaluation points.
        let p = lp(&[(0, -6), (1, 11), (2, -6), (3, 1)]);
        let m = RationalFunctionMatrix::from_rows(vec![vec![p]]).unwrap();
        assert_eq!(Specialization::minor_degree_bound(&m), 3);
        assert_eq!(Specialization.generic_rank(&m), 1);
    }

    #[test]
    fn unknown_engine() {
        assert!(rank_engine("modular").is_none());
        assert_eq!(rank_engine_names(), vec!["fraction-free", "specialization"]);
    }
}
