//! Property tests for the counting-series checks: inequality verdicts and
//! the fixed-point identities of circle actions.

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use novikov_core::exactalg::{frac, rat, CountingSeries};
use novikov_core::morse::{isolated_case, verify_inequalities, Failure, GroupKind, Verdict};
use novikov_core::symplectic::{fixed_point_counts, perfectness_check, FixedPointData, Violation};

fn series(p_max: usize) -> impl Strategy<Value = CountingSeries> {
    prop::collection::vec((-6i64..=6, 1i64..=3), p_max + 1).prop_map(move |c| {
        CountingSeries::from_coefficients(c.into_iter().map(|(n, d)| frac(n, d)).collect(), p_max)
    })
}

fn pair() -> impl Strategy<Value = (CountingSeries, CountingSeries)> {
    (0usize..=6).prop_flat_map(|p| (series(p), series(p)))
}

/// Isolated fixed points of a circle action: ambient real dimension `n`
/// (even), fiber rank, even indices, and a truncation at least `n`.
fn isolated() -> impl Strategy<Value = (usize, usize, Vec<usize>, usize)> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(half, d)| {
        let n = 2 * half;
        (
            Just(n),
            Just(d),
            prop::collection::vec((0..=half).prop_map(|k| 2 * k), 1..6),
            n..=n + 6,
        )
    })
}

proptest! {
    #[test]
    fn comparing_a_series_with_itself_is_perfect(x in (0usize..=6).prop_flat_map(series)) {
        let r = verify_inequalities(&x, &x).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Perfect);
    }

    #[test]
    fn both_routes_agree((m, n) in pair()) {
        let r = verify_inequalities(&m, &n).unwrap();
        prop_assert!(r.routes_agree);
        prop_assert_eq!(r.remainder.coefficients(), r.alternating_sums.as_slice());
    }

    #[test]
    fn verdict_matches_the_first_bad_coefficient((m, n) in pair()) {
        let r = verify_inequalities(&m, &n).unwrap();
        let bad = r.alternating_sums.iter().position(|q| q.is_negative() || !q.is_integer());
        match (r.verdict, bad) {
            (Verdict::Fails { degree, reason }, Some(p)) => {
                prop_assert_eq!(degree, p);
                let q = &r.alternating_sums[p];
                prop_assert_eq!(reason == Failure::Negative, q.is_negative());
            }
            (Verdict::Perfect, None) => prop_assert!(r.alternating_sums.iter().all(Zero::is_zero)),
            (Verdict::Holds, None) => prop_assert!(r.alternating_sums.iter().any(|q| !q.is_zero())),
            (v, b) => prop_assert!(false, "verdict {:?} with first bad degree {:?}", v, b),
        }
    }

    #[test]
    fn remainder_is_recovered(
        m in (0usize..=6).prop_flat_map(series),
        q in prop::collection::vec(0i64..=3, 7),
    ) {
        // N = M - (1 + λ)Q with Q integral and non-negative.
        let p = m.p_max();
        let q = CountingSeries::from_i64(&q[..=p], p);
        let novikov = m.sub(&q.mul(&CountingSeries::from_i64(&[1, 1], p)).unwrap()).unwrap();
        let r = verify_inequalities(&m, &novikov).unwrap();
        prop_assert_eq!(&r.remainder, &q);
        prop_assert!(r.verdict.holds());
        if r.verdict == Verdict::Perfect {
            prop_assert_eq!(m.sum(), novikov.sum());
        }
    }

    #[test]
    fn localized_series_satisfies_perfectness((n, d, indices, p_max) in isolated()) {
        let data = FixedPointData::isolated(n, d, &indices, 1).unwrap();
        let novikov = data.localized_series(p_max);
        let r = perfectness_check(&data, &novikov, p_max).unwrap();
        prop_assert!(r.holds());
        let (left, right) = r.partial_sums();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn counts_reassemble_into_the_series((n, d, indices, p_max) in isolated()) {
        let data = FixedPointData::isolated(n, d, &indices, 1).unwrap();
        let novikov = data.localized_series(p_max);
        let report = fixed_point_counts(&novikov, d, n, p_max, None).unwrap();
        let mut histogram = vec![0usize; n + 1];
        for &i in &indices {
            histogram[i] += 1;
        }
        let counts: Vec<usize> = report
            .counts
            .iter()
            .map(|m| {
                assert!(m.is_integer() && !m.is_negative(), "count {m}");
                m.to_integer().try_into().unwrap()
            })
            .collect();
        prop_assert_eq!(&counts, &histogram);
        prop_assert_eq!(isolated_case(&counts, d, GroupKind::Torus(1), p_max), novikov);
        prop_assert_eq!(report.total, rat(indices.len() as i64));
    }

    #[test]
    fn monotone_divisible_input_gives_natural_counts(
        d in 1usize..=3,
        steps in prop::collection::vec(0i64..=4, 1..=5),
        half in 1usize..=3,
    ) {
        let n = 2 * half;
        let mut b = Vec::new();
        let mut level = 0;
        for s in &steps {
            level += s * d as i64;
            b.push(level);
            b.push(0);
        }
        b.pop();
        let p_max = b.len() - 1;
        let novikov = CountingSeries::from_i64(&b, p_max);
        let report = fixed_point_counts(&novikov, d, n, p_max, None).unwrap();
        let clean = report
            .violations
            .iter()
            .all(|v| !matches!(v, Violation::NonIntegerCount { .. } | Violation::MonotonicityViolation { .. }));
        prop_assert!(clean, "violations {:?}", report.violations);
        prop_assert!(report.counts.iter().all(|m| m.is_integer() && !m.is_negative()));
    }
}
