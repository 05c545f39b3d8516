use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::elimination::{bareiss, unit_reduce, SparseRow};
use super::poly::IsolatedRoot;
use super::{frac, ExactRational, LaurentPolynomial, Poly, RationalFunctionMatrix};

/// Width of the isolating intervals reported for positive roots.
pub const ROOT_INTERVAL_WIDTH_LOG2: i64 = 20;

fn root_width() -> ExactRational {
    frac(1, 1 << ROOT_INTERVAL_WIDTH_LOG2)
}

/// A square-free, `s`-free factor of the locus polynomial together with the
/// rank the matrix attains at each of its roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusFactor {
    pub poly: Poly,
    pub rank: usize,
}

/// An isolated positive real root `s` in `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: ExactRational,
    pub hi: ExactRational,
    /// Set when the root is rational and has been identified exactly.
    pub exact: Option<ExactRational>,
    /// Rank of the matrix at this root.
    pub rank: usize,
}

impl RootInterval {
    pub fn contains(&self, s0: &ExactRational) -> bool {
        &self.lo < s0 && s0 < &self.hi
    }

    /// Enclosure of `t = ln s`, in floating point.
    pub fn t_interval(&self) -> (f64, f64) {
        (ln(&self.lo), ln(&self.hi))
    }
}

fn ln(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN).ln()
}

/// Where the rank of a matrix over `Q(s)` drops below its generic value,
/// restricted to `s > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DropLocus {
    pub generic_rank: usize,
    /// Monic, square-free, not divisible by `s`. Its roots are exactly the
    /// points where the rank drops.
    pub locus_polynomial: Poly,
    pub factors: Vec<LocusFactor>,
    /// Sorted, pairwise disjoint.
    pub positive_real_roots: Vec<RootInterval>,
    /// Distinct roots of the locus polynomial that are not positive reals
    /// (negative or non-real). They are outside the parameter line.
    pub other_roots: usize,
}

impl DropLocus {
    /// Rank at `s0 > 0`, read off the locus without re-eliminating.
    pub fn rank_at(&self, s0: &ExactRational) -> usize {
        self.factors
            .iter()
            .find(|f| f.poly.eval(s0).is_zero())
            .map_or(self.generic_rank, |f| f.rank)
    }
}

/// Computes the generic rank and the positive drop points of `matrix`.
pub fn drop_locus(matrix: &RationalFunctionMatrix) -> DropLocus {
    let reduced = unit_reduce(matrix.sparse_rows());
    let base = reduced.rank;
    let (residual_rank, pivot) = bareiss(&reduced.residual);
    let generic_rank = base + residual_rank;

    let mut factors = Vec::new();
    if let Some(pivot) = pivot {
        let (_, body) = pivot.to_shifted_poly();
        let candidates = body.squarefree_part().strip_s_factor();
        if !candidates.is_constant() {
            for (poly, rank) in split_ranks(&reduced.residual, candidates) {
                if rank < residual_rank {
                    factors.push(LocusFactor {
                        poly,
                        rank: base + rank,
                    });
                }
            }
        }
    }
    factors.sort_by(|a, b| poly_order(&a.poly, &b.poly));
    let locus_polynomial = factors
        .iter()
        .fold(Poly::one(), |acc, f| acc.mul(&f.poly))
        .monic();
    let mut roots: Vec<RootInterval> = factors
        .iter()
        .flat_map(|f| {
            f.poly
                .isolate_positive_roots(&root_width())
                .into_iter()
                .map(move |r| interval(r, f.rank))
        })
        .collect();
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    let other_roots = locus_polynomial.deg() - roots.len();
    DropLocus {
        generic_rank,
        locus_polynomial,
        factors,
        positive_real_roots: roots,
        other_roots,
    }
}

fn interval(r: IsolatedRoot, rank: usize) -> RootInterval {
    RootInterval {
        lo: r.lo,
        hi: r.hi,
        exact: r.exact,
        rank,
    }
}

/// Deterministic total order on polynomials: by degree, then coefficients.
fn poly_order(a: &Poly, b: &Poly) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().cmp(b.coeffs().iter()))
}

/// Gaussian elimination over `Q[s]/(modulus)` for a square-free modulus,
/// splitting the modulus whenever a candidate pivot is a zero divisor.
/// Returns coprime factors covering the modulus, each with the rank of the
/// matrix over every residue field it contains.
fn split_ranks(rows: &[SparseRow<LaurentPolynomial>], modulus: Poly) -> Vec<(Poly, usize)> {
    let ncols = rows
        .iter()
        .filter_map(|r| r.keys().next_back())
        .max()
        .map_or(0, |&c| c + 1);
    let dense: Vec<Vec<Poly>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![Poly::zero(); ncols];
            for (&c, e) in r {
                v[c] = modulus.reduce_laurent(e);
            }
            v
        })
        .collect();

    let mut done = Vec::new();
    let mut stack = vec![(dense, modulus, 0usize)];
    'tasks: while let Some((mut mat, m, mut rank)) = stack.pop() {
        for col in 0..ncols {
            let Some(p) = mat.iter().position(|r| !r[col].is_zero()) else {
                continue;
            };
            let a = mat[p][col].clone();
            let g = a.gcd(&m);
            if !g.is_constant() {
                let cofactor = m.exact_div(&g).monic();
                for part in [g, cofactor] {
                    let reduced = mat
                        .iter()
                        .map(|r| r.iter().map(|e| e.rem(&part)).collect())
                        .collect();
                    stack.push((reduced, part, rank));
                }
                continue 'tasks;
            }
            let inv = a.inverse_mod(&m).expect("coprime to modulus");
            let pivot_row = mat.swap_remove(p);
            for row in mat.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].mul(&inv).rem(&m);
                for (j, pv) in pivot_row.iter().enumerate() {
                    if !pv.is_zero() {
                        row[j] = row[j].sub(&f.mul(pv)).rem(&m);
                    }
                }
            }
            rank += 1;
        }
        done.push((m, rank));
    }
    done
}

/// A parameter value where a cohomology dimension exceeds its background
/// value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jump {
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub exact: Option<ExactRational>,
    /// Cohomology dimension at the root.
    pub dimension: usize,
}

impl Jump {
    /// Enclosure of `t = L ln s` for exponent scale `L`, in floating point.
    /// Degenerate when the root is known exactly.
    pub fn t_interval(&self, scale: &BigInt) -> (f64, f64) {
        let l = scale.to_f64().unwrap_or(f64::NAN);
        match &self.exact {
            Some(s) => (l * ln(s), l * ln(s)),
            None => (l * ln(&self.lo), l * ln(&self.hi)),
        }
    }
}

/// Jump set of one cohomology group `H = ker(out) / im(in)` of a complex
/// over `Q(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyJumps {
    pub background: usize,
    pub jumps: Vec<Jump>,
    pub other_roots: usize,
}

impl CohomologyJumps {
    /// Combines the drop loci of the outgoing and incoming differentials of
    /// a cochain space of dimension `dim`. Roots shared by both loci are
    /// merged through gcd refinement, so each jump reports the true
    /// dimension at that point.
    pub fn from_loci(dim: usize, outgoing: Option<&DropLocus>, incoming: Option<&DropLocus>) -> Self {
        let out_generic = outgoing.map_or(0, |l| l.generic_rank);
        let in_generic = incoming.map_or(0, |l| l.generic_rank);
        // (factor, outgoing rank, incoming rank)
        let mut pieces: Vec<(Poly, usize, usize)> = outgoing
            .map(|l| {
                l.factors
                    .iter()
                    .map(|f| (f.poly.clone(), f.rank, in_generic))
                    .collect()
            })
            .unwrap_or_default();
        if let Some(incoming) = incoming {
            for f in &incoming.factors {
                let mut rest = f.poly.clone();
                let mut next = Vec::new();
                for (p, ro, ri) in pieces {
                    let g = p.gcd(&rest);
                    if g.is_constant() {
                        next.push((p, ro, ri));
                        continue;
                    }
                    rest = rest.exact_div(&g).monic();
                    let cofactor = p.exact_div(&g).monic();
                    next.push((g, ro, f.rank));
                    if !cofactor.is_constant() {
                        next.push((cofactor, ro, ri));
                    }
                }
                if !rest.is_constant() {
                    next.push((rest, out_generic, f.rank));
                }
                pieces = next;
            }
        }
        let mut jumps = Vec::new();
        let mut total_degree = 0;
        for (p, ro, ri) in &pieces {
            total_degree += p.deg();
            for r in p.isolate_positive_roots(&root_width()) {
                jumps.push(Jump {
                    lo: r.lo,
                    hi: r.hi,
                    exact: r.exact,
                    dimension: dim - ro - ri,
                });
            }
        }
        jumps.sort_by(|a, b| a.lo.cmp(&b.lo));
        CohomologyJumps {
            background: dim - out_generic - in_generic,
            other_roots: total_degree - jumps.len(),
            jumps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rank_at_parameter, rat};

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    #[test]
    fn single_linear_entry() {
        let m = RationalFunctionMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)])]]).unwrap();
        let locus = drop_locus(&m);
        assert_eq!(locus.generic_rank, 1);
        assert_eq!(locus.positive_real_roots.len(), 1);
        let root = &locus.positive_real_roots[0];
        assert!(root.contains(&rat(1)));
        assert!(frac(1, 2) < root.lo && root.hi < frac(3, 2));
        assert_eq!(root.exact, Some(rat(1)));
        assert_eq!(root.rank, 0);
    }

    #[test]
    fn identity_has_empty_locus() {
        let locus = drop_locus(&RationalFunctionMatrix::identity(4));
        assert_eq!(locus.generic_rank, 4);
        assert!(locus.positive_real_roots.is_empty());
        assert_eq!(locus.locus_polynomial, Poly::one());
    }

    #[test]
    fn diagonal_two_roots() {
        let m = RationalFunctionMatrix::diagonal(vec![lp(&[(1, 1), (0, -2)]), lp(&[(1, 1), (0, -3)])]);
        let locus = drop_locus(&m);
        assert_eq!(locus.generic_rank, 2);
        let exact: Vec<_> = locus
            .positive_real_roots
            .iter()
            .map(|r| r.exact.clone().unwrap())
            .collect();
        assert_eq!(exact, vec![rat(2), rat(3)]);
        assert!(locus.positive_real_roots.iter().all(|r| r.rank == 1));
    }

    #[test]
    fn splitting_separates_rank_levels() {
        // diag((s-2)^2 (s-3), (s-2)): rank 0 at s = 2, rank 1 at s = 3.
        let a = lp(&[(0, -12), (1, 16), (2, -7), (3, 1)]);
        let b = lp(&[(1, 1), (0, -2)]);
        let m = RationalFunctionMatrix::diagonal(vec![a, b]);
        let locus = drop_locus(&m);
        let ranks: Vec<_> = locus.positive_real_roots.iter().map(|r| r.rank).collect();
        assert_eq!(ranks, vec![0, 1]);
        for r in &locus.positive_real_roots {
            let s0 = r.exact.clone().unwrap();
            assert_eq!(rank_at_parameter(&m, &s0).unwrap(), r.rank);
        }
        assert_eq!(locus.locus_polynomial.deg(), 2);
    }

    #[test]
    fn negative_and_complex_roots_flagged() {
        let m = RationalFunctionMatrix::from_rows(vec![vec![lp(&[(3, 1), (0, -1)])]]).unwrap();
        let locus = drop_locus(&m);
        assert_eq!(locus.positive_real_roots.len(), 1);
        assert_eq!(locus.other_roots, 2);
    }

    #[test]
    fn cohomology_jump_merges_shared_roots() {
        let out = drop_locus(&RationalFunctionMatrix::from_rows(vec![vec![lp(&[(1, 1), (0, -1)])]]).unwrap());
        let inc = drop_locus(
            &RationalFunctionMatrix::from_rows(vec![vec![lp(&[(2, 1), (0, -3), (1, 2)])]]).unwrap(),
        );
        // incoming: s^2 + 2s - 3 = (s - 1)(s + 3)
        let h = CohomologyJumps::from_loci(2, Some(&out), Some(&inc));
        assert_eq!(h.background, 0);
        assert_eq!(h.jumps.len(), 1);
        assert_eq!(h.jumps[0].dimension, 2);
        assert_eq!(h.other_roots, 1);
    }
}
