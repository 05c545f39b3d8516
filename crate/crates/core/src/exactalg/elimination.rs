//! Elimination kernels shared by the rank engines and the drop-locus code.
//!
//! Two phases. First, sparse elimination on unit pivots: over `Q[s, 1/s]`
//! the units are the monomials `c s^k`, and a unit pivot stays nonzero at
//! every `s0 > 0`, so this phase preserves the rank both generically and
//! at every positive specialization. Second, Bareiss elimination on the
//! (usually tiny) residual matrix, carried out over `Z[s, 1/s]` so every
//! entry is a minor and every division is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::denominator_lcm;
use super::{ExactRational, LaurentPolynomial};

pub(crate) type SparseRow<T> = BTreeMap<usize, T>;

/// Ring elements that the sparse phase can pivot on.
pub(crate) trait PivotEntry: Clone {
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn unit_inverse(&self) -> Option<Self>;
    /// Rough fill cost, used to break Markowitz ties.
    fn weight(&self) -> usize;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
}

impl PivotEntry for LaurentPolynomial {
    fn is_zero(&self) -> bool {
        LaurentPolynomial::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        LaurentPolynomial::is_unit(self)
    }
    fn unit_inverse(&self) -> Option<Self> {
        LaurentPolynomial::unit_inverse(self)
    }
    fn weight(&self) -> usize {
        self.terms()
            .map(|(_, c)| (c.numer().bits() + c.denom().bits()) as usize)
            .sum()
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl PivotEntry for ExactRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn weight(&self) -> usize {
        (self.numer().bits() + self.denom().bits()) as usize
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

/// Result of the unit-pivot phase.
pub(crate) struct UnitReduction<T> {
    pub rank: usize,
    /// Remaining rows; none of their entries is a unit.
    pub residual: Vec<SparseRow<T>>,
}

/// Eliminates on unit pivots until none remain, choosing pivots by
/// Markowitz cost with deterministic tie-breaking.
pub(crate) fn unit_reduce<T: PivotEntry>(rows: Vec<SparseRow<T>>) -> UnitReduction<T> {
    let mut rows: Vec<Option<SparseRow<T>>> = rows
        .into_iter()
        .map(|r| (!r.is_empty()).then_some(r))
        .collect();
    let mut col_rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for &c in row.keys() {
                col_rows.entry(c).or_default().push(i);
            }
        }
    }
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize, usize, usize)> = None; // cost, weight, row, col
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            for (&c, e) in row {
                if !e.is_unit() {
                    continue;
                }
                let col_count = col_rows.get(&c).map_or(0, |v| v.len());
                let cost = (row.len() - 1) * (col_count.saturating_sub(1));
                let key = (cost, e.weight(), i, c);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        let Some((_, _, p, c)) = best else { break };
        let pivot_row = rows[p].take().unwrap();
        let inv = pivot_row[&c].unit_inverse().unwrap();
        for &cc in pivot_row.keys() {
            if let Some(list) = col_rows.get_mut(&cc) {
                list.retain(|&r| r != p);
            }
        }
        let targets: Vec<usize> = col_rows.remove(&c).unwrap_or_default();
        for i in targets {
            let row = rows[i].as_mut().unwrap();
            let factor = row[&c].mul(&inv);
            for (&cc, pv) in &pivot_row {
                let delta = factor.mul(pv);
                let updated = match row.get(&cc) {
                    Some(old) => old.sub(&delta),
                    None => T::sub(&zero_like(&delta), &delta),
                };
                let was_present = row.contains_key(&cc);
                if updated.is_zero() {
                    row.remove(&cc);
                    if was_present && cc != c {
                        if let Some(list) = col_rows.get_mut(&cc) {
                            list.retain(|&r| r != i);
                        }
                    }
                } else {
                    row.insert(cc, updated);
                    if !was_present {
                        col_rows.entry(cc).or_default().push(i);
                    }
                }
            }
            debug_assert!(!row.contains_key(&c));
            if row.is_empty() {
                rows[i] = None;
            }
        }
        rank += 1;
    }
    UnitReduction {
        rank,
        residual: rows.into_iter().flatten().collect(),
    }
}

fn zero_like<T: PivotEntry>(x: &T) -> T {
    x.sub(x)
}

/// Laurent polynomial with integer coefficients, normalized so that the
/// lowest stored coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntLaurent {
    shift: i64,
    coeffs: Vec<BigInt>,
}

impl IntLaurent {
    fn zero() -> Self {
        Self {
            shift: 0,
            coeffs: Vec::new(),
        }
    }

    fn one() -> Self {
        Self {
            shift: 0,
            coeffs: vec![BigInt::one()],
        }
    }

    fn normalized(mut shift: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        shift += lead_zeros as i64;
        Self { shift, coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits() + 1).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::normalized(self.shift + other.shift, out)
    }

    fn sub(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Self::normalized(other.shift, other.coeffs.iter().map(|c| -c).collect());
        }
        let lo = self.shift.min(other.shift);
        let hi = (self.shift + self.coeffs.len() as i64).max(other.shift + other.coeffs.len() as i64);
        let mut out = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[(self.shift - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[(other.shift - lo) as usize + i] -= c;
        }
        Self::normalized(lo, out)
    }

    /// Exact quotient in `Z[s, 1/s]`; `None` if the division is not exact.
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Both bodies have nonzero constant terms, so the quotient body is
        // a polynomial with nonzero constant term.
        let d = &divisor.coeffs;
        let dd = d.len() - 1;
        if self.coeffs.len() < d.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        let lc = &d[dd];
        for k in (0..quot.len()).rev() {
            let (q, r) = rem[k + dd].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, dj) in d.iter().enumerate() {
                    rem[k + j] -= &q * dj;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::normalized(self.shift - divisor.shift, quot))
    }

    fn to_laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (self.shift + i as i64, ExactRational::from_integer(c.clone()))),
        )
    }
}

/// Scales a row of Laurent polynomials by a nonzero rational so that all
/// coefficients are coprime integers, and converts it.
fn primitive_integer_row(row: &SparseRow<LaurentPolynomial>) -> BTreeMap<usize, IntLaurent> {
    let lcm = denominator_lcm(row.values().flat_map(|e| e.terms().map(|(_, c)| c)));
    let mut out = BTreeMap::new();
    let mut content = BigInt::zero();
    for (&col, e) in row {
        let (shift, body) = e.to_shifted_poly();
        let ints: Vec<BigInt> = body
            .coeffs()
            .iter()
            .map(|c| (c * ExactRational::from_integer(lcm.clone())).to_integer())
            .collect();
        for c in &ints {
            content = content.gcd(c);
        }
        out.insert(col, IntLaurent::normalized(shift, ints));
    }
    if !content.is_zero() && !content.is_one() {
        for v in out.values_mut() {
            for c in &mut v.coeffs {
                *c = &*c / &content;
            }
        }
    }
    out
}

/// Fraction-free (Bareiss) rank of the residual matrix. Returns the rank
/// and, when the rank is positive, the final pivot: a maximal nonvanishing
/// minor of the row-rescaled residual.
pub(crate) fn bareiss(residual: &[SparseRow<LaurentPolynomial>]) -> (usize, Option<LaurentPolynomial>) {
    let cols: Vec<usize> = {
        let mut set: Vec<usize> = residual.iter().flat_map(|r| r.keys().copied()).collect();
        set.sort_unstable();
        set.dedup();
        set
    };
    if cols.is_empty() {
        return (0, None);
    }
    let col_index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let ncols = cols.len();
    let mut a: Vec<Vec<IntLaurent>> = residual
        .iter()
        .map(|row| {
            let mut dense = vec![IntLaurent::zero(); ncols];
            for (col, e) in primitive_integer_row(row) {
                dense[col_index[&col]] = e;
            }
            dense
        })
        .collect();
    let nrows = a.len();
    let mut prev = IntLaurent::one();
    let mut k = 0;
    for col in 0..ncols {
        if k == nrows {
            break;
        }
        let Some(p) = (k..nrows)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| (a[r][col].size(), r))
        else {
            continue;
        };
        a.swap(k, p);
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[col];
        for row in tail.iter_mut() {
            let factor = std::mem::replace(&mut row[col], IntLaurent::zero());
            for j in col + 1..ncols {
                let lhs = pivot.mul(&row[j]);
                let rhs = if factor.is_zero() {
                    IntLaurent::zero()
                } else {
                    factor.mul(&pivot_row[j])
                };
                let num = lhs.sub(&rhs);
                row[j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division must be exact");
            }
        }
        prev = a[k][col].clone();
        k += 1;
    }
    if k == 0 {
        (0, None)
    } else {
        (k, Some(prev.to_laurent()))
    }
}

/// Rank of a sparse matrix over `Q`.
pub(crate) fn rational_rank(rows: Vec<SparseRow<ExactRational>>) -> usize {
    let reduced = unit_reduce(rows);
    debug_assert!(reduced.residual.is_empty());
    reduced.rank
}
