use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactRational, LaurentPolynomial};

/// Dense univariate polynomial over `Q` in ascending coefficient order.
/// Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<ExactRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(ExactRational::one())
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(vec![c])
    }

    /// `s - root`.
    pub fn linear(root: ExactRational) -> Self {
        Self::new(vec![-root, ExactRational::one()])
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating zero as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&ExactRational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![ExactRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-ExactRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![ExactRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics in debug builds if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * ExactRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return if self.is_zero() { Self::zero() } else { Self::one() };
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Removes every factor `s`.
    pub fn strip_s_factor(&self) -> Self {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.coeffs[k..].to_vec())
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        let mut acc = ExactRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn sign_at(&self, x: &ExactRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Inverse modulo `modulus`, if `self` and `modulus` are coprime.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        // Extended Euclid tracking only the coefficient of `self`.
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.coeffs[0].recip();
        Some(t0.scale(&inv).rem(modulus))
    }

    /// Reduces a Laurent polynomial modulo `self`, which must not vanish at 0.
    pub fn reduce_laurent(&self, p: &LaurentPolynomial) -> Self {
        let (shift, body) = p.to_shifted_poly();
        let body = body.rem(self);
        if shift >= 0 {
            let pow = Self::monomial_power(shift as usize, self);
            body.mul(&pow).rem(self)
        } else {
            let s = Self::new(vec![ExactRational::zero(), ExactRational::one()]);
            let s_inv = s.inverse_mod(self).expect("modulus vanishes at s = 0");
            let mut out = body;
            for _ in 0..(-shift) {
                out = out.mul(&s_inv).rem(self);
            }
            out
        }
    }

    fn monomial_power(k: usize, modulus: &Self) -> Self {
        let mut coeffs = vec![ExactRational::zero(); k + 1];
        coeffs[k] = ExactRational::one();
        Self::new(coeffs).rem(modulus)
    }

    fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps the signs and the numbers small.
            let lc = r.leading().unwrap().abs();
            seq.push(r.scale(&-lc.recip()));
        }
        seq
    }

    fn sign_changes(seq: &[Self], x: &ExactRational) -> usize {
        let signs: Vec<i32> = seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Bound `B` with every real root in `(-B, B)`.
    fn root_bound(&self) -> ExactRational {
        let lc = self.leading().expect("root bound of zero polynomial").abs();
        let mut max = ExactRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs() / &lc;
            if r > max {
                max = r;
            }
        }
        ExactRational::from_integer((max + ExactRational::one()).ceil().to_integer() + BigInt::one())
    }

    /// Number of distinct real roots in `(lo, hi]`, for `self` square-free.
    fn count_roots(seq: &[Self], lo: &ExactRational, hi: &ExactRational) -> usize {
        Self::sign_changes(seq, lo).saturating_sub(Self::sign_changes(seq, hi))
    }

    /// Counts distinct real roots: `(negative, positive)`. Requires `p(0) != 0`.
    pub fn real_root_counts(&self) -> (usize, usize) {
        let sf = self.squarefree_part();
        if sf.is_constant() {
            return (0, 0);
        }
        let seq = sf.sturm_sequence();
        let b = sf.root_bound();
        let zero = ExactRational::zero();
        (Self::count_roots(&seq, &-b.clone(), &zero), Self::count_roots(&seq, &zero, &b))
    }

    /// Isolates the distinct positive real roots by Sturm counting and
    /// rational bisection. Every interval `(lo, hi)` contains exactly one
    /// root, has non-root endpoints and width at most `max_width`.
    /// Intervals are sorted and pairwise disjoint.
    pub fn isolate_positive_roots(&self, max_width: &ExactRational) -> Vec<IsolatedRoot> {
        let sf = self.squarefree_part().strip_s_factor();
        if sf.is_constant() {
            return Vec::new();
        }
        let seq = sf.sturm_sequence();
        let mut pending = vec![(ExactRational::zero(), sf.root_bound())];
        let mut isolated = Vec::new();
        while let Some((lo, hi)) = pending.pop() {
            match Self::count_roots(&seq, &lo, &hi) {
                0 => {}
                1 => isolated.push((lo, hi)),
                _ => {
                    let mid = sf.split_point(&lo, &hi);
                    pending.push((mid.clone(), hi));
                    pending.push((lo, mid));
                }
            }
        }
        isolated.sort();
        isolated
            .into_iter()
            .map(|(mut lo, mut hi)| {
                while &hi - &lo > *max_width {
                    let mid = sf.split_point(&lo, &hi);
                    if Self::count_roots(&seq, &lo, &mid) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                let exact = sf.exact_root_in(&lo, &hi);
                IsolatedRoot { lo, hi, exact }
            })
            .collect()
    }

    /// A point strictly inside `(lo, hi)` that is not a root.
    fn split_point(&self, lo: &ExactRational, hi: &ExactRational) -> ExactRational {
        let two = ExactRational::from_integer(BigInt::from(2));
        let mut k = 2i64;
        loop {
            // mid, then points skewed towards lo: lo + (hi - lo) / k.
            let mid = if k == 2 {
                (lo + hi) / &two
            } else {
                lo + (hi - lo) / ExactRational::from_integer(BigInt::from(k))
            };
            if !self.eval(&mid).is_zero() {
                return mid;
            }
            k += 1;
        }
    }

    fn exact_root_in(&self, lo: &ExactRational, hi: &ExactRational) -> Option<ExactRational> {
        if self.degree() == Some(1) {
            return Some(-&self.coeffs[0] / &self.coeffs[1]);
        }
        let candidate = simplest_between(lo, hi);
        self.eval(&candidate).is_zero().then_some(candidate)
    }
}

/// A positive real root isolated in `(lo, hi)`; `exact` is set when the
/// root is rational and was identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub exact: Option<ExactRational>,
}

/// The rational with smallest denominator strictly inside `(lo, hi)`,
/// for `0 <= lo < hi`.
pub(crate) fn simplest_between(lo: &ExactRational, hi: &ExactRational) -> ExactRational {
    simplest_in(lo, Some(hi))
}

fn simplest_in(lo: &ExactRational, hi: Option<&ExactRational>) -> ExactRational {
    let fl = lo.floor();
    let next = &fl + ExactRational::one();
    match hi {
        None => next,
        Some(hi) if &next < hi => next,
        Some(hi) => {
            // (lo, hi) lies inside [fl, fl + 1]; recurse on reciprocals of
            // the fractional parts.
            let frac_lo = lo - &fl;
            let frac_hi = hi - &fl;
            let inner_lo = frac_hi.recip();
            let inner = if frac_lo.is_zero() {
                simplest_in(&inner_lo, None)
            } else {
                simplest_in(&inner_lo, Some(&frac_lo.recip()))
            };
            fl + inner.recip()
        }
    }
}

/// Least common multiple of the denominators of a list of rationals.
pub(crate) fn denominator_lcm<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a ExactRational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", LaurentPolynomial::from_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // s^2 - 1
        let b = p(&[-1, 1]); // s - 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        // (s - 1)^2 (s + 2) = s^3 - 3s + 2
        let f = p(&[2, -3, 0, 1]);
        assert_eq!(f.squarefree_part(), p(&[-1, 1]).mul(&p(&[2, 1])));
    }

    #[test]
    fn inverse_mod_roundtrip() {
        let m = p(&[1, 1, 1]); // s^2 + s + 1
        let a = p(&[3, 2]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul(&inv).rem(&m), Poly::one());
        assert!(p(&[-1, 1]).mul(&p(&[1, 1])).inverse_mod(&p(&[-1, 1])).is_none());
    }

    #[test]
    fn isolates_positive_roots_only() {
        // (s - 2)(s - 3)(s + 1)(s^2 + 1)
        let f = p(&[-2, 1]).mul(&p(&[-3, 1])).mul(&p(&[1, 1])).mul(&p(&[1, 0, 1]));
        let width = frac(1, 1 << 20);
        let roots = f.isolate_positive_roots(&width);
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact, Some(rat(2)));
        assert_eq!(roots[1].exact, Some(rat(3)));
        for r in &roots {
            assert!(&r.hi - &r.lo <= width);
            assert!(r.lo < *r.exact.as_ref().unwrap() && *r.exact.as_ref().unwrap() < r.hi);
        }
        assert_eq!(f.real_root_counts(), (1, 2));
    }

    #[test]
    fn irrational_roots_are_bracketed() {
        // s^2 - 2
        let f = p(&[-2, 0, 1]);
        let roots = f.isolate_positive_roots(&frac(1, 1 << 20));
        assert_eq!(roots.len(), 1);
        assert!(roots[0].exact.is_none());
        let lo2 = &roots[0].lo * &roots[0].lo;
        let hi2 = &roots[0].hi * &roots[0].hi;
        assert!(lo2 < rat(2) && rat(2) < hi2);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&frac(1, 3), &frac(1, 2)), frac(2, 5));
        assert_eq!(simplest_between(&frac(9, 10), &frac(11, 10)), rat(1));
        assert_eq!(simplest_between(&rat(0), &frac(1, 3)), frac(1, 4));
        assert_eq!(simplest_between(&frac(5, 2), &rat(7)), rat(3));
    }

    #[test]
    fn reduce_laurent_handles_inverse_powers() {
        let m = p(&[-2, 1]); // s = 2
        let x = LaurentPolynomial::from_terms([(-1, rat(1)), (2, rat(1))]);
        let r = m.reduce_laurent(&x);
        assert_eq!(r, Poly::constant(frac(9, 2)));
    }
}
