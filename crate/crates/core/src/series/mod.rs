//! Exact truncated series arithmetic.
//!
//! [`QSeries`] is a sparse formal series in `q` graded in quarter-integer
//! exponents: the stored key `k` means `q^{k/4}`. A series carries the order it
//! is certified through; arithmetic computes the weakest guaranteed order
//! rather than padding with zeros. Coefficients live in any [`Coeff`] ring —
//! exact rationals or multivariate Laurent polynomials in `u_j = t_j^{1/2}`.

pub mod json;
pub mod laurent;
pub mod xseries;

pub use laurent::{substitute_monomial, LaurentPoly};
pub use xseries::{expand_u_in_x, sinh_half_reciprocal_head, XSeries};

use std::collections::BTreeMap;
use std::fmt;

use crate::rat::Rat;
use num_traits::{One, Zero};

/// Coefficient ring for [`QSeries`]. Identities come from `num_traits`.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Multiply by a rational scalar.
    fn scale(&self, s: &Rat) -> Self;
    /// Multiplicative inverse, when one exists in the ring.
    fn invert(&self) -> Option<Self>;
}

impl Coeff for Rat {
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, s: &Rat) -> Self {
        self * s
    }
    fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Errors from series operations that have preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion requires the lowest term at exponent 0 with an invertible coefficient.
    NotInvertible,
    /// Exponents were required to be integer-graded (multiples of 4 quarter units).
    NotIntegerGraded,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NotInvertible => write!(
                f,
                "series inversion requires a unit constant term at exponent 0"
            ),
            SeriesError::NotIntegerGraded => {
                write!(f, "series has support outside integer q-exponents")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// Sparse truncated series in `q^{1/4}` over a coefficient ring `C`.
///
/// Invariants: every stored key is ≤ `order`, no stored coefficient is zero.
/// Negative exponents are allowed (theta shifts produce them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries<C: Coeff> {
    order: i64,
    terms: BTreeMap<i64, C>,
}

impl<C: Coeff> QSeries<C> {
    pub fn zero(order: i64) -> Self {
        QSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(0, C::one(), order)
    }

    /// `c · q^{k/4}`, dropped if beyond the order.
    pub fn monomial(k: i64, c: C, order: i64) -> Self {
        let mut s = Self::zero(order);
        s.add_term(k, c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>, order: i64) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    /// Certified order: coefficients are exact for all quarter-exponents ≤ this.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest stored exponent, or `None` for the (truncated) zero series.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Where unknown territory starts: first stored exponent if present,
    /// otherwise just past the certified order.
    fn known_min(&self) -> i64 {
        self.min_exp().unwrap_or(self.order + 1)
    }

    /// Adds `c` into the coefficient of `q^{k/4}`, respecting the order cut.
    pub fn add_term(&mut self, k: i64, c: C) {
        if k > self.order || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add_ref(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    /// Restricts to a (weaker or equal) certified order.
    pub fn truncate(&self, order: i64) -> Self {
        let terms = self
            .terms
            .range(..=order)
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        QSeries { order, terms }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = self.truncate(order);
        for (k, c) in rhs.terms.range(..=order) {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QSeries {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.neg_ref()))
                .collect(),
        }
    }

    /// Truncated Cauchy product. The result order accounts for the lowest
    /// exponents of both operands, so no unspecified coefficient is claimed.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = ((self.order + 1) + rhs.known_min())
            .min((rhs.order + 1) + self.known_min())
            - 1;
        let mut out = Self::zero(order);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let k = ka + kb;
                if k <= order {
                    out.add_term(k, ca.mul_ref(cb));
                }
            }
        }
        out
    }

    /// Multiplies every coefficient by `c`.
    pub fn mul_coeff(&self, c: &C) -> Self {
        let mut out = Self::zero(self.order);
        for (k, v) in &self.terms {
            out.add_term(*k, v.mul_ref(c));
        }
        out
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, s: &Rat) -> Self {
        let mut out = Self::zero(self.order);
        for (k, v) in &self.terms {
            out.add_term(*k, v.scale(s));
        }
        out
    }

    /// Multiplies by `q^{k/4}` (shifts every exponent and the order by `k`).
    pub fn shift_q(&self, k: i64) -> Self {
        QSeries {
            order: self.order + k,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Convolution with a scalar (rational-coefficient) series.
    pub fn mul_scalar_series(&self, rhs: &QSeries<Rat>) -> Self {
        let order = ((self.order + 1) + rhs.known_min())
            .min((rhs.order + 1) + self.known_min())
            - 1;
        let mut out = Self::zero(order);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let k = ka + kb;
                if k <= order {
                    out.add_term(k, ca.scale(cb));
                }
            }
        }
        out
    }

    /// Multiplicative inverse through the order. Requires the lowest term at
    /// exponent exactly 0 with an invertible coefficient.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        if self.min_exp() != Some(0) {
            return Err(SeriesError::NotInvertible);
        }
        let inv0 = self.terms[&0].invert().ok_or(SeriesError::NotInvertible)?;
        let mut inv = Self::zero(self.order);
        inv.add_term(0, inv0.clone());
        for k in 1..=self.order {
            let mut acc = C::zero();
            for (j, aj) in self.terms.range(1..=k) {
                let b = inv.terms.get(&(k - j));
                if let Some(b) = b {
                    acc = acc.add_ref(&aj.mul_ref(b));
                }
            }
            if !acc.is_zero() {
                inv.add_term(k, inv0.mul_ref(&acc).neg_ref());
            }
        }
        Ok(inv)
    }

    /// Reinterprets quarter-graded support as integer-graded (divides exponents
    /// by 4). Errors loudly if any exponent is not a multiple of 4.
    pub fn to_integer_grading(&self) -> Result<Self, SeriesError> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if k.rem_euclid(4) != 0 {
                return Err(SeriesError::NotIntegerGraded);
            }
            terms.insert(k / 4, c.clone());
        }
        Ok(QSeries {
            order: self.order.div_euclid(4),
            terms,
        })
    }

    /// Integer-graded series viewed in quarter units (multiplies exponents by 4).
    pub fn to_quarter_grading(&self) -> Self {
        QSeries {
            order: self.order * 4 + 3,
            terms: self.terms.iter().map(|(k, c)| (k * 4, c.clone())).collect(),
        }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        let mut out = QSeries::zero(self.order);
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }
}

/// One factor family `(1 + sign·q^{stride·m + offset})^exponent`, `m = 1,2,…`,
/// with `stride`/`offset` in integer q-units.
#[derive(Debug, Clone, Copy)]
pub struct ProductFactor {
    pub stride: i64,
    pub offset: i64,
    pub sign: i64,
    pub exponent: u32,
}

impl ProductFactor {
    pub fn new(stride: i64, offset: i64, sign: i64, exponent: u32) -> Self {
        assert!(stride >= 1, "stride must be positive for a finite truncation");
        ProductFactor {
            stride,
            offset,
            sign,
            exponent,
        }
    }
}

/// Exact truncation of `Π_families Π_m (1 + sign·q^{stride·m+offset})^e` to the
/// given quarter order. Only finitely many factors reach below the order.
pub fn product_expand(factors: &[ProductFactor], order_quarter: i64) -> QSeries<Rat> {
    let mut acc: QSeries<Rat> = QSeries::one(order_quarter);
    for fam in factors {
        let mut m = 1i64;
        loop {
            let e_int = fam.stride * m + fam.offset;
            let e_quarter = 4 * e_int;
            if e_quarter > order_quarter {
                break;
            }
            assert!(e_int >= 1, "factor exponents must be positive");
            let factor = QSeries::from_terms(
                [
                    (0, Rat::one()),
                    (e_quarter, crate::rat::rat_int(fam.sign)),
                ],
                order_quarter,
            );
            for _ in 0..fam.exponent {
                acc = acc.mul(&factor);
            }
            m += 1;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn qs(terms: &[(i64, i64)], order: i64) -> QSeries<Rat> {
        QSeries::from_terms(terms.iter().map(|&(k, c)| (k, rat_int(c))), order)
    }

    #[test]
    fn mul_truncates_and_cancels() {
        // (1 + q)(1 − q) = 1 − q², quarter grading.
        let a = qs(&[(0, 1), (4, 1)], 40);
        let b = qs(&[(0, 1), (4, -1)], 40);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), rat_int(1));
        assert_eq!(p.coeff(4), rat_int(0));
        assert_eq!(p.coeff(8), rat_int(-1));
        assert_eq!(p.order(), 40);
    }

    #[test]
    fn mul_order_respects_min_exponents() {
        // a known through 8 starting at 4; b known through 8 starting at 0:
        // unknown a·known b reaches exponent (8+1)+0 = 9, so order 8.
        // known a·unknown b reaches 4+(8+1) = 13.
        let a = qs(&[(4, 1)], 8);
        let b = qs(&[(0, 1)], 8);
        assert_eq!(a.mul(&b).order(), 8);
        // Shifting both up certifies further.
        let a = qs(&[(4, 1)], 8);
        let b = qs(&[(4, 1)], 8);
        assert_eq!(a.mul(&b).order(), 12);
    }

    #[test]
    fn geometric_inverse() {
        // (1 − q)^{-1} = 1 + q + q² + …
        let a = qs(&[(0, 1), (4, -1)], 20);
        let inv = a.inverse().unwrap();
        for k in 0..=5 {
            assert_eq!(inv.coeff(4 * k), rat_int(1));
        }
        assert!(a.mul(&inv).sub(&QSeries::one(20)).is_zero());
    }

    #[test]
    fn inverse_requires_unit_constant() {
        let a = qs(&[(4, 1)], 20);
        assert_eq!(a.inverse(), Err(SeriesError::NotInvertible));
        let zero: QSeries<Rat> = QSeries::zero(20);
        assert!(zero.inverse().is_err());
    }

    #[test]
    fn product_expand_distinct_odd_parts() {
        // Π(1+q^{2i−1}) counts partitions into distinct odd parts ⇔
        // self-conjugate partitions. Coefficients through q⁹: 1,1,0,1,1,1,1,1,2,2.
        let zs = product_expand(&[ProductFactor::new(2, -1, 1, 1)], 36);
        let expected = [1, 1, 0, 1, 1, 1, 1, 1, 2, 2];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(zs.coeff(4 * n as i64), rat_int(e), "at q^{n}");
        }
    }

    #[test]
    fn product_expand_cube_consistency() {
        // Π(1−q^{2m})³ equals the cube of Π(1−q^{2m}) under qs_mul.
        let single = product_expand(&[ProductFactor::new(2, 0, -1, 1)], 48);
        let cubed = product_expand(&[ProductFactor::new(2, 0, -1, 3)], 48);
        assert_eq!(single.mul(&single).mul(&single), cubed);
        // Π(1−q^{2m}) to order 2 is 1 − q².
        let small = product_expand(&[ProductFactor::new(2, 0, -1, 1)], 8);
        assert_eq!(small.coeff(8), rat_int(-1));
        assert_eq!(small.terms().len(), 2);
    }

    #[test]
    fn zs_inverse_is_inverse_through_order() {
        let order = 48; // q^12
        let zs = product_expand(&[ProductFactor::new(2, -1, 1, 1)], order);
        let inv = zs.inverse().unwrap();
        assert!(zs.mul(&inv).sub(&QSeries::one(order)).is_zero());
    }

    #[test]
    fn grading_conversions() {
        let s = qs(&[(0, 1), (8, 3)], 40);
        let int = s.to_integer_grading().unwrap();
        assert_eq!(int.coeff(2), rat_int(3));
        let bad = qs(&[(1, 1)], 40);
        assert_eq!(bad.to_integer_grading(), Err(SeriesError::NotIntegerGraded));
        let back = int.to_quarter_grading();
        assert_eq!(back.coeff(8), rat_int(3));
    }

    #[test]
    fn scale_and_shift() {
        let s = qs(&[(0, 2), (4, 4)], 12);
        let t = s.scale(&rat(1, 2)).shift_q(4);
        assert_eq!(t.coeff(4), rat_int(1));
        assert_eq!(t.coeff(8), rat_int(2));
        assert_eq!(t.order(), 16);
    }
}
