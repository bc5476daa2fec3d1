//! Coefficient traits.
//!
//! [`Scalar`] is what a [`Series`](crate::Series) or [`Poly`](crate::Poly)
//! needs from its coefficients: a commutative ring with identity in which
//! units can be recognized and inverted. [`Ring`] is the smaller interface
//! the determinant kernel needs; it also covers types such as truncated
//! series whose zero and one depend on a runtime truncation order.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// Commutative ring with identity usable as a series coefficient.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse, when `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let acc = std::mem::replace(self, Self::zero());
        *self = acc + a.clone() * b.clone();
    }

    /// Truncated Cauchy product: the first `len` coefficients of `a * b`.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    out[i + j].add_mul(x, y);
                }
            }
        }
        out
    }
}

impl Scalar for Rational {
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    /// Clears denominators and convolves over the integers, so only one
    /// normalization per output coefficient is paid.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let (na, da) = to_common_denominator(&a[..a.len().min(len)]);
        let (nb, db) = to_common_denominator(&b[..b.len().min(len)]);
        let mut acc = vec![BigInt::zero(); len];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate().take(len - i) {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        acc.into_iter()
            .map(|n| Rational::new(n, den.clone()))
            .collect()
    }
}

/// Integer numerators over a shared denominator (the lcm of all denominators).
pub(crate) fn to_common_denominator(xs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = xs
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = xs
        .iter()
        .map(|x| x.numer() * (&den / x.denom()))
        .collect();
    (nums, den)
}

/// Ring operations needed by the division-free determinant.
///
/// Zero and one are produced "like" an existing element so that truncated
/// series can carry their order and variable through.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_convolve_matches_schoolbook() {
        let a = vec![r(1, 2), r(-3, 7), r(0, 1), r(5, 3)];
        let b = vec![r(2, 5), r(1, 1), r(-1, 6)];
        let fast = Rational::convolve(&a, &b, 4);
        let mut slow = vec![Rational::zero(); 4];
        for i in 0..a.len() {
            for j in 0..b.len() {
                if i + j < 4 {
                    slow[i + j] += &a[i] * &b[j];
                }
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Rational::zero().try_inverse().is_none());
        assert_eq!(r(-2, 3).try_inverse(), Some(r(-3, 2)));
    }
}
