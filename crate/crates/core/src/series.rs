//! Truncated formal power series with a dense coefficient vector.
//!
//! A series of order `N` knows its coefficients at exponents `0..N`; every
//! operation returns the largest order that is certain from its inputs.
//! Binary operations require matching variable tags and truncate to the
//! smaller order.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{rat, rational_sqrt, serde_rational_vec};
use crate::scalar::{Ring, Scalar};
use crate::{Error, Rational, Result};

/// The formal variable of a series. `W` is the square root of `Q`
/// (`q = w²`); `T` is a free auxiliary variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Q,
    W,
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Q => "q",
            Var::W => "w",
            Var::T => "t",
        })
    }
}

/// Truncated power series `Σ_{i<order} c_i x^i`.
///
/// Equality (`==`) is strict and includes the order; use
/// [`Series::first_difference`] to compare up to the smaller order.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    var: Var,
    coeffs: Vec<C>,
}

impl<C: Scalar> Series<C> {
    pub fn new(var: Var, coeffs: Vec<C>) -> Self {
        Series { var, coeffs }
    }

    pub fn from_fn(var: Var, order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series::new(var, (0..order).map(f).collect())
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Series::new(var, vec![C::zero(); order])
    }

    pub fn one(var: Var, order: usize) -> Self {
        Series::constant(var, C::one(), order)
    }

    pub fn constant(var: Var, c: C, order: usize) -> Self {
        Series::monomial(var, c, 0, order)
    }

    /// `c·x^e`, truncated at `order`.
    pub fn monomial(var: Var, c: C, e: usize, order: usize) -> Self {
        let mut s = Series::zero(var, order);
        if e < order {
            s.coeffs[e] = c;
        }
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `x^i`; panics if `i` is beyond the order.
    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, `None` if zero to full order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series::new(self.var, self.coeffs[..n].to_vec())
    }

    /// The same coefficients under another variable tag.
    pub fn retag(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.var, other.var))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| f(a, b))
            .collect();
        Series::new(self.var, coeffs)
    }

    pub fn neg(&self) -> Self {
        Series::new(self.var, self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        Series::new(
            self.var,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let len = self.order().min(other.order());
        Series::new(self.var, C::convolve(&self.coeffs, &other.coeffs, len))
    }

    pub fn square(&self) -> Self {
        self.mul_unchecked(self)
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Series::one(self.var, self.order());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        result
    }

    /// Multiplicative inverse of a series with unit constant term.
    pub fn invert(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or(Error::ZeroConstantTerm)?;
        let mut out: Vec<C> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc.add_mul(a, &out[k - j]);
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Series::new(self.var, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.invert()?)
    }

    /// Division by `x^v`; all coefficients below `v` must vanish.
    pub fn shift_down(&self, v: usize) -> Result<Self> {
        if let Some(index) = self.coeffs.iter().take(v).position(|c| !c.is_zero()) {
            return Err(Error::NonzeroBelowShift {
                var: self.var,
                shift: v,
                index,
            });
        }
        let coeffs = self.coeffs.iter().skip(v).cloned().collect();
        Ok(Series::new(self.var, coeffs))
    }

    /// Multiplication by `x^v`; the order is kept, top coefficients drop off.
    pub fn shift_up(&self, v: usize) -> Self {
        let n = self.order();
        Series::from_fn(self.var, n, |i| {
            if i >= v {
                self.coeffs[i - v].clone()
            } else {
                C::zero()
            }
        })
    }

    /// Substitution `x ↦ x^d` in the same variable; the order multiplies by `d`.
    pub fn dilate(&self, d: usize) -> Self {
        assert!(d > 0, "dilation factor must be positive");
        let n = self.order() * d;
        Series::from_fn(self.var, n, |i| {
            if i % d == 0 {
                self.coeffs[i / d].clone()
            } else {
                C::zero()
            }
        })
    }

    /// `q ↦ w²`: a `Q`-series as a `W`-series of twice the order.
    pub fn inflate(&self) -> Result<Self> {
        self.expect_var(Var::Q)?;
        Ok(self.dilate(2).retag(Var::W))
    }

    /// Inverse of [`Series::inflate`]; fails on a nonzero odd coefficient.
    pub fn deflate(&self) -> Result<Self> {
        self.expect_var(Var::W)?;
        if let Some(index) = self
            .coeffs
            .iter()
            .enumerate()
            .find(|(i, c)| i % 2 == 1 && !c.is_zero())
            .map(|(i, _)| i)
        {
            return Err(Error::NonzeroOddCoefficient { index });
        }
        let coeffs = self.coeffs.iter().step_by(2).cloned().collect();
        Ok(Series::new(Var::Q, coeffs))
    }

    fn expect_var(&self, expected: Var) -> Result<()> {
        if self.var == expected {
            Ok(())
        } else {
            Err(Error::WrongVar {
                expected,
                found: self.var,
            })
        }
    }

    /// First exponent where `self` and `other` differ, comparing up to the
    /// smaller of the two orders.
    pub fn first_difference(&self, other: &Self) -> Result<Option<usize>> {
        self.check_var(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b))
    }

    /// Equality up to the smaller order (variables must match).
    pub fn agrees_with(&self, other: &Self) -> bool {
        matches!(self.first_difference(other), Ok(None))
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(self.var, self.coeffs.iter().map(f).collect())
    }
}

impl Series<Rational> {
    /// Square root of `c·x^{2v}·u` with `u` a unit series normalized to
    /// constant term 1, on the branch `√c·x^v·u^{1/2}` with `√c > 0`.
    ///
    /// The result has order `N - v` for an input of order `N`.
    pub fn sqrt_unit_times_monomial(&self) -> Result<Self> {
        let v2 = self
            .valuation()
            .ok_or(Error::ZeroSeries(self.order()))?;
        if v2 % 2 == 1 {
            return Err(Error::OddValuation(v2));
        }
        let lead = self.coeffs[v2].clone();
        let root_lead = rational_sqrt(&lead)
            .ok_or_else(|| Error::NonSquareLeading(lead.to_string()))?;
        let unit = self.shift_down(v2)?.scale(&lead.recip());
        let root = unit_sqrt(&unit);
        let v = v2 / 2;
        let n = self.order() - v;
        let scaled = root.scale(&root_lead);
        Ok(Series::from_fn(self.var, n, |i| {
            if i >= v {
                scaled.coeffs[i - v].clone()
            } else {
                Rational::zero()
            }
        }))
    }
}

/// Newton iteration `s ← (s + u/s)/2` for a series with constant term 1.
fn unit_sqrt(u: &Series<Rational>) -> Series<Rational> {
    let n = u.order();
    let half = rat(1, 2);
    let mut s = Series::one(u.var, n.min(1));
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let s_ext = Series::from_fn(u.var, prec, |i| {
            s.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
        });
        let quotient = u
            .truncate(prec)
            .mul_unchecked(&s_ext.invert().expect("unit by construction"));
        s = s_ext.zip_with(&quotient, |a, b| (a + b) * &half);
    }
    s
}

impl<C: Scalar> Ring for Series<C> {
    fn zero_like(&self) -> Self {
        Series::zero(self.var, self.order())
    }
    fn one_like(&self) -> Self {
        Series::one(self.var, self.order())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other).expect("series variables differ")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other).expect("series variables differ")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other).expect("series variables differ")
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

/// JSON form of a rational series: coefficients as `"p/q"` strings.
#[derive(Serialize, Deserialize)]
struct SeriesJson {
    #[serde(with = "serde_rational_vec")]
    coeffs: Vec<Rational>,
    order: usize,
    var: Var,
}

impl Serialize for Series<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            coeffs: self.coeffs.clone(),
            order: self.order(),
            var: self.var,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        if j.coeffs.len() != j.order {
            return Err(serde::de::Error::custom(format!(
                "order {} does not match {} coefficients",
                j.order,
                j.coeffs.len()
            )));
        }
        Ok(Series::new(j.var, j.coeffs))
    }
}
