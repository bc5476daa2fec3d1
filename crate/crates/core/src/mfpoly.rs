//! Polynomials in the generators `X = E4` (weight 4) and `Y = E6` (weight 6).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::serde_rational;
use crate::scalar::Ring;
use crate::{Error, Rational, Result};

/// Sparse polynomial `Σ c_{a,b} X^a Y^b`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MFPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl MFPoly {
    pub fn zero() -> Self {
        MFPoly::default()
    }

    pub fn one() -> Self {
        MFPoly::monomial(0, 0, Rational::one())
    }

    /// `E4`.
    pub fn x() -> Self {
        MFPoly::monomial(1, 0, Rational::one())
    }

    /// `E6`.
    pub fn y() -> Self {
        MFPoly::monomial(0, 1, Rational::one())
    }

    pub fn monomial(a: u32, b: u32, c: Rational) -> Self {
        let mut p = MFPoly::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rational)>) -> Self {
        let mut p = MFPoly::zero();
        for (a, b, c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    fn add_term(&mut self, a: u32, b: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms `(a, b, c)` in canonical order: descending `X`-power, then
    /// descending `Y`-power.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().rev().map(|(&(a, b), c)| (a, b, c))
    }

    /// The common weight `4a + 6b` of all terms; `None` if the terms have
    /// different weights or the polynomial is zero.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(|&(a, b)| 4 * a + 6 * b);
        let w = ws.next()?;
        ws.all(|v| v == w).then_some(w)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.weight().is_some()
    }

    pub fn add(&self, other: &MFPoly) -> MFPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MFPoly) -> MFPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MFPoly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> MFPoly {
        if c.is_zero() {
            return MFPoly::zero();
        }
        MFPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MFPoly) -> MFPoly {
        let mut out = MFPoly::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MFPoly {
        (0..e).fold(MFPoly::one(), |acc, _| acc.mul(self))
    }

    /// Exact division by `X`.
    pub fn div_x(&self) -> Result<MFPoly> {
        if let Some(&(_, b)) = self.terms.keys().find(|(a, _)| *a == 0) {
            return Err(Error::NotDivisibleByX(b));
        }
        Ok(MFPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a - 1, b), c.clone()))
                .collect(),
        })
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms()
            .map(|(a, b, c)| TermJson { a, b, c: c.clone() })
            .collect()
    }

    pub fn from_json_terms(terms: &[TermJson]) -> MFPoly {
        MFPoly::from_terms(terms.iter().map(|t| (t.a, t.b, t.c.clone())))
    }
}

/// One serialized monomial `c·X^a·Y^b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub a: u32,
    pub b: u32,
    #[serde(with = "serde_rational")]
    pub c: Rational,
}

impl Serialize for MFPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MFPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(MFPoly::from_json_terms(&Vec::<TermJson>::deserialize(d)?))
    }
}

impl fmt::Display for MFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (a, b, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            match a {
                0 => {}
                1 => f.write_str("·X")?,
                _ => write!(f, "·X^{a}")?,
            }
            match b {
                0 => {}
                1 => f.write_str("·Y")?,
                _ => write!(f, "·Y^{b}")?,
            }
        }
        Ok(())
    }
}

impl Ring for MFPoly {
    fn zero_like(&self) -> Self {
        MFPoly::zero()
    }
    fn one_like(&self) -> Self {
        MFPoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn canonical_order_and_weight() {
        let p = MFPoly::from_terms([(0, 2, rat(250, 691)), (3, 0, rat(441, 691))]);
        let order: Vec<_> = p.terms().map(|(a, b, _)| (a, b)).collect();
        assert_eq!(order, vec![(3, 0), (0, 2)]);
        assert_eq!(p.weight(), Some(12));
        let q = p.add(&MFPoly::x());
        assert_eq!(q.weight(), None);
        assert!(!q.is_homogeneous());
        assert!(MFPoly::zero().is_homogeneous());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = MFPoly::x();
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x).len(), 0);
    }

    #[test]
    fn products() {
        let x = MFPoly::x();
        let y = MFPoly::y();
        let d = x.pow(3).sub(&y.pow(2));
        let sq = d.mul(&d);
        assert_eq!(sq.coeff(3, 2), int(-2));
        assert_eq!(sq.weight(), Some(24));
    }

    #[test]
    fn exact_division_by_x() {
        let p = MFPoly::from_terms([(4, 0, int(1)), (1, 2, int(-1))]);
        assert_eq!(
            p.div_x().unwrap(),
            MFPoly::from_terms([(3, 0, int(1)), (0, 2, int(-1))])
        );
        assert_eq!(MFPoly::y().div_x(), Err(Error::NotDivisibleByX(1)));
    }

    #[test]
    fn json_terms() {
        let p = MFPoly::from_terms([(0, 2, rat(-1, 1728)), (3, 0, rat(1, 1728))]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"[{"a":3,"b":0,"c":"1/1728"},{"a":0,"b":2,"c":"-1/1728"}]"#
        );
        let back: MFPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
