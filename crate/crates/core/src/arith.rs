//! Exact scalar arithmetic: Bernoulli numbers, divisor power sums and the
//! canonical `"p/q"` string form of rationals.

use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

/// Shorthand for building a small rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// `B_n` in the convention `t/(e^t - 1) = Σ B_n t^n / n!` (so `B_1 = -1/2`).
///
/// Values are memoized process-wide; the table is extended with the
/// recurrence `Σ_{j=0}^{n} C(n+1, j) B_j = 0`.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    while table.len() <= n {
        let m = table.len();
        if m > 1 && m % 2 == 1 {
            table.push(Rational::zero());
            continue;
        }
        // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut acc = Rational::zero();
        let mut c = BigInt::one();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(c.clone());
            }
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        table.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    table[n].clone()
}

/// Divisor power sum `σ_k(n) = Σ_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n > 0, "sigma is defined for positive n");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Canonical string form: `"p/q"`, or `"p"` when `q = 1`; the sign sits on
/// the numerator.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Serde adapter writing a rational as its canonical string.
pub mod serde_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a sequence of rationals.
pub mod serde_rational_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&super::format_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(13), rat(0, 1));
    }

    #[test]
    fn bernoulli_defining_recurrence() {
        // Σ_{j<n} C(n, j) B_j = 0 for n >= 2
        for n in 2..40u64 {
            let s: Rational = (0..n)
                .map(|j| int(binomial(n, j)) * bernoulli(j as usize))
                .sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn bernoulli_12_numerator_is_691() {
        assert_eq!(bernoulli(12).numer(), &BigInt::from(-691));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(3, 1), BigInt::from(1));
        assert_eq!(sigma(3, 2), BigInt::from(9));
        assert_eq!(sigma(5, 2), BigInt::from(33));
        assert_eq!(sigma(1, 12), BigInt::from(28));
        assert_eq!(sigma(3, 16), BigInt::from(1 + 8 + 64 + 512 + 4096));
    }

    #[test]
    fn sigma_multiplicative() {
        use num_integer::Integer;
        for k in [1u32, 3, 5, 11] {
            for m in 1..=50u64 {
                for n in 1..=50u64 {
                    if m.gcd(&n) == 1 {
                        assert_eq!(sigma(k, m * n), sigma(k, m) * sigma(k, n));
                    }
                }
            }
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(parse_rational("3/-6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("17").unwrap(), rat(17, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(rational_sqrt(&rat(16, 9)), Some(rat(4, 3)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }

    proptest::proptest! {
        #[test]
        fn string_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = rat(n, d);
            proptest::prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
    }
}
