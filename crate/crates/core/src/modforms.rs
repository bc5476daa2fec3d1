//! q-expansions of the named modular forms: `E_2n`, `Δ`, theta constants,
//! and the elliptic parameters `k²`, `z²` as series in the nome.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{bernoulli, int, sigma};
use crate::{Error, QSeries, Rational, Result, Series, Var};

/// A q-series together with its modular weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSeries {
    pub series: QSeries,
    pub weight: u32,
}

impl WeightedSeries {
    pub fn new(series: QSeries, weight: u32) -> Self {
        WeightedSeries { series, weight }
    }

    pub fn mul(&self, other: &WeightedSeries) -> Result<WeightedSeries> {
        Ok(WeightedSeries::new(
            self.series.mul(&other.series)?,
            self.weight + other.weight,
        ))
    }

    pub fn pow(&self, e: u32) -> WeightedSeries {
        WeightedSeries::new(self.series.pow(e), self.weight * e)
    }
}

fn eisenstein_cache() -> &'static Mutex<HashMap<u32, QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, QSeries>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `E_{2n} = 1 - (4n / B_{2n}) Σ_{m≥1} σ_{2n-1}(m) q^m` for `two_n = 2n ≥ 4`.
pub fn eisenstein(two_n: u32, order: usize) -> Result<WeightedSeries> {
    if two_n == 2 {
        return Err(Error::WeightTwo);
    }
    if two_n < 4 || two_n % 2 == 1 {
        return Err(Error::InvalidWeight(two_n));
    }
    if let Some(s) = eisenstein_cache()
        .lock()
        .expect("eisenstein cache poisoned")
        .get(&two_n)
        .filter(|s| s.order() >= order)
    {
        return Ok(WeightedSeries::new(s.truncate(order), two_n));
    }
    let factor = -int(2 * two_n) / bernoulli(two_n as usize);
    let series = Series::from_fn(Var::Q, order, |m| {
        if m == 0 {
            Rational::one()
        } else {
            &factor * int(sigma(two_n - 1, m as u64))
        }
    });
    eisenstein_cache()
        .lock()
        .expect("eisenstein cache poisoned")
        .insert(two_n, series.clone());
    Ok(WeightedSeries::new(series, two_n))
}

/// Euler's product `∏_{r≥1} (1 - q^r)` via the pentagonal number theorem:
/// `Σ_k (-1)^k q^{k(3k-1)/2}` over all integers `k`.
pub fn euler_product(order: usize) -> QSeries {
    let mut coeffs = vec![Rational::zero(); order];
    if order > 0 {
        coeffs[0] = Rational::one();
    }
    for k in 1usize.. {
        let lo = k * (3 * k - 1) / 2;
        if lo >= order {
            break;
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        coeffs[lo] = sign.clone();
        let hi = k * (3 * k + 1) / 2;
        if hi < order {
            coeffs[hi] = sign;
        }
    }
    Series::new(Var::Q, coeffs)
}

/// `Δ = q ∏ (1 - q^r)^24`, truncated at `order`.
pub fn eta24(order: usize) -> QSeries {
    euler_product(order).pow(24).shift_up(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaRoute {
    /// `q ∏ (1 - q^r)^24`
    Product,
    /// `(E4³ - E6²) / 1728`
    Formula,
}

/// The discriminant `Δ` (weight 12) computed along either route.
pub fn delta(order: usize, route: DeltaRoute) -> WeightedSeries {
    let series = match route {
        DeltaRoute::Product => eta24(order),
        DeltaRoute::Formula => {
            let e4 = eisenstein(4, order).expect("weight 4").series;
            let e6 = eisenstein(6, order).expect("weight 6").series;
            e4.pow(3)
                .sub(&e6.pow(2))
                .expect("same variable")
                .scale(&Rational::new(BigInt::one(), BigInt::from(1728)))
        }
    };
    WeightedSeries::new(series, 12)
}

/// `Σ_{n≥0} q^{n(n+1)}`, so that `θ2 = 2 q^{1/4} ψ(q)`.
fn psi(order: usize) -> QSeries {
    Series::from_fn(Var::Q, order, |i| {
        // i = n(n+1)
        let n = ((4 * i + 1) as f64).sqrt() as usize / 2;
        let hit = (n.saturating_sub(1)..=n + 1).any(|m| m * (m + 1) == i);
        if hit {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `θ3(q) = Σ_{n∈Z} q^{n²}`.
fn theta3(order: usize) -> QSeries {
    Series::from_fn(Var::Q, order, |i| {
        let r = (i as f64).sqrt() as usize;
        let root = (r.saturating_sub(1)..=r + 1).find(|m| m * m == i);
        match root {
            Some(0) => int(1),
            Some(_) => int(2),
            None => Rational::zero(),
        }
    })
}

/// Fourth and second powers of the theta constants `θ2(0,q)`, `θ3(0,q)`.
///
/// `θ4⁴` is not expanded separately; it is `θ3⁴ - θ2⁴`.
#[derive(Clone, Debug)]
pub struct ThetaPowers {
    /// `16 q ψ(q)⁴`, order `N`.
    pub theta2_4: QSeries,
    /// `1 + 8 Σ_n (Σ_{d|n, 4∤d} d) q^n`, order `N`.
    pub theta3_4: QSeries,
    /// `4 w ψ(w²)²`, a `W`-series of order `2N`.
    pub theta2_2: QSeries,
    /// `θ3(w²)²`, a `W`-series of order `2N`.
    pub theta3_2: QSeries,
}

impl ThetaPowers {
    pub fn theta4_4(&self) -> QSeries {
        self.theta3_4.sub(&self.theta2_4).expect("same variable")
    }
}

pub fn theta_fourth_powers(order: usize) -> ThetaPowers {
    let theta3_4 = Series::from_fn(Var::Q, order, |n| {
        if n == 0 {
            return int(1);
        }
        let n = n as u64;
        let s: u64 = (1..=n).filter(|d| n.is_multiple_of(*d) && d % 4 != 0).sum();
        int(8 * s)
    });
    let theta2_4 = psi(order).pow(4).scale(&int(16)).shift_up(1);
    let psi_w = psi(order).inflate().expect("q-series");
    let theta2_2 = psi_w.square().scale(&int(4)).shift_up(1);
    let theta3_2 = theta3(order).square().inflate().expect("q-series");
    ThetaPowers {
        theta2_4,
        theta3_4,
        theta2_2,
        theta3_2,
    }
}

/// Elliptic modulus and `z = 2K/π` as series in the nome `q`.
#[derive(Clone, Debug)]
pub struct EllipticParams {
    /// `κ = k² = θ2⁴ / θ3⁴`, order `N`.
    pub k2: QSeries,
    /// `z² = θ3⁴`, order `N`.
    pub z2: QSeries,
    /// `k = 4w + …` as a `W`-series (order `2N - 1`).
    pub k: QSeries,
    /// `z = 1 + …` as a `W`-series (order `2N`).
    pub z: QSeries,
}

pub fn elliptic_params(order: usize) -> Result<EllipticParams> {
    let th = theta_fourth_powers(order);
    let k2 = th.theta2_4.div(&th.theta3_4)?;
    let z2 = th.theta3_4;
    let k = k2.inflate()?.sqrt_unit_times_monomial()?;
    let z = z2.inflate()?.sqrt_unit_times_monomial()?;
    Ok(EllipticParams { k2, z2, k, z })
}

/// Names accepted by [`named_series`].
pub const SERIES_NAMES: &str = "E4|E6|...|E28|delta|k2|z2|theta2_4|theta3_4";

/// Looks up a named q-series: `E<2n>`, `delta`, `k2`, `z2`, `theta2_4`,
/// `theta3_4`. Returns the series and its weight when it has one.
pub fn named_series(name: &str, order: usize) -> Result<(QSeries, Option<u32>)> {
    if let Some(w) = name.strip_prefix('E').or_else(|| name.strip_prefix('e')) {
        let w: u32 = w
            .parse()
            .map_err(|_| Error::Parse(format!("unknown series {name:?}")))?;
        let e = eisenstein(w, order)?;
        return Ok((e.series, Some(e.weight)));
    }
    match name {
        "delta" => Ok((delta(order, DeltaRoute::Product).series, Some(12))),
        "k2" => Ok((elliptic_params(order)?.k2, None)),
        "z2" => Ok((elliptic_params(order)?.z2, None)),
        "theta2_4" => Ok((theta_fourth_powers(order).theta2_4, None)),
        "theta3_4" => Ok((theta_fourth_powers(order).theta3_4, None)),
        _ => Err(Error::Parse(format!(
            "unknown series {name:?}; expected one of {SERIES_NAMES}"
        ))),
    }
}
