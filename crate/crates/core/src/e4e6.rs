//! The graded ring `Q[E4, E6]`: Ramanujan's recursion for `E_2n`,
//! evaluation of polynomials as q-series, and reduction of a weight-`w`
//! series onto the monomial basis `{E4^a E6^b : 4a + 6b = w}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{bernoulli, binomial, int, rat};
use crate::linalg::solve;
use crate::mfpoly::MFPoly;
use crate::modforms::{eisenstein, WeightedSeries};
use crate::{Error, QSeries, Rational, Result, Var};

/// Default number of extra q-coefficients checked after an exact solve.
pub const DEFAULT_GUARD: usize = 8;

fn s_cache() -> &'static Mutex<HashMap<u32, MFPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, MFPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Normalizing factor `(-1)^{k-1} B_{2k} / (4k)` with `S_{2k} = factor · E_{2k}`.
fn s_factor(two_k: u32) -> Rational {
    let k = two_k / 2;
    let sign = if k % 2 == 1 { int(1) } else { int(-1) };
    sign * bernoulli(two_k as usize) / int(4 * k)
}

/// `S_{2k}` as a polynomial in `X`, `Y`, built up by Ramanujan's recursion.
fn s_poly(two_k: u32) -> MFPoly {
    if let Some(p) = s_cache().lock().expect("ramanujan cache poisoned").get(&two_k) {
        return p.clone();
    }
    let p = match two_k {
        4 => MFPoly::x().scale(&s_factor(4)),
        6 => MFPoly::y().scale(&s_factor(6)),
        _ => {
            // two_k = n + 2 with n even, n >= 6
            let n = (two_k - 2) as i64;
            let nu = n as u64;
            let mut rhs = s_poly(4)
                .mul(&s_poly((n - 2) as u32))
                .scale(&(int(-20) * int(binomial(nu - 2, 2))));
            let top = (n - 2) / 4;
            let halve_last = (n - 2) % 4 == 0;
            for r in 1..=top {
                let bracket = (n + 3 - 5 * r) * (n - 8 - 5 * r) - 5 * (r - 2) * (r + 3);
                let mut c = int(binomial(nu - 2, 2 * r as u64)) * int(bracket);
                if halve_last && r == top {
                    c *= rat(1, 2);
                }
                let term = s_poly((2 * r + 2) as u32).mul(&s_poly((n - 2 * r) as u32));
                rhs = rhs.add(&term.scale(&c));
            }
            // -(n+2)(n+3) / (2n(n-1)) · S_{n+2} = rhs
            rhs.scale(&-rat(2 * n * (n - 1), (n + 2) * (n + 3)))
        }
    };
    s_cache()
        .lock()
        .expect("ramanujan cache poisoned")
        .insert(two_k, p.clone());
    p
}

/// `E_{2n}` as the unique homogeneous polynomial of weight `2n` in `E4`, `E6`.
pub fn ramanujan_reduce(two_n: u32) -> Result<MFPoly> {
    if two_n == 2 {
        return Err(Error::WeightTwo);
    }
    if two_n < 4 || two_n % 2 == 1 {
        return Err(Error::InvalidWeight(two_n));
    }
    Ok(s_poly(two_n).scale(&s_factor(two_n).recip()))
}

/// All `(a, b)` with `4a + 6b = weight`, by descending `a`.
pub fn basis_monomials(weight: u32) -> Vec<(u32, u32)> {
    if weight % 2 == 1 {
        return Vec::new();
    }
    (0..=weight / 4)
        .rev()
        .filter_map(|a| {
            let rest = weight - 4 * a;
            rest.is_multiple_of(6).then_some((a, rest / 6))
        })
        .collect()
}

fn power_cache() -> &'static Mutex<HashMap<(u32, u32), QSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), QSeries>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `E_gen^e` at `order` (`gen` is 4 or 6), memoized.
fn generator_power(gen: u32, e: u32, order: usize) -> QSeries {
    if e == 0 {
        return QSeries::one(Var::Q, order);
    }
    if let Some(s) = power_cache()
        .lock()
        .expect("power cache poisoned")
        .get(&(gen, e))
        .filter(|s| s.order() >= order)
    {
        return s.truncate(order);
    }
    let base = eisenstein(gen, order).expect("generator weight").series;
    let s = if e == 1 {
        base
    } else {
        generator_power(gen, e - 1, order)
            .mul(&base)
            .expect("q-series")
    };
    power_cache()
        .lock()
        .expect("power cache poisoned")
        .insert((gen, e), s.clone());
    s
}

/// `E4^a E6^b` at `order`.
pub fn monomial_series(a: u32, b: u32, order: usize) -> QSeries {
    generator_power(4, a, order)
        .mul(&generator_power(6, b, order))
        .expect("q-series")
}

/// Substitutes the q-expansions of `E4`, `E6` into a homogeneous polynomial.
pub fn evaluate(p: &MFPoly, order: usize) -> Result<WeightedSeries> {
    if !p.is_homogeneous() {
        return Err(Error::NonHomogeneous);
    }
    let mut acc = QSeries::zero(Var::Q, order);
    for (a, b, c) in p.terms() {
        acc = acc.add(&monomial_series(a, b, order).scale(c))?;
    }
    Ok(WeightedSeries::new(acc, p.weight().unwrap_or(0)))
}

/// Writes a weight-`weight` q-series as a polynomial in `E4`, `E6`.
///
/// The first `|basis|` coefficients determine the polynomial; every further
/// coefficient up to the series' order is checked, and at least `guard`
/// such checks are required.
pub fn series_to_poly(s: &QSeries, weight: u32, guard: usize) -> Result<MFPoly> {
    if s.var() != Var::Q {
        return Err(Error::WrongVar {
            expected: Var::Q,
            found: s.var(),
        });
    }
    let basis = basis_monomials(weight);
    let k = basis.len();
    let need = k + guard;
    if s.order() < need {
        return Err(Error::InsufficientOrder {
            have: s.order(),
            need,
        });
    }
    let n = s.order();
    let columns: Vec<QSeries> = basis
        .iter()
        .map(|&(a, b)| monomial_series(a, b, n))
        .collect();
    let matrix = (0..k)
        .map(|row| columns.iter().map(|c| c.coeff(row).clone()).collect())
        .collect();
    let rhs = s.coeffs()[..k].to_vec();
    let x = solve(matrix, rhs)?;
    let mut fit = QSeries::zero(Var::Q, n);
    for (col, c) in columns.iter().zip(&x) {
        if !c.is_zero() {
            fit = fit.add(&col.scale(c))?;
        }
    }
    if let Some(index) = fit.first_difference(s)? {
        return Err(Error::NotInSpan { weight, index });
    }
    Ok(MFPoly::from_terms(
        basis.iter().zip(x).map(|(&(a, b), c)| (a, b, c)),
    ))
}

/// Classical dimension of the space of level-one modular forms of weight
/// `w`, from the valence formula (used as an independent count).
pub fn modular_forms_dimension(w: u32) -> usize {
    if w % 2 == 1 || w == 2 {
        return 0;
    }
    let base = (w / 12) as usize;
    if w % 12 == 2 {
        base
    } else {
        base + 1
    }
}

/// The rational `1/1728`.
pub fn inv_1728() -> Rational {
    Rational::one() / int(1728)
}

/// `Δ = (X³ - Y²) / 1728`.
pub fn delta_poly() -> MFPoly {
    MFPoly::x()
        .pow(3)
        .sub(&MFPoly::y().pow(2))
        .scale(&inv_1728())
}
