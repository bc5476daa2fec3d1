//! The catalog of determinant identities `E_{2r}·Δ^m = c·det(minor)`, exact
//! verification in q-series and in `Q[E4, E6]`, and the discovery engine for
//! the full Hankel determinants `H_n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{format_rational, int, serde_rational};
use crate::e4e6::{basis_monomials, delta_poly, evaluate, ramanujan_reduce, series_to_poly};
use crate::hankel::{build, build_symbolic, classify, det, det_series, hankel_spec, subscripts_to_rational, MinorSpec};
use crate::jacobi::verify_15_via_k;
use crate::mfpoly::MFPoly;
use crate::modforms::{delta, eisenstein, DeltaRoute};
use crate::report::VerificationReport;
use crate::{Error, QSeries, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact comparison of truncated q-expansions.
    Series,
    /// Exact comparison in the polynomial ring in `E4`, `E6`.
    Symbolic,
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Series => "series",
            Mode::Symbolic => "symbolic",
        }
    }
}

/// `E_{2r}·Δ^m = constant·det(E_{p_ij})`, with `E_{2r}` absent when
/// `eisenstein` is `None`. The record with no subscripts is the classical
/// `1728Δ = E4³ - E6²`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub eisenstein: Option<u32>,
    pub delta_power: u32,
    /// As printed: `LHS = constant · det`.
    pub constant: Rational,
    pub subscripts: Vec<Vec<u32>>,
}

impl IdentityRecord {
    pub fn weight(&self) -> u32 {
        self.eisenstein.unwrap_or(0) + 12 * self.delta_power
    }

    /// The minor and the sign relating it to the printed matrix.
    pub fn minor(&self) -> Result<Option<(MinorSpec, i8)>> {
        if self.subscripts.is_empty() {
            return Ok(None);
        }
        let report = classify(&subscripts_to_rational(&self.subscripts))?;
        let hm = report
            .hankel_minor
            .ok_or_else(|| Error::InvalidMinor(format!("{} is not a Hankel minor", self.id)))?;
        Ok(Some((hm.spec(), hm.sign)))
    }

    /// Coefficients needed for a series comparison to be conclusive: two
    /// forms of weight `k` agreeing through `q^{⌊k/12⌋}` are equal; `guard`
    /// further coefficients are compared on top.
    pub fn min_order(&self, guard: usize) -> usize {
        (self.weight() / 12) as usize + 1 + guard
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn big(factors: &[(i64, u32)]) -> Rational {
    factors
        .iter()
        .fold(Rational::one(), |acc, &(p, e)| acc * int(BigInt::from(p).pow(e)))
}

fn frac(sign: i64, num: &[(i64, u32)], den: &[(i64, u32)]) -> Rational {
    r(sign, 1) * big(num) / big(den)
}

/// Matrix with the given first row and first column and constant
/// differences down each column.
fn from_border(row: &[u32], col: &[u32]) -> Vec<Vec<u32>> {
    col.iter()
        .map(|&c| row.iter().map(|&p| p + c - row[0]).collect())
        .collect()
}

/// Every cataloged identity, in catalog order.
pub fn catalog() -> Vec<IdentityRecord> {
    const T: i64 = 1728;
    let rec = |id, e: Option<u32>, m, constant, row: &[u32], col: &[u32]| IdentityRecord {
        id,
        eisenstein: e,
        delta_power: m,
        constant,
        subscripts: from_border(row, col),
    };
    vec![
        IdentityRecord {
            id: "1.5",
            eisenstein: None,
            delta_power: 1,
            constant: r(1, T),
            subscripts: Vec::new(),
        },
        rec("1.6", None, 1, r(1, T), &[4, 6], &[4, 6]),
        rec("1.7", None, 2, frac(-1, &[(691, 1)], &[(T, 2), (250, 1)]), &[4, 6, 8], &[4, 6, 8]),
        rec("2.6", Some(4), 1, frac(-1, &[(691, 1)], &[(T, 1), (250, 1)]), &[4, 8], &[4, 8]),
        rec("2.7", Some(6), 1, frac(1, &[(691, 1)], &[(T, 1), (250, 1)]), &[4, 12], &[4, 6]),
        rec("2.8", Some(8), 1, frac(1, &[(3617, 1)], &[(T, 1), (3, 1), (7, 2), (11, 1)]), &[4, 10], &[4, 10]),
        rec("2.9", Some(8), 1, frac(1, &[(691, 1)], &[(T, 1), (441, 1)]), &[8, 10], &[8, 10]),
        rec(
            "2.10",
            Some(10),
            1,
            frac(1, &[(691, 1), (43867, 1)], &[(T, 1), (2, 1), (3, 2), (5, 4), (7, 2), (13, 1)]),
            &[4, 12], &[4, 10],
        ),
        rec("2.11", Some(10), 1, frac(1, &[(691, 1)], &[(T, 1), (250, 1)]), &[8, 12], &[8, 10]),
        rec(
            "2.12",
            Some(14),
            1,
            frac(
                1,
                &[(691, 1), (593, 1), (131, 1)],
                &[(T, 1), (2, 1), (3, 1), (5, 3), (7, 2), (11, 1), (13, 1)],
            ),
            &[4, 14], &[4, 12],
        ),
        rec(
            "2.13",
            Some(14),
            1,
            frac(-1, &[(691, 1), (3617, 1)], &[(T, 1), (2, 1), (3, 1), (5, 3), (7, 2), (13, 1)]),
            &[10, 14], &[10, 12],
        ),
        rec("2.14", Some(4), 2, frac(1, &[(691, 2)], &[(T, 2), (21, 2), (250, 1)]), &[4, 8, 10], &[4, 6, 8]),
        rec("2.15", Some(6), 2, frac(-1, &[(691, 2)], &[(T, 2), (250, 2)]), &[6, 8, 10], &[6, 8, 10]),
        rec(
            "2.16",
            Some(8),
            2,
            frac(-1, &[(691, 2), (3617, 1)], &[(T, 2), (2, 3), (3, 1), (5, 3), (7, 2), (467, 1)]),
            &[6, 8, 12], &[6, 8, 10],
        ),
        rec(
            "2.17",
            Some(10),
            2,
            frac(1, &[(691, 2), (3617, 1)], &[(T, 2), (2, 2), (3, 1), (5, 6), (7, 2), (13, 1)]),
            &[6, 10, 12], &[6, 8, 10],
        ),
        rec(
            "2.18",
            Some(14),
            2,
            frac(
                -1,
                &[(691, 2), (3617, 1), (43867, 1)],
                &[(T, 2), (2, 6), (3, 1), (5, 3), (7, 2), (97, 1), (7213, 1)],
            ),
            &[8, 10, 14], &[8, 10, 12],
        ),
        rec(
            "2.19",
            Some(4),
            3,
            frac(-1, &[(691, 3), (3617, 1)], &[(T, 3), (2, 4), (3, 1), (5, 6), (7, 2), (467, 1)]),
            &[4, 6, 8, 10], &[4, 6, 8, 10],
        ),
        rec(
            "2.20",
            Some(6),
            3,
            frac(-1, &[(691, 3), (43867, 1)], &[(T, 3), (2, 5), (3, 2), (5, 6), (7, 2), (131, 1)]),
            &[4, 6, 8, 12], &[4, 6, 8, 10],
        ),
        rec(
            "2.21",
            Some(8),
            3,
            frac(
                1,
                &[(691, 3), (3617, 2)],
                &[(T, 3), (2, 4), (3, 2), (5, 6), (7, 4), (13, 1), (467, 1)],
            ),
            &[4, 6, 10, 12], &[4, 6, 8, 10],
        ),
        rec(
            "2.22",
            Some(10),
            3,
            frac(
                -1,
                &[(691, 3), (3617, 1), (43867, 1)],
                &[(T, 3), (2, 7), (3, 1), (5, 6), (7, 2), (97, 1), (7213, 1)],
            ),
            &[4, 8, 10, 12], &[4, 6, 8, 10],
        ),
        rec(
            "2.23",
            Some(14),
            3,
            frac(
                1,
                &[(691, 3), (3617, 2), (43867, 1), (283, 1), (617, 1)],
                &[(T, 4), (2, 3), (3, 2), (5, 6), (7, 2), (31, 1), (3503110621, 1)],
            ),
            &[6, 8, 10, 14], &[6, 8, 10, 12],
        ),
        rec(
            "2.24",
            Some(14),
            4,
            frac(
                1,
                &[(691, 4), (3617, 2), (43867, 1), (131, 1), (283, 1), (593, 1), (617, 1)],
                &[(T, 6), (5, 9), (7, 5), (11, 1), (13, 1), (67, 1), (257, 1), (43721, 1)],
            ),
            &[4, 6, 8, 10, 14], &[4, 6, 8, 10, 12],
        ),
    ]
}

pub fn catalog_ids() -> Vec<&'static str> {
    catalog().iter().map(|r| r.id).collect()
}

pub fn lookup(id: &str) -> Result<IdentityRecord> {
    catalog()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Verifies one cataloged identity exactly.
pub fn verify(id: &str, order: usize, mode: Mode, guard: usize) -> Result<VerificationReport> {
    let rec = lookup(id)?;
    let mut report = match mode {
        Mode::Series => verify_series(&rec, order, guard)?,
        Mode::Symbolic => verify_symbolic(&rec)?,
    };
    report.constant = Some(format_rational(&rec.constant));
    Ok(report)
}

fn verify_series(rec: &IdentityRecord, order: usize, guard: usize) -> Result<VerificationReport> {
    let need = rec.min_order(guard);
    if order < need {
        return Err(Error::InsufficientOrder { have: order, need });
    }
    let mut lhs = delta(order, DeltaRoute::Product).series.pow(rec.delta_power);
    if let Some(w) = rec.eisenstein {
        lhs = lhs.mul(&eisenstein(w, order)?.series)?;
    }
    let rhs = match rec.minor()? {
        None => {
            let e4 = eisenstein(4, order)?.series;
            let e6 = eisenstein(6, order)?.series;
            e4.pow(3).sub(&e6.pow(2))?
        }
        Some((spec, sign)) => det_series(&build(&spec, order, None)?)?.scale(&int(sign)),
    }
    .scale(&rec.constant);
    Ok(VerificationReport::series(rec.id, "series", order, lhs.first_difference(&rhs)?))
}

fn verify_symbolic(rec: &IdentityRecord) -> Result<VerificationReport> {
    let Some((spec, sign)) = rec.minor()? else {
        let mut r = verify_15_via_k();
        r.id = rec.id.to_string();
        r.mode = "symbolic".into();
        r.weight = Some(12);
        return Ok(r);
    };
    let mut lhs = delta_poly().pow(rec.delta_power);
    if let Some(w) = rec.eisenstein {
        lhs = lhs.mul(&ramanujan_reduce(w)?);
    }
    let rhs = det(&build_symbolic(&spec, None)?)?.scale(&(int(sign) * &rec.constant));
    let pass = lhs == rhs;
    let mut report = VerificationReport::new(rec.id, "symbolic", pass);
    report.weight = Some(rec.weight());
    if !pass {
        report.note = Some(format!("difference {}", lhs.sub(&rhs)));
    }
    Ok(report)
}

/// Which of the three infinite families `n` falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// `n = 3r + 1`: `H_n = d_r·E4·Δ^{n-1}·P_r(x, y)`.
    P,
    /// `n = 3r + 2`: `H_n = e_r·Δ^{n-1}·Q_r(x, y)`.
    Q,
    /// `n = 3r + 3`: `H_n = f_r·Δ^{n-1}·R_r(x, y)`.
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSchedule {
    pub family: Family,
    pub r: usize,
    /// Total degree in `x = E4³`, `y = E6²`.
    pub expected_degree: usize,
    pub e4_factor: bool,
}

pub fn degree_schedule(n: usize) -> DegreeSchedule {
    assert!(n >= 1, "matrix size must be positive");
    let r = (n - 1) / 3;
    let (family, expected_degree) = match (n - 1) % 3 {
        0 => (Family::P, 3 * r * r.saturating_sub(1) / 2),
        1 => (Family::Q, r * (3 * r).saturating_sub(1) / 2),
        _ => (Family::R, r * (3 * r + 1) / 2),
    };
    DegreeSchedule {
        family,
        r,
        expected_degree,
        e4_factor: family == Family::P,
    }
}

/// `det = Δ^{n-1}·F` with `F` written in the `E4`, `E6` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MinorReduction {
    pub det: QSeries,
    pub quotient_weight: u32,
    pub quotient: MFPoly,
}

/// Divides the determinant of `spec` by `Δ^{n-1}` and reduces the quotient
/// onto the monomial basis of its weight.
pub fn reduce_minor(spec: &MinorSpec, order: usize, guard: usize) -> Result<MinorReduction> {
    let shift = spec.size() - 1;
    let qw = spec.quotient_weight();
    let quotient_weight = u32::try_from(qw)
        .map_err(|_| Error::InvalidMinor(format!("negative quotient weight {qw} for {spec}")))?;
    let need = shift + basis_monomials(quotient_weight).len() + guard;
    if order < need {
        return Err(Error::InsufficientOrder { have: order, need });
    }
    let d = det_series(&build(spec, order, None)?)?;
    let reduced = d.shift_down(shift)?;
    let n = reduced.order();
    let unit = delta(n + 1, DeltaRoute::Product).series.shift_down(1)?.pow(shift as u32);
    let quotient_series = reduced.mul(&unit.invert()?)?;
    let quotient = series_to_poly(&quotient_series, quotient_weight, guard)?;
    Ok(MinorReduction {
        det: d,
        quotient_weight,
        quotient,
    })
}

/// Outcome of the structural reduction of `H_n`:
/// `det = constant·Δ^{n-1}·E4^{[e4_factor]}·poly`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscoveryResult {
    #[serde(with = "serde_rational")]
    pub constant: Rational,
    pub degree: usize,
    pub det_weight: u32,
    pub e4_factor: bool,
    pub n: usize,
    pub order: usize,
    /// `1/constant` when `poly = 1`, matching `LHS = c·det`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub printed_constant: Option<Rational>,
    /// Monomials in `X = E4`, `Y = E6`; every term is `x^i y^j` with
    /// `x = X³`, `y = Y²`.
    pub poly: MFPoly,
    pub quotient_weight: u32,
    pub reconstructed: bool,
    pub schedule: DegreeSchedule,
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => serde_rational::serialize(x, s),
        None => s.serialize_none(),
    }
}

impl DiscoveryResult {
    /// Terms as `(i, j, c)` meaning `c·x^i·y^j`.
    pub fn xy_terms(&self) -> Vec<(u32, u32, Rational)> {
        self.poly
            .terms()
            .map(|(a, b, c)| (a / 3, b / 2, c.clone()))
            .collect()
    }

    /// Whether every `x^i y^{d-i}`, `0 ≤ i ≤ d`, has a nonzero coefficient.
    pub fn full_support(&self) -> bool {
        self.poly.len() == self.degree + 1
    }
}

/// Splits off the content: returns `(c, p/c)` with `p/c` having coprime
/// integer coefficients and a positive coefficient on its highest power of `X`.
pub fn normalize(p: &MFPoly) -> (Rational, MFPoly) {
    if p.is_zero() {
        return (Rational::one(), MFPoly::zero());
    }
    let (num_gcd, den_lcm) = p.terms().fold((BigInt::zero(), BigInt::one()), |(g, l), (_, _, c)| {
        (g.gcd(c.numer()), l.lcm(c.denom()))
    });
    let mut content = Rational::new(num_gcd, den_lcm);
    let (_, _, lead) = p.terms().next().expect("nonzero");
    if lead.is_negative() {
        content = -content;
    }
    (content.clone(), p.scale(&content.recip()))
}

/// Determines `H_n` as `constant·Δ^{n-1}·(E4)·poly(E4³, E6²)`.
pub fn discover(n: usize, order: usize, guard: usize) -> Result<DiscoveryResult> {
    if n == 0 {
        return Err(Error::InvalidMinor("matrix size must be positive".into()));
    }
    let spec = hankel_spec(n);
    let red = reduce_minor(&spec, order, guard)?;
    let e4_factor = red.quotient_weight % 12 == 4;
    let rest = if e4_factor {
        red.quotient.div_x()?
    } else {
        red.quotient.clone()
    };
    let (constant, poly) = normalize(&rest);
    let degree = (poly.weight().unwrap_or(0) / 12) as usize;
    let mut rebuilt = evaluate(&poly, order)?
        .series
        .mul(&delta(order, DeltaRoute::Product).series.pow(n as u32 - 1))?
        .scale(&constant);
    if e4_factor {
        rebuilt = rebuilt.mul(&eisenstein(4, order)?.series)?;
    }
    let reconstructed = rebuilt == red.det;
    let printed_constant = (poly == MFPoly::one()).then(|| constant.recip());
    Ok(DiscoveryResult {
        constant,
        degree,
        det_weight: spec.weight(),
        e4_factor,
        n,
        order,
        printed_constant,
        poly,
        quotient_weight: red.quotient_weight,
        reconstructed,
        schedule: degree_schedule(n),
    })
}

/// Smallest order accepted by [`discover`].
pub fn discover_min_order(n: usize, guard: usize) -> usize {
    let qw = hankel_spec(n).quotient_weight() as u32;
    n - 1 + basis_monomials(qw).len() + guard
}
