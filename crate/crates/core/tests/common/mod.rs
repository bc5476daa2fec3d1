//! Independent reference computations used as oracles by the integration
//! tests. Nothing here calls into the library's arithmetic.

#![allow(dead_code)]

use eisenstein_hankel::{QSeries, Rational, Var};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `B_n` by the Akiyama–Tanigawa algorithm (`B_1 = +1/2` there; only even
/// indices are used here).
pub fn bernoulli(n: usize) -> Rational {
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = q(j as i64) * (&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

/// `E_k` coefficients from the defining divisor sums.
pub fn eisenstein(k: u32, order: usize) -> Vec<Rational> {
    let factor = q(-2 * k as i64) / bernoulli(k as usize);
    (0..order)
        .map(|m| {
            if m == 0 {
                return Rational::one();
            }
            let s: BigInt = (1..=m)
                .filter(|d| m % d == 0)
                .map(|d| BigInt::from(d).pow(k - 1))
                .sum();
            &factor * Rational::from_integer(s)
        })
        .collect()
}

/// `q ∏_{r≥1} (1 - q^r)^{24}` by repeated multiplication by binomials.
pub fn delta(order: usize) -> Vec<Rational> {
    let mut c = vec![BigInt::zero(); order];
    if order > 1 {
        c[1] = BigInt::one();
    }
    for r in 1..order {
        for _ in 0..24 {
            for i in (r..order).rev() {
                let t = c[i - r].clone();
                c[i] -= t;
            }
        }
    }
    c.into_iter().map(Rational::from_integer).collect()
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().min(b.len());
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

pub fn pow(a: &[Rational], e: u32) -> Vec<Rational> {
    let mut r = vec![Rational::zero(); a.len()];
    r[0] = Rational::one();
    for _ in 0..e {
        r = mul(&r, a);
    }
    r
}

pub fn scale(a: &[Rational], c: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * c).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            (p, if inv % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Leibniz expansion of a determinant of truncated series.
pub fn leibniz_series(m: &[Vec<Vec<Rational>>]) -> Vec<Rational> {
    let n = m.len();
    let order = m[0][0].len();
    let mut acc = vec![Rational::zero(); order];
    for (p, sign) in permutations(n) {
        let mut term = m[0][p[0]].clone();
        for i in 1..n {
            term = mul(&term, &m[i][p[i]]);
        }
        for (a, t) in acc.iter_mut().zip(term) {
            if sign > 0 {
                *a += t;
            } else {
                *a -= t;
            }
        }
    }
    acc
}

pub fn leibniz_rational(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    permutations(n)
        .into_iter()
        .map(|(p, sign)| {
            let prod = (0..n).fold(Rational::one(), |acc, i| acc * &m[i][p[i]]);
            q(sign) * prod
        })
        .sum()
}

/// Whether every permutation term `Π p_{i,σ(i)}` has the same weight
/// `Σ p_{i,σ(i)}`.
pub fn brute_constant_weight(p: &[Vec<Rational>]) -> (bool, Rational) {
    let n = p.len();
    let weights: Vec<Rational> = permutations(n)
        .into_iter()
        .map(|(s, _)| (0..n).map(|i| p[i][s[i]].clone()).sum())
        .collect();
    let first = weights[0].clone();
    (weights.iter().all(|w| *w == first), first)
}

/// Matrix with the given first row and first column and constant
/// differences down each column.
pub fn from_border(row: &[u32], col: &[u32]) -> Vec<Vec<u32>> {
    col.iter()
        .map(|&c| row.iter().map(|&p| p + c - row[0]).collect())
        .collect()
}

pub fn as_series(v: Vec<Rational>) -> QSeries {
    QSeries::new(Var::Q, v)
}

pub fn rat(s: &str) -> Rational {
    s.parse().expect("valid rational literal")
}

/// Identities `E_{2r} Δ^m = c det(...)` as printed: id, 2r, m, c, first row,
/// first column.
pub const PRINTED: &[(&str, u32, u32, &str, &[u32], &[u32])] = &[
    ("2.6", 4, 1, "-691/432000", &[4, 8], &[4, 8]),
    ("2.7", 6, 1, "691/432000", &[4, 12], &[4, 6]),
    ("2.8", 8, 1, "3617/2794176", &[4, 10], &[4, 10]),
    ("2.9", 8, 1, "691/762048", &[8, 10], &[8, 10]),
    ("2.10", 10, 1, "30312097/12383280000", &[4, 12], &[4, 10]),
    ("2.11", 10, 1, "691/432000", &[8, 12], &[8, 10]),
    ("2.12", 14, 1, "53678953/9081072000", &[4, 14], &[4, 12]),
    ("2.13", 14, 1, "-2499347/825552000", &[10, 14], &[10, 12]),
    ("2.14", 4, 2, "477481/329204736000", &[4, 8, 10], &[4, 6, 8]),
    ("2.15", 6, 2, "-477481/186624000000", &[6, 8, 10], &[6, 8, 10]),
    ("2.16", 8, 2, "-1727048777/204984815616000", &[6, 8, 12], &[6, 8, 10]),
    ("2.17", 10, 2, "1727048777/356638464000000", &[6, 10, 12], &[6, 8, 10]),
    ("2.18", 14, 2, "-75760448700659/2456871624474624000", &[8, 10, 14], &[8, 10, 12]),
    ("2.19", 4, 3, "-1193390704907/88553440346112000000", &[4, 6, 8, 10], &[4, 6, 8, 10]),
    ("2.20", 6, 3, "-14473450387657/149042835357696000000", &[4, 6, 8, 12], &[4, 6, 8, 10]),
    ("2.21", 8, 3, "4316494179648619/169225624501420032000000", &[4, 6, 10, 12], &[4, 6, 8, 10]),
    ("2.22", 10, 3, "-52350470052155369/1061368541773037568000000", &[4, 8, 10, 12], &[4, 6, 8, 10]),
    (
        "2.23",
        14,
        3,
        "33062880989343551410572203/53375149017751795229786112000000",
        &[6, 8, 10, 14],
        &[6, 8, 10, 12],
    ),
    (
        "2.24",
        14,
        4,
        "1774780834671565997021188987943459/94084204703341452805191141163008000000000",
        &[4, 6, 8, 10, 14],
        &[4, 6, 8, 10, 12],
    ),
];
