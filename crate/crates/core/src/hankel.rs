//! Minors of the infinite Hankel array `(E_{2(i+j)})_{i,j≥1}`, their exact
//! determinants, and the constant-weight classifier for determinants of
//! Eisenstein series.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::arith::{int, serde_rational};
use crate::e4e6::ramanujan_reduce;
use crate::mfpoly::MFPoly;
use crate::modforms::eisenstein;
use crate::scalar::Ring;
use crate::{Error, QSeries, Rational, Result};

/// Row and column index sets selecting a square minor; entry `(r, s)` is
/// `E_{2(rows[r] + cols[s])}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MinorSpec {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.is_empty() || rows.len() != cols.len() {
            return Err(Error::InvalidMinor(format!(
                "need equally many rows and columns, got {} and {}",
                rows.len(),
                cols.len()
            )));
        }
        for (name, idx) in [("rows", &rows), ("cols", &cols)] {
            if idx[0] == 0 || idx.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidMinor(format!(
                    "{name} must be strictly increasing positive integers: {idx:?}"
                )));
            }
        }
        Ok(MinorSpec { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Eisenstein weights `2(i + j)` of the entries.
    pub fn subscripts(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|&i| self.cols.iter().map(|&j| (2 * (i + j)) as u32).collect())
            .collect()
    }

    /// Weight of every term of the determinant: `2(Σ rows + Σ cols)`.
    pub fn weight(&self) -> u32 {
        (2 * (self.rows.iter().sum::<usize>() + self.cols.iter().sum::<usize>())) as u32
    }

    /// Weight left after dividing the determinant by `Δ^{n-1}`; negative
    /// values cannot occur for a nonzero determinant.
    pub fn quotient_weight(&self) -> i64 {
        self.weight() as i64 - 12 * (self.size() as i64 - 1)
    }

    pub fn max_subscript(&self) -> u32 {
        (2 * (self.rows[self.size() - 1] + self.cols[self.size() - 1])) as u32
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rows {:?} cols {:?}", self.rows, self.cols)
    }
}

/// `H_n`: rows = cols = `1..=n`.
pub fn hankel_spec(n: usize) -> MinorSpec {
    let idx: Vec<usize> = (1..=n).collect();
    MinorSpec::new(idx.clone(), idx).expect("n >= 1")
}

/// `χ_n^{(m)}`: the `n x n` minor of `H_{n+1}` without its last row and its
/// `(n-m+1)`-st column. `m = 0` gives `H_n`.
pub fn chi_spec(n: usize, m: usize) -> Result<MinorSpec> {
    if n < m {
        return Err(Error::ZeroChi { n, m });
    }
    if m == 0 {
        return Ok(hankel_spec(n));
    }
    let removed = n - m + 1;
    let cols = (1..=n + 1).filter(|&j| j != removed).collect();
    MinorSpec::new((1..=n).collect(), cols)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroMode {
    /// Entries are zeroed unless their weight meets one of the congruences.
    Unless,
    /// Entries are zeroed whenever their weight meets one of the congruences.
    Whenever,
}

/// Replacement of Hankel entries `E_{2(ν+1)}` by zero according to
/// congruences `2(ν+1) ≡ 0 (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroPattern {
    pub mode: ZeroMode,
    pub moduli: Vec<u32>,
}

impl ZeroPattern {
    /// Whether the entry of weight `w` survives.
    pub fn keeps(&self, w: u32) -> bool {
        let hit = self.moduli.iter().any(|&m| w.is_multiple_of(m));
        match self.mode {
            ZeroMode::Unless => hit,
            ZeroMode::Whenever => !hit,
        }
    }

    /// Parses `unless:6` or `whenever:4,6`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad zero pattern {s:?}; expected unless:M,.. or whenever:M,.."));
        let (mode, rest) = s.split_once(':').ok_or_else(bad)?;
        let mode = match mode {
            "unless" => ZeroMode::Unless,
            "whenever" => ZeroMode::Whenever,
            _ => return Err(bad()),
        };
        let moduli = rest
            .split(',')
            .map(|m| m.trim().parse::<u32>().ok().filter(|&m| m > 0))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        Ok(ZeroPattern { mode, moduli })
    }
}

/// Matrix of Eisenstein q-series for `spec` at `order`.
pub fn build(spec: &MinorSpec, order: usize, zero: Option<&ZeroPattern>) -> Result<Vec<Vec<QSeries>>> {
    spec.subscripts()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|w| match zero {
                    Some(z) if !z.keeps(w) => Ok(QSeries::zero(crate::Var::Q, order)),
                    _ => eisenstein(w, order).map(|e| e.series),
                })
                .collect()
        })
        .collect()
}

/// Matrix of Ramanujan-reduced polynomials in `E4`, `E6` for `spec`.
pub fn build_symbolic(spec: &MinorSpec, zero: Option<&ZeroPattern>) -> Result<Vec<Vec<MFPoly>>> {
    spec.subscripts()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|w| match zero {
                    Some(z) if !z.keeps(w) => Ok(MFPoly::zero()),
                    _ => ramanujan_reduce(w),
                })
                .collect()
        })
        .collect()
}

fn check_square<R>(m: &[Vec<R>]) -> Result<usize> {
    let n = m.len();
    if n == 0 {
        return Err(Error::Shape("empty matrix".into()));
    }
    if let Some(r) = m.iter().position(|row| row.len() != n) {
        return Err(Error::Shape(format!("row {r} has {} entries, expected {n}", m[r].len())));
    }
    Ok(n)
}

/// Division-free determinant over any commutative ring.
///
/// Expands along rows while tracking which columns are used: the value
/// stored for a column set `S` is the signed sum over all placements of the
/// first `|S|` rows into `S`. Costs `n·2^{n-1}` ring multiplications.
pub fn det<R: Ring>(m: &[Vec<R>]) -> Result<R> {
    let n = check_square(m)?;
    let full = (1usize << n) - 1;
    let mut table: Vec<Option<R>> = vec![None; 1 << n];
    table[0] = Some(m[0][0].one_like());
    for set in 0..full {
        let Some(val) = table[set].take() else {
            continue;
        };
        if val.is_zero_elem() {
            continue;
        }
        let row = set.count_ones() as usize;
        for j in 0..n {
            if set & (1 << j) != 0 || m[row][j].is_zero_elem() {
                continue;
            }
            let above = (set >> (j + 1)).count_ones();
            let term = val.mul_ref(&m[row][j]);
            let next = set | (1 << j);
            table[next] = Some(match table[next].take() {
                None if above % 2 == 0 => term,
                None => term.neg_ref(),
                Some(acc) if above % 2 == 0 => acc.add_ref(&term),
                Some(acc) => acc.sub_ref(&term),
            });
        }
    }
    Ok(table[full].take().unwrap_or_else(|| m[0][0].zero_like()))
}

/// Determinant of a matrix of q-series; all entries must share variable
/// and order.
pub fn det_series(m: &[Vec<QSeries>]) -> Result<QSeries> {
    check_square(m)?;
    let first = &m[0][0];
    for row in m {
        for e in row {
            if e.var() != first.var() {
                return Err(Error::VarMismatch(first.var(), e.var()));
            }
            if e.order() != first.order() {
                return Err(Error::Shape(format!(
                    "entry orders differ: {} vs {}",
                    first.order(),
                    e.order()
                )));
            }
        }
    }
    det(m)
}

/// Certified Hankel-minor form of a constant-weight subscript matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HankelMinor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `det A = sign · det(minor)`.
    pub sign: i8,
}

impl HankelMinor {
    pub fn spec(&self) -> MinorSpec {
        MinorSpec::new(self.rows.clone(), self.cols.clone()).expect("validated on construction")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantWeightReport {
    pub n: usize,
    pub constant_weight: bool,
    /// Common weight of all permutation terms, when constant.
    #[serde(serialize_with = "ser_opt_rational")]
    pub weight: Option<Rational>,
    /// Present only when every subscript is an even integer greater than 2.
    pub hankel_minor: Option<HankelMinor>,
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => serde_rational::serialize(x, s),
        None => s.serialize_none(),
    }
}

fn find_repeat(lines: &[Vec<Rational>]) -> Option<(usize, usize)> {
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i] == lines[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// Sign of the permutation that sorts `xs` (distinct values).
fn sort_sign(xs: &[i64]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Decides whether every term of `det(E_{p_{i,j}})` has the same weight and,
/// for even-integer subscripts greater than 2, recovers the Hankel minor it
/// equals up to sign.
///
/// Constant weight is equivalent to `p_{i-1,j-1} + p_{i,j} = p_{i,j-1} +
/// p_{i-1,j}` on every adjacent 2x2 block.
pub fn classify(p: &[Vec<Rational>]) -> Result<ConstantWeightReport> {
    let n = check_square(p)?;
    if let Some((first, second)) = find_repeat(p) {
        return Err(Error::Repeated { kind: "row", first, second });
    }
    let cols: Vec<Vec<Rational>> = (0..n).map(|j| p.iter().map(|r| r[j].clone()).collect()).collect();
    if let Some((first, second)) = find_repeat(&cols) {
        return Err(Error::Repeated { kind: "column", first, second });
    }
    let constant_weight = (1..n).all(|i| {
        (1..n).all(|j| &p[i - 1][j - 1] + &p[i][j] == &p[i][j - 1] + &p[i - 1][j])
    });
    if !constant_weight {
        return Ok(ConstantWeightReport {
            n,
            constant_weight,
            weight: None,
            hankel_minor: None,
        });
    }
    let weight: Rational = (0..n).map(|i| p[i][i].clone()).sum();
    let two = BigInt::from(2);
    let certifiable = p.iter().flatten().all(|x| {
        x.is_integer() && x.numer().is_even() && x.numer() > &two
    });
    let hankel_minor = certifiable.then(|| {
        let half = |x: &Rational| -> i64 {
            (x.numer() / &two).try_into().expect("subscript fits in i64")
        };
        let row_off: Vec<i64> = (0..n).map(|i| half(&p[i][0]) - half(&p[0][0])).collect();
        let min_off = *row_off.iter().min().expect("n >= 1");
        let rows: Vec<i64> = row_off.iter().map(|o| o - min_off + 1).collect();
        let cols: Vec<i64> = (0..n).map(|j| half(&p[0][j]) - rows[0]).collect();
        let sign = sort_sign(&rows) * sort_sign(&cols);
        let sorted = |v: &[i64]| {
            let mut v: Vec<usize> = v.iter().map(|&x| x as usize).collect();
            v.sort_unstable();
            v
        };
        HankelMinor {
            rows: sorted(&rows),
            cols: sorted(&cols),
            sign,
        }
    });
    Ok(ConstantWeightReport {
        n,
        constant_weight,
        weight: Some(weight),
        hankel_minor,
    })
}

/// Integer subscript matrix as rationals.
pub fn subscripts_to_rational(p: &[Vec<u32>]) -> Vec<Vec<Rational>> {
    p.iter()
        .map(|row| row.iter().map(|&x| int(x)).collect())
        .collect()
}

/// Parses `"4,8;8,12"` (rows separated by `;`, entries by `,`).
pub fn parse_matrix(s: &str) -> Result<Vec<Vec<Rational>>> {
    s.split(';')
        .map(|row| row.split(',').map(crate::arith::parse_rational).collect())
        .collect()
}
