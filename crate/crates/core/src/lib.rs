//! Exact computations with Eisenstein series, the modular discriminant and
//! Hankel determinants built from them.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! series are truncated formal power series with an explicit order. The
//! series ring and the determinant kernel are generic over their coefficient
//! ring (see [`Scalar`] and [`Ring`]); the concrete instantiations used
//! throughout the crate are exported as aliases below.
//!
//! Module map:
//! - [`arith`]: Bernoulli numbers, divisor power sums, rational helpers
//! - [`series`]: truncated power series `Series<C>`
//! - [`modforms`]: q-expansions of `E_2n`, `Δ`, theta constants and the
//!   elliptic parameters `k²`, `z²`
//! - [`mfpoly`] / [`e4e6`]: the weighted polynomial ring in `E4`, `E6`,
//!   Ramanujan's recursion, reduction of series onto monomial bases
//! - [`hankel`]: minors of the Hankel array of Eisenstein series, the
//!   division-free determinant and the constant-weight classifier
//! - [`identities`]: the determinant identity catalog and the discovery
//!   engine for the infinite Hankel families
//! - [`jacobi`]: Maclaurin/Laurent coefficients of `sn` and `ns²` and the
//!   nome-parametrized checks built on them
//! - [`cli`]: the `ehankel` command-line front end

pub mod arith;
pub mod cli;
pub mod e4e6;
pub mod error;
pub mod hankel;
pub mod identities;
pub mod jacobi;
pub mod linalg;
pub mod mfpoly;
pub mod modforms;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use mfpoly::MFPoly;
pub use poly::Poly;
pub use scalar::{Ring, Scalar};
pub use series::{Series, Var};

/// Exact rational scalar used everywhere in the crate.
pub type Rational = num_rational::BigRational;

/// Truncated power series over the rationals (in `q` or `w = q^{1/2}`).
pub type QSeries = Series<Rational>;

/// Univariate polynomial in `κ = k²` over the rationals.
pub type KPoly = Poly<Rational>;

/// Power series whose coefficients are polynomials in `κ`.
pub type KSeries = Series<KPoly>;
