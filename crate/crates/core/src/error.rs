use thiserror::Error;

use crate::series::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: {0} vs {1}")]
    VarMismatch(Var, Var),

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("cannot divide by {var}^{shift}: coefficient of {var}^{index} is nonzero")]
    NonzeroBelowShift { var: Var, shift: usize, index: usize },

    #[error("not a series in q: coefficient of w^{index} is nonzero")]
    NonzeroOddCoefficient { index: usize },

    #[error("expected a series in {expected}, got {found}")]
    WrongVar { expected: Var, found: Var },

    #[error("square root needs even valuation, found valuation {0}")]
    OddValuation(usize),

    #[error("leading coefficient {0} is not the square of a rational")]
    NonSquareLeading(String),

    #[error("series is zero to its full order {0}")]
    ZeroSeries(usize),

    #[error(
        "E_2 is not a holomorphic modular form (its expansion carries the non-holomorphic \
         term -3/(pi y)); Eisenstein series start at weight 4"
    )]
    WeightTwo,

    #[error("invalid Eisenstein weight {0}: must be an even integer >= 4")]
    InvalidWeight(u32),

    #[error("polynomial is not homogeneous")]
    NonHomogeneous,

    #[error("series is not in the span of weight-{weight} monomials: mismatch at q^{index}")]
    NotInSpan { weight: u32, index: usize },

    #[error("insufficient order {have}: need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("singular linear system")]
    Singular,

    #[error("chi_{n}^({m}) is identically zero for n < m")]
    ZeroChi { n: usize, m: usize },

    #[error("invalid minor: {0}")]
    InvalidMinor(String),

    #[error("matrix is not square or has mismatched entries: {0}")]
    Shape(String),

    #[error("repeated {kind} {first} and {second}")]
    Repeated { kind: &'static str, first: usize, second: usize },

    #[error("division by X is not exact: monomial X^0 Y^{0} present")]
    NotDivisibleByX(u32),

    #[error("unknown identity id {0:?}")]
    UnknownId(String),

    #[error("parse error: {0}")]
    Parse(String),
}
