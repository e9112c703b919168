use thiserror::Error;

use crate::lattice::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element is not positive: coordinate {index} is negative")]
    NotPositive { index: usize },

    #[error("invalid norm weights: {0}")]
    InvalidWeights(String),

    #[error("product is not positive: c[{}][{}][{}] < 0", .0.0 + 1, .0.1 + 1, .0.2 + 1)]
    NotPositiveProduct((usize, usize, usize)),

    #[error("required algebra axioms fail: {0}")]
    AxiomsFailed(String),

    #[error("norm is not an AM-norm (weighted sup required)")]
    NotAm,

    #[error("the product has no two-sided identity")]
    NoIdentity,

    #[error("identity {identity:?} is not the order unit {order_unit:?} of the unit ball")]
    IdentityNotOrderUnit { identity: Element, order_unit: Element },

    #[error("invariant violated: {0}")]
    TheoremViolation(String),

    #[error("constraint system does not define a subalgebra")]
    NotSubalgebra,

    #[error("constraint {index} neither vanishes, glues nor is forced zero although the subspace is a subalgebra")]
    ContradictsSubalgebra { index: usize },

    #[error("index {index} lies outside the support of the identity")]
    IndexOutsideSupport { index: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("not represented pointwise: {0}")]
    NotRepresentedPointwise(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
