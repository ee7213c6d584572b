use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("exponent at position {pos} is not an integer")]
    NonIntegerExponent { pos: usize },
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("coordinate {index} is zero but appears with a negative exponent")]
    ZeroToNegativePower { index: usize },
    #[error("point has a zero coordinate at index {index}")]
    NotTorusPoint { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("columns are linearly dependent")]
    DependentColumns,
    #[error("the zero polynomial cannot be analyzed")]
    ZeroPolynomial,
    #[error("a monomial (or constant) has an empty zero set in the torus")]
    ConstantPolynomial,
    #[error("lattice point enumeration exceeds the budget of {budget} points")]
    LatticeBudgetExceeded { budget: usize },
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("face {face} lies in {facets} facets but has codimension {codim}")]
    ModifiedSimpleFails { face: usize, facets: usize, codim: usize },
    #[error("support pattern is not realizable on any face")]
    UnrealizableSupport,
    #[error("vector is not in the integer span of the face")]
    NotInFaceLattice,
    #[error("face {0} carries no terms of the polynomial")]
    NoFaceTerms(usize),
    #[error("face polynomial is identically zero")]
    DegenerateFacePolynomial,
    #[error("face {face} has singular sub-face {subface}; the verdict is deferred to it")]
    DeferredToSubface { face: usize, subface: usize },
    #[error("no face with id {0}")]
    UnknownFace(usize),
    #[error("substituting a non-monomial into a negative power")]
    NonInvertibleSubstitution,
    #[error("{0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}
