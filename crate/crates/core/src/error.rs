use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed scalar {0:?}; expected \"n\" or \"n/d\"")]
    MalformedScalar(String),
    #[error("entry ({row},{col}) outside a {rows}x{cols} matrix")]
    IndexOutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("dimension mismatch in {context}: {left:?} vs {right:?}")]
    DimensionMismatch { context: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("composite of consecutive differentials is nonzero")]
    NotAComplex,

    #[error("malformed input: {0}")]
    MalformedSpec(String),
    #[error("multiplication is not associative on basis triple {triple:?}")]
    NonAssociative { triple: (usize, usize, usize) },
    #[error("basis element {unit} is not a two-sided unit (fails on e_{witness})")]
    BadUnit { unit: usize, witness: usize },
    #[error("product e_{i}*e_{j} has a component on e_{k} of the wrong degree")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("degree filter requested on an ungraded algebra")]
    FilterWithoutGrading,

    #[error("operator of input arity {k} cannot act on tensor power {n}")]
    ArityTooLarge { k: usize, n: usize },
    #[error("overlap size {s} is out of range for bi-arities {f:?} and {g:?}")]
    OverlapOutOfRange { s: usize, f: (usize, usize), g: (usize, usize) },
    #[error("operators live over algebras of different dimension ({0} vs {1})")]
    AlgebraMismatch(usize, usize),
    #[error("arity violation: {0}")]
    ArityViolation(String),

    #[error("window does not fit the algebra: {0}")]
    WindowMismatch(String),
    #[error("invariant failed: {0}")]
    InvariantFailure(String),

    #[error("algebra {0} has no unit")]
    NoUnit(String),
    #[error("component at bi-arity {0:?} does not have total degree 1")]
    DegreeViolation((usize, usize)),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("Q_{{i+1}} Q_i is nonzero at i = {0}")]
    NotAComplexAt(usize),
    #[error("Jacobi identity fails on generators {triple:?}")]
    JacobiFailure { triple: (usize, usize, usize) },
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("representative {0} is not closed")]
    ClosednessFailure(String),

    #[error("unknown built-in name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
