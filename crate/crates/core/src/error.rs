use alloc::string::String;

/// Errors raised by the numeric core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A family name could not be recognized.
    #[error("unsupported polynomial family `{0}`")]
    UnsupportedFamily(String),
    /// The request needs recurrence coefficients (or quadrature nodes)
    /// beyond what was precomputed.
    #[error("degree {requested} exceeds the available maximum {available}")]
    DegreeOutOfRange {
        /// Degree asked for.
        requested: usize,
        /// Largest degree that can be served.
        available: usize,
    },
    /// The requested maximum degree is above the configured cap.
    #[error("max degree {requested} is above the cap {cap}; raise the cap explicitly")]
    DegreeCap {
        /// Degree asked for.
        requested: usize,
        /// Active cap.
        cap: usize,
    },
    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The tridiagonal eigensolver did not converge.
    #[error("tridiagonal eigensolver did not converge at index {index}")]
    EigenFailure {
        /// Index of the eigenvalue that failed to deflate.
        index: usize,
    },
    /// Newton refinement did not converge.
    #[error("Newton refinement did not converge from seed {seed} within {iterations} iterations")]
    NoConvergence {
        /// Offending starting point.
        seed: f64,
        /// Iterations spent.
        iterations: usize,
    },
    /// A polynomial that should split over the reals has complex zeros.
    #[error("expected {expected} real zeros, found {found}")]
    MissingRealZeros {
        /// Real zeros located.
        found: usize,
        /// Degree of the polynomial.
        expected: usize,
    },
    /// Refined zeros lost the ordering of their seeds.
    #[error("refined zeros from seeds {first} and {second} are out of order or coincide")]
    ZeroOrdering {
        /// Seed of the lower zero.
        first: f64,
        /// Seed of the upper zero.
        second: f64,
    },
    /// A computed zero fails its residual check.
    #[error("zero {zero} has residual {residual} above the tolerance {tolerance}")]
    ZeroResidual {
        /// Zero under test.
        zero: f64,
        /// |p(zero)|.
        residual: f64,
        /// Allowed residual.
        tolerance: f64,
    },
    /// Synthetic division left a remainder above tolerance.
    #[error("division by (x - {root}) left remainder {remainder} above tolerance {tolerance}")]
    DivisionResidual {
        /// Root of the linear factor.
        root: f64,
        /// Remainder magnitude.
        remainder: f64,
        /// Allowed remainder.
        tolerance: f64,
    },
    /// Recurrence-generated and quadrature-generated tau disagree.
    #[error("tau({i}, k={k}) mismatch: recurrence {recurrence}, quadrature {direct}")]
    TauMismatch {
        /// Row (degree of the orthonormal factor).
        i: usize,
        /// Column (1-based zero index).
        k: usize,
        /// Value from the recurrence.
        recurrence: f64,
        /// Value from direct quadrature.
        direct: f64,
    },
    /// The derivative at a zero is too small for a simple-zero analysis.
    #[error("derivative {derivative} at {at} is too small to treat the zero as simple")]
    SingularDerivative {
        /// Point of evaluation.
        at: f64,
        /// f'(at).
        derivative: f64,
    },
    /// The point handed in is not a zero of the polynomial.
    #[error("{at} is not a zero: residual {residual}")]
    NotAZero {
        /// Point of evaluation.
        at: f64,
        /// |f(at)|.
        residual: f64,
    },
    /// A linear system is singular to working precision.
    #[error("singular linear system (pivot {pivot} at column {column})")]
    Singular {
        /// Column where elimination broke down.
        column: usize,
        /// Magnitude of the offending pivot.
        pivot: f64,
    },
    /// A linear system is too ill-conditioned to trust.
    #[error("ill-conditioned linear system: condition estimate {condition:e} above {limit:e}")]
    IllConditioned {
        /// 1-norm condition estimate.
        condition: f64,
        /// Limit that was exceeded.
        limit: f64,
    },
    /// An inner-product pattern does not hold.
    #[error("orthogonality pattern violated at j = {j}: value {value}, expected {expected}")]
    PatternViolation {
        /// Index of the offending inner product.
        j: usize,
        /// Measured value.
        value: f64,
        /// Expected value.
        expected: f64,
    },
}

/// Result alias for the numeric core.
pub type Result<T> = core::result::Result<T, Error>;
