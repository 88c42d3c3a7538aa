//! Crate-wide error type.

use thiserror::Error;

use crate::equilibria::EquilibriumId;

/// Errors produced by the analysis pipeline.
///
/// Scope errors mirror the admissibility conditions of the model family:
/// the coefficient regimes the toolkit does not handle are rejected, never
/// silently approximated.
#[derive(Debug, Error)]
pub enum Error {
    /// `p12 * p22 >= 0` at the reference parameter: the scaled system either
    /// degenerates (zero product) or falls in the positive-product family,
    /// which has a different canonical form. Neither is handled here.
    #[error("raw coefficients out of scope: p12*p22 = {product} (must be negative)")]
    RawOutOfScope { product: f64 },

    /// Canonical coefficients with `gamma >= 0` belong to the positive-product
    /// family and are rejected for the same reason as [`Error::RawOutOfScope`].
    #[error("gamma = {gamma} is out of scope (the analyzed family has gamma < 0)")]
    GammaOutOfScope { gamma: f64 },

    /// `theta*delta = 0` or `theta - gamma*delta = 0`: the interior equilibrium
    /// machinery loses its nondegeneracy hypothesis.
    #[error("degenerate coefficients: {reason}")]
    DegenerateCoefficients { reason: String },

    /// `a = 0` together with `d = 0`: the sign of the node-focus discriminant
    /// cannot be decided from the terms this toolkit evaluates.
    #[error("unsupported: a = 0 with d = 0, the node-focus splitting is undetermined")]
    UnsupportedCubicCase,

    /// A non-finite or otherwise invalid numeric input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An equilibrium locator failed (no real root, ambiguous branch or a
    /// non-convergent Newton iteration).
    #[error("equilibrium {id}: {reason}")]
    EquilibriumNotFound { id: EquilibriumId, reason: String },

    /// A stated precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Closed-form characteristic quantities disagree with the
    /// finite-difference Jacobian beyond tolerance.
    #[error("oracle mismatch in {quantity}: closed-form {closed} vs numerical {numeric}")]
    OracleMismatch {
        quantity: &'static str,
        closed: f64,
        numeric: f64,
    },

    /// Two curves of the diagram have coinciding directions; the sector
    /// decomposition is not defined for such non-generic arrangements.
    #[error("curves {first} and {second} have equal angle {angle}; non-generic arrangement")]
    DegenerateArrangement {
        first: String,
        second: String,
        angle: f64,
    },

    /// A requested radius exceeds the configured analysis radius.
    #[error("radius {radius} exceeds the analysis radius {eps_param}")]
    RadiusOutOfRange { radius: f64, eps_param: f64 },

    /// The adaptive integrator could not meet its tolerance with any
    /// representable step size.
    #[error("step size underflow at t = {t}")]
    StepSizeUnderflow { t: f64 },

    /// No limit cycle was found in the searched annulus.
    #[error("no cycle found: {0}")]
    NoCycle(String),

    /// The first Lyapunov coefficient is below the degeneracy threshold;
    /// higher-codimension analysis is out of scope.
    #[error("degenerate Hopf point: |l1| = {l1:e} below threshold {threshold:e}")]
    DegenerateHopf { l1: f64, threshold: f64 },

    /// Configuration file or flag errors.
    #[error("config: {0}")]
    Config(String),

    /// Verification suite failure; carries the first failing assertion.
    #[error("verification failed: {0}")]
    VerifyFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the CLI for scripted consumption.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RawOutOfScope { .. } | Error::GammaOutOfScope { .. } => 2,
            Error::DegenerateCoefficients { .. } => 3,
            Error::UnsupportedCubicCase => 4,
            _ => 1,
        }
    }
}
