//! Error type shared by the whole crate.
//!
//! Every fallible operation in this crate returns [`crate::Result`]. The
//! variants are grouped by subsystem: geometry preconditions, interaction-law
//! domain errors, linear algebra, the nonlinear solver, and configuration /
//! i/o plumbing.

/// Crate-wide error enum.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar parameter violated a documented precondition.
    #[error("parameter `{name}` out of range: {detail}")]
    Parameter {
        /// Name of the offending parameter.
        name: &'static str,
        /// Human-readable description of the violated precondition.
        detail: String,
    },

    /// Element coordinate outside the reference domain [-1, 1].
    #[error("element coordinate xi = {xi} outside the reference domain [-1, 1]")]
    XiOutOfRange {
        /// The offending coordinate.
        xi: f64,
    },

    /// Element geometry is degenerate (zero-length, vanishing Jacobian, ...).
    #[error("degenerate element geometry: {detail}")]
    DegenerateElement {
        /// Description of the degeneracy.
        detail: String,
    },

    /// Two cross-section centroids (nearly) coincide; the unit separation
    /// direction is undefined.
    #[error("cross-section centroids nearly coincide (centroid distance {d:.3e})")]
    CoincidentCentroids {
        /// Centroid distance that triggered the error.
        d: f64,
    },

    /// A singular (unregularized) interaction law was evaluated at a
    /// nonpositive surface gap during pair quadrature.
    #[error(
        "nonpositive surface gap g = {g:.6e} at quadrature coordinates \
         (xi1, xi2) = ({xi1:.4}, {xi2:.4}) for a singular interaction law"
    )]
    SingularGap {
        /// Offending surface gap.
        g: f64,
        /// Coordinate on the first element.
        xi1: f64,
        /// Coordinate on the second element.
        xi2: f64,
    },

    /// An interaction law was constructed or evaluated outside its domain.
    #[error("interaction law domain error: {detail}")]
    LawDomain {
        /// Description of the domain violation.
        detail: String,
    },

    /// The hard-sphere point law has no smooth section-section reduction.
    #[error("the hard-sphere point law admits no smooth section-section potential")]
    HardSphereNotSmooth,

    /// LU factorization hit a (near-)zero pivot.
    #[error("linear system is singular or ill-conditioned")]
    SingularMatrix,

    /// The post-solve residual check `|K dx - r| / |r| < 1e-10` failed.
    #[error("linear solve residual check failed: |K dx - r|/|r| = {rel:.3e}")]
    LinearSolveCheck {
        /// Measured relative residual of the linear solve.
        rel: f64,
    },

    /// Newton iteration exhausted its iteration budget.
    #[error(
        "Newton did not converge within {max_iters} iterations \
         (|R| = {res_norm:.3e}, |dX| = {dx_norm:.3e})"
    )]
    NewtonDiverged {
        /// Iteration budget that was exhausted.
        max_iters: usize,
        /// Final residual norm.
        res_norm: f64,
        /// Final increment norm.
        dx_norm: f64,
    },

    /// Adaptive load stepping reduced the step below the allowed minimum.
    #[error(
        "load step underflow at load factor {load_factor:.6}: \
         step {step:.3e} fell below the minimum {min_step:.3e}"
    )]
    StepUnderflow {
        /// Load factor reached when the underflow occurred.
        load_factor: f64,
        /// Step size that would have been tried next.
        step: f64,
        /// Configured minimum step size.
        min_step: f64,
    },

    /// Scenario configuration failed validation.
    #[error("invalid scenario config: {0}")]
    Config(String),

    /// Filesystem error while reading configs or writing outputs.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization error.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Convenience constructor for [`Error::Parameter`].
    pub fn parameter(name: &'static str, detail: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            detail: detail.into(),
        }
    }

    /// Convenience constructor for [`Error::LawDomain`].
    pub fn law(detail: impl Into<String>) -> Self {
        Error::LawDomain {
            detail: detail.into(),
        }
    }
}
