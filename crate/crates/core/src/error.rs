//! Shared error type for all engines.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A rational function was constructed with an identically-zero denominator.
    #[error("zero denominator polynomial")]
    ZeroDenominator,
    /// An exact identity check failed; the witness carries the nonzero difference.
    #[error("identity `{check}` failed: {witness}")]
    IdentityFailed { check: String, witness: String },
    /// The Legendre or Weierstrass form is singular at the requested parameter.
    #[error("singular curve at {0}")]
    SingularCurve(String),
    /// The Hesse pencil member is singular (m^3 = 1 or m = infinity).
    #[error("singular pencil member at {0}")]
    SingularMember(String),
    /// The cusp point of the compactified moduli space has no automorphism group.
    #[error("cusp point (h = infinity)")]
    CuspPoint,
    /// Complex root refinement did not reach the requested tolerance.
    #[error("root refinement diverged: residual {residual:e} for target {target}")]
    RootFindingDiverged { target: String, residual: f64 },
    /// Two roots look distinct but are closer than 10x the dedup tolerance.
    #[error("ambiguous root cluster near {near}: separation {separation:e}")]
    DedupAmbiguity { near: String, separation: f64 },
    /// Curve continuation jumped farther than the adaptive threshold.
    #[error("continuation jump at sample {at}: step {step:e} exceeds threshold {threshold:e}")]
    ContinuationJump { at: String, step: f64, threshold: f64 },
    /// A decorated complex violated a structural invariant.
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    /// The requested level exceeds the per-operation size limit.
    #[error("size limit exceeded: level {level} > {max}")]
    SizeLimit { level: u32, max: u32 },
    /// An exact euclidean predicate (angle, length, area) failed.
    #[error("geometry violation: {0}")]
    GeometryViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
