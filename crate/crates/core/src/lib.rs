//! Numerical invariants of hyperbolic twist-link cone-manifolds `W_p(α, β)`.
//!
//! The twist link `W_p` is the two-bridge link with slope `(4p+4)/(2p+1)`;
//! `W_1` is the Whitehead link. `W_p(α, β)` is the cone-manifold whose
//! underlying space is the 3-sphere, with cone angles `α`, `β` along the two
//! link components. This crate computes, in double precision:
//!
//! * complex and real lengths of the singular geodesics (`p ∈ {1, 2, 3}`),
//! * hyperbolic volumes of `W_1(α, β)` and `W_2(α, β)` by contour quadrature,
//!   plus a real-integral form on the diagonal `α = β` for `W_2`,
//! * the geometric-regime discriminant on the diagonal for `W_2`,
//! * an independent holonomy-matrix oracle (explicit `SL(2,C)` generators,
//!   longitude words, commutation residuals) used to verify every root and
//!   branch choice.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything here is safe to call concurrently from any number
//! of threads.
//!
//! Modules follow the pipeline: [`mat2c`] (complex 2×2 algebra and line
//! matrices) → [`holonomy`] (parametrized generators and group words) →
//! [`distance_eq`] (complex-distance polynomials and root selection) →
//! [`lengths`] (Tangent/Sine/Cosine rule machinery) → [`volume`] (contour
//! and real quadrature).

pub mod distance_eq;
pub mod holonomy;
pub mod lengths;
pub mod mat2c;
mod quad;
pub mod volume;

pub use distance_eq::{
    classify_regime_diagonal, cubic_w1, cubic_w2, distance_root, quintic_w3, select_root,
    solve_poly, w1_zeta_poly, zeta_quartic, zeta_root, PolyProvenance, PolySpec, Regime,
    RootSelection,
};
pub use holonomy::{
    build_generators, commutation_residual, evaluate_word, longitude_word, ConeParams, Gen,
    GroupWord,
};
pub use lengths::{complex_length, length_report, real_lengths, rule_residuals, Component,
    LengthReport};
pub use mat2c::{complex_distance, ComplexScalar, Mat2C, Tolerances};
pub use volume::{
    euclidean_diagonal_a0, euclidean_diagonal_alpha0, integrand_w2, schlafli_residual, volume_w1,
    volume_w2, volume_w2_diagonal, volume_w2_diagonal_with, volume_w1_with, volume_w2_with,
    QuadratureOptions, VolumeMethod, VolumeResult,
};

/// Errors produced by the library. Every fallible operation reports which
/// precondition or numerical guard failed; no NaN/Inf ever escapes silently.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not unimodular: |det - 1| = {0:.3e}")]
    NotUnimodular(f64),
    #[error("isometry is parabolic or the identity (tr^2 = 4): displacement undefined")]
    ParabolicOrIdentity,
    #[error("degenerate axis: displacement is zero, no line matrix")]
    DegenerateAxis,
    #[error("argument is not a line matrix (trace must vanish): |tr| = {0:.3e}")]
    NotLineMatrix(f64),
    #[error("cone angle is a cusp (alpha or beta = 0): holonomy generators degenerate")]
    CuspAngle,
    #[error("degenerate complex distance: u = ±1 gives coinciding axes")]
    DegenerateDistance,
    #[error("cone angles must lie in [0, pi], got alpha = {alpha}, beta = {beta}")]
    AngleOutOfRange { alpha: f64, beta: f64 },
    #[error("twist parameter p = {0} not supported here (need {1})")]
    UnsupportedP(u32, &'static str),
    #[error("root finder did not converge within the iteration cap")]
    NoConvergence,
    #[error("no root with positive imaginary part: outside the hyperbolic regime ({regime:?})")]
    NoHyperbolicRoot { regime: Regime },
    #[error("ambiguous root selection: candidates cannot be separated")]
    AmbiguousRoot,
    #[error("no branch of the complex length reproduces the holonomy trace")]
    BranchFailure,
    #[error("computed length has non-real residue |Im| = {0:.3e}")]
    NonRealLength(f64),
    #[error("length expected positive, got {0:.3e}")]
    NonPositiveLength(f64),
    #[error("integrand evaluated at a pole (z too close to ±1 or a log singularity)")]
    PoleHit,
    #[error("branch tracking detected a winding ambiguity along the contour")]
    BranchJump,
    #[error("quadrature error estimate {0:.3e} above target after max refinement")]
    QuadratureFailure(f64),
    #[error("diagonal angle {0} is at or beyond the Euclidean limit alpha0")]
    OutOfRegime(f64),
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error("step size must be positive and finite, got {0}")]
    BadStep(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
