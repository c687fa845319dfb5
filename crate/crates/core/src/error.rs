//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the exact and numeric layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A Pochhammer factor or closed-form denominator vanishes for the
    /// requested parameters. Carries the vanishing factor spelled out.
    #[error("degenerate parameters: factor {factor} vanishes")]
    DegenerateParameter { factor: String },

    /// A seed passed to the Darboux machinery is not an eigenpair of the
    /// pencil it is used with.
    #[error("seed is not an eigenfunction: (L1 - {eigenvalue} L2) seed != 0")]
    NotAnEigenpair { eigenvalue: String },

    /// phi_tilde_2 = (L2 phi)/phi vanishes identically, so the pencil cannot
    /// be factored through this seed.
    #[error("L2 annihilates the seed; phi_tilde_2 = 0")]
    SeedAnnihilated,

    /// A transformed-operator coefficient failed to reduce to a rational
    /// function (leftover gauge exponents), indicating an invalid seed/gauge
    /// combination.
    #[error("gauge exponents do not cancel in {what}")]
    GaugeMismatch { what: String },

    /// Index outside an exceptional family's index set.
    #[error("index {n} is not in the index set of the type-{j0} family (l0 = {l0})")]
    IndexOutOfSet { j0: u8, l0: u32, n: i64 },

    /// The two construction routes for an exceptional polynomial disagree.
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),

    /// A weight or bilinear form was requested whose integral diverges.
    /// Carries the violated condition by name.
    #[error("divergent integral: condition {condition} violated ({detail})")]
    DivergentWeight { condition: String, detail: String },

    /// Evaluation hit a pole of a rational factor on the unit circle.
    #[error("pole on the unit circle at x = {x}: {factor}")]
    PoleOnCircle { x: f64, factor: String },

    /// Gamma function evaluated at a nonpositive integer.
    #[error("gamma pole at {argument}")]
    GammaPole { argument: String },

    /// Wronskian of the requested seed list vanishes identically.
    #[error("Wronskian of the seed list vanishes (dependent seeds)")]
    WronskianVanishes,

    /// Stage eigenvalue collision in a multi-step transform.
    #[error("eigenvalue {lambda} collides with stage eigenvalue kappa({stage})")]
    EigenvalueCollision { lambda: String, stage: usize },

    /// Division by a zero polynomial / rational function.
    #[error("division by zero in {0}")]
    DivisionByZero(String),

    /// logderiv_split called on a quasi-rational function whose rational part
    /// is not 1.
    #[error("logderiv_split requires a pure gauge (rational part 1)")]
    NotPureGauge,

    /// Invalid run configuration (CLI layer).
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
