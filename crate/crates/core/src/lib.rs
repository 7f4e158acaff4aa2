//! Numerical laboratory for sharp existence/nonexistence criteria of Lane-Emden,
//! Hardy-Littlewood-Sobolev, Wolff-potential and γ-Laplace equations and systems.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`]: the [`Scalar`] abstraction (exact rationals, `f32`, `f64`) and the
//!   floating-point [`Real`] trait used by the numerical code.
//! * [`param_space`]: problem descriptions, critical exponents and classification.
//! * [`decay`]: decay-exponent recurrences certifying nonexistence.
//! * [`radial`]: radial functions, quadrature, Riesz/Wolff potentials and radial operators.
//! * [`families`]: explicit solution families and double-bound verification.
//! * [`shooting`]: radial shooting for the bi-Laplace system.
//! * [`identities`]: Pohozaev obstructions, green chains, energy and scaling identities.
//!
//! Exact-arithmetic aliases live at the crate root: use [`ExactProblemSpec`] and friends when
//! the sharp (equality) cases matter, and the `F64*` aliases for floating-point work.

// `!(x > 0)` is deliberate throughout: it rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decay;
pub mod error;
pub mod families;
pub mod identities;
pub mod param_space;
pub mod radial;
pub mod scalar;
pub mod shooting;

pub use error::{Error, Result};
pub use scalar::{parse_exact, Exact, Real, Scalar};

pub use decay::{scalar_decay_sequence, system_decay_sequence, DecaySequenceReport};
pub use param_space::{
    classify_finite_energy_scalar, classify_finite_energy_system, classify_variable_coeff_scalar,
    classify_variable_coeff_system, critical_set, CoeffMode, CriticalSet, DecayRate, Kernel,
    Mechanism, Outcome, ProblemSpec, Verdict,
};
pub use radial::{QuadratureConfig, RadialFunction};

/// Problem description over exact rationals.
pub type ExactProblemSpec = ProblemSpec<Exact>;
/// Problem description over `f64` (tolerance-based comparisons).
pub type F64ProblemSpec = ProblemSpec<f64>;
/// Classification result over exact rationals.
pub type ExactVerdict = Verdict<Exact>;
/// Classification result over `f64`.
pub type F64Verdict = Verdict<f64>;
/// Critical exponents over exact rationals.
pub type ExactCriticalSet = CriticalSet<Exact>;
/// Decay-exponent report over exact rationals.
pub type ExactDecayReport = DecaySequenceReport<Exact>;
/// Decay-exponent report over `f64`.
pub type F64DecayReport = DecaySequenceReport<f64>;
/// Radial function with `f64` evaluation.
pub type F64RadialFunction = RadialFunction<f64>;
