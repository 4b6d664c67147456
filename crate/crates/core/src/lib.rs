//! Sharp upper bounds for weighted cosine sums `Σ aᵢ cos αᵢ` over angles
//! summing to π, for five weights (the pentagonal bounds, normal and strong
//! forms) and seven weights (the heptagonal bound), together with the
//! machinery to check them numerically.
//!
//! The crate is organised bottom-up:
//!
//! - [`forms`]: the cyclic window-product sums `φ` (n = 5, window 3) and
//!   `ψ` (n = 7, window 4).
//! - [`arrangements`]: circular arrangements of five weights, the
//!   `φ`-minimising arrangement `σ₀ = (a₁, a₅, a₂, a₃, a₄)` and the table of
//!   twelve difference identities that certify it.
//! - [`bounds`]: evaluators for every bound, the bound checks and the
//!   substitutions that reduce each bound to Fejes Tóth's polygon inequality.
//! - [`sharpness`]: maximisation of the cosine sum over the angle simplex
//!   and a seeded Monte-Carlo search for counterexamples.
//!
//! Everything is generic over the scalar type. The polynomial layers
//! ([`forms`], [`arrangements`]) accept any [`Scalar`], including integers
//! and exact rationals; the trigonometric layers need a [`Real`]. The
//! aliases at the crate root fix the scalar to `f64`, `f32` or
//! [`Rational`].
//!
//! Indices are 1-based in documentation (`a₁..aₙ`) and 0-based in code.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arrangements;
pub mod bounds;
pub mod error;
pub mod forms;
pub mod scalar;
pub mod sharpness;

pub use arrangements::{
    enumerate_arrangements, enumerate_circular, lemma1_residuals, min_phi_arrangement,
    min_psi_arrangement, sigma0, CyclicArrangement, IdentityResidual, LEMMA1_IDENTITIES,
};
pub use bounds::{
    cos_pi_over_5, cosine_sum, equality_condition_spread, heptagonal_bound_check, heptagonal_rhs,
    heptagonal_substitution, lemma2_bound_check, lemma2_rhs, lemma2_substitution,
    odd_n_bound_check, odd_n_rhs_experimental, pentagonal_bound_check, pentagonal_rhs_normal,
    pentagonal_rhs_strong, toth_bound_check, toth_from_pentagonal, toth_rhs, AngleVector,
    BoundReport, PentagonalForm, SubstitutionCheck, SubstitutionResult, Theorem, TothRoundTrip,
    WeightVector,
};
pub use error::{Error, Result};
pub use forms::{cyclic_window_sum, phi, psi, CyclicVector};
pub use scalar::{Real, Scalar};
pub use sharpness::{
    max_cosine_sum, monte_carlo_verify, solve_stationary, CheckSummary, Method, MonteCarloConfig,
    MonteCarloSummary, SampleRecord, SharpnessOptions, SharpnessReport, StationaryPoint,
};

/// Exact rational scalar used by the polynomial layers.
pub type Rational = num_rational::Ratio<i128>;

pub type CyclicVectorF64 = CyclicVector<f64>;
pub type CyclicVectorF32 = CyclicVector<f32>;
pub type CyclicVectorExact = CyclicVector<Rational>;

pub type CyclicArrangementF64 = CyclicArrangement<f64>;
pub type CyclicArrangementExact = CyclicArrangement<Rational>;
pub type IdentityResidualF64 = IdentityResidual<f64>;
pub type IdentityResidualExact = IdentityResidual<Rational>;

pub type WeightVectorF64 = WeightVector<f64>;
pub type WeightVectorF32 = WeightVector<f32>;
pub type AngleVectorF64 = AngleVector<f64>;
pub type AngleVectorF32 = AngleVector<f32>;
pub type BoundReportF64 = BoundReport<f64>;
pub type SubstitutionResultF64 = SubstitutionResult<f64>;

pub type StationaryPointF64 = StationaryPoint<f64>;
pub type SharpnessReportF64 = SharpnessReport<f64>;
