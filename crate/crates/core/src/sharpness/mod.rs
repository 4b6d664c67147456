//! Maximisation of `Σ aᵢ cos αᵢ` over the angle simplex for fixed weights.
//!
//! On the closed simplex the maximum is attained either at an interior
//! point with `aᵢ sin αᵢ = λ > 0` (found by [`solve_stationary`]) or at a
//! vertex `α = π eⱼ`, the `λ → 0` end of the obtuse branch `j`, with value
//! `Σ_{i≠j} aᵢ − aⱼ`. Faces in between carry no critical points: a zero
//! angle forces `sin αᵢ = 0` on every positive angle. [`max_cosine_sum`]
//! takes the best of these candidates and cross-checks it with multi-start
//! projected gradient ascent.

mod ascent;
mod montecarlo;
mod stationary;

pub use montecarlo::{
    monte_carlo_records, monte_carlo_verify, sample_input, CheckSummary, MonteCarloConfig,
    MonteCarloSummary, SampleCheck, SampleRecord, DEFAULT_SEED,
};
pub use stationary::{solve_stationary, StationaryPoint, LAMBDA_FLOOR};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{heptagonal_rhs, pentagonal_rhs_normal, pentagonal_rhs_strong, WeightVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which engine produced the reported maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    LambdaBisection,
    GradientAscent,
    BothAgree,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::LambdaBisection => "lambda-bisection",
            Method::GradientAscent => "gradient-ascent",
            Method::BothAgree => "both-agree",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessOptions<T> {
    /// Agreement tolerance; the two engines must agree within `10 · tol`.
    pub tol: T,
    pub starts: usize,
    pub max_iter: usize,
    /// Stop when the projected gradient norm falls below this.
    pub grad_tol: T,
    /// Seed for the random simplex starts.
    pub seed: u64,
}

impl<T: Real> Default for SharpnessOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::tol(1e-9),
            starts: 16,
            max_iter: 10_000,
            grad_tol: T::tol(1e-10),
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpnessReport<T> {
    pub weights: Vec<T>,
    pub max_value: T,
    /// Angles attaining `max_value`. On the closed simplex: at a vertex all
    /// but one entry are zero.
    pub maximizer: Vec<T>,
    pub on_boundary: bool,
    /// `λ` of the best interior critical point, when that point is the maximiser.
    pub lambda: Option<T>,
    /// Best of interior critical points and vertices.
    pub bisection_value: T,
    /// Best converged gradient-ascent value, if any start converged.
    pub gradient_value: Option<T>,
    pub gradient_norm: Option<T>,
    /// Strong pentagonal bound of the sorted weights (five weights only).
    pub rhs_strong: Option<T>,
    /// Normal pentagonal bound (five weights) or heptagonal bound (seven).
    pub rhs_normal: Option<T>,
    pub gap_strong: Option<T>,
    pub gap_normal: Option<T>,
    pub equality_found: bool,
    pub method: Method,
    pub methods_agree: bool,
}

/// Gap below which a maximum counts as attaining the bound, relative to `max(1, rhs)`.
pub const EQUALITY_TOL: f64 = 1e-7;

struct Candidate<T> {
    value: T,
    alpha: Vec<T>,
    lambda: Option<T>,
    on_boundary: bool,
}

/// Maximises `Σ aᵢ cos αᵢ` over `{α ≥ 0, Σαᵢ = π}` and compares the maximum
/// with the applicable bounds.
pub fn max_cosine_sum<T: Real>(
    weights: &WeightVector<T>,
    opts: &SharpnessOptions<T>,
) -> Result<SharpnessReport<T>> {
    if !(opts.tol > T::zero()) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if opts.starts == 0 {
        return Err(Error::invalid("need at least one gradient-ascent start"));
    }
    let a = weights.as_slice();
    let n = a.len();
    let total: T = a.iter().copied().sum();

    // Interior critical points, then vertices.
    let mut interior: Option<Candidate<T>> = None;
    let masks = std::iter::once(None).chain((0..n).map(Some));
    for mask in masks {
        let mask: Vec<usize> = mask.into_iter().collect();
        if let Some(p) = solve_stationary(weights, &mask)? {
            if interior.as_ref().is_none_or(|c| p.value > c.value) {
                interior = Some(Candidate {
                    value: p.value,
                    alpha: p.alpha,
                    lambda: Some(p.lambda),
                    on_boundary: false,
                });
            }
        }
    }
    let has_interior = interior.is_some();
    let mut best = interior;
    for (j, &aj) in a.iter().enumerate() {
        let value = total - aj - aj;
        if best.as_ref().is_none_or(|c| value > c.value) {
            let mut alpha = vec![T::zero(); n];
            alpha[j] = T::PI();
            best = Some(Candidate {
                value,
                alpha,
                lambda: None,
                on_boundary: true,
            });
        }
    }
    let best = best.expect("vertices always give a candidate");

    // Multi-start ascent: the uniform point plus random simplex points.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let nt = T::from_usize(n).expect("small");
    let mut starts = vec![vec![T::PI() / nt; n]];
    while starts.len() < opts.starts {
        let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let s: f64 = e.iter().sum();
        starts.push(
            e.iter()
                .map(|&x| T::lit(x / s * std::f64::consts::PI))
                .collect(),
        );
    }
    let mut ascent_best: Option<ascent::AscentResult<T>> = None;
    let mut closest_norm: Option<T> = None;
    let mut iterations = 0;
    for start in &starts {
        let r = ascent::ascend(a, start, opts.grad_tol, opts.max_iter);
        iterations += r.iterations;
        closest_norm = Some(closest_norm.map_or(r.gradient_norm, |c: T| c.min(r.gradient_norm)));
        if r.converged && ascent_best.as_ref().is_none_or(|b| r.value > b.value) {
            ascent_best = Some(r);
        }
    }

    if ascent_best.is_none() && !has_interior {
        return Err(Error::Convergence {
            message: format!(
                "no interior critical point and gradient ascent did not converge from {} starts",
                starts.len()
            ),
            best_value: best.value.to_f64(),
            best_gradient_norm: closest_norm.and_then(|c| c.to_f64()),
            iterations,
        });
    }

    let agree_tol = opts.tol * T::lit(10.0);
    let (max_value, maximizer, lambda, on_boundary, method, methods_agree) = match &ascent_best {
        Some(g) if (g.value - best.value).abs() <= agree_tol => (
            best.value,
            best.alpha.clone(),
            best.lambda,
            best.on_boundary,
            Method::BothAgree,
            true,
        ),
        Some(g) if g.value > best.value => (
            g.value,
            g.alpha.clone(),
            None,
            g.alpha.iter().any(|&t| t == T::zero()),
            Method::GradientAscent,
            false,
        ),
        Some(_) => (
            best.value,
            best.alpha.clone(),
            best.lambda,
            best.on_boundary,
            Method::LambdaBisection,
            false,
        ),
        None => (
            best.value,
            best.alpha.clone(),
            best.lambda,
            best.on_boundary,
            Method::LambdaBisection,
            true,
        ),
    };

    let (rhs_strong, rhs_normal) = match n {
        5 => (
            Some(pentagonal_rhs_strong(&weights.sorted())?),
            Some(pentagonal_rhs_normal(weights)?),
        ),
        7 => (None, Some(heptagonal_rhs(weights)?)),
        _ => (None, None),
    };
    let gap_strong = rhs_strong.map(|r| r - max_value);
    let gap_normal = rhs_normal.map(|r| r - max_value);
    let equality_found = match (rhs_strong.or(rhs_normal), gap_strong.or(gap_normal)) {
        (Some(rhs), Some(gap)) => gap.abs() <= T::lit(EQUALITY_TOL) * rhs.abs().max(T::one()),
        _ => false,
    };

    Ok(SharpnessReport {
        weights: a.to_vec(),
        max_value,
        maximizer,
        on_boundary,
        lambda,
        bisection_value: best.value,
        gradient_value: ascent_best.as_ref().map(|g| g.value),
        gradient_norm: ascent_best
            .as_ref()
            .map(|g| g.gradient_norm)
            .or(closest_norm),
        rhs_strong,
        rhs_normal,
        gap_strong,
        gap_normal,
        equality_found,
        method,
        methods_agree,
    })
}
