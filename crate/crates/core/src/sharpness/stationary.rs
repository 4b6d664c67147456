//! Interior critical points of `Σ aᵢ cos αᵢ` on the angle simplex.
//!
//! The Lagrange condition is `aᵢ sin αᵢ = λ` for all `i`. For `λ ∈ (0, m]`
//! with `m = min aᵢ`, each angle is either `arcsin(λ/aᵢ)` (acute branch) or
//! `π − arcsin(λ/aᵢ)` (obtuse branch). At most one angle can be obtuse
//! since two would already sum past π, so the candidates are the empty mask
//! and the `n` single-index masks. For a mask, `λ` is fixed by `Σαᵢ(λ) = π`.
//!
//! The solve is done in `θ = arcsin(λ/m) ∈ (0, π/2]` rather than in `λ`:
//! the map is monotone so the root is the same, and every `αᵢ(θ)` stays
//! smooth up to `θ = π/2`, where `∂αᵢ/∂λ` blows up for the smallest weight.

use serde::Serialize;

use crate::bounds::{raw_cosine_sum, WeightVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Lower end of the `λ` bracket.
pub const LAMBDA_FLOOR: f64 = 1e-15;
const COARSE_GRID: usize = 64;
const DENSE_GRID: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryPoint<T> {
    pub alpha: Vec<T>,
    /// Common value of `aᵢ sin αᵢ`.
    pub lambda: T,
    /// `Σ aᵢ cos αᵢ` at `alpha`.
    pub value: T,
    /// 0-based index on the obtuse branch, if any.
    pub obtuse: Option<usize>,
    /// `Σαᵢ − π`.
    pub sum_residual: T,
    /// `max |aᵢ sin αᵢ − λ|`.
    pub lagrange_residual: T,
    /// Whether `Σαᵢ(λ)` was monotone on the bracket; otherwise a dense scan located the root.
    pub monotone: bool,
}

struct Branches<'a, T> {
    weights: &'a [T],
    min_weight: T,
    obtuse: Option<usize>,
}

impl<T: Real> Branches<'_, T> {
    fn angle(&self, i: usize, theta: T) -> T {
        let w = self.weights[i];
        let acute = if w == self.min_weight {
            theta
        } else {
            ((self.min_weight / w) * theta.sin()).min(T::one()).asin()
        };
        if self.obtuse == Some(i) {
            T::PI() - acute
        } else {
            acute
        }
    }

    /// `Σαᵢ(θ) − π`, arranged so the obtuse mask does not cancel two π terms.
    fn excess(&self, theta: T) -> T {
        let n = self.weights.len();
        match self.obtuse {
            None => (0..n).map(|i| self.angle(i, theta)).sum::<T>() - T::PI(),
            Some(j) => {
                let rest: T = (0..n)
                    .filter(|&i| i != j)
                    .map(|i| self.angle(i, theta))
                    .sum();
                let acute_j = T::PI() - self.angle(j, theta);
                rest - acute_j
            }
        }
    }

    fn point(&self, theta: T, monotone: bool) -> StationaryPoint<T> {
        let n = self.weights.len();
        let alpha: Vec<T> = (0..n).map(|i| self.angle(i, theta)).collect();
        let lambda = self.min_weight * theta.sin();
        let lagrange_residual = alpha
            .iter()
            .zip(self.weights)
            .map(|(&t, &w)| (w * t.sin() - lambda).abs())
            .fold(T::zero(), T::max);
        let sum_residual = alpha.iter().copied().sum::<T>() - T::PI();
        StationaryPoint {
            value: raw_cosine_sum(self.weights, &alpha),
            alpha,
            lambda,
            obtuse: self.obtuse,
            sum_residual,
            lagrange_residual,
            monotone,
        }
    }
}

/// Solves `aᵢ sin αᵢ = λ, Σαᵢ = π` on the branch given by `obtuse` (empty,
/// or one 0-based index). Returns `None` when no `λ ∈ [1e-15, min aᵢ]`
/// satisfies the angle-sum equation on that branch. If several roots exist
/// the one with the largest cosine sum is returned.
pub fn solve_stationary<T: Real>(
    weights: &WeightVector<T>,
    obtuse: &[usize],
) -> Result<Option<StationaryPoint<T>>> {
    let n = weights.len();
    let obtuse = match obtuse {
        [] => None,
        [j] if *j < n => Some(*j),
        [j] => {
            return Err(Error::invalid(format!(
                "obtuse index {j} out of range for {n} weights"
            )))
        }
        _ => {
            return Err(Error::invalid(format!(
                "at most one angle can be obtuse, mask has {}",
                obtuse.len()
            )))
        }
    };
    let w = weights.as_slice();
    let min_weight = w.iter().copied().fold(T::infinity(), T::min);
    let branches = Branches {
        weights: w,
        min_weight,
        obtuse,
    };

    let lo = (T::lit(LAMBDA_FLOOR) / min_weight).min(T::one()).asin();
    let hi = T::FRAC_PI_2();

    let coarse = grid(lo, hi, COARSE_GRID);
    let coarse_vals: Vec<T> = coarse.iter().map(|&t| branches.excess(t)).collect();
    let monotone = is_monotone(&coarse_vals);
    let (thetas, vals) = if monotone {
        (coarse, coarse_vals)
    } else {
        let dense = grid(lo, hi, DENSE_GRID);
        let vals = dense.iter().map(|&t| branches.excess(t)).collect();
        (dense, vals)
    };

    let mut best: Option<StationaryPoint<T>> = None;
    for k in 0..thetas.len() - 1 {
        let (a, b) = (vals[k], vals[k + 1]);
        let root = if a == T::zero() {
            Some(thetas[k])
        } else if (a < T::zero()) != (b < T::zero()) && b != T::zero() {
            Some(bisect(|t| branches.excess(t), thetas[k], thetas[k + 1], a))
        } else if k + 2 == thetas.len() && b == T::zero() {
            Some(thetas[k + 1])
        } else {
            None
        };
        if let Some(theta) = root {
            let p = branches.point(theta, monotone);
            if best.as_ref().is_none_or(|q| p.value > q.value) {
                best = Some(p);
            }
        }
    }
    Ok(best)
}

fn grid<T: Real>(lo: T, hi: T, segments: usize) -> Vec<T> {
    let s = T::from_usize(segments).expect("small");
    (0..=segments)
        .map(|k| {
            if k == segments {
                hi
            } else {
                lo + (hi - lo) * T::from_usize(k).expect("small") / s
            }
        })
        .collect()
}

fn is_monotone<T: Real>(v: &[T]) -> bool {
    let inc = v.windows(2).all(|p| p[1] >= p[0]);
    let dec = v.windows(2).all(|p| p[1] <= p[0]);
    inc || dec
}

/// Bisection to the resolution of `T`; returns the endpoint with the smaller residual.
fn bisect<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T, mut f_lo: T) -> T {
    let mut f_hi = f(hi);
    for _ in 0..200 {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == T::zero() {
            return mid;
        }
        if (f_mid < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    if f_lo.abs() <= f_hi.abs() {
        lo
    } else {
        hi
    }
}
