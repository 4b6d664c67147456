//! Projected gradient ascent of `Σ aᵢ cos αᵢ` on the closed simplex
//! `{α ≥ 0, Σαᵢ = π}`.

use crate::scalar::Real;

#[derive(Debug, Clone)]
pub(crate) struct AscentResult<T> {
    pub alpha: Vec<T>,
    pub value: T,
    /// `‖Π(α + ∇f) − α‖` with the gradient of the weight-normalised objective.
    pub gradient_norm: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Euclidean projection onto `{x ≥ 0, Σx = total}` by the sort-and-threshold rule.
pub(crate) fn project_simplex<T: Real>(v: &[T], total: T) -> Vec<T> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut cumsum = T::zero();
    let mut shift = T::zero();
    for (k, &uk) in u.iter().enumerate() {
        cumsum = cumsum + uk;
        let t = (cumsum - total) / T::from_usize(k + 1).expect("small");
        if uk - t > T::zero() {
            shift = t;
        }
    }
    v.iter().map(|&x| (x - shift).max(T::zero())).collect()
}

fn objective<T: Real>(w: &[T], alpha: &[T]) -> T {
    w.iter().zip(alpha).map(|(&a, &t)| a * t.cos()).sum()
}

fn gradient<T: Real>(w: &[T], alpha: &[T]) -> Vec<T> {
    w.iter().zip(alpha).map(|(&a, &t)| -a * t.sin()).collect()
}

fn dist<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<T>()
        .sqrt()
}

/// Projected-gradient stationarity measure at `alpha` for normalised weights `w`.
pub(crate) fn projected_gradient_norm<T: Real>(w: &[T], alpha: &[T]) -> T {
    let g = gradient(w, alpha);
    let stepped: Vec<T> = alpha.iter().zip(&g).map(|(&a, &d)| a + d).collect();
    dist(&project_simplex(&stepped, T::PI()), alpha)
}

/// Ascent from `start` with Barzilai–Borwein steps safeguarded by Armijo
/// backtracking. Weights are normalised by their maximum, which leaves the
/// maximiser unchanged and makes `grad_tol` scale-free.
pub(crate) fn ascend<T: Real>(
    weights: &[T],
    start: &[T],
    grad_tol: T,
    max_iter: usize,
) -> AscentResult<T> {
    let scale = weights.iter().copied().fold(T::zero(), T::max);
    let w: Vec<T> = weights.iter().map(|&a| a / scale).collect();
    let pi = T::PI();
    let armijo = T::lit(1e-4);
    let (min_step, max_step) = (T::lit(1e-8), T::lit(1e8));

    let mut alpha = project_simplex(start, pi);
    let mut f = objective(&w, &alpha);
    let mut g = gradient(&w, &alpha);
    let mut step = T::one();
    let mut iterations = 0;
    let mut gnorm = projected_gradient_norm(&w, &alpha);

    while iterations < max_iter && gnorm > grad_tol {
        iterations += 1;
        let mut s = step;
        let (next, f_next) = loop {
            let trial: Vec<T> = alpha.iter().zip(&g).map(|(&a, &d)| a + s * d).collect();
            let cand = project_simplex(&trial, pi);
            let f_cand = objective(&w, &cand);
            let gain: T = g
                .iter()
                .zip(cand.iter().zip(&alpha))
                .map(|(&d, (&c, &a))| d * (c - a))
                .sum();
            if f_cand >= f + armijo * gain || s <= min_step {
                break (cand, f_cand);
            }
            s = s / T::lit(2.0);
        };
        let g_next = gradient(&w, &next);
        // Barzilai–Borwein step for an ascent problem: ⟨Δα, Δα⟩ / −⟨Δα, Δg⟩.
        let (mut ss, mut sy) = (T::zero(), T::zero());
        for i in 0..w.len() {
            let da = next[i] - alpha[i];
            let dg = g_next[i] - g[i];
            ss = ss + da * da;
            sy = sy - da * dg;
        }
        step = if sy > T::zero() {
            (ss / sy).max(min_step).min(max_step)
        } else {
            s * T::lit(2.0)
        };
        let moved = dist(&next, &alpha);
        alpha = next;
        f = f_next;
        g = g_next;
        gnorm = projected_gradient_norm(&w, &alpha);
        if moved == T::zero() && gnorm > grad_tol && s <= min_step {
            break;
        }
    }

    AscentResult {
        value: objective(weights, &alpha),
        alpha,
        gradient_norm: gnorm,
        iterations,
        converged: gnorm <= grad_tol,
    }
}
