//! Cyclic window-product sums.
//!
//! For `x = (x₁, …, xₙ)` and a window length `k`, the window sum is
//! `Σᵢ xᵢ xᵢ₊₁ ⋯ xᵢ₊ₖ₋₁` with indices taken cyclically. The pentagonal form
//! `φ` is the case `n = 5, k = 3` and the heptagonal form `ψ` is
//! `n = 7, k = 4`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An ordered list of at least three strictly positive, finite values.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CyclicVector<T> {
    values: Vec<T>,
}

impl<T: Scalar> CyclicVector<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::invalid(format!(
                "cyclic vector needs at least 3 entries, got {}",
                values.len()
            )));
        }
        if let Some(i) = values
            .iter()
            .position(|&v| !v.is_finite_scalar() || !(v > T::zero()))
        {
            return Err(Error::invalid(format!(
                "entry {} must be strictly positive and finite, got {:?}",
                i + 1,
                values[i]
            )));
        }
        Ok(Self { values })
    }

    pub fn from_slice(values: &[T]) -> Result<Self> {
        Self::new(values.to_vec())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn into_inner(self) -> Vec<T> {
        self.values
    }

    /// `(x_{r+1}, …, xₙ, x₁, …, x_r)`.
    pub fn rotated(&self, r: usize) -> Self {
        let mut values = self.values.clone();
        let n = values.len();
        values.rotate_left(r % n);
        Self { values }
    }

    pub fn reversed(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self { values }
    }

    /// Multiplies every entry by `t`. Fails if `t` is not positive.
    pub fn scaled(&self, t: T) -> Result<Self> {
        Self::new(self.values.iter().map(|&v| v * t).collect())
    }

    /// Entry-wise squares `(x₁², …, xₙ²)`.
    pub fn squared(&self) -> Self {
        Self {
            values: self.values.iter().map(|&v| v * v).collect(),
        }
    }

    pub fn product(&self) -> T {
        product(&self.values)
    }
}

pub(crate) fn product<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::one(), |acc, &v| acc * v)
}

/// Unchecked window sum over a raw slice. `1 ≤ k ≤ values.len()` is the
/// caller's responsibility.
pub(crate) fn window_sum<T: Scalar>(values: &[T], k: usize) -> T {
    let n = values.len();
    (0..n).fold(T::zero(), |acc, i| {
        acc + (0..k).fold(T::one(), |p, j| p * values[(i + j) % n])
    })
}

/// `Σᵢ Πⱼ₌₀^{k−1} x_{i+j}` with cyclic indices.
pub fn cyclic_window_sum<T: Scalar>(x: &CyclicVector<T>, k: usize) -> Result<T> {
    if k == 0 || k > x.len() {
        return Err(Error::invalid(format!(
            "window length {k} outside 1..={}",
            x.len()
        )));
    }
    Ok(window_sum(x.as_slice(), k))
}

/// `φ(x₁, …, x₅) = x₁x₂x₃ + x₂x₃x₄ + x₃x₄x₅ + x₄x₅x₁ + x₅x₁x₂`.
pub fn phi<T: Scalar>(x: &CyclicVector<T>) -> Result<T> {
    expect_len(x, 5, "phi")?;
    Ok(window_sum(x.as_slice(), 3))
}

/// `ψ(x₁, …, x₇)`: sum of the seven cyclic products of four consecutive entries.
pub fn psi<T: Scalar>(x: &CyclicVector<T>) -> Result<T> {
    expect_len(x, 7, "psi")?;
    Ok(window_sum(x.as_slice(), 4))
}

fn expect_len<T: Scalar>(x: &CyclicVector<T>, n: usize, what: &str) -> Result<()> {
    if x.len() != n {
        return Err(Error::invalid(format!(
            "{what} takes exactly {n} entries, got {}",
            x.len()
        )));
    }
    Ok(())
}
