//! Bound evaluators and bound checks.
//!
//! For weights `a₁..aₙ > 0` and angles `α₁..αₙ > 0` with `Σαᵢ = π`:
//!
//! | bound | right-hand side |
//! |---|---|
//! | Fejes Tóth, any `n ≥ 3` | `cos(π/n) Σ xᵢ²` against `Σ xᵢxᵢ₊₁ cos αᵢ` |
//! | pentagonal, normal form | `((1+√5)/4) φ(a₁², …, a₅²) / (a₁⋯a₅)` |
//! | pentagonal, strong form (sorted) | `((1+√5)/4) φ(a₁², a₅², a₂², a₃², a₄²) / (a₁⋯a₅)` |
//! | arrangement form | `((1+√5)/4) φ(b₁², …, b₅²) / (b₁⋯b₅)` for any arrangement `b` |
//! | heptagonal | `cos(π/7) ψ(a₁², …, a₇²) / (a₁⋯a₇)` |
//! | odd `n ≥ 9` (experimental) | `cos(π/n) W(a², (n+1)/2) / Πaᵢ`, `W` the window sum |
//!
//! The last row extrapolates the pattern of the proven cases and is tagged
//! [`Theorem::OddNExperimental`] wherever it appears.

mod substitution;

pub use substitution::{
    heptagonal_substitution, lemma2_substitution, toth_from_pentagonal, SubstitutionCheck,
    SubstitutionResult, TothRoundTrip, HEPTAGONAL_BETA, HEPTAGONAL_X, LEMMA2_BETA, LEMMA2_X,
    TOTH_BETA, TOTH_WEIGHTS,
};

use std::fmt;

use serde::Serialize;

use crate::arrangements::{sigma0, CyclicArrangement};
use crate::error::{Error, Result};
use crate::forms::{product, window_sum, CyclicVector};
use crate::scalar::{Real, Scalar};

/// Default absolute tolerance for bound checks on O(1)-scaled inputs.
pub const DEFAULT_BOUND_TOL: f64 = 1e-9;
/// Absolute tolerance on `Σαᵢ = π`, and the floor on each angle.
pub const ANGLE_TOL: f64 = 1e-12;

/// Strictly positive, finite weights `a₁..aₙ`, `n ≥ 3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector<T> {
    weights: Vec<T>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        // Same invariants as a cyclic vector.
        let weights = CyclicVector::new(weights)
            .map_err(|e| match e {
                Error::InvalidArgument(m) => {
                    Error::invalid(m.replace("cyclic vector", "weight vector"))
                }
                other => other,
            })?
            .into_inner();
        Ok(Self { weights })
    }

    pub fn from_slice(weights: &[T]) -> Result<Self> {
        Self::new(weights.to_vec())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.weights
    }

    /// `a₁ ≤ a₂ ≤ ⋯ ≤ aₙ`; ties allowed.
    pub fn is_sorted(&self) -> bool {
        self.weights.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn sorted(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.sort_by(|a, b| a.partial_cmp(b).expect("weights are finite"));
        Self { weights }
    }

    pub fn scaled(&self, t: T) -> Result<Self> {
        Self::new(self.weights.iter().map(|&w| w * t).collect())
    }

    pub fn product(&self) -> T {
        product(&self.weights)
    }

    pub fn squares(&self) -> Vec<T> {
        self.weights.iter().map(|&w| w * w).collect()
    }
}

/// Positive angles `α₁..αₙ` (radians) on the simplex `Σαᵢ = π`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct AngleVector<T> {
    angles: Vec<T>,
}

impl<T: Real> AngleVector<T> {
    /// Each angle must be at least `1e-12` and the sum within `1e-12` of π
    /// (both widened to the precision of `T`).
    pub fn new(angles: Vec<T>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::invalid("angle vector is empty"));
        }
        let floor = T::tol(ANGLE_TOL);
        if let Some(i) = angles.iter().position(|&a| !a.is_finite() || !(a >= floor)) {
            return Err(Error::invalid(format!(
                "angle {} must be positive and finite, got {}",
                i + 1,
                angles[i]
            )));
        }
        let sum: T = angles.iter().copied().sum();
        if (sum - T::PI()).abs() > T::tol(ANGLE_TOL) {
            return Err(Error::invalid(format!(
                "angles must sum to pi, got {sum} (off by {})",
                sum - T::PI()
            )));
        }
        Ok(Self { angles })
    }

    pub fn from_slice(angles: &[T]) -> Result<Self> {
        Self::new(angles.to_vec())
    }

    /// `(π/n, …, π/n)`.
    pub fn uniform(n: usize) -> Result<Self> {
        let nt = T::from_usize(n).ok_or_else(|| Error::invalid("n not representable"))?;
        Self::new(vec![T::PI() / nt; n])
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.angles
    }

    /// `(α_{p(1)}, …, α_{p(n)})` for a 0-based index map `p`.
    pub fn permuted(&self, p: &[usize]) -> Result<Self> {
        if p.len() != self.len() {
            return Err(Error::invalid("permutation length mismatch"));
        }
        Ok(Self {
            angles: p.iter().map(|&i| self.angles[i]).collect(),
        })
    }
}

/// Which inequality a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    Toth,
    PentagonalNormal,
    PentagonalStrong,
    Lemma2Arrangement,
    Heptagonal,
    OddNExperimental,
}

impl Theorem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::Toth => "toth",
            Theorem::PentagonalNormal => "pentagonal-normal",
            Theorem::PentagonalStrong => "pentagonal-strong",
            Theorem::Lemma2Arrangement => "lemma2-arrangement",
            Theorem::Heptagonal => "heptagonal",
            Theorem::OddNExperimental => "odd-n-experimental",
        }
    }

    pub fn is_experimental(&self) -> bool {
        matches!(self, Theorem::OddNExperimental)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PentagonalForm {
    Normal,
    Strong,
}

/// One bound evaluated at one input. `holds ⇔ gap ≥ −tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<T> {
    pub theorem: Theorem,
    pub lhs: T,
    pub rhs: T,
    pub gap: T,
    pub tolerance: T,
    pub holds: bool,
}

impl<T: Real> BoundReport<T> {
    pub fn new(theorem: Theorem, lhs: T, rhs: T, tolerance: T) -> Self {
        let gap = rhs - lhs;
        Self {
            theorem,
            lhs,
            rhs,
            gap,
            tolerance,
            holds: gap >= -tolerance,
        }
    }
}

/// `(1 + √5) / 4`, the closed form of `cos(π/5)`.
pub fn cos_pi_over_5<T: Real>() -> T {
    (T::one() + T::lit(5.0).sqrt()) / T::lit(4.0)
}

fn cos_pi_over<T: Real>(n: usize) -> T {
    (T::PI() / T::from_usize(n).expect("small n")).cos()
}

/// `Σ aᵢ cos αᵢ`.
pub fn cosine_sum<T: Real>(a: &WeightVector<T>, alpha: &AngleVector<T>) -> Result<T> {
    same_len(a.len(), alpha.len())?;
    Ok(raw_cosine_sum(a.as_slice(), alpha.as_slice()))
}

pub(crate) fn raw_cosine_sum<T: Real>(a: &[T], alpha: &[T]) -> T {
    a.iter().zip(alpha).map(|(&w, &t)| w * t.cos()).sum()
}

/// `Σ xᵢ xᵢ₊₁ cos αᵢ` with `xₙ₊₁ = x₁`, the left side of Fejes Tóth's inequality.
pub fn toth_lhs<T: Real>(x: &CyclicVector<T>, alpha: &AngleVector<T>) -> Result<T> {
    same_len(x.len(), alpha.len())?;
    let v = x.as_slice();
    let n = v.len();
    Ok(alpha
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &t)| v[i] * v[(i + 1) % n] * t.cos())
        .sum())
}

/// `cos(π/n) Σ xᵢ²`.
pub fn toth_rhs<T: Real>(x: &CyclicVector<T>, n: usize) -> Result<T> {
    if n < 3 {
        return Err(Error::invalid(format!("Toth bound needs n >= 3, got {n}")));
    }
    if n != x.len() {
        return Err(Error::invalid(format!(
            "n = {n} but the vector has {} entries",
            x.len()
        )));
    }
    let sum_sq: T = x.as_slice().iter().map(|&v| v * v).sum();
    Ok(cos_pi_over::<T>(n) * sum_sq)
}

/// `c · W(b², k) / Πbᵢ` for arranged values `b`.
fn squared_window_bound<T: Real>(c: T, b: &[T], k: usize) -> T {
    let sq: Vec<T> = b.iter().map(|&v| v * v).collect();
    c * window_sum(&sq, k) / product(b)
}

/// Normal form: `((1+√5)/4) φ(a₁², …, a₅²) / (a₁⋯a₅)`.
pub fn pentagonal_rhs_normal<T: Real>(a: &WeightVector<T>) -> Result<T> {
    expect_len(a.len(), 5)?;
    Ok(squared_window_bound(cos_pi_over_5(), a.as_slice(), 3))
}

/// Strong form for ascending weights: the normal form applied to the
/// arrangement `σ₀ = (a₁, a₅, a₂, a₃, a₄)`.
pub fn pentagonal_rhs_strong<T: Real>(a: &WeightVector<T>) -> Result<T> {
    let s0 = sigma0(a)?;
    Ok(squared_window_bound(cos_pi_over_5(), s0.values(), 3))
}

/// `((1+√5)/4) φ(b₁², …, b₅²) / (b₁⋯b₅)` for an arrangement `b`.
pub fn lemma2_rhs<T: Real>(b: &CyclicArrangement<T>) -> Result<T> {
    expect_len(b.len(), 5)?;
    Ok(squared_window_bound(cos_pi_over_5(), b.values(), 3))
}

/// `cos(π/7) ψ(a₁², …, a₇²) / (a₁⋯a₇)`.
pub fn heptagonal_rhs<T: Real>(a: &WeightVector<T>) -> Result<T> {
    expect_len(a.len(), 7)?;
    Ok(squared_window_bound(cos_pi_over(7), a.as_slice(), 4))
}

/// `cos(π/n) W(a², (n+1)/2) / Πaᵢ` for odd `n ≥ 9`. Unproven: the
/// pattern of the five- and seven-weight bounds carried over.
pub fn odd_n_rhs_experimental<T: Real>(a: &WeightVector<T>, n: usize) -> Result<T> {
    if n < 9 || n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "experimental bound needs odd n >= 9, got {n}"
        )));
    }
    expect_len(a.len(), n)?;
    Ok(squared_window_bound(
        cos_pi_over(n),
        a.as_slice(),
        n.div_ceil(2),
    ))
}

/// Checks the normal or strong pentagonal bound. The strong form sorts the
/// `(aᵢ, αᵢ)` pairs jointly by weight first, which leaves the left side unchanged.
pub fn pentagonal_bound_check<T: Real>(
    a: &WeightVector<T>,
    alpha: &AngleVector<T>,
    form: PentagonalForm,
    tol: T,
) -> Result<BoundReport<T>> {
    expect_len(a.len(), 5)?;
    same_len(a.len(), alpha.len())?;
    let lhs = cosine_sum(a, alpha)?;
    let (theorem, rhs) = match form {
        PentagonalForm::Normal => (Theorem::PentagonalNormal, pentagonal_rhs_normal(a)?),
        PentagonalForm::Strong => {
            let (sorted, _) = sort_jointly(a, alpha)?;
            (Theorem::PentagonalStrong, pentagonal_rhs_strong(&sorted)?)
        }
    };
    Ok(BoundReport::new(theorem, lhs, rhs, tol))
}

/// `Σ bᵢ cos αᵢ ≤ lemma2_rhs(b)` for one arrangement `b`.
pub fn lemma2_bound_check<T: Real>(
    b: &CyclicArrangement<T>,
    alpha: &AngleVector<T>,
    tol: T,
) -> Result<BoundReport<T>> {
    expect_len(b.len(), 5)?;
    same_len(b.len(), alpha.len())?;
    let lhs = raw_cosine_sum(b.values(), alpha.as_slice());
    Ok(BoundReport::new(
        Theorem::Lemma2Arrangement,
        lhs,
        lemma2_rhs(b)?,
        tol,
    ))
}

pub fn heptagonal_bound_check<T: Real>(
    a: &WeightVector<T>,
    alpha: &AngleVector<T>,
    tol: T,
) -> Result<BoundReport<T>> {
    expect_len(a.len(), 7)?;
    same_len(a.len(), alpha.len())?;
    Ok(BoundReport::new(
        Theorem::Heptagonal,
        cosine_sum(a, alpha)?,
        heptagonal_rhs(a)?,
        tol,
    ))
}

pub fn odd_n_bound_check<T: Real>(
    a: &WeightVector<T>,
    alpha: &AngleVector<T>,
    tol: T,
) -> Result<BoundReport<T>> {
    same_len(a.len(), alpha.len())?;
    let rhs = odd_n_rhs_experimental(a, a.len())?;
    Ok(BoundReport::new(
        Theorem::OddNExperimental,
        cosine_sum(a, alpha)?,
        rhs,
        tol,
    ))
}

pub fn toth_bound_check<T: Real>(
    x: &CyclicVector<T>,
    alpha: &AngleVector<T>,
    tol: T,
) -> Result<BoundReport<T>> {
    Ok(BoundReport::new(
        Theorem::Toth,
        toth_lhs(x, alpha)?,
        toth_rhs(x, x.len())?,
        tol,
    ))
}

/// Relative spread `(max − min) / max` of the values `aᵢ sin αᵢ`. Equality
/// in the pentagonal bounds requires these to coincide.
pub fn equality_condition_spread<T: Real>(
    a: &WeightVector<T>,
    alpha: &AngleVector<T>,
) -> Result<T> {
    same_len(a.len(), alpha.len())?;
    let s: Vec<T> = a
        .as_slice()
        .iter()
        .zip(alpha.as_slice())
        .map(|(&w, &t)| w * t.sin())
        .collect();
    let hi = s.iter().copied().fold(T::neg_infinity(), T::max);
    let lo = s.iter().copied().fold(T::infinity(), T::min);
    Ok((hi - lo) / hi)
}

/// Sorts `(aᵢ, αᵢ)` pairs by weight (stable), returning both reordered vectors.
pub fn sort_jointly<T: Real>(
    a: &WeightVector<T>,
    alpha: &AngleVector<T>,
) -> Result<(WeightVector<T>, AngleVector<T>)> {
    same_len(a.len(), alpha.len())?;
    let w = a.as_slice();
    let mut idx: Vec<usize> = (0..w.len()).collect();
    idx.sort_by(|&i, &j| w[i].partial_cmp(&w[j]).expect("weights are finite"));
    let sorted = WeightVector {
        weights: idx.iter().map(|&i| w[i]).collect(),
    };
    Ok((sorted, alpha.permuted(&idx)?))
}

fn expect_len(got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::invalid(format!(
            "expected {want} weights, got {got}"
        )));
    }
    Ok(())
}

fn same_len(weights: usize, angles: usize) -> Result<()> {
    if weights != angles {
        return Err(Error::invalid(format!(
            "{weights} weights but {angles} angles"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
