//! Substitutions that turn each weighted bound into an instance of Fejes
//! Tóth's inequality, and the reverse construction that recovers the
//! five-term Tóth inequality from the normal pentagonal bound.
//!
//! All index tables are 1-based and transcribed as-is from the
//! constructions; they are not re-derived from the general pattern.

use serde::Serialize;

use crate::arrangements::CyclicArrangement;
use crate::error::{Error, Result};
use crate::forms::{product, window_sum, CyclicVector};
use crate::scalar::{relative_diff, Real};

use super::{
    cos_pi_over, pentagonal_rhs_normal, raw_cosine_sum, toth_lhs, AngleVector, WeightVector,
};

/// `xᵢ = √(Π numerator / Π denominator)` over the arranged weights `b`.
pub const LEMMA2_X: [(&[usize], &[usize]); 5] = [
    (&[1, 2, 3], &[4, 5]),
    (&[1, 4, 5], &[2, 3]),
    (&[2, 3, 4], &[1, 5]),
    (&[1, 2, 5], &[3, 4]),
    (&[3, 4, 5], &[1, 2]),
];

/// `βᵢ = α_{LEMMA2_BETA[i]}`. Also the pairing `xᵢxᵢ₊₁ = b_{LEMMA2_BETA[i]}`.
pub const LEMMA2_BETA: [usize; 5] = [1, 4, 2, 5, 3];

pub const HEPTAGONAL_X: [(&[usize], &[usize]); 7] = [
    (&[1, 2, 3, 4], &[5, 6, 7]),
    (&[1, 5, 6, 7], &[2, 3, 4]),
    (&[2, 3, 4, 5], &[1, 6, 7]),
    (&[1, 2, 6, 7], &[3, 4, 5]),
    (&[3, 4, 5, 6], &[1, 2, 7]),
    (&[1, 2, 3, 7], &[4, 5, 6]),
    (&[4, 5, 6, 7], &[1, 2, 3]),
];

/// `βᵢ = α_{HEPTAGONAL_BETA[i]}`, with `xᵢxᵢ₊₁ = a_{HEPTAGONAL_BETA[i]}`.
pub const HEPTAGONAL_BETA: [usize; 7] = [1, 5, 2, 6, 3, 7, 4];

/// Reverse construction: `aᵢ = x_p x_q` for `(p, q) = TOTH_WEIGHTS[i]`.
pub const TOTH_WEIGHTS: [(usize, usize); 5] = [(1, 2), (3, 4), (5, 1), (2, 3), (4, 5)];
/// `βᵢ = α_{TOTH_BETA[i]}`.
pub const TOTH_BETA: [usize; 5] = [1, 3, 5, 2, 4];

/// Relative residuals of the identities a substitution must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubstitutionCheck<T> {
    /// `Σxᵢ²` against `W(b², k) / P`.
    pub sum_of_squares: T,
    /// Worst term of `xᵢxᵢ₊₁ cos βᵢ = b_{β(i)} cos α_{β(i)}`, relative to `Σ|terms|`.
    pub termwise: T,
    /// `Σ xᵢxᵢ₊₁ cos βᵢ` against `Σ bᵢ cos αᵢ`.
    pub total: T,
    /// `Πxᵢ²` against `P`.
    pub product: T,
}

impl<T: Real> SubstitutionCheck<T> {
    pub fn max_residual(&self) -> T {
        self.sum_of_squares
            .max(self.termwise)
            .max(self.total)
            .max(self.product)
    }
}

/// The Tóth vector `x`, the angle map `β` and the weight product `P`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstitutionResult<T> {
    pub x: CyclicVector<T>,
    /// 0-based: `βᵢ = α[beta_index[i]]`.
    pub beta_index: Vec<usize>,
    pub product_p: T,
    /// The permuted angles `β`.
    pub beta: Vec<T>,
    pub check: SubstitutionCheck<T>,
}

/// Substitution for an arrangement `b` of five weights. On the result,
/// Fejes Tóth's inequality for `(x, β)` is exactly the arrangement bound for `(b, α)`.
pub fn lemma2_substitution<T: Real>(
    b: &CyclicArrangement<T>,
    alpha: &AngleVector<T>,
) -> Result<SubstitutionResult<T>> {
    if b.len() != 5 || alpha.len() != 5 {
        return Err(Error::invalid(format!(
            "substitution needs 5 weights and 5 angles, got {} and {}",
            b.len(),
            alpha.len()
        )));
    }
    substitute(b.values(), alpha, &LEMMA2_X, &LEMMA2_BETA, 3)
}

/// Substitution for seven weights; same contract as [`lemma2_substitution`]
/// with `ψ` in place of `φ`.
pub fn heptagonal_substitution<T: Real>(
    a: &WeightVector<T>,
    alpha: &AngleVector<T>,
) -> Result<SubstitutionResult<T>> {
    if a.len() != 7 || alpha.len() != 7 {
        return Err(Error::invalid(format!(
            "heptagonal substitution needs 7 weights and 7 angles, got {} and {}",
            a.len(),
            alpha.len()
        )));
    }
    substitute(a.as_slice(), alpha, &HEPTAGONAL_X, &HEPTAGONAL_BETA, 4)
}

fn substitute<T: Real>(
    b: &[T],
    alpha: &AngleVector<T>,
    x_table: &[(&[usize], &[usize])],
    beta_table: &[usize],
    window: usize,
) -> Result<SubstitutionResult<T>> {
    let pick = |idx: &[usize]| idx.iter().fold(T::one(), |acc, &i| acc * b[i - 1]);
    let x: Vec<T> = x_table
        .iter()
        .map(|(num, den)| (pick(num) / pick(den)).sqrt())
        .collect();
    let beta_index: Vec<usize> = beta_table.iter().map(|&i| i - 1).collect();
    let beta = alpha.permuted(&beta_index)?;
    let p = product(b);
    let n = x.len();

    let sum_sq: T = x.iter().map(|&v| v * v).sum();
    let b_sq: Vec<T> = b.iter().map(|&v| v * v).collect();
    let sum_of_squares = relative_diff(sum_sq, window_sum(&b_sq, window) / p);

    let a = alpha.as_slice();
    let (mut worst, mut abs_total) = (T::zero(), T::zero());
    for i in 0..n {
        let left = x[i] * x[(i + 1) % n] * beta.as_slice()[i].cos();
        let right = b[beta_index[i]] * a[beta_index[i]].cos();
        worst = worst.max((left - right).abs());
        abs_total = abs_total + right.abs();
    }
    let termwise = worst / abs_total.max(T::min_positive_value());

    let x = CyclicVector::new(x)?;
    let lhs_toth = toth_lhs(&x, &beta)?;
    let lhs_weighted = raw_cosine_sum(b, a);
    let total = (lhs_toth - lhs_weighted).abs() / abs_total.max(T::min_positive_value());

    let prod_sq = x.as_slice().iter().fold(T::one(), |acc, &v| acc * v * v);
    let product_residual = relative_diff(prod_sq, p);

    Ok(SubstitutionResult {
        x,
        beta_index,
        product_p: p,
        beta: beta.as_slice().to_vec(),
        check: SubstitutionCheck {
            sum_of_squares,
            termwise,
            total,
            product: product_residual,
        },
    })
}

/// Tóth's five-term inequality pushed through the normal pentagonal bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TothRoundTrip<T> {
    /// `Σ xᵢxᵢ₊₁ cos αᵢ`.
    pub lhs: T,
    /// Normal pentagonal bound of the constructed weights.
    pub rhs_via_pentagonal: T,
    /// `cos(π/5) Σ xᵢ²`.
    pub rhs_direct: T,
    /// Constructed weights `aᵢ = x_p x_q`.
    pub weights: Vec<T>,
    /// `βᵢ = α_{TOTH_BETA[i]}`.
    pub beta: Vec<T>,
    /// `Σ aᵢ cos βᵢ`; equal to `lhs`.
    pub pentagonal_lhs: T,
    /// Worst term of `aᵢ cos βᵢ = x_p x_q cos α_p`, relative to `Σ|terms|`.
    pub termwise_residual: T,
    /// `Σxᵢ²` against `φ(a₁², …, a₅²) / P`, relative.
    pub sum_of_squares_residual: T,
}

impl<T: Real> TothRoundTrip<T> {
    /// Relative disagreement between the two right-hand sides.
    pub fn rhs_residual(&self) -> T {
        relative_diff(self.rhs_via_pentagonal, self.rhs_direct)
    }
}

pub fn toth_from_pentagonal<T: Real>(
    x: &CyclicVector<T>,
    alpha: &AngleVector<T>,
) -> Result<TothRoundTrip<T>> {
    if x.len() != 5 || alpha.len() != 5 {
        return Err(Error::invalid(format!(
            "round trip needs 5 values and 5 angles, got {} and {}",
            x.len(),
            alpha.len()
        )));
    }
    let xs = x.as_slice();
    let al = alpha.as_slice();
    let weights: Vec<T> = TOTH_WEIGHTS
        .iter()
        .map(|&(p, q)| xs[p - 1] * xs[q - 1])
        .collect();
    let beta_index: Vec<usize> = TOTH_BETA.iter().map(|&i| i - 1).collect();
    let beta = alpha.permuted(&beta_index)?;

    let (mut worst, mut abs_total) = (T::zero(), T::zero());
    for (i, &(p, q)) in TOTH_WEIGHTS.iter().enumerate() {
        let left = weights[i] * beta.as_slice()[i].cos();
        let right = xs[p - 1] * xs[q - 1] * al[beta_index[i]].cos();
        worst = worst.max((left - right).abs());
        abs_total = abs_total + right.abs();
    }

    let a = WeightVector::new(weights.clone())?;
    let sum_sq: T = xs.iter().map(|&v| v * v).sum();
    let sum_of_squares_residual = relative_diff(sum_sq, window_sum(&a.squares(), 3) / a.product());

    Ok(TothRoundTrip {
        lhs: toth_lhs(x, alpha)?,
        rhs_via_pentagonal: pentagonal_rhs_normal(&a)?,
        rhs_direct: cos_pi_over::<T>(5) * sum_sq,
        pentagonal_lhs: raw_cosine_sum(&weights, beta.as_slice()),
        weights,
        beta: beta.as_slice().to_vec(),
        termwise_residual: worst / abs_total.max(T::min_positive_value()),
        sum_of_squares_residual,
    })
}
