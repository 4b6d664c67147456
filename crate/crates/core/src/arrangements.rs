//! Circular arrangements of weights and the `φ`-minimising arrangement.
//!
//! A circular arrangement of `a₁, …, aₙ` pins `a₁` in the first slot and
//! orders the remaining weights; for five weights there are `4! = 24`. For
//! sorted weights `a₁ ≤ ⋯ ≤ a₅` the arrangement `σ₀ = (a₁, a₅, a₂, a₃, a₄)`
//! minimises `φ`. The certificate is [`LEMMA1_IDENTITIES`]: the 24
//! arrangements split into 12 reflection pairs, and for each pair
//! `φ(σ) − φ(σ₀)` equals a sum of terms `a_k (a_p − a_q)(a_r − a_s)` whose
//! differences are all non-negative once the weights are sorted.

use itertools::Itertools;
use serde::Serialize;

use crate::bounds::WeightVector;
use crate::error::{Error, Result};
use crate::forms::window_sum;
use crate::scalar::Scalar;

/// Weights placed around a cycle. `order[i]` is the 0-based index into the
/// original weight vector of the weight sitting in slot `i`; `order[0] == 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicArrangement<T> {
    order: Vec<usize>,
    values: Vec<T>,
}

impl<T: Scalar> CyclicArrangement<T> {
    /// Builds the arrangement of `weights` given by a 1-based index order,
    /// as written in the identity listing, e.g. `[1, 5, 2, 3, 4]` for `σ₀`.
    pub fn from_one_based(weights: &WeightVector<T>, order: &[usize]) -> Result<Self> {
        let order: Vec<usize> = order
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .ok_or_else(|| Error::invalid("arrangement indices are 1-based"))
            })
            .collect::<Result<_>>()?;
        Self::from_order(weights, order)
    }

    /// Builds the arrangement from a 0-based index order.
    pub fn from_order(weights: &WeightVector<T>, order: Vec<usize>) -> Result<Self> {
        let n = weights.len();
        if order.len() != n {
            return Err(Error::invalid(format!(
                "arrangement has {} slots for {n} weights",
                order.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid(format!(
                    "arrangement {order:?} is not a permutation of 0..{n}"
                )));
            }
        }
        if order[0] != 0 {
            return Err(Error::invalid("arrangement must pin the first weight"));
        }
        let values = order.iter().map(|&i| weights.as_slice()[i]).collect();
        Ok(Self { order, values })
    }

    /// The identity arrangement `(a₁, a₂, …, aₙ)`.
    pub fn identity(weights: &WeightVector<T>) -> Self {
        Self {
            order: (0..weights.len()).collect(),
            values: weights.as_slice().to_vec(),
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn order_one_based(&self) -> Vec<usize> {
        self.order.iter().map(|i| i + 1).collect()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The same cycle read in the opposite direction, first slot kept.
    pub fn reflected(&self) -> Self {
        let mut order = self.order.clone();
        let mut values = self.values.clone();
        order[1..].reverse();
        values[1..].reverse();
        Self { order, values }
    }

    /// `φ` of the arranged values (five weights only).
    pub fn phi(&self) -> Result<T> {
        if self.len() != 5 {
            return Err(Error::invalid(format!(
                "phi needs 5 weights, arrangement has {}",
                self.len()
            )));
        }
        Ok(window_sum(&self.values, 3))
    }
}

/// All `(n−1)!` circular arrangements with the first weight pinned, in
/// lexicographic order of their index sequences.
pub fn enumerate_circular<T: Scalar>(weights: &WeightVector<T>) -> Vec<CyclicArrangement<T>> {
    let n = weights.len();
    (1..n)
        .permutations(n - 1)
        .map(|tail| {
            let order: Vec<usize> = std::iter::once(0).chain(tail).collect();
            let values = order.iter().map(|&i| weights.as_slice()[i]).collect();
            CyclicArrangement { order, values }
        })
        .collect()
}

/// The 24 circular arrangements of five weights.
pub fn enumerate_arrangements<T: Scalar>(
    weights: &WeightVector<T>,
) -> Result<Vec<CyclicArrangement<T>>> {
    expect_five(weights)?;
    Ok(enumerate_circular(weights))
}

/// `σ₀ = (a₁, a₅, a₂, a₃, a₄)` for ascending weights.
pub fn sigma0<T: Scalar>(weights: &WeightVector<T>) -> Result<CyclicArrangement<T>> {
    expect_five(weights)?;
    expect_sorted(weights)?;
    CyclicArrangement::from_one_based(weights, &SIGMA0)
}

/// Exhaustive `φ` minimum over the 24 arrangements. Ties go to the
/// lexicographically smallest index order.
pub fn min_phi_arrangement<T: Scalar>(
    weights: &WeightVector<T>,
) -> Result<(CyclicArrangement<T>, T)> {
    expect_five(weights)?;
    Ok(min_window_arrangement(weights, 3))
}

/// Exhaustive `ψ` minimum over the 720 arrangements of seven weights, same
/// tie-break as [`min_phi_arrangement`]. No closed-form minimiser is known
/// for seven weights, so this is a search utility only.
pub fn min_psi_arrangement<T: Scalar>(
    weights: &WeightVector<T>,
) -> Result<(CyclicArrangement<T>, T)> {
    if weights.len() != 7 {
        return Err(Error::invalid(format!(
            "psi arrangement search needs 7 weights, got {}",
            weights.len()
        )));
    }
    Ok(min_window_arrangement(weights, 4))
}

fn min_window_arrangement<T: Scalar>(
    weights: &WeightVector<T>,
    k: usize,
) -> (CyclicArrangement<T>, T) {
    let mut best: Option<(CyclicArrangement<T>, T)> = None;
    for arr in enumerate_circular(weights) {
        let value = window_sum(arr.values(), k);
        match &best {
            Some((_, b)) if !(value < *b) => {}
            _ => best = Some((arr, value)),
        }
    }
    best.expect("at least one arrangement")
}

/// One term `a_k (a_p − a_q)(a_r − a_s)` of a factored difference,
/// 1-based indices into the sorted weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorTerm {
    pub weight: usize,
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl FactorTerm {
    fn eval<T: Scalar>(&self, a: &[T]) -> T {
        let w = |i: usize| a[i - 1];
        w(self.weight) * (w(self.first.0) - w(self.first.1)) * (w(self.second.0) - w(self.second.1))
    }
}

/// One line of the identity listing: two reflected arrangements sharing
/// the difference `φ(σ) − φ(σ₀) = Σ terms`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma1Identity {
    pub arrangement: [usize; 5],
    pub mirror: [usize; 5],
    pub terms: &'static [FactorTerm],
}

impl Lemma1Identity {
    pub fn formula<T: Scalar>(&self, a: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, t| acc + t.eval(a))
    }
}

pub const SIGMA0: [usize; 5] = [1, 5, 2, 3, 4];
pub const SIGMA1: [usize; 5] = [1, 4, 3, 2, 5];

const fn term(weight: usize, first: (usize, usize), second: (usize, usize)) -> FactorTerm {
    FactorTerm {
        weight,
        first,
        second,
    }
}

// Recurring terms of the listing.
const A1_32_54: FactorTerm = term(1, (3, 2), (5, 4));
const A3_41_52: FactorTerm = term(3, (4, 1), (5, 2));
const A5_21_43: FactorTerm = term(5, (2, 1), (4, 3));

/// The twelve difference identities in listing order. The last pair is
/// `σ₁`/`σ₀` itself, with difference zero.
pub const LEMMA1_IDENTITIES: [Lemma1Identity; 12] = [
    Lemma1Identity {
        arrangement: [1, 2, 3, 4, 5],
        mirror: [1, 5, 4, 3, 2],
        terms: &[term(3, (4, 2), (5, 1))],
    },
    Lemma1Identity {
        arrangement: [1, 2, 3, 5, 4],
        mirror: [1, 4, 5, 3, 2],
        terms: &[A1_32_54, A3_41_52],
    },
    Lemma1Identity {
        arrangement: [1, 2, 4, 3, 5],
        mirror: [1, 5, 3, 4, 2],
        terms: &[A1_32_54, term(5, (3, 1), (4, 2))],
    },
    Lemma1Identity {
        arrangement: [1, 2, 4, 5, 3],
        mirror: [1, 3, 5, 4, 2],
        terms: &[A1_32_54, A3_41_52, A5_21_43],
    },
    Lemma1Identity {
        arrangement: [1, 2, 5, 3, 4],
        mirror: [1, 4, 3, 5, 2],
        terms: &[term(4, (3, 1), (5, 2))],
    },
    Lemma1Identity {
        arrangement: [1, 2, 5, 4, 3],
        mirror: [1, 3, 4, 5, 2],
        terms: &[A3_41_52, A5_21_43],
    },
    Lemma1Identity {
        arrangement: [1, 3, 2, 4, 5],
        mirror: [1, 5, 4, 2, 3],
        terms: &[A1_32_54, term(2, (4, 3), (5, 1))],
    },
    Lemma1Identity {
        arrangement: [1, 3, 2, 5, 4],
        mirror: [1, 4, 5, 2, 3],
        terms: &[term(2, (4, 1), (5, 3))],
    },
    Lemma1Identity {
        arrangement: [1, 3, 4, 2, 5],
        mirror: [1, 5, 2, 4, 3],
        terms: &[A5_21_43],
    },
    Lemma1Identity {
        arrangement: [1, 3, 5, 2, 4],
        mirror: [1, 4, 2, 5, 3],
        terms: &[A1_32_54, term(4, (2, 1), (5, 3))],
    },
    Lemma1Identity {
        arrangement: [1, 4, 2, 3, 5],
        mirror: [1, 5, 3, 2, 4],
        terms: &[A1_32_54],
    },
    Lemma1Identity {
        arrangement: SIGMA1,
        mirror: SIGMA0,
        terms: &[],
    },
];

/// Outcome of one identity row on concrete weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityResidual<T> {
    /// 1-based row in the listing.
    pub row: usize,
    pub pair: ([usize; 5], [usize; 5]),
    /// `φ(σ) − φ(σ₀)` for the first arrangement of the pair.
    pub lhs_diff: T,
    /// `φ(σ') − φ(σ₀)` for the mirrored arrangement.
    pub mirror_diff: T,
    /// The factored expression evaluated directly.
    pub rhs_formula: T,
    /// `max(|lhs_diff − rhs_formula|, |mirror_diff − rhs_formula|)`.
    pub residual: T,
    /// Magnitude of the `φ` values involved; relative residual is `residual / scale`.
    pub scale: T,
}

impl<T: Scalar> IdentityResidual<T> {
    /// `residual ≤ rel_tol · scale`.
    pub fn within(&self, rel_tol: T) -> bool {
        self.residual <= rel_tol * self.scale
    }
}

/// Evaluates all twelve identity rows on ascending weights.
pub fn lemma1_residuals<T: Scalar>(weights: &WeightVector<T>) -> Result<Vec<IdentityResidual<T>>> {
    expect_five(weights)?;
    expect_sorted(weights)?;
    Ok(identity_residuals(weights.as_slice()))
}

/// Same as [`lemma1_residuals`] without the sortedness check. The identities
/// are polynomial identities, so the residuals vanish on any input; only the
/// sign of `rhs_formula` depends on the ordering.
pub fn lemma1_identity_residuals<T: Scalar>(
    weights: &WeightVector<T>,
) -> Result<Vec<IdentityResidual<T>>> {
    expect_five(weights)?;
    Ok(identity_residuals(weights.as_slice()))
}

fn identity_residuals<T: Scalar>(a: &[T]) -> Vec<IdentityResidual<T>> {
    let phi_of = |order: &[usize; 5]| {
        let v: Vec<T> = order.iter().map(|&i| a[i - 1]).collect();
        window_sum(&v, 3)
    };
    let abs = |x: T| if x < T::zero() { T::zero() - x } else { x };
    let max = |x: T, y: T| if x < y { y } else { x };
    let base = phi_of(&SIGMA0);
    LEMMA1_IDENTITIES
        .iter()
        .enumerate()
        .map(|(row, id)| {
            let phi_first = phi_of(&id.arrangement);
            let phi_mirror = phi_of(&id.mirror);
            let lhs_diff = phi_first - base;
            let mirror_diff = phi_mirror - base;
            let rhs_formula = id.formula(a);
            IdentityResidual {
                row: row + 1,
                pair: (id.arrangement, id.mirror),
                lhs_diff,
                mirror_diff,
                rhs_formula,
                residual: max(abs(lhs_diff - rhs_formula), abs(mirror_diff - rhs_formula)),
                scale: max(max(abs(phi_first), abs(phi_mirror)), abs(base)),
            }
        })
        .collect()
}

fn expect_five<T: Scalar>(weights: &WeightVector<T>) -> Result<()> {
    if weights.len() != 5 {
        return Err(Error::invalid(format!(
            "expected 5 weights, got {}",
            weights.len()
        )));
    }
    Ok(())
}

fn expect_sorted<T: Scalar>(weights: &WeightVector<T>) -> Result<()> {
    if !weights.is_sorted() {
        return Err(Error::invalid(format!(
            "weights must be sorted ascending, got {:?}",
            weights.as_slice()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{phi, CyclicVector};
    use crate::Rational;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn w(v: &[f64]) -> WeightVector<f64> {
        WeightVector::from_slice(v).unwrap()
    }

    fn exact(v: &[i128]) -> WeightVector<Rational> {
        WeightVector::new(v.iter().map(|&x| Rational::from_integer(x)).collect()).unwrap()
    }

    #[test]
    fn twenty_four_distinct_arrangements() {
        let arrs = enumerate_arrangements(&w(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!(arrs.len(), 24);
        assert!(arrs
            .iter()
            .all(|a| a.values()[0] == 1.0 && a.order()[0] == 0));
        let distinct: BTreeSet<Vec<usize>> = arrs.iter().map(|a| a.order().to_vec()).collect();
        assert_eq!(distinct.len(), 24);
        assert!(arrs.iter().any(|a| a.order() == [0, 1, 2, 3, 4]));
    }

    #[test]
    fn phi_values_come_in_reflection_pairs() {
        // Generic weights: 12 distinct values, one per reflection pair.
        let arrs = enumerate_arrangements(&exact(&[2, 3, 7, 11, 19])).unwrap();
        let values: BTreeSet<Rational> = arrs.iter().map(|a| a.phi().unwrap()).collect();
        assert_eq!(values.len(), 12);
        for a in &arrs {
            assert_eq!(a.phi().unwrap(), a.reflected().phi().unwrap());
        }
        // For 1..5 two pairs of rows coincide: {96, 97, 101, 105, 108, 117, 120, 124, 128, 129}.
        let arrs = enumerate_arrangements(&exact(&[1, 2, 3, 4, 5])).unwrap();
        let values: BTreeSet<i128> = arrs.iter().map(|a| a.phi().unwrap().to_integer()).collect();
        assert_eq!(
            values.into_iter().collect::<Vec<_>>(),
            vec![96, 97, 101, 105, 108, 117, 120, 124, 128, 129]
        );
    }

    #[test]
    fn table_covers_every_arrangement_once() {
        let mut all = BTreeSet::new();
        for id in &LEMMA1_IDENTITIES {
            assert!(all.insert(id.arrangement));
            assert!(all.insert(id.mirror));
            let mut reflected = id.arrangement;
            reflected[1..].reverse();
            assert_eq!(reflected, id.mirror);
        }
        assert_eq!(all.len(), 24);
    }

    #[test]
    fn sigma0_examples() {
        let s = sigma0(&w(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!(s.values(), &[1.0, 5.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.order_one_based(), vec![1, 5, 2, 3, 4]);
        assert_eq!(s.phi().unwrap(), 96.0);
        let ones = sigma0(&w(&[1.0; 5])).unwrap();
        assert_eq!(ones.values(), &[1.0; 5]);
    }

    #[test]
    fn sigma0_rejects_unsorted_and_wrong_length() {
        assert!(matches!(
            sigma0(&w(&[2.0, 1.0, 3.0, 4.0, 5.0])),
            Err(Error::InvalidArgument(_))
        ));
        assert!(sigma0(&w(&[1.0, 2.0, 3.0])).is_err());
        // Ties count as sorted.
        assert!(sigma0(&w(&[1.0, 1.0, 2.0, 2.0, 2.0])).is_ok());
    }

    #[test]
    fn min_phi_examples() {
        let (arr, v) = min_phi_arrangement(&w(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!(v, 96.0);
        // σ₁ = (1,4,3,2,5) ties with σ₀ = (1,5,2,3,4) and sorts first.
        assert_eq!(arr.order_one_based(), vec![1, 4, 3, 2, 5]);
        for a in enumerate_arrangements(&w(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap() {
            assert!(v <= a.phi().unwrap());
        }
        let (arr, v) = min_phi_arrangement(&w(&[1.0; 5])).unwrap();
        assert_eq!(v, 5.0);
        assert_eq!(arr.order(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn min_phi_accepts_unsorted() {
        let (arr, v) = min_phi_arrangement(&w(&[3.0, 5.0, 1.0, 4.0, 2.0])).unwrap();
        assert_eq!(v, 96.0);
        assert_eq!(arr.values()[0], 3.0);
    }

    #[test]
    fn identity_rows_on_one_to_five() {
        let rows = lemma1_residuals(&w(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0].lhs_diff, 24.0);
        assert_eq!(rows[0].rhs_formula, 24.0);
        assert_eq!(rows[0].residual, 0.0);
        assert_eq!(rows[11].lhs_diff, 0.0);
        assert_eq!(rows[11].rhs_formula, 0.0);
        assert!(rows.iter().all(|r| r.rhs_formula >= 0.0 && r.within(1e-12)));
    }

    #[test]
    fn identity_rows_on_equal_weights() {
        for r in lemma1_residuals(&w(&[1.0; 5])).unwrap() {
            assert_eq!(r.lhs_diff, 0.0);
            assert_eq!(r.mirror_diff, 0.0);
            assert_eq!(r.rhs_formula, 0.0);
            assert_eq!(r.residual, 0.0);
        }
    }

    #[test]
    fn identity_rows_reject_unsorted() {
        assert!(lemma1_residuals(&w(&[5.0, 4.0, 3.0, 2.0, 1.0])).is_err());
        assert!(lemma1_identity_residuals(&w(&[5.0, 4.0, 3.0, 2.0, 1.0])).is_ok());
    }

    #[test]
    fn psi_search_covers_720() {
        let ws = w(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
        assert_eq!(enumerate_circular(&ws).len(), 720);
        let (arr, v) = min_psi_arrangement(&ws).unwrap();
        let x = CyclicVector::from_slice(arr.values()).unwrap();
        assert_eq!(crate::forms::psi(&x).unwrap(), v);
        for a in enumerate_circular(&ws) {
            assert!(v <= crate::forms::window_sum(a.values(), 4));
        }
        assert!(min_psi_arrangement(&w(&[1.0; 5])).is_err());
    }

    #[test]
    fn arrangement_validation() {
        let ws = w(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(CyclicArrangement::from_one_based(&ws, &[2, 1, 3, 4, 5]).is_err());
        assert!(CyclicArrangement::from_one_based(&ws, &[1, 1, 3, 4, 5]).is_err());
        assert!(CyclicArrangement::from_one_based(&ws, &[1, 2, 3, 4]).is_err());
        assert!(CyclicArrangement::from_one_based(&ws, &[0, 2, 3, 4, 5]).is_err());
    }

    fn sorted_ints() -> impl Strategy<Value = Vec<i128>> {
        prop::collection::vec(1i128..1000, 5).prop_map(|mut v| {
            v.sort();
            v
        })
    }

    proptest! {
        // Over the rationals the identities hold with zero residual, sorted or not.
        #[test]
        fn identities_exact_over_rationals(v in prop::collection::vec(1i128..1000, 5)) {
            for r in lemma1_identity_residuals(&exact(&v)).unwrap() {
                prop_assert_eq!(r.residual, Rational::from_integer(0));
            }
        }

        #[test]
        fn sigma0_is_exact_minimiser(v in sorted_ints()) {
            let ws = exact(&v);
            let (_, min) = min_phi_arrangement(&ws).unwrap();
            prop_assert_eq!(min, sigma0(&ws).unwrap().phi().unwrap());
            for r in lemma1_residuals(&ws).unwrap() {
                prop_assert!(r.rhs_formula >= Rational::from_integer(0));
            }
        }

        #[test]
        fn sigma1_reflection_ties(v in prop::collection::vec(0.1f64..10.0, 5)) {
            let ws = w(&v);
            let s0 = CyclicArrangement::from_one_based(&ws, &SIGMA0).unwrap();
            let s1 = CyclicArrangement::from_one_based(&ws, &SIGMA1).unwrap();
            let reflected = s0.reflected();
            prop_assert_eq!(reflected.order(), s1.order());
            let (p0, p1) = (s0.phi().unwrap(), s1.phi().unwrap());
            prop_assert!((p0 - p1).abs() <= 1e-12 * p0);
        }

        // Squared weights with a₂ < a₄: σ₀ is strictly better than the identity order.
        #[test]
        fn squares_strictly_improve(v in sorted_ints()) {
            prop_assume!(v[1] < v[3]);
            let sq: Vec<f64> = v.iter().map(|&x| (x as f64) * (x as f64)).collect();
            let ws = w(&sq);
            let s0 = sigma0(&ws).unwrap().phi().unwrap();
            let id = phi(&CyclicVector::from_slice(&sq).unwrap()).unwrap();
            prop_assert!(s0 < id);
        }
    }
}
