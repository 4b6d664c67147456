use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;
use crate::arrangements::{enumerate_arrangements, sigma0};
use crate::forms::psi;
use crate::scalar::relative_diff;

// Reference values from direct evaluation in an independent script.
const FIVE_COS_PI_5: f64 = 4.045084971874737;
const FIFTEEN_COS_PI_5: f64 = 12.135254915624213;
const FIFTY_FIVE_COS_PI_5: f64 = 44.49593469062211;
// (1+√5)/4 · 4712/120 and (1+√5)/4 · 2120/120.
const NORMAL_1_TO_5: f64 = 31.767400645789603;
const STRONG_1_TO_5: f64 = 14.29263356729074;
const SEVEN_COS_PI_7: f64 = 6.306782075316934;

fn w(v: &[f64]) -> WeightVector<f64> {
    WeightVector::from_slice(v).unwrap()
}

fn uniform(n: usize) -> AngleVector<f64> {
    AngleVector::uniform(n).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    relative_diff(a, b) <= rel
}

#[test]
fn closed_form_matches_trig() {
    assert!((cos_pi_over_5::<f64>() - (PI / 5.0).cos()).abs() <= 1e-14);
    assert!((cos_pi_over_5::<f32>() - (std::f32::consts::PI / 5.0).cos()).abs() <= 1e-6);
}

#[test]
fn cosine_sum_examples() {
    assert!(close(
        cosine_sum(&w(&[1.0; 5]), &uniform(5)).unwrap(),
        FIVE_COS_PI_5,
        1e-15
    ));
    assert!(close(
        cosine_sum(&w(&[1.0, 2.0, 3.0, 4.0, 5.0]), &uniform(5)).unwrap(),
        FIFTEEN_COS_PI_5,
        1e-14
    ));
    let alpha = AngleVector::new(vec![PI / 2.0, PI / 8.0, PI / 8.0, PI / 8.0, PI / 8.0]).unwrap();
    let a = w(&[100.0, 1.0, 1.0, 1.0, 1.0]);
    let expected = 4.0 * (PI / 8.0).cos();
    assert!((cosine_sum(&a, &alpha).unwrap() - expected).abs() < 1e-12);
    assert!(cosine_sum(&w(&[1.0; 7]), &uniform(5)).is_err());
}

#[test]
fn toth_rhs_examples() {
    let cv = |v: &[f64]| CyclicVector::from_slice(v).unwrap();
    assert!(close(
        toth_rhs(&cv(&[1.0; 5]), 5).unwrap(),
        FIVE_COS_PI_5,
        1e-15
    ));
    assert!(close(toth_rhs(&cv(&[1.0; 3]), 3).unwrap(), 1.5, 1e-15));
    assert!(close(
        toth_rhs(&cv(&[1.0, 2.0, 3.0, 4.0, 5.0]), 5).unwrap(),
        FIFTY_FIVE_COS_PI_5,
        1e-15
    ));
    assert!(toth_rhs(&cv(&[1.0; 3]), 2).is_err());
    assert!(toth_rhs(&cv(&[1.0; 5]), 4).is_err());
}

#[test]
fn pentagonal_rhs_examples() {
    assert!(close(
        pentagonal_rhs_normal(&w(&[1.0; 5])).unwrap(),
        FIVE_COS_PI_5,
        1e-15
    ));
    let a = w(&[1.0, 2.0, 3.0, 4.0, 5.0]);
    assert!(close(
        pentagonal_rhs_normal(&a).unwrap(),
        NORMAL_1_TO_5,
        1e-14
    ));
    assert!(close(
        pentagonal_rhs_strong(&a).unwrap(),
        STRONG_1_TO_5,
        1e-14
    ));
    assert!(pentagonal_rhs_strong(&a).unwrap() < pentagonal_rhs_normal(&a).unwrap());
    assert!(close(
        pentagonal_rhs_strong(&w(&[1.0; 5])).unwrap(),
        FIVE_COS_PI_5,
        1e-15
    ));
    let t = 3.25;
    assert!(close(
        pentagonal_rhs_normal(&w(&[t; 5])).unwrap(),
        5.0 * t * cos_pi_over_5::<f64>(),
        1e-14
    ));
    assert!(pentagonal_rhs_normal(&w(&[1.0; 7])).is_err());
    assert!(matches!(
        pentagonal_rhs_strong(&w(&[2.0, 1.0, 3.0, 4.0, 5.0])),
        Err(Error::InvalidArgument(_))
    ));
}

#[test]
fn arrangement_rhs_specialises() {
    let a = w(&[1.0, 2.0, 3.0, 4.0, 5.0]);
    let id = CyclicArrangement::identity(&a);
    assert!(close(lemma2_rhs(&id).unwrap(), NORMAL_1_TO_5, 1e-14));
    assert!(close(
        lemma2_rhs(&sigma0(&a).unwrap()).unwrap(),
        STRONG_1_TO_5,
        1e-14
    ));
    let ones = w(&[1.7; 5]);
    let first = lemma2_rhs(&CyclicArrangement::identity(&ones)).unwrap();
    for arr in enumerate_arrangements(&ones).unwrap() {
        assert_eq!(lemma2_rhs(&arr).unwrap(), first);
    }
}

#[test]
fn heptagonal_rhs_examples() {
    assert!(close(
        heptagonal_rhs(&w(&[1.0; 7])).unwrap(),
        SEVEN_COS_PI_7,
        1e-15
    ));
    let t = 0.4;
    assert!(close(
        heptagonal_rhs(&w(&[t; 7])).unwrap(),
        7.0 * t * (PI / 7.0).cos(),
        1e-14
    ));
    // ψ(1,4,1,4,1,4,1) = 88 by expansion, product 8.
    let alt = w(&[1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0]);
    let sq = CyclicVector::from_slice(&alt.squares()).unwrap();
    assert_eq!(psi(&sq).unwrap(), 88.0);
    assert!(close(
        heptagonal_rhs(&alt).unwrap(),
        (PI / 7.0).cos() * 11.0,
        1e-15
    ));
    assert!(heptagonal_rhs(&w(&[1.0; 5])).is_err());
}

#[test]
fn odd_n_examples() {
    assert!(close(
        odd_n_rhs_experimental(&w(&[1.0; 9]), 9).unwrap(),
        9.0 * (PI / 9.0).cos(),
        1e-15
    ));
    assert!(close(
        odd_n_rhs_experimental(&w(&[2.5; 9]), 9).unwrap(),
        22.5 * (PI / 9.0).cos(),
        1e-14
    ));
    assert!(odd_n_rhs_experimental(&w(&[1.0; 8]), 8).is_err());
    assert!(odd_n_rhs_experimental(&w(&[1.0; 7]), 7).is_err());
    assert!(odd_n_rhs_experimental(&w(&[1.0; 9]), 11).is_err());
    let r = odd_n_bound_check(&w(&[1.0; 11]), &uniform(11), 1e-9).unwrap();
    assert_eq!(r.theorem, Theorem::OddNExperimental);
    assert!(r.theorem.is_experimental());
    assert!(r.gap.abs() < 1e-12);
}

#[test]
fn angle_validation() {
    assert!(AngleVector::new(vec![PI / 5.0; 5]).is_ok());
    assert!(AngleVector::new(vec![PI / 5.0; 4]).is_err());
    assert!(AngleVector::new(vec![PI, 0.0]).is_err());
    assert!(AngleVector::new(vec![PI + 1.0, -1.0]).is_err());
    assert!(AngleVector::new(vec![PI / 2.0, PI / 2.0 + 1e-9]).is_err());
    assert!(AngleVector::new(vec![PI / 2.0, PI / 2.0 + 1e-13]).is_ok());
    assert!(AngleVector::new(vec![f64::NAN, PI]).is_err());
    assert!(AngleVector::<f64>::new(vec![]).is_err());
    assert!(AngleVector::<f32>::uniform(5).is_ok());
}

#[test]
fn equality_case_normal_and_strong() {
    let a = w(&[1.0; 5]);
    for form in [PentagonalForm::Normal, PentagonalForm::Strong] {
        let r = pentagonal_bound_check(&a, &uniform(5), form, 1e-9).unwrap();
        assert!(r.holds);
        assert!(r.gap.abs() <= 1e-12);
        assert!(close(r.lhs, FIVE_COS_PI_5, 1e-15));
    }
    assert!(equality_condition_spread(&a, &uniform(5)).unwrap() <= 1e-15);
}

#[test]
fn strong_check_on_one_to_five() {
    let r = pentagonal_bound_check(
        &w(&[1.0, 2.0, 3.0, 4.0, 5.0]),
        &uniform(5),
        PentagonalForm::Strong,
        1e-9,
    )
    .unwrap();
    assert_eq!(r.theorem, Theorem::PentagonalStrong);
    assert!(close(r.lhs, FIFTEEN_COS_PI_5, 1e-14));
    assert!(close(r.rhs, STRONG_1_TO_5, 1e-14));
    assert!(r.holds);
}

#[test]
fn strong_check_sorts_jointly() {
    let a = w(&[5.0, 1.0, 4.0, 2.0, 3.0]);
    let alpha = AngleVector::new(vec![0.1, 0.2, 0.3, 0.4, PI - 1.0]).unwrap();
    let (sa, salpha) = sort_jointly(&a, &alpha).unwrap();
    assert_eq!(sa.as_slice(), &[1.0, 2.0, 3.0, 4.0, 5.0]);
    assert_eq!(salpha.as_slice(), &[0.2, 0.4, PI - 1.0, 0.3, 0.1]);
    let r = pentagonal_bound_check(&a, &alpha, PentagonalForm::Strong, 1e-9).unwrap();
    assert!((r.lhs - cosine_sum(&sa, &salpha).unwrap()).abs() < 1e-14);
    assert!(close(r.rhs, STRONG_1_TO_5, 1e-14));
}

#[test]
fn report_holds_iff_gap_above_minus_tol() {
    let r = BoundReport::new(Theorem::Toth, 1.0 + 5e-10, 1.0, 1e-9);
    assert!(r.holds);
    let r = BoundReport::new(Theorem::Toth, 1.0 + 2e-9, 1.0, 1e-9);
    assert!(!r.holds);
}

#[test]
fn lemma2_substitution_on_ones() {
    let b = CyclicArrangement::identity(&w(&[1.0; 5]));
    let alpha = AngleVector::new(vec![0.3, 0.5, 0.7, 0.9, PI - 2.4]).unwrap();
    let s = lemma2_substitution(&b, &alpha).unwrap();
    assert_eq!(s.x.as_slice(), &[1.0; 5]);
    let sum_beta: f64 = s.beta.iter().map(|t| t.cos()).sum();
    let sum_alpha: f64 = alpha.as_slice().iter().map(|t| t.cos()).sum();
    assert!((sum_beta - sum_alpha).abs() < 1e-15);
}

#[test]
fn lemma2_substitution_on_one_to_five() {
    let b = CyclicArrangement::identity(&w(&[1.0, 2.0, 3.0, 4.0, 5.0]));
    let s = lemma2_substitution(&b, &uniform(5)).unwrap();
    let expected = [
        0.3f64.sqrt(),
        (20.0f64 / 6.0).sqrt(),
        4.8f64.sqrt(),
        (10.0f64 / 12.0).sqrt(),
        30f64.sqrt(),
    ];
    for (x, e) in s.x.as_slice().iter().zip(expected) {
        assert!(close(*x, e, 1e-15));
    }
    assert_eq!(s.beta_index, vec![0, 3, 1, 4, 2]);
    assert_eq!(s.product_p, 120.0);
    assert!(s.check.max_residual() <= 1e-12);
    // Σxᵢ²·P = φ(b²)
    let sum_sq: f64 = s.x.as_slice().iter().map(|v| v * v).sum();
    assert!(close(sum_sq * s.product_p, 4712.0, 1e-14));
}

#[test]
fn heptagonal_substitution_examples() {
    let s = heptagonal_substitution(&w(&[1.0; 7]), &uniform(7)).unwrap();
    assert_eq!(s.x.as_slice(), &[1.0; 7]);
    let a = w(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
    let s = heptagonal_substitution(&a, &uniform(7)).unwrap();
    assert!(close(s.x.as_slice()[0], (24.0f64 / 210.0).sqrt(), 1e-15));
    assert_eq!(s.beta_index, vec![0, 4, 1, 5, 2, 6, 3]);
    assert!(s.check.max_residual() <= 1e-12);
    assert!(heptagonal_substitution(&w(&[1.0; 5]), &uniform(5)).is_err());
}

#[test]
fn toth_round_trip_equality_case() {
    let x = CyclicVector::from_slice(&[1.0; 5]).unwrap();
    let rt = toth_from_pentagonal(&x, &uniform(5)).unwrap();
    for v in [rt.lhs, rt.rhs_via_pentagonal, rt.rhs_direct] {
        assert!(close(v, FIVE_COS_PI_5, 1e-15));
    }
}

#[test]
fn toth_round_trip_right_angle() {
    let x = CyclicVector::from_slice(&[0.7, 1.3, 2.2, 0.4, 1.9]).unwrap();
    let alpha = AngleVector::new(vec![PI / 2.0, PI / 8.0, PI / 8.0, PI / 8.0, PI / 8.0]).unwrap();
    let rt = toth_from_pentagonal(&x, &alpha).unwrap();
    assert!(rt.termwise_residual <= 1e-12);
    assert!((rt.pentagonal_lhs - rt.lhs).abs() <= 1e-12 * rt.lhs.abs());
    assert!(rt.rhs_residual() <= 1e-12);
    assert!(rt.lhs <= rt.rhs_direct);
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
        .prop_map(|v| v.into_iter().map(|e| 10f64.powf(e)).collect())
}

fn angles(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-3f64..1.0, n).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|e| e / s * PI).collect()
    })
}

fn angle_vec(v: Vec<f64>) -> AngleVector<f64> {
    AngleVector::new(v).unwrap()
}

proptest! {
    #[test]
    fn every_arrangement_bound_holds(a in weights(5), al in angles(5)) {
        let a = w(&a);
        let alpha = angle_vec(al);
        for arr in enumerate_arrangements(&a).unwrap() {
            let r = lemma2_bound_check(&arr, &alpha, 1e-9).unwrap();
            prop_assert!(r.holds, "{:?} {:?}", arr, r);
        }
    }

    #[test]
    fn strong_never_exceeds_normal(a in weights(5)) {
        let a = w(&a).sorted();
        let s = pentagonal_rhs_strong(&a).unwrap();
        let n = pentagonal_rhs_normal(&a).unwrap();
        prop_assert!(s <= n * (1.0 + 1e-15));
        if a.as_slice()[1] < a.as_slice()[3] {
            prop_assert!(s < n);
        }
    }

    #[test]
    fn homogeneous_of_degree_one(a in weights(5), al in angles(5), t in 0.1f64..10.0) {
        let a = w(&a).sorted();
        let alpha = angle_vec(al);
        let at = a.scaled(t).unwrap();
        for form in [PentagonalForm::Normal, PentagonalForm::Strong] {
            let r = pentagonal_bound_check(&a, &alpha, form, 1e-9).unwrap();
            let rt = pentagonal_bound_check(&at, &alpha, form, 1e-9).unwrap();
            prop_assert!(close(rt.lhs, t * r.lhs, 1e-12) || (rt.lhs - t * r.lhs).abs() < 1e-12 * t * r.rhs);
            prop_assert!(close(rt.rhs, t * r.rhs, 1e-12));
            prop_assert!((rt.gap - t * r.gap).abs() <= 1e-12 * t * r.rhs);
        }
    }

    #[test]
    fn lemma2_substitution_identities(a in weights(5), al in angles(5)) {
        let a = w(&a);
        let alpha = angle_vec(al);
        for arr in enumerate_arrangements(&a).unwrap() {
            let s = lemma2_substitution(&arr, &alpha).unwrap();
            prop_assert!(s.check.max_residual() <= 1e-12, "{:?}", s.check);
        }
    }

    #[test]
    fn heptagonal_substitution_identities(a in weights(7), al in angles(7)) {
        let s = heptagonal_substitution(&w(&a), &angle_vec(al)).unwrap();
        prop_assert!(s.check.max_residual() <= 1e-12, "{:?}", s.check);
    }

    #[test]
    fn toth_round_trip_is_identity(x in weights(5), al in angles(5)) {
        let x = CyclicVector::new(x).unwrap();
        let rt = toth_from_pentagonal(&x, &angle_vec(al)).unwrap();
        prop_assert!(rt.rhs_residual() <= 1e-12);
        prop_assert!(rt.termwise_residual <= 1e-12);
        prop_assert!(rt.sum_of_squares_residual <= 1e-12);
        prop_assert!(rt.lhs <= rt.rhs_direct + 1e-9);
    }

    #[test]
    fn heptagonal_and_toth_hold(a in weights(7), al in angles(7)) {
        let a = w(&a);
        let alpha = angle_vec(al);
        prop_assert!(heptagonal_bound_check(&a, &alpha, 1e-9).unwrap().holds);
        let x = CyclicVector::from_slice(a.as_slice()).unwrap();
        prop_assert!(toth_bound_check(&x, &alpha, 1e-9).unwrap().holds);
    }
}
