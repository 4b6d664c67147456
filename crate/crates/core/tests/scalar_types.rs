use pentagonal::{
    lemma1_residuals, min_phi_arrangement, pentagonal_rhs_normal, pentagonal_rhs_strong, phi,
    sigma0, AngleVectorF32, CyclicVectorExact, Rational, WeightVector, WeightVectorF32,
    WeightVectorF64,
};

fn r(n: i128) -> Rational {
    Rational::from_integer(n)
}

#[test]
fn exact_rational_arrangements() {
    let a = WeightVector::new(vec![
        r(1),
        Rational::new(3, 2),
        r(2),
        Rational::new(7, 3),
        r(5),
    ])
    .unwrap();
    let (_, min) = min_phi_arrangement(&a).unwrap();
    assert_eq!(min, sigma0(&a).unwrap().phi().unwrap());
    for row in lemma1_residuals(&a).unwrap() {
        assert_eq!(row.residual, r(0));
        assert!(row.rhs_formula >= r(0));
    }
    let x = CyclicVectorExact::new(vec![r(1), r(2), r(3), r(4), r(5)]).unwrap();
    assert_eq!(phi(&x).unwrap(), r(120));
}

#[test]
fn f32_and_f64_agree() {
    let w: [f64; 5] = [0.5, 1.0, 1.5, 2.5, 4.0];
    let a64 = WeightVectorF64::from_slice(&w).unwrap();
    let a32 = WeightVectorF32::from_slice(&w.map(|v| v as f32)).unwrap();
    let n64 = pentagonal_rhs_normal(&a64).unwrap();
    let n32 = pentagonal_rhs_normal(&a32).unwrap() as f64;
    assert!((n64 - n32).abs() <= 1e-5 * n64);
    let s64 = pentagonal_rhs_strong(&a64).unwrap();
    let s32 = pentagonal_rhs_strong(&a32).unwrap() as f64;
    assert!((s64 - s32).abs() <= 1e-5 * s64);
    assert!(AngleVectorF32::uniform(5).is_ok());
}
