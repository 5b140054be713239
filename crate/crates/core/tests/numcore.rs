use cubtwist::numcore::cyclotomic::Cyclotomic;
use cubtwist::numcore::factor::{factor, is_prime, is_squarefree};
use cubtwist::numcore::real::MpReal;
use cubtwist::numcore::recognize::{recognize_integer, RecognitionError};
use cubtwist::numcore::resultant::{poly_discriminant, DiscriminantError};
use cubtwist::numcore::ring::{rat, ratio, Rat};
use cubtwist::numcore::{cyclo_mul, reduce_mod_lambda, CyclotomicInt, PolyQ};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ci(ell: u64, c: &[i64]) -> CyclotomicInt {
    Cyclotomic::from_coeffs(ell, c.iter().map(|&x| BigInt::from(x)).collect())
}

fn recombine(n: u64) -> u128 {
    factor(n).0.iter().map(|&(p, e)| (p as u128).pow(e)).product()
}

#[test]
fn factor_examples() {
    assert_eq!(factor(360).0, vec![(2, 3), (3, 2), (5, 1)]);
    assert!(factor(1).0.is_empty());
    assert_eq!(factor(50653).0, vec![(37, 3)]);
}

#[test]
fn factor_recombines_up_to_a_million() {
    for n in 1..=1_000_000u64 {
        let f = factor(n);
        assert_eq!(recombine(n), n as u128, "n = {n}");
        assert!(f.0.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(f.0.iter().all(|&(p, e)| e >= 1 && is_prime(p)));
    }
}

#[test]
fn squarefree_examples() {
    assert!(is_squarefree(30));
    assert!(!is_squarefree(12));
    assert!(is_squarefree(1));
}

#[test]
fn discriminant_examples() {
    // x³ + Ax + B → −4A³ − 27B²
    for (a, b) in [(1, 1), (-3, 5), (7, -2)] {
        let p = PolyQ::from_i64(&[b, a, 0, 1]);
        assert_eq!(poly_discriminant(&p).unwrap(), rat(-4 * a * a * a - 27 * b * b));
    }
    assert_eq!(poly_discriminant(&PolyQ::from_i64(&[-6, 11, -6, 1])).unwrap(), rat(4));
    assert_eq!(poly_discriminant(&PolyQ::from_i64(&[-1, 0, 0, 1])).unwrap(), rat(-27));
    assert_eq!(poly_discriminant(&PolyQ::from_i64(&[1, 1])), Err(DiscriminantError::Degree(Some(1))));
}

#[test]
fn cyclotomic_examples() {
    let z = ci(3, &[0, 1]);
    assert_eq!(cyclo_mul(&z, &z).unwrap(), ci(3, &[-1, -1]));
    let one_minus_z = ci(3, &[1, -1]);
    let one_minus_z2 = Cyclotomic::from_powers(3, &[(0, BigInt::from(1)), (2, BigInt::from(-1))]);
    assert_eq!(cyclo_mul(&one_minus_z, &one_minus_z2).unwrap(), ci(3, &[3, 0]));
    let z2 = CyclotomicInt::zeta_pow(5, 2);
    let z3 = CyclotomicInt::zeta_pow(5, 3);
    assert_eq!(cyclo_mul(&z2, &z3).unwrap(), ci(5, &[1, 0, 0, 0]));
    assert!(cyclo_mul(&z, &z2).is_err());
    assert_eq!(reduce_mod_lambda(&ci(3, &[2, 5])), 1);
    assert_eq!(reduce_mod_lambda(&one_minus_z), 0);
    assert_eq!(reduce_mod_lambda(&CyclotomicInt::zero(5)), 0);
}

#[test]
fn recognize_integer_examples() {
    let x = |v: &str| MpReal(rug::Float::with_val(200, rug::Float::parse(v).unwrap()));
    assert_eq!(recognize_integer(&x("2.9999999"), 1e-6, 1e-4).unwrap().0, BigInt::from(3));
    assert!(matches!(recognize_integer(&x("0.5"), 1e-6, 1e-4), Err(RecognitionError::NotInteger { .. })));
    assert_eq!(recognize_integer(&x("-0.00000002"), 1e-6, 1e-4).unwrap().0, BigInt::from(0));
    assert!(matches!(recognize_integer(&x("3"), 0.3, 1e-4), Err(RecognitionError::ErrorTooLarge(_))));
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| ratio(n, d))
}

fn cyclo(ell: u64) -> impl Strategy<Value = CyclotomicInt> {
    proptest::collection::vec(-50i64..50, (ell - 1) as usize).prop_map(move |c| ci(ell, &c))
}

proptest! {
    #[test]
    fn factor_recombines_large(n in 1u64..1_000_000_000_000) {
        prop_assert_eq!(recombine(n), n as u128);
        for (p, _) in factor(n).0 {
            prop_assert!(is_prime(p));
        }
    }

    #[test]
    fn cubic_discriminant_is_product_of_root_differences(r in proptest::array::uniform3(small_rat())) {
        let lin = |x: &Rat| PolyQ::new(vec![-x.clone(), rat(1)]);
        let p = lin(&r[0]) * lin(&r[1]) * lin(&r[2]);
        let d = |a: &Rat, b: &Rat| (a - b) * (a - b);
        let expected = d(&r[0], &r[1]) * d(&r[0], &r[2]) * d(&r[1], &r[2]);
        prop_assert_eq!(poly_discriminant(&p).unwrap(), expected);
    }

    #[test]
    fn cyclotomic_ring_axioms_l3(a in cyclo(3), b in cyclo(3), c in cyclo(3)) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn cyclotomic_ring_axioms_l5(a in cyclo(5), b in cyclo(5), c in cyclo(5)) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn recognize_integer_tolerance(m in -1000i64..1000, d in -0.49f64..0.49) {
        let tol = 1e-4;
        let x = MpReal(rug::Float::with_val(200, m) + d);
        let r = recognize_integer(&x, 1e-6, tol);
        if d.abs() <= tol {
            prop_assert_eq!(r.unwrap().0, BigInt::from(m));
        } else {
            prop_assert!(r.is_err());
        }
    }
}

fn ring_axioms(a: &CyclotomicInt, b: &CyclotomicInt, c: &CyclotomicInt) -> Result<(), TestCaseError> {
    let mul = |x: &CyclotomicInt, y: &CyclotomicInt| cyclo_mul(x, y).unwrap();
    let add = |x: &CyclotomicInt, y: &CyclotomicInt| x.try_add(y).unwrap();
    let ell = a.ell();
    prop_assert_eq!(mul(a, b), mul(b, a));
    prop_assert_eq!(mul(&mul(a, b), c), mul(a, &mul(b, c)));
    prop_assert_eq!(mul(a, &add(b, c)), add(&mul(a, b), &mul(a, c)));
    prop_assert_eq!(reduce_mod_lambda(&mul(a, b)), reduce_mod_lambda(a) * reduce_mod_lambda(b) % ell);
    prop_assert_eq!(reduce_mod_lambda(&add(a, b)), (reduce_mod_lambda(a) + reduce_mod_lambda(b)) % ell);
    Ok(())
}
