mod common;

use cubtwist::elliptic::{curves, trace, CurveQ, KElem, Point};
use cubtwist::elliptic::field_k::CubicModulus;
use cubtwist::elliptic::weierstrass::{is_nontorsion, TorsionField, Weierstrass};
use cubtwist::kummer::conic::{conic_norm_test, conic_rhs, three_torsion_fiber, ConicResult};
use cubtwist::kummer::e37b::{census_cubic, h1, h2, g, q, pairs, squarefree_away};
use cubtwist::kummer::families::{family_fiber_points, family_surface, marked_fiber_point};
use cubtwist::kummer::genus3::genus3_curve;
use cubtwist::kummer::*;
use cubtwist::numcore::factor::factor;
use cubtwist::numcore::poly::{bi_coeff, PolyQ};
use cubtwist::numcore::quadratic::QSqrtM3;
use cubtwist::numcore::resultant::resultant;
use cubtwist::numcore::ring::{rat, rat_sqrt, ratio, Rat};
use cubtwist::cubicfield::{CubicField, Splitting};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn short(a: i64, b: i64) -> [Rat; 5] {
    [Rat::zero(), Rat::zero(), Rat::zero(), rat(a), rat(b)]
}

#[test]
fn surface_leading_coefficient_and_t0_fiber() {
    let s = delta_poly(&curves::e37b_shifted().a_invariants()).unwrap();
    assert_eq!(s.delta.degree(), Some(4));
    assert_eq!(s.delta.leading(), PolyQ::constant(rat(-27)));
    // −u²(27u² − 202u + 27)
    let expect = PolyQ::from_i64(&[0, 0, -27, 202, -27]);
    assert_eq!(s.fiber(&Rat::zero()), expect);
}

#[test]
fn short_form_t0_specialization() {
    for (a, b) in [(1, 1), (-3, 5), (2, -7)] {
        let s = delta_poly(&short(a, b)).unwrap();
        let f0 = s.fiber(&Rat::zero());
        // −4A³ − 27(B − u²)²
        let bu = PolyQ::from_i64(&[b, 0, -1]);
        let expect = PolyQ::constant(rat(-4 * a * a * a)) - (bu.clone() * bu).scale(&rat(27));
        assert_eq!(f0, expect);
    }
}

#[test]
fn printed_quartic_differs_only_in_the_tu_term() {
    // the true discriminant carries −4t(At⁴ − 9Bt² − 6A²)u
    for (a, b) in [(1, 1), (2, 3), (-1, 4)] {
        let s = delta_poly(&short(a, b)).unwrap();
        let diff = s.delta.clone() - printed_quartic(&rat(a), &rat(b));
        for i in 0..=4 {
            for j in 0..=12 {
                let c = bi_coeff(&diff, i, j);
                if (i, j) == (1, 3) {
                    assert_eq!(c, rat(36 * b - 36));
                } else {
                    assert!(c.is_zero(), "u^{i} t^{j}");
                }
            }
        }
    }
}

#[test]
fn jacobian_discriminant_factors_through_bad_locus() {
    for (a, b) in [(1, 1), (-2, 5), (3, 0)] {
        let j = jacobian_curve(&rat(a), &rat(b)).unwrap();
        let bad = bad_locus(&rat(a), &rat(b));
        let expect = (bad.clone() * bad.clone() * bad).scale(&rat(-16 * (4 * a * a * a + 27 * b * b)));
        assert_eq!(j.discriminant(), expect);
    }
    assert!(jacobian_curve(&Rat::zero(), &Rat::zero()).is_err());
    assert_eq!(bad_locus(&Rat::zero(), &rat(2)), PolyQ::from_i64(&[0, 0, 216, 0, 0, 0, 0, 0, 1]));
    assert!(bad_locus(&rat(1), &rat(1)).is_squarefree());
}

#[test]
fn gamma1_is_a_point_of_infinite_order() {
    let j = jacobian_curve(&Rat::zero(), &rat(1)).unwrap();
    let (x, y) = gamma1(&Rat::zero(), &rat(1));
    assert!(j.residual(&x, &y).is_zero());
    let t = QSqrtM3::from_rat(rat(1));
    let p = Point::Affine(x.eval(&t), y.eval(&t));
    let (a4, a6) = j.over_sqrt_m3();
    let curve = Weierstrass::new([QSqrtM3::zero(), QSqrtM3::zero(), QSqrtM3::zero(), a4.eval(&t), a6.eval(&t)]);
    assert!(curve.contains(&p));
    assert!(is_nontorsion(&curve, &p, TorsionField::Quadratic));
    // t = 0: (−9B, 0)
    let z = QSqrtM3::zero();
    assert_eq!(x.eval(&z), QSqrtM3::from_rat(rat(-9)));
    assert!(y.eval(&z).is_zero());
}

#[test]
fn fiber_search_finds_seven_ninths() {
    let s = delta_poly(&curves::e37b_shifted().a_invariants()).unwrap();
    let pts = fiber_search(&s, &Rat::zero(), 10);
    let hit: Vec<_> = pts.iter().filter(|p| p.u == ratio(7, 9)).collect();
    assert_eq!(hit.len(), 2);
    assert!(hit.iter().any(|p| p.delta == ratio(224, 27)));
    assert!(hit.iter().all(|p| p.degenerate_fiber));
    assert_eq!(hit[0].class, CubicClass::CyclicCubic);
    for p in &pts {
        let d = cubtwist::numcore::resultant::discriminant(&p.cubic);
        assert_eq!(d, &p.delta * &p.delta);
        if p.class == CubicClass::CyclicCubic {
            assert!(CubicModulus::new(&p.cubic).unwrap().is_cyclic());
        }
    }
}

#[test]
fn negative_fiber_is_empty() {
    // y² = x³ + 1 at t = 0: −27(1 − u²)² ≤ 0 with equality at u = ±1 only
    let s = delta_poly(&short(0, 1)).unwrap();
    let pts = fiber_search(&s, &Rat::zero(), 6);
    assert!(pts.iter().all(|p| p.delta.is_zero()));
    // y² = x³ − x − 3 at t = 0: −4A³ − 27(B − u²)² = 4 − 27(u² + 3)² < 0
    let s = delta_poly(&short(-1, -3)).unwrap();
    assert!(fiber_search(&s, &Rat::zero(), 8).is_empty());
}

#[test]
fn bad_locus_fiber_is_flagged() {
    // A = 0: t²(t⁶ + 108B) vanishes at t = 1 for B = −1/108
    let a = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero(), ratio(-1, 108)];
    let s = delta_poly(&a).unwrap();
    assert!(bad_locus(&Rat::zero(), &ratio(-1, 108)).eval(&rat(1)).is_zero());
    let pts = fiber_search(&s, &rat(1), 4);
    let probe = fiber_search(&s, &rat(2), 4);
    assert!(pts.iter().all(|p| p.degenerate_fiber));
    assert!(probe.iter().all(|p| !p.degenerate_fiber));
}

#[test]
fn split_line_through_rational_points() {
    // 37A has (0,0), (1,0), (−1,−1)... the line y = 0 meets x³ − x in 0, ±1
    let e = curves::e37a();
    let s = delta_poly(&e.a_invariants()).unwrap();
    let d2 = s.eval(&Rat::zero(), &Rat::zero());
    let d = rat_sqrt(&d2).unwrap();
    let (_, class) = extract_cubic(&s, &Rat::zero(), &Rat::zero(), &d).unwrap();
    assert_eq!(class, CubicClass::SplitOverQ);
    assert!(extract_cubic(&s, &Rat::zero(), &Rat::zero(), &(d + rat(1))).is_err());
}

#[test]
fn genus3_smoothness() {
    assert!(!genus3_curve(&rat(1), &rat(1), &Rat::zero()).smooth);
    assert!(genus3_curve(&rat(1), &rat(1), &rat(1)).smooth);
    // on the bad locus: A = 0, B = −1/108, t = 1 and A = 1, B = 2/27, t = 1
    assert!(!genus3_curve(&Rat::zero(), &ratio(-1, 108), &rat(1)).smooth);
    assert!(genus3_curve(&Rat::zero(), &ratio(-1, 108), &rat(2)).smooth);
    assert!(!genus3_curve(&rat(1), &ratio(2, 27), &rat(1)).smooth);
}

#[test]
fn six_torsion_family() {
    for l in [1, 2, 3, 5, -3] {
        let l = rat(l);
        match torsion_family(FamilyKind::SixTorsion, &l) {
            FamilyOutcome::Fiber(f) => assert!(f.on_curve && f.nontorsion),
            other => panic!("{other:?}"),
        }
        let (s, t0) = family_surface(FamilyKind::SixTorsion, &l).unwrap();
        let (u, d) = marked_fiber_point(FamilyKind::SixTorsion, &l);
        assert_eq!(s.eval(&u, &t0), &d * &d);
    }
    let (c1, p1) = cubtwist::kummer::families::six_torsion_fiber(&rat(1));
    assert_eq!(p1, Point::Affine(rat(-12), Rat::zero()));
    assert!(c1.contains(&p1));
    assert_eq!(torsion_family(FamilyKind::SixTorsion, &Rat::zero()), FamilyOutcome::Excluded(Rat::zero()));
    match torsion_family(FamilyKind::SixTorsion, &ratio(-1, 2)) {
        FamilyOutcome::Special(s) => {
            assert!(s.curve.is_singular());
            assert!(s.on_curve && s.nonsingular_point && s.not_two_torsion);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn four_two_family() {
    for l in [2, 3, 4] {
        let l = rat(l);
        match torsion_family(FamilyKind::FourTwo, &l) {
            FamilyOutcome::Fiber(f) => assert!(f.on_curve && f.nontorsion),
            other => panic!("{other:?}"),
        }
        let (s, t0) = family_surface(FamilyKind::FourTwo, &l).unwrap();
        let (u, d) = marked_fiber_point(FamilyKind::FourTwo, &l);
        assert_eq!(s.eval(&u, &t0), &d * &d);
    }
    let (_, p) = cubtwist::kummer::families::four_two_fiber(&rat(2));
    assert_eq!(p, Point::Affine(rat(249), rat(4077)));
    for l in [0, 1, -1] {
        assert!(matches!(torsion_family(FamilyKind::FourTwo, &rat(l)), FamilyOutcome::Excluded(_)));
    }
}

#[test]
fn family_fibers_yield_cubic_fields() {
    let pts = family_fiber_points(FamilyKind::FourTwo, &rat(2), 12).unwrap();
    assert!(pts.iter().any(|p| p.u == rat(4)));
    for p in pts.iter().filter(|p| p.class == CubicClass::CyclicCubic) {
        let k = CubicField::from_cubic(&integral_cubic(&p.cubic)).unwrap();
        assert_eq!(k.field_discriminant(), &k.conductor * &k.conductor);
    }
}

#[test]
fn conic_for_37b() {
    let (u, t) = (ratio(4, 3), rat(1));
    let res = conic_norm_test(&u, &t).unwrap();
    let ConicResult::Solvable { q, point, param } = res else { panic!("unsolvable") };
    assert_eq!(&point.0 * &point.0 + rat(3) * &point.1 * &point.1, q);
    let fiber = three_torsion_fiber(&u, &t).unwrap();
    assert_eq!(fiber, PolyQ::from_i64(&[0, 0, -27, 202, -27]));
    // the pencil reaches u = 7/9
    let mut hit = false;
    for n in -40..=40 {
        for d in 1..=12 {
            let m = ratio(n, d);
            let (uu, dd) = param.fiber_point(&m);
            assert_eq!(fiber.eval(&uu), &dd * &dd);
            hit |= uu == ratio(7, 9);
        }
    }
    assert!(hit);
}

#[test]
fn conic_unsolvable_cases() {
    // 12U³(U³ − T) = 2 with U = 1 needs 12(1 − T) = 2
    let r = conic_norm_test(&rat(1), &ratio(5, 6)).unwrap();
    assert_eq!(conic_rhs(&rat(1), &ratio(5, 6)), rat(2));
    assert!(!r.is_solvable());
    let r = conic_norm_test(&rat(1), &rat(3)).unwrap();
    assert!(!r.is_solvable());
}

#[test]
fn three_torsion_fiber_shape() {
    // −27u²(u² − (4U³ − 2T)u + T²)
    for (u, t) in [(ratio(4, 3), rat(1)), (rat(2), rat(-3)), (ratio(1, 2), ratio(5, 7))] {
        let f = three_torsion_fiber(&u, &t).unwrap();
        let u3 = &u * &u * &u;
        let expect = PolyQ::new(vec![
            Rat::zero(),
            Rat::zero(),
            rat(-27) * &t * &t,
            rat(27) * (rat(4) * &u3 - rat(2) * &t),
            rat(-27),
        ]);
        assert_eq!(f, expect);
    }
}

#[test]
fn e37b_param_examples() {
    let p = e37b_param(&rat(1));
    assert_eq!(p.f_r, PolyQ::from_i64(&[-3584, -448, 0, 1]));
    assert_eq!(h1(1, 1), 28);
    assert_eq!(h2(1, 1), 4);
    let s = delta_poly(&curves::e37b_shifted().a_invariants()).unwrap();
    for r in [rat(0), rat(1), ratio(-2, 3), ratio(5, 7)] {
        let p = e37b_param(&r);
        assert_eq!(s.eval(&p.u, &Rat::zero()), &p.delta * &p.delta);
    }
}

#[test]
fn resultants_supported_on_exceptional_primes() {
    let f1 = PolyQ::from_i64(&[9, 12, 7]);
    let f2 = PolyQ::from_i64(&[7, -12, 9]);
    let gg = PolyQ::from_i64(&[1, 0, 1]);
    for (x, y) in [(&f1, &f2), (&f1, &gg), (&f2, &gg)] {
        let r = resultant(x, y);
        assert!(r.is_integer() && !r.is_zero());
        let n = r.to_integer().magnitude().clone();
        let n: u64 = n.try_into().unwrap();
        assert!(factor(n).primes().all(|p| [2, 3, 37].contains(&p)), "{n}");
    }
}

#[test]
fn census_pairs_eisenstein_and_split_primes() {
    let mut checked = 0;
    for (a, b) in pairs(12) {
        if checked >= 100 {
            break;
        }
        if !squarefree_away(a, b) {
            continue;
        }
        let k = CubicField::from_cubic(&census_cubic(a, b)).unwrap();
        let hh = (h1(a, b) as i128 * h2(a, b) as i128).unsigned_abs() as u64;
        for (p, e) in factor(hh).0 {
            if e == 1 && ![2, 3, 37].contains(&p) {
                assert_eq!(k.splitting(p).unwrap(), Splitting::Ramified, "({a},{b}) p={p}");
            }
        }
        for p in factor(q(a, b).unsigned_abs()).primes() {
            if ![2, 3, 37].contains(&p) {
                assert_eq!(k.splitting(p).unwrap(), Splitting::Split, "({a},{b}) p={p}");
            }
        }
        // conductor | 2¹⁰H₁H₂
        let c: u64 = k.conductor.clone().try_into().unwrap();
        assert_eq!((1024 * hh as u128) % c as u128, 0);
        assert!((k.split_proportion(1000).unwrap() - 1.0 / 3.0).abs() < 0.1);
        let _ = g(a, b);
        checked += 1;
    }
    assert_eq!(checked, 100);
}

fn e37b_trace_is_zero(r: &Rat) {
    let p = e37b_param(r);
    let m = CubicModulus::new(&p.f_r).unwrap();
    assert!(m.is_cyclic());
    let xi = KElem::generator(&m);
    let hh2 = rat(9) * r * r - rat(12) * r + rat(7);
    let x = xi * KElem::rational(Rat::one() / hh2);
    let pt = Point::Affine(x, KElem::rational(p.u.clone()));
    let e: CurveQ = curves::e37b_shifted();
    assert_eq!(trace(&e.model, &pt).unwrap(), Point::Infinity);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn delta_poly_is_the_true_discriminant(a in -10i64..=10, b in -10i64..=10, u in -5i64..5, t in -5i64..5) {
        prop_assume!(4 * a * a * a + 27 * b * b != 0);
        let s = delta_poly(&short(a, b)).unwrap();
        let cubic = s.cubic_at(&rat(u), &rat(t));
        prop_assert_eq!(cubtwist::numcore::resultant::discriminant(&cubic), s.eval(&rat(u), &rat(t)));
    }

    #[test]
    fn gamma1_identity(a in -10i64..=10, b in -10i64..=10) {
        prop_assume!(4 * a * a * a + 27 * b * b != 0);
        let j = jacobian_curve(&rat(a), &rat(b)).unwrap();
        let (x, y) = gamma1(&rat(a), &rat(b));
        prop_assert!(j.residual(&x, &y).is_zero());
    }

    #[test]
    fn e37b_points_have_trace_zero(n in -30i64..30, d in 1i64..30) {
        e37b_trace_is_zero(&ratio(n, d));
    }

    #[test]
    fn e37b_fiber_identity(n in -50i64..50, d in 1i64..50) {
        let s = delta_poly(&curves::e37b_shifted().a_invariants()).unwrap();
        let p = e37b_param(&ratio(n, d));
        prop_assert_eq!(s.eval(&p.u, &Rat::zero()), &p.delta * &p.delta);
        let disc = cubtwist::numcore::resultant::discriminant(&p.f_r);
        prop_assert!(rat_sqrt(&disc).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn genus3_smooth_iff_good_fiber(a in -4i64..=4, b in -4i64..=4, t in -3i64..=3) {
        prop_assume!(4 * a * a * a + 27 * b * b != 0);
        let c = genus3_curve(&rat(a), &rat(b), &rat(t));
        let good = t != 0 && !bad_locus(&rat(a), &rat(b)).eval(&rat(t)).is_zero();
        prop_assert_eq!(c.smooth, good);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn conic_norm_test_agrees_with_search(un in -6i64..=6, ud in 1i64..=3, tn in -12i64..=12, td in 1i64..=3) {
        let (u, t) = (ratio(un, ud), ratio(tn, td));
        let Ok(res) = conic_norm_test(&u, &t) else { return Ok(()) };
        let qv = conic_rhs(&u, &t);
        match res {
            ConicResult::Solvable { q, point: (z, w), param } => {
                prop_assert_eq!(&q, &qv);
                prop_assert_eq!(&z * &z + rat(3) * &w * &w, q.clone());
                for m in [rat(0), rat(1), ratio(-2, 5)] {
                    let (z, w) = param.point(&m);
                    prop_assert_eq!(&z * &z + rat(3) * &w * &w, q.clone());
                }
            }
            ConicResult::Unsolvable { q, .. } => {
                prop_assert!(q.is_zero() || common::brute_conic_point(&q, 60).is_none(), "missed point for q = {}", q);
            }
        }
    }
}
