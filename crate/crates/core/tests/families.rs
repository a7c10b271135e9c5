use std::sync::OnceLock;

use mestre_core::ellcurve::{
    cubic_y3_to_weierstrass, quartic_to_weierstrass, CubicYModel, ECPoint, QuarticModel, ShortW,
};
use mestre_core::exactalg::rat::{int, rat};
use mestre_core::exactalg::{is_nth_power_up_to_constant, Field, Poly, PolyQ, Rat, RatFunc};
use mestre_core::families::{
    certify, distinct_classes, euler_family_1728, euler_roots, sextic_family_0, specialize,
    twist_family, CubicFamily, Family, QuarticFamily, X2_PRINTED_COEFFICIENT,
};
use mestre_core::heights::Verdict;
use proptest::prelude::*;

fn sextic() -> &'static CubicFamily {
    static F: OnceLock<CubicFamily> = OnceLock::new();
    F.get_or_init(|| sextic_family_0().unwrap())
}

fn euler() -> &'static QuarticFamily {
    static F: OnceLock<QuarticFamily> = OnceLock::new();
    F.get_or_init(|| euler_family_1728().unwrap())
}

fn eval_point(p: &ECPoint<RatFunc>, t0: &Rat) -> ECPoint<Rat> {
    p.try_map(|c| c.eval(t0)).unwrap()
}

fn eval_curve(e: &ShortW<RatFunc>, t0: &Rat) -> ShortW<Rat> {
    ShortW::new(e.a.eval(t0).unwrap(), e.b.eval(t0).unwrap()).unwrap()
}

/// Coefficients of `prod (x - r_i)`, lowest first, multiplied out by hand.
fn expand(roots: &[Rat]) -> Vec<Rat> {
    let mut c = vec![int(1)];
    for r in roots {
        let mut next = vec![int(0); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci.clone();
            next[i] -= ci * r;
        }
        c = next;
    }
    c
}

#[test]
fn euler_identity_and_fiber_at_one() {
    let [x1, x2, x3, x4] = euler_roots();
    let one = RatFunc::constant(int(1));
    assert_eq!(&(&(&x1 * &x2) * &x3) * &(&(&x1 + &x2) + &x3), one);
    let at1: Vec<Rat> = [&x1, &x2, &x3, &x4].iter().map(|x| x.eval(&int(1)).unwrap()).collect();
    assert_eq!(at1, vec![rat(1, 3), rat(1, 6), int(4), rat(-9, 2)]);
    let c = expand(&at1);
    assert_eq!(c[0], int(-1));
    assert_eq!(c[1], rat(325, 36));
    assert_eq!(c[2], rat(-655, 36));
    assert_eq!(c[3], int(0));

    let fam = euler();
    assert!(fam.euler_identity);
    assert_eq!(fam.model.a0, RatFunc::constant(int(-1)));
    assert_eq!(fam.model.a1.eval(&int(1)).unwrap(), rat(325, 36));
    assert_eq!(fam.model.a2.eval(&int(1)).unwrap(), rat(-655, 36));
}

#[test]
fn euler_family_is_not_isotrivial() {
    let fam = euler();
    assert!(!fam.isotrivial);
    assert!(!is_nth_power_up_to_constant(&fam.curve.a, 4).unwrap());
    assert_eq!(fam.curve.b, RatFunc::constant(int(0)));
    assert_eq!(fam.points.len(), 4);
    for p in &fam.points {
        assert!(fam.curve.contains(p));
    }
}

#[test]
fn euler_excludes_t_zero() {
    let fam: Family = euler().clone().into();
    let s = specialize(&fam, &int(0)).unwrap();
    assert!(s.excluded.is_some());
    assert!(s.points.is_empty());
    assert!(s.curve.is_none());
}

#[test]
fn sextic_roots_sum_to_zero_and_r_is_cubic() {
    let fam = sextic();
    let total = fam.roots.iter().fold(PolyQ::zero(), |acc, x| &acc + x);
    assert!(total.is_zero());
    assert_eq!(fam.x2_repair.coefficient, int(X2_PRINTED_COEFFICIENT));
    assert_eq!(fam.x2_repair.degree, 2);
    assert!(fam.model.r.degree().unwrap() <= 3);
    assert!(!fam.d.is_zero());
    let at1: Vec<Rat> = fam.roots.iter().map(|x| x.eval(&int(1))).collect();
    let expected = [-4032, 39060, 4032, 35028, -39124, -34964].map(int);
    assert_eq!(at1, expected.to_vec());
}

#[test]
fn sextic_cube_root_and_discriminant() {
    let fam = sextic();
    let a3 = fam.model.r.coeff(3);
    let u = RatFunc::from_poly(fam.cube_root.clone());
    assert_eq!(u.powu(3), a3);
    assert!(!fam.isotrivial);
    assert!(!is_nth_power_up_to_constant(&RatFunc::from_poly(fam.d.clone()), 6).unwrap());
    assert_eq!(fam.d.degree(), Some(54));
    // irreducible by factorization patterns below 200, least single witness 239
    assert!(fam.pattern_certificate.is_some());
    assert_eq!(fam.irreducibility_witness, None);
    assert_eq!(fam.least_witness, Some(239));
}

#[test]
fn sextic_points_on_curve_and_twist_class() {
    let fam = sextic();
    assert_eq!(fam.points.len(), 6);
    for p in &fam.points {
        assert!(fam.curve.contains(p));
    }
    assert!(fam.curve.contains(&fam.tangent_point));
    assert_eq!(fam.curve.a, RatFunc::constant(int(0)));
    // the model is y^2 = x^3 + 16 D, the -1 twist of y^2 = x^3 - 16 D
    assert_eq!(fam.curve.b, RatFunc::from_poly(fam.d.scale(&int(16))));
    assert_eq!(*fam.twist_vs_minus_16d(), RatFunc::constant(int(-1)));
    assert!(!fam.matches_minus_16d());
}

#[test]
fn twist_families_hold_identically() {
    for j in [int(0), int(1728), int(5), int(-3)] {
        let fam = twist_family(&j).unwrap();
        assert!(!fam.isotrivial, "j = {j}");
        assert_eq!(fam.points.len(), 2);
        let fr = RatFunc::from_poly(fam.f.clone());
        for (p, (xi, eta)) in fam.points.iter().zip(&fam.differences) {
            assert!(fam.curve.contains(p), "j = {j}");
            // xi^3 + a xi + b = f eta^2 on the base curve
            let lhs = &(&xi.powu(3) + &xi.scale_rat(&fam.base.a)) + &RatFunc::constant(fam.base.b.clone());
            assert_eq!(lhs, &fr * &eta.square());
        }
        assert_eq!(fam.curve.a, fr.square().scale_rat(&fam.base.a));
        assert_eq!(fam.curve.b, fr.powu(3).scale_rat(&fam.base.b));
        let j_t = fam.curve.j_invariant();
        assert_eq!(j_t, RatFunc::constant(j.clone()));
    }
}

#[test]
fn twist_zero_first_difference_is_twice_the_conjugate() {
    // (t^2, -Y) - (t^2, Y) = 2 (t^2, -Y) on y^2 = x^3 + 1 over Q(t)(Y)
    let fam = twist_family(&int(0)).unwrap();
    assert_eq!(fam.f, Poly::from_i64s(&[1, 0, 0, 0, 0, 0, 1]));
    let t2 = RatFunc::from_poly(Poly::from_i64s(&[0, 0, 1]));
    // tangent doubling of (X, Y) with Y^2 = X^3 + 1 has x = 9X^4 / (4Y^2) - 2X
    let f = RatFunc::from_poly(fam.f.clone());
    let expected = &(&t2.powu(4).scale_rat(&int(9)) / &f.scale_rat(&int(4))) - &t2.scale_rat(&int(2));
    assert_eq!(fam.differences[0].0, expected);
}

#[test]
fn quartic_map_commutes_with_specialization() {
    let fam = euler();
    for t0 in [int(2), int(3), rat(1, 2), rat(-5, 3), rat(7, 4), int(-6), rat(2, 9), int(11), rat(-1, 7), rat(13, 5)] {
        let roots = fam.model.roots.clone().map(|r| r.eval(&t0).unwrap());
        let model = QuarticModel::from_roots(roots, int(1)).unwrap();
        let (curve, map) = quartic_to_weierstrass(&model).unwrap();
        assert_eq!(curve, eval_curve(&fam.curve, &t0), "t = {t0}");
        for ((x, y), p) in model.marked_points().iter().zip(&fam.points) {
            assert_eq!(map.apply(x, y).unwrap(), eval_point(p, &t0), "t = {t0}");
        }
    }
}

#[test]
fn cubic_map_commutes_with_specialization() {
    let fam = sextic();
    for t0 in [int(2), int(3), rat(1, 2), rat(-5, 3), rat(7, 4), int(-6), rat(2, 9), int(11), rat(-1, 7), rat(13, 5)] {
        let roots: Vec<Rat> = fam.roots.iter().map(|r| r.eval(&t0)).collect();
        let model = CubicYModel::from_roots(roots).unwrap();
        let red = cubic_y3_to_weierstrass(&model).unwrap();
        assert_eq!(red.curve, eval_curve(&fam.curve, &t0), "t = {t0}");
        for ((x, y), p) in model.marked_points().iter().zip(&fam.points) {
            assert_eq!(red.map.apply(x, y).unwrap(), eval_point(p, &t0), "t = {t0}");
        }
        let (_, tp) = red.map.tangent_point().unwrap();
        assert_eq!(tp, eval_point(&fam.tangent_point, &t0));
    }
}

#[test]
fn sextic_points_sum_to_twice_the_tangent_point() {
    let fam: Family = sextic().clone().into();
    for t0 in [int(1), int(2), rat(-3, 2)] {
        let s = specialize(&fam, &t0).unwrap();
        let e = s.curve.as_ref().unwrap();
        let t = s.tangent.clone().unwrap();
        let sum = s.points.iter().fold(ECPoint::Infinity, |acc, p| e.add(&acc, p));
        assert_eq!(sum, e.double(&t));
        let moved = s.translated_points().unwrap();
        let back: Vec<_> = moved.iter().map(|p| e.add(p, &t)).collect();
        assert_eq!(back, s.points);
    }
}

#[test]
fn twist_certifies_rank_two() {
    for j in [int(0), int(5)] {
        let fam: Family = twist_family(&j).unwrap().into();
        let s = specialize(&fam, &int(2)).unwrap();
        let c = certify(&s, 128).unwrap();
        assert_eq!(c.verdict, Verdict::Independent, "j = {j}");
        assert_eq!(c.rank_lower_bound(), 2);
    }
}

#[test]
fn twist_points_are_dependent_at_one() {
    // at t = 1, w fixes the fiber and both points are torsion multiples of each other
    let fam: Family = twist_family(&int(0)).unwrap().into();
    let s = specialize(&fam, &int(1)).unwrap();
    let c = certify(&s, 128).unwrap();
    assert_eq!(c.verdict, Verdict::Dependent);
    let r = c.relation.unwrap();
    assert!(s.curve.unwrap().linear_combination(&r, &s.points).is_infinity());
}

#[test]
fn distinct_classes_over_small_t() {
    let fam: Family = twist_family(&int(5)).unwrap().into();
    let specs: Vec<_> = (1..=8).map(|t| specialize(&fam, &int(t)).unwrap()).collect();
    let classes = distinct_classes(&specs);
    assert_eq!(classes.len(), 8);
    let mut twice = specs.clone();
    twice.push(specs[3].clone());
    assert_eq!(distinct_classes(&twice).len(), 8);
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn specializations_stay_on_curve(t0 in small_rat(), which in 0usize..3) {
        let fam: Family = match which {
            0 => euler().clone().into(),
            1 => twist_family(&int(5)).unwrap().into(),
            _ => sextic().clone().into(),
        };
        let s = specialize(&fam, &t0).unwrap();
        if let Some(reason) = &s.excluded {
            prop_assert!(s.curve.is_none() && s.points.is_empty(), "{}", reason);
        } else {
            let e = s.curve.as_ref().unwrap();
            prop_assert!(e.a.is_integer() && e.b.is_integer());
            prop_assert_eq!(s.points.len(), fam.points().len());
            for p in &s.points {
                prop_assert!(e.contains(p));
            }
        }
    }
}
