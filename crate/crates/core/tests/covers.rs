use mestre_core::covers::{
    build_cover, conic_double_cover, cover_for_invariant, cover_genus, displayed_ratio,
    pullback_ratio, special_cover, two_torsion_glue,
};
use mestre_core::ellcurve::ShortW;
use mestre_core::error::Error;
use mestre_core::exactalg::rat::{int, rat};
use mestre_core::exactalg::{Poly, Rat, RatFunc};
use proptest::prelude::*;

fn curve(a: i64, b: i64) -> ShortW<Rat> {
    ShortW::new(int(a), int(b)).unwrap()
}

fn nonsingular(a: i64, b: i64) -> bool {
    4 * a * a * a + 27 * b * b != 0
}

/// The closed form typed in directly from its coefficients, kept separate
/// from the library's own copy.
fn closed_form(a: i64, b: i64, ap: i64, bp: i64) -> RatFunc {
    let mut num = vec![0i64; 7];
    num[0] = -bp * ap;
    num[4] = 3 * a * bp;
    num[6] = -2 * b * ap;
    let mut den = vec![0i64; 10];
    den[3] = 2 * a * bp;
    den[5] = -3 * b * ap;
    den[9] = b * a;
    RatFunc::new(Poly::from_i64s(&num), Poly::from_i64s(&den)).unwrap()
}

fn admissible() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6).prop_filter("admissible pair", |&(a, b, ap, bp)| {
        nonsingular(a, b)
            && nonsingular(ap, bp)
            && !(a == 0 && ap == 0)
            && !(b == 0 && bp == 0)
            && (a, b) != (ap, bp)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 25, ..ProptestConfig::default() })]

    #[test]
    fn phi_identity_and_ratio((a, b, ap, bp) in admissible()) {
        let c = build_cover(&curve(a, b), &curve(ap, bp)).unwrap();
        prop_assert!(c.phi_identity_holds());
        prop_assert!(c.rho.lands_on(&c.e, &c.f_cleared));
        prop_assert!(c.rho_prime.lands_on(&c.e_prime, &c.f_cleared));
        let r = pullback_ratio(&c);
        prop_assert!(!r.is_constant());
        prop_assert_eq!(&r, &closed_form(a, b, ap, bp));
        prop_assert_eq!(r, displayed_ratio(&c.e, &c.e_prime).unwrap());
        prop_assert_eq!(&(&c.s * &(&c.t * &c.t)), &c.f_cleared);
    }
}

#[test]
fn worked_pair_phi() {
    let c = build_cover(&curve(1, 1), &curve(2, 3)).unwrap();
    let num = Poly::from_i64s(&[-3, 0, 0, 0, 0, 0, 1]);
    let den = Poly::from_i64s(&[0, 0, 2, 0, 0, 0, -1]);
    assert_eq!(c.phi, RatFunc::new(num, den).unwrap());
}

#[test]
fn ratio_at_one_matches_numeric_derivative() {
    // phi(u) = -(3 - u^6)/(u^2 (2 - u^4)) for (a, b, a', b') = (1, 1, 2, 3)
    let phi = |u: f64| -(3.0 - u.powi(6)) / (u * u * (2.0 - u.powi(4)));
    let psi = |u: f64| u * u * phi(u);
    let d = |f: &dyn Fn(f64) -> f64, u: f64| {
        let h = 1e-5;
        (f(u + h) - f(u - h)) / (2.0 * h)
    };
    let u = 1.0;
    let numeric = d(&phi, u) * u.powi(3) / d(&psi, u);
    let c = build_cover(&curve(1, 1), &curve(2, 3)).unwrap();
    let exact = pullback_ratio(&c).eval(&int(1)).unwrap();
    let exact = exact.numer().to_string().parse::<f64>().unwrap()
        / exact.denom().to_string().parse::<f64>().unwrap();
    assert!((numeric - exact).abs() < 1e-6, "{numeric} vs {exact}");
}

#[test]
fn equal_special_invariants_are_rejected() {
    assert!(matches!(build_cover(&curve(0, 1), &curve(0, 5)), Err(Error::InvalidPair(_))));
    assert!(matches!(build_cover(&curve(1, 0), &curve(3, 0)), Err(Error::InvalidPair(_))));
}

#[test]
fn genus_table() {
    // one representative pair per case
    let cases = [
        ((1, 1), (2, 3), 10),
        ((1, 1), (1, 1), 6),
        ((1, 0), (1, 1), 7),
        ((0, 1), (1, 1), 8),
        ((0, 1), (1, 0), 5),
    ];
    for ((a, b), (ap, bp), g) in cases {
        let c = build_cover(&curve(a, b), &curve(ap, bp)).unwrap();
        assert_eq!(cover_genus(&c), g, "({a},{b}) vs ({ap},{bp})");
        let d = c.s.degree().unwrap() as i64;
        assert_eq!(cover_genus(&c), (d - 1).div_euclid(2));
    }
}

#[test]
fn special_covers_land() {
    let c0 = special_cover(&int(0)).unwrap();
    assert_eq!(c0.f_cleared, Poly::from_i64s(&[1, 0, 0, 0, 0, 0, 1]));
    assert_eq!(cover_genus(&c0), 2);
    assert!(c0.rho.lands_on(&c0.e, &c0.f_cleared));
    assert!(c0.rho_prime.lands_on(&c0.e_prime, &c0.f_cleared));

    let c1 = special_cover(&int(1728)).unwrap();
    assert_eq!(c1.e.j_invariant(), int(1728));
    assert!(c1.rho.lands_on(&c1.e, &c1.f_cleared));
    assert!(c1.rho_prime.lands_on(&c1.e_prime, &c1.f_cleared));
    // (t^2 + 1)(t^2 - 2)(2t^2 - 1)
    assert_eq!(c1.f_cleared, Poly::from_i64s(&[2, 0, -3, 0, -3, 0, 2]));

    assert!(special_cover(&int(5)).is_err());
}

#[test]
fn dispatcher_picks_the_curve_with_the_invariant() {
    let c = cover_for_invariant(&int(5)).unwrap();
    assert_eq!(c.e.a, rat(135, 6892));
    assert_eq!(c.e.a, c.e.b);
    assert_eq!(c.e.j_invariant(), int(5));
    assert_eq!(cover_genus(&c), 6);
    assert!(cover_for_invariant(&int(0)).unwrap().f_cleared.degree() == Some(6));
}

#[test]
fn remark_one_conic() {
    let r = conic_double_cover(&int(1), &int(1), &int(1)).unwrap();
    assert_eq!(r.a, int(4));
    assert_eq!(r.point, (int(0), int(2)));
    assert!(r.conic_identity);
    assert!(r.cubic_identity);
    assert!(r.derivatives_independent);
    assert_eq!(r.genus, 3);
    assert!(conic_double_cover(&int(0), &int(0), &int(1)).is_err());
}

#[test]
fn remark_two_gluing() {
    let r = two_torsion_glue([int(0), int(1), int(2)], [int(0), int(1), int(3)]).unwrap();
    assert_eq!((r.alpha.clone(), r.beta.clone()), (int(1), int(0)));
    assert_eq!(r.shared_degree, 2);
    assert!(r.transported_isomorphic);
    assert_eq!(r.q2, Poly::from_i64s(&[0, 3, -4, 1]));

    let r = two_torsion_glue([int(0), int(1), int(2)], [int(0), int(2), int(4)]);
    match r {
        Ok(s) => {
            assert_eq!(s.shared_degree, 2);
            assert!(s.transported_isomorphic);
            assert_ne!(&s.alpha * &s.roots1[2] + &s.beta, s.roots2[2]);
        }
        Err(e) => assert!(matches!(e, Error::Precondition(_))),
    }
}
