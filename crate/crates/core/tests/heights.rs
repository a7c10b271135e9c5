use mestre_core::ellcurve::{ECPoint, LongW, ShortW};
use mestre_core::exactalg::rat::int;
use mestre_core::exactalg::{FactorBudget, Rat};
use mestre_core::heights::{
    gram_determinant, independence_certificate, naive_half_height, HeightContext, Verdict,
};
use proptest::prelude::*;

struct TestCurve {
    name: &'static str,
    curve: ShortW<Rat>,
    gens: Vec<ECPoint<Rat>>,
    /// Regulator in the full-height normalization, from published tables.
    regulator: f64,
}

fn from_long(name: &'static str, a: [i64; 5], gens: &[(i64, i64)], regulator: f64) -> TestCurve {
    let l = LongW::from_ints(a).unwrap();
    let (curve, t) = l.to_short();
    let gens = gens
        .iter()
        .map(|&(x, y)| t.forward(&ECPoint::affine(int(x), int(y))))
        .collect();
    TestCurve { name, curve, gens, regulator }
}

fn test_curves() -> Vec<TestCurve> {
    vec![
        from_long("37a1", [0, 0, 1, -1, 0], &[(0, 0)], 0.0511114082399688),
        from_long("389a1", [0, 1, 1, -2, 0], &[(-1, 1), (0, 0)], 0.152460177943144),
        from_long("5077a1", [0, 0, 1, -7, 6], &[(-2, 3), (-1, 3), (0, 2)], 0.417143558758384),
        from_long("43a1", [0, 1, 1, 0, 0], &[(0, 0)], 0.0628165070875480),
    ]
}

fn ctx(e: &ShortW<Rat>) -> HeightContext {
    HeightContext::new(e, &FactorBudget::default()).unwrap()
}

/// `h(2^n P) / 4^n` with the naive half x-height, by repeated doubling.
fn doubling_limit(e: &ShortW<Rat>, p: &ECPoint<Rat>, n: u32) -> f64 {
    let mut q = p.clone();
    for _ in 0..n {
        q = e.double(&q);
    }
    naive_half_height(q.x().unwrap()) / 4f64.powi(n as i32)
}

#[test]
fn agrees_with_doubling_oracle() {
    for c in test_curves() {
        let hc = ctx(&c.curve);
        for p in &c.gens {
            let h = hc.height(p, 128).unwrap().to_f64();
            let oracle = doubling_limit(&c.curve, p, 7);
            assert!((h - oracle).abs() < 1e-3, "{}: {h} vs {oracle}", c.name);
        }
    }
}

#[test]
fn regulators_match_tables() {
    for c in test_curves() {
        let g = gram_determinant(&c.curve, &c.gens, 128).unwrap();
        let scaled = g.determinant.to_f64() * 2f64.powi(c.gens.len() as i32);
        assert!((scaled / c.regulator - 1.0).abs() < 1e-12, "{}: {scaled}", c.name);
    }
}

#[test]
fn torsion_points_have_zero_height() {
    let cases: Vec<(ShortW<Rat>, Vec<ECPoint<Rat>>)> = vec![
        (
            ShortW::new(int(0), int(1)).unwrap(),
            vec![
                ECPoint::affine(int(-1), int(0)),
                ECPoint::affine(int(0), int(1)),
                ECPoint::affine(int(2), int(-3)),
            ],
        ),
        (
            ShortW::new(int(-1), int(0)).unwrap(),
            vec![ECPoint::affine(int(0), int(0)), ECPoint::affine(int(1), int(0))],
        ),
        {
            // 11a3 has a rational 5-torsion point at (0, 0)
            let l = LongW::from_ints([0, -1, 1, 0, 0]).unwrap();
            let (s, t) = l.to_short();
            let p = t.forward(&ECPoint::affine(int(0), int(0)));
            let pts = (1..5).map(|k| s.scalar_mul(k, &p)).collect();
            (s, pts)
        },
    ];
    for (e, pts) in cases {
        let hc = ctx(&e);
        for p in pts {
            let h = hc.height(&p, 128).unwrap();
            assert!(h.to_f64().abs() < 1e-10, "{p:?}: {h:?}");
        }
    }
}

#[test]
fn dependent_points_are_recognised() {
    let c = &test_curves()[1];
    let e = &c.curve;
    let p = e.add(&c.gens[0], &e.scalar_mul(2, &c.gens[1]));
    let pts = vec![c.gens[0].clone(), c.gens[1].clone(), p];
    let cert = independence_certificate(e, &pts, 128).unwrap();
    assert_eq!(cert.verdict, Verdict::Dependent);
    let r = cert.relation.clone().unwrap();
    assert!(e.linear_combination(&r, &pts).is_infinity());
    assert_eq!(cert.rank_lower_bound(), 0);

    let cert = independence_certificate(e, &c.gens, 128).unwrap();
    assert_eq!(cert.verdict, Verdict::Independent);
    assert_eq!(cert.rank_lower_bound(), 2);
}

fn curve_index() -> impl Strategy<Value = usize> {
    0usize..4
}

fn combo(c: &TestCurve, coeffs: &[i64]) -> ECPoint<Rat> {
    c.curve.linear_combination(&coeffs[..c.gens.len()], &c.gens)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn quadratic_in_multiples(i in curve_index(), k in prop::collection::vec(-2i64..=2, 3)) {
        let c = &test_curves()[i];
        let p = combo(c, &k);
        prop_assume!(!p.is_infinity());
        let hc = ctx(&c.curve);
        let h1 = hc.height(&p, 128).unwrap().to_f64();
        for n in [2i64, 3, 5] {
            let hn = hc.height(&c.curve.scalar_mul(n, &p), 128).unwrap().to_f64();
            let n2 = (n * n) as f64;
            prop_assert!((hn - n2 * h1).abs() < 1e-9 * n2, "n = {}: {} vs {}", n, hn, n2 * h1);
        }
    }

    #[test]
    fn parallelogram_law(
        i in curve_index(),
        a in prop::collection::vec(-2i64..=2, 3),
        b in prop::collection::vec(-2i64..=2, 3),
    ) {
        let c = &test_curves()[i];
        let (p, q) = (combo(c, &a), combo(c, &b));
        let e = &c.curve;
        let hc = ctx(e);
        let h = |pt: &ECPoint<Rat>| hc.height(pt, 128).unwrap().to_f64();
        let lhs = h(&e.add(&p, &q)) + h(&e.sub(&p, &q));
        let rhs = 2.0 * h(&p) + 2.0 * h(&q);
        prop_assert!((lhs - rhs).abs() < 1e-8, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn precision_is_monotone(i in curve_index(), k in prop::collection::vec(-3i64..=3, 3)) {
        let c = &test_curves()[i];
        let p = combo(c, &k);
        prop_assume!(!p.is_infinity());
        let hc = ctx(&c.curve);
        let lo = hc.height(&p, 64).unwrap();
        let hi = hc.height(&p, 256).unwrap();
        prop_assert!(hi.rad <= lo.rad);
        prop_assert!((hi.to_f64() - lo.to_f64()).abs() <= lo.rad + hi.rad);
    }
}
