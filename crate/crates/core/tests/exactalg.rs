use mestre_core::exactalg::modp::{factor_degrees, PolyFp};
use mestre_core::exactalg::polyq::gcd;
use mestre_core::exactalg::rat::int;
use mestre_core::exactalg::{
    degree_pattern_certificate, factor_integer, irreducibility_witness, poly_discriminant,
    squarefree_decomposition, FactorBudget, Poly, PolyQ, Rat,
};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Determinant by fraction-exact Gaussian elimination.
fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != int(0)) else {
            return int(0);
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot[c];
            for (x, p) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * p;
            }
        }
    }
    d
}

/// `disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p)` from the Sylvester matrix.
fn sylvester_discriminant(p: &PolyQ) -> Rat {
    let n = p.degree().unwrap();
    let dp = p.derivative();
    let m = n - 1;
    let size = n + m;
    let mut rows = Vec::new();
    for i in 0..m {
        let mut row = vec![int(0); size];
        for k in 0..=n {
            row[i + k] = p.coeff(n - k);
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![int(0); size];
        for k in 0..=m {
            row[i + k] = dp.coeff(m - k);
        }
        rows.push(row);
    }
    let res = det(rows);
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { int(1) } else { int(-1) };
    sign * res / p.lc()
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = PolyQ> {
    (2..=max_deg)
        .prop_flat_map(|d| prop::collection::vec(-9i64..=9, d + 1))
        .prop_filter("leading coefficient", |c| *c.last().unwrap() != 0)
        .prop_map(|c| Poly::from_i64s(&c))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn discriminant_matches_sylvester(p in poly_strategy(6)) {
        prop_assert_eq!(poly_discriminant(&p).unwrap(), sylvester_discriminant(&p));
    }

    #[test]
    fn gcd_divides_and_recovers_common_factor(
        a in poly_strategy(4),
        b in poly_strategy(4),
        c in poly_strategy(3),
    ) {
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.rem(&g).is_zero());
        prop_assert!(bc.rem(&g).is_zero());
        prop_assert!(g.rem(&c.monic()).is_zero() || c.degree() == Some(0));
        prop_assert_eq!(g.lc(), int(1));
    }

    #[test]
    fn squarefree_decomposition_expands_back(a in poly_strategy(3), b in poly_strategy(2)) {
        let p = &(&a * &b) * &b;
        let dec = squarefree_decomposition(&p).unwrap();
        prop_assert_eq!(dec.expand(), p.clone());
        let k = dec.squarefree_kernel();
        prop_assert_eq!(gcd(&k, &k.derivative()).degree(), Some(0));
    }

    #[test]
    fn factorization_multiplies_back(n in 2i64..=1_000_000_000_000i64) {
        let f = factor_integer(&BigInt::from(n), &FactorBudget::default()).unwrap();
        prop_assert_eq!(f.value(), BigInt::from(n));
    }

    #[test]
    fn degree_patterns_partition_the_degree(c in prop::collection::vec(0u64..101, 3..9)) {
        let f = PolyFp::new(101, c.iter().copied().chain([1]).collect());
        if PolyFp::gcd(&f, &f.derivative()).is_one() {
            let degs = factor_degrees(&f);
            prop_assert_eq!(degs.iter().sum::<usize>(), f.degree().unwrap());
        }
    }
}

#[test]
fn witnesses_and_patterns() {
    // x^4 + 1 is reducible mod every prime but irreducible over Q
    let x4p1 = Poly::from_i64s(&[1, 0, 0, 0, 1]);
    assert_eq!(irreducibility_witness(&x4p1, 1000), None);
    // x^3 - 2 is irreducible mod 7
    assert_eq!(irreducibility_witness(&Poly::from_i64s(&[-2, 0, 0, 1]), 200), Some(7));
    let reducible = &Poly::from_i64s(&[1, 1, 1]) * &Poly::from_i64s(&[-2, 0, 0, 1]);
    assert_eq!(degree_pattern_certificate(&reducible, 200), None);
}

#[test]
fn discriminant_of_known_cubic() {
    // disc(x^3 + a x + b) = -4a^3 - 27b^2
    let p = Poly::from_i64s(&[3, 2, 0, 1]);
    assert_eq!(poly_discriminant(&p).unwrap(), int(-4 * 8 - 27 * 9));
}
