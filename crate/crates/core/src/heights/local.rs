//! Non-archimedean local height corrections on a minimal model.
//!
//! With the half-x-height normalization the local height at `p` is
//! `max(0, -v(x)/2) log p` plus a correction that is nonzero only when the
//! point reduces to the singular point. The correction is returned as the
//! rational coefficient of `log p`.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::ellcurve::LongW;
use crate::exactalg::rat::{int, rat, valuation, Rat};

/// `None` stands for `+infinity`.
fn val(r: &Rat, p: &BigUint) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(valuation(r, p))
    }
}

fn positive(v: Option<i64>) -> bool {
    v.is_none_or(|v| v > 0)
}

/// Coefficient of `log p` in the singular-reduction correction for the affine
/// point `(x, y)` of the minimal model `e`, where `n_disc = v_p(disc(e))`.
pub fn singular_correction(e: &LongW, x: &Rat, y: &Rat, p: &BigUint, n_disc: u32) -> Rat {
    let a = val(
        &(int(3) * x * x + int(2) * &e.a2 * x + &e.a4 - &e.a1 * y),
        p,
    );
    let b = val(&(int(2) * y + &e.a1 * x + &e.a3), p);
    if !positive(a) || !positive(b) {
        return Rat::zero();
    }
    let n = Rat::from_integer(n_disc.into());
    let c4 = e.c4();
    if !c4.is_zero() && valuation(&c4, p) == 0 {
        let half_n = &n / int(2);
        let m = match b {
            Some(b) if int(b) < half_n => int(b),
            _ => half_n,
        };
        return -(&m * (&n - &m)) / (int(2) * &n);
    }
    let c = val(
        &(int(3) * x * x * x * x
            + e.b2() * x * x * x
            + int(3) * e.b4() * x * x
            + int(3) * e.b6() * x
            + e.b8()),
        p,
    );
    match (b, c) {
        (Some(b), Some(c)) if c >= 3 * b => rat(-b, 3),
        (Some(b), None) => rat(-b, 3),
        (_, Some(c)) => rat(-c, 8),
        (None, None) => unreachable!("(x, y) is a singular point of a smooth curve"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn good_reduction_has_no_correction() {
        let e = LongW::from_ints([0, 0, 1, -1, 0]).unwrap();
        assert_eq!(singular_correction(&e, &int(0), &int(0), &p(37), 1), int(0));
    }

    #[test]
    fn multiplicative_case() {
        // y^2 = x^3 + x^2 + 3^6 has a node at (0, 0) mod 3 and v_3(disc) = 6.
        let e = LongW::new(int(0), int(1), int(0), int(0), int(729)).unwrap();
        let n = valuation(&e.discriminant(), &p(3)) as u32;
        assert_eq!(n, 6);
        // v_3(2y) = 3 = N/2 at (0, 27): the middle component of I6.
        assert_eq!(singular_correction(&e, &int(0), &int(27), &p(3), n), rat(-3, 4));
    }

    #[test]
    fn additive_cases() {
        // y^2 = x^3 + 4: (0, 2) at p = 2, B = v(4) = 2, C = v(b8) with b8 = 0 -> C = inf
        let e = LongW::from_ints([0, 0, 0, 0, 4]).unwrap();
        assert_eq!(singular_correction(&e, &int(0), &int(2), &p(2), 8), rat(-2, 3));
        // y^2 = x^3 + 3x at p = 3 with (0, 0): 2-torsion, B infinite, C = v(b8) = v(-9) = 2
        let e = LongW::from_ints([0, 0, 0, 3, 0]).unwrap();
        assert_eq!(singular_correction(&e, &int(0), &int(0), &p(3), 3), rat(-1, 4));
    }
}
