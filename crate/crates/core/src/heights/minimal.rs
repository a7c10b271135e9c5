//! Globally minimal models over Q for curves given in short form, following
//! Laska, Kraus and Connell: scale `c4, c6` down by the largest admissible
//! `u`, then rebuild integral `a`-invariants from Kraus' congruences.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ellcurve::{LongW, ShortW, Transform};
use crate::error::{Error, Result};
use crate::exactalg::rat::{int, int_valuation, Rat};
use crate::exactalg::{factor_integer, FactorBudget, FactoredInt};

#[derive(Clone, Debug, PartialEq)]
pub struct MinimalModelData {
    pub model: LongW,
    /// Takes points of the input short model to `model`.
    pub transform: Transform,
    pub disc_factored: FactoredInt,
    /// Part of `|disc(model)|` left unfactored by the budget, so that
    /// `disc_factored.value() * unfactored = disc(model)`.
    pub unfactored: Option<BigUint>,
    /// False when some prime of `unfactored` might divide `gcd(c4, c6)`, in
    /// which case minimality there is unproven. Heights stay correct as long
    /// as the point reduces to a smooth point at those primes.
    pub minimal_at_cofactor: bool,
}

impl MinimalModelData {
    /// `[a1, a2, a3, a4, a6]` as integers.
    pub fn a_invariants(&self) -> [BigInt; 5] {
        let m = &self.model;
        [&m.a1, &m.a2, &m.a3, &m.a4, &m.a6].map(|a| a.to_integer())
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

/// Smallest positive integer `k` with `k^4 A` and `k^6 B` integral.
pub(crate) fn integral_scale(e: &ShortW<Rat>, budget: &FactorBudget) -> Result<BigInt> {
    let den = e.a.denom() * e.b.denom();
    if den.is_one() {
        return Ok(BigInt::one());
    }
    let f = factor_integer(&den, budget)?;
    let mut k = BigInt::one();
    for p in f.primes() {
        let pi = BigInt::from(p.clone());
        let va = if e.a.is_zero() { 0 } else { crate::exactalg::rat::valuation(&e.a, p) };
        let vb = if e.b.is_zero() { 0 } else { crate::exactalg::rat::valuation(&e.b, p) };
        let need = ceil_div(-va, 4).max(ceil_div(-vb, 6)).max(0);
        k *= num_traits::pow(pi, need as usize);
    }
    Ok(k)
}

fn v(n: &BigInt, p: &BigInt) -> i64 {
    if n.is_zero() {
        i64::MAX
    } else {
        int_valuation(n, p) as i64
    }
}

fn kraus_ok(p: u32, c4: &BigInt, c6: &BigInt) -> bool {
    match p {
        3 => v(c6, &BigInt::from(3)) != 2,
        2 => {
            let m4 = c6.mod_floor(&BigInt::from(4));
            let m32 = c6.mod_floor(&BigInt::from(32));
            m4 == BigInt::from(3)
                || (v(c4, &BigInt::from(2)) >= 4 && (m32.is_zero() || m32 == BigInt::from(8)))
        }
        _ => true,
    }
}

/// `a`-invariants of the integral model with the given `c4, c6`, reduced so
/// that `a1, a3` lie in `{0, 1}` and `a2` in `{-1, 0, 1}`.
pub fn model_from_c4c6(c4: &BigInt, c6: &BigInt) -> Result<LongW> {
    let twelve = BigInt::from(12);
    let mut b2 = (-c6).mod_floor(&twelve);
    if b2 > BigInt::from(6) {
        b2 -= &twelve;
    }
    let b4: BigInt = (&b2 * &b2 - c4) / 24;
    let b6: BigInt = (-(&b2 * &b2 * &b2) + BigInt::from(36) * &b2 * &b4 - c6) / 216;
    let two = BigInt::from(2);
    let a1 = b2.mod_floor(&two);
    let a3 = b6.mod_floor(&two);
    let a2 = (&b2 - &a1) / 4;
    let a4 = (&b4 - &a1 * &a3) / 2;
    let a6 = (&b6 - &a3) / 4;
    let r = |n: BigInt| Rat::from_integer(n);
    let m = LongW::new(r(a1), r(a2), r(a3), r(a4), r(a6))?;
    if m.c4() != r(c4.clone()) || m.c6() != r(c6.clone()) {
        return Err(Error::IdentityFailed(format!(
            "no integral model with c4 = {c4}, c6 = {c6}"
        )));
    }
    Ok(m)
}

/// Globally minimal model of `e` with the transform onto it and its factored
/// discriminant.
pub fn minimal_model(e: &ShortW<Rat>, budget: &FactorBudget) -> Result<MinimalModelData> {
    let k = integral_scale(e, budget)?;
    let k2 = &k * &k;
    let k4 = &k2 * &k2;
    let k6 = &k4 * &k2;
    let a0 = (&e.a * Rat::from_integer(k4)).to_integer();
    let b0 = (&e.b * Rat::from_integer(k6)).to_integer();
    let c4 = BigInt::from(-48) * &a0;
    let c6 = BigInt::from(-864) * &b0;
    let disc = BigInt::from(-16) * (BigInt::from(4) * &a0 * &a0 * &a0 + BigInt::from(27) * &b0 * &b0);
    let (fac, unfactored, minimal_at_cofactor) = factor_allowing_cofactor(&disc, &c4, &c6, budget)?;

    let mut big_u = BigInt::one();
    let mut exps: Vec<(BigUint, u32)> = Vec::new();
    // 2 and 3 last so their congruence checks see every other prime removed.
    let mut primes: Vec<&(BigUint, u32)> = fac.factors.iter().collect();
    primes.sort_by_key(|(p, _)| (*p <= BigUint::from(3u32), p.clone()));
    for (p, e_disc) in primes {
        let pi = BigInt::from(p.clone());
        let vd = *e_disc as i64;
        let mut d = (vd / 12).min(v(&c4, &pi) / 4).min(v(&c6, &pi) / 6);
        let small = if *p <= BigUint::from(3u32) { p.iter_u32_digits().next().unwrap_or(0) } else { 0 };
        while d > 0 {
            let u = &big_u * num_traits::pow(pi.clone(), d as usize);
            let u2 = &u * &u;
            let c4s = &c4 / (&u2 * &u2);
            let c6s = &c6 / (&u2 * &u2 * &u2);
            if small == 0 || kraus_ok(small, &c4s, &c6s) {
                break;
            }
            d -= 1;
        }
        big_u *= num_traits::pow(pi, d as usize);
        let left = vd - 12 * d;
        if left > 0 {
            exps.push((p.clone(), left as u32));
        }
    }
    exps.sort();
    let u2 = &big_u * &big_u;
    let c4m = &c4 / (&u2 * &u2);
    let c6m = &c6 / (&u2 * &u2 * &u2);
    let model = model_from_c4c6(&c4m, &c6m)?;

    let s_total = Rat::new(big_u, k);
    let s_half = &s_total * &model.a1 / int(2);
    let transform = Transform {
        r: &s_total * &s_total * model.b2() / int(12),
        s: s_half,
        t: &s_total * &s_total * &s_total * &model.a3 / int(2),
        u: s_total,
    };
    if LongW::from_short(e).transform(&transform) != model {
        return Err(Error::IdentityFailed("minimal model transform".into()));
    }
    let disc_factored = FactoredInt { sign: if disc.is_negative() { -1 } else { 1 }, factors: exps };
    debug_assert_eq!(
        Rat::from_integer(
            disc_factored.value() * BigInt::from(unfactored.clone().unwrap_or_else(BigUint::one))
        ),
        model.discriminant()
    );
    Ok(MinimalModelData { model, transform, disc_factored, unfactored, minimal_at_cofactor })
}

/// Factor `disc` as far as the budget allows, returning the leftover cofactor
/// and whether it is coprime to `gcd(c4, c6)`.
fn factor_allowing_cofactor(
    disc: &BigInt,
    c4: &BigInt,
    c6: &BigInt,
    budget: &FactorBudget,
) -> Result<(FactoredInt, Option<BigUint>, bool)> {
    match factor_integer(disc, budget) {
        Ok(f) => Ok((f, None, true)),
        Err(Error::FactorBudget { partial, .. }) => {
            let rest = disc.magnitude() / partial.value().magnitude();
            let coprime = c4.gcd(c6).magnitude().gcd(&rest).is_one();
            Ok((partial, Some(rest), coprime))
        }
        Err(e) => Err(e),
    }
}
