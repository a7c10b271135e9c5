//! Midpoint-radius real intervals on top of `astro-float`, with exact
//! conversions from rationals and decimal rendering.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::exactalg::rat::Rat;

const _: () = assert!(std::mem::size_of::<Word>() == 8);

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

/// Guard bits carried above the requested precision.
pub const GUARD_BITS: usize = 64;

pub fn bigint_to_bf(n: &BigInt, p: usize) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, p);
    }
    let words = n.magnitude().to_u64_digits();
    let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
    let exact = BigFloat::from_words(&words, sign, (64 * words.len()) as i32);
    let mut out = exact;
    if out.precision().is_some_and(|q| q > p) {
        out.set_precision(p, RM).expect("valid precision");
    }
    out
}

pub fn rat_to_bf(r: &Rat, p: usize) -> BigFloat {
    let n = bigint_to_bf(r.numer(), p + 64);
    if r.denom().is_one() {
        let mut n = n;
        let _ = n.set_precision(p, RM);
        return n;
    }
    n.div(&bigint_to_bf(r.denom(), p + 64), p, RM)
}

/// Exact value of a finite float.
pub fn bf_to_rat(x: &BigFloat) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let (m, _, s, e, _) = x.as_raw_parts().expect("finite value");
    let mag = BigUint::from_slice(
        &m.iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    let shift = e as i64 - 64 * m.len() as i64;
    let sign = if s == Sign::Neg { BigSign::Minus } else { BigSign::Plus };
    let n = BigInt::from_biguint(sign, mag);
    if shift >= 0 {
        Rat::from_integer(n << shift as usize)
    } else {
        Rat::new(n, BigInt::one() << (-shift) as usize)
    }
}

pub fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((m, _, s, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = m[m.len() - 1] as f64;
    let next = if m.len() > 1 { m[m.len() - 2] as f64 } else { 0.0 };
    let mant = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
    let v = mant * 2f64.powi(e);
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

pub fn bf_ln(x: &BigFloat, p: usize) -> BigFloat {
    CONSTS.with(|cc| x.ln(p, RM, &mut cc.borrow_mut()))
}

pub fn bf_from_f64(x: f64, p: usize) -> BigFloat {
    BigFloat::from_f64(x, p.max(64))
}

/// Rounds a rational to `sig` significant decimal digits.
pub fn rat_to_decimal(r: &Rat, sig: usize) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // k with 10^k <= a < 10^(k+1)
    let est = (a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2;
    let mut k = est.floor() as i64;
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> Rat {
        if e >= 0 {
            Rat::from_integer(num_traits::pow(ten.clone(), e as usize))
        } else {
            Rat::new(BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    while pow10(k) > a {
        k -= 1;
    }
    while pow10(k + 1) <= a {
        k += 1;
    }
    let scale = sig as i64 - 1 - k;
    let scaled = &a * pow10(scale);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut digits = q;
    if Rat::new(rem * 2, scaled.denom().clone()) >= Rat::one() {
        digits += 1;
    }
    let mut s = digits.to_string();
    let mut scale = scale;
    if s.len() > sig {
        s.pop();
        scale -= 1;
    }
    let out = if scale <= 0 {
        format!("{s}{}", "0".repeat((-scale) as usize))
    } else if (scale as usize) < s.len() {
        let (i, f) = s.split_at(s.len() - scale as usize);
        format!("{i}.{f}")
    } else {
        format!("0.{}{s}", "0".repeat(scale as usize - s.len()))
    };
    if neg {
        format!("-{out}")
    } else {
        out
    }
}

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Clone)]
pub struct ApproxReal {
    pub mid: BigFloat,
    pub rad: f64,
    pub prec_bits: usize,
}

/// `x * (1 + 2^-50)`, used to keep f64 radii upper bounds.
fn up(x: f64) -> f64 {
    x * (1.0 + 1.0 / (1u64 << 50) as f64) + f64::MIN_POSITIVE
}

impl ApproxReal {
    pub fn new(mid: BigFloat, rad: f64, prec_bits: usize) -> Self {
        ApproxReal { mid, rad: up(rad.abs()), prec_bits }
    }

    pub fn zero(prec_bits: usize) -> Self {
        ApproxReal { mid: BigFloat::from_word(0, prec_bits), rad: 0.0, prec_bits }
    }

    pub fn from_rat(r: &Rat, prec_bits: usize) -> Self {
        let p = prec_bits + GUARD_BITS;
        let mid = rat_to_bf(r, p);
        let rad = bf_to_f64(&mid).abs() * 2f64.powi(-(p as i32) + 1);
        Self::new(mid, rad, prec_bits)
    }

    fn wp(&self) -> usize {
        self.prec_bits + GUARD_BITS
    }

    fn rounding(&self, v: &BigFloat) -> f64 {
        bf_to_f64(v).abs() * 2f64.powi(-(self.wp() as i32) + 1)
    }

    pub fn to_f64(&self) -> f64 {
        bf_to_f64(&self.mid)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mid = self.mid.add(&o.mid, self.wp(), RM);
        let rad = self.rad + o.rad + self.rounding(&mid);
        Self::new(mid, rad, self.prec_bits.min(o.prec_bits))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ApproxReal { mid: self.mid.neg(), rad: self.rad, prec_bits: self.prec_bits }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mid = self.mid.mul(&o.mid, self.wp(), RM);
        let a = bf_to_f64(&self.mid).abs();
        let b = bf_to_f64(&o.mid).abs();
        let rad = up(a * o.rad) + up(b * self.rad) + up(self.rad * o.rad) + self.rounding(&mid);
        Self::new(mid, rad, self.prec_bits.min(o.prec_bits))
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.mul(&ApproxReal::from_rat(r, self.prec_bits))
    }

    /// Widens the radius by `extra`.
    pub fn widen(&self, extra: f64) -> Self {
        Self::new(self.mid.clone(), self.rad + extra.abs(), self.prec_bits)
    }

    pub fn contains_zero(&self) -> bool {
        bf_to_f64(&self.mid).abs() <= self.rad
    }

    pub fn lower(&self) -> f64 {
        self.to_f64() - self.rad
    }

    pub fn upper(&self) -> f64 {
        self.to_f64() + self.rad
    }

    pub fn to_rat(&self) -> Rat {
        bf_to_rat(&self.mid)
    }

    /// The midpoint to `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        rat_to_decimal(&self.to_rat(), sig)
    }

    /// Enough significant digits to show every digit the radius vouches for.
    pub fn to_decimal_auto(&self) -> String {
        let v = self.to_f64().abs();
        let sig = if v == 0.0 || self.rad == 0.0 {
            30
        } else {
            ((v / self.rad).log10().floor().max(0.0) as usize + 2).clamp(3, 60)
        };
        self.to_decimal(sig)
    }

    pub fn err_string(&self) -> String {
        format!("{:.3e}", self.rad)
    }
}

impl fmt::Debug for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {}", self.to_decimal_auto(), self.err_string())
    }
}

impl Serialize for ApproxReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ApproxReal", 3)?;
        st.serialize_field("value", &self.to_decimal_auto())?;
        st.serialize_field("err", &self.err_string())?;
        st.serialize_field("prec_bits", &self.prec_bits)?;
        st.end()
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_auto())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{int, rat};

    #[test]
    fn conversions_round_trip() {
        for r in [int(0), int(5), int(-7), rat(1, 3), rat(-22, 7)] {
            let bf = rat_to_bf(&r, 200);
            let back = bf_to_rat(&bf);
            let diff = (&back - &r).abs();
            assert!(diff <= rat(1, 1) / Rat::from_integer(BigInt::one() << 190usize));
        }
        let big: BigInt = "123456789012345678901234567890123".parse().unwrap();
        assert_eq!(bf_to_rat(&bigint_to_bf(&big, 256)), Rat::from_integer(big));
        assert!((bf_to_f64(&rat_to_bf(&rat(1, 3), 128)) - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn logs() {
        let l = bf_ln(&rat_to_bf(&int(2), 128), 128);
        assert!((bf_to_f64(&l) - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn decimals() {
        assert_eq!(rat_to_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(rat_to_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(rat_to_decimal(&int(-1234567), 3), "-1230000");
        assert_eq!(rat_to_decimal(&rat(60361237, 100000), 8), "603.61237");
        assert_eq!(rat_to_decimal(&rat(999, 1000), 2), "1.0");
        assert_eq!(rat_to_decimal(&rat(1, 800), 2), "0.0013");
    }

    #[test]
    fn interval_ops_contain_truth() {
        let a = ApproxReal::from_rat(&rat(1, 3), 64);
        let b = ApproxReal::from_rat(&rat(2, 7), 64);
        let c = a.mul(&b).sub(&ApproxReal::from_rat(&rat(2, 21), 64));
        assert!(c.contains_zero());
        assert!(c.rad < 1e-30);
    }
}
