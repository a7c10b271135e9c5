//! Rational numbers. Backed by `num_rational::BigRational`, which keeps
//! `gcd(num, den) = 1` and `den > 0` after every operation.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::field::{BaseField, Field};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Serialized form: always `"num/den"`.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"num/den"`, `"num"`, or a leading `+`/`-`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Exact integer n-th root of a nonnegative integer, if it is a perfect power.
pub fn exact_root_uint(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact n-th root in Q. Even roots are chosen positive.
pub fn rat_nth_root(r: &Rat, n: u32) -> Option<Rat> {
    assert!(n >= 1);
    if Zero::is_zero(r) {
        return Some(<Rat as Zero>::zero());
    }
    if r.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = exact_root_uint(r.numer().magnitude(), n)?;
    let den = exact_root_uint(r.denom().magnitude(), n)?;
    let sign = if r.is_negative() { Sign::Minus } else { Sign::Plus };
    Some(Rat::new(BigInt::from_biguint(sign, num), BigInt::from(den)))
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(r: &Rat, p: &BigUint) -> i64 {
    assert!(!Zero::is_zero(r), "valuation of zero");
    let p = BigInt::from(p.clone());
    int_valuation(r.numer(), &p) as i64 - int_valuation(r.denom(), &p) as i64
}

pub fn int_valuation(n: &BigInt, p: &BigInt) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        <Rat as Zero>::zero()
    }
    fn one_like(&self) -> Self {
        <Rat as One>::one()
    }
    fn int_like(&self, n: i64) -> Self {
        int(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        rat_nth_root(self, n)
    }
}

impl BaseField for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        int(n)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    /// Clears denominators first so the inner loop runs over integers.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (da, ia) = common_denominator(a);
        let (db, ib) = common_denominator(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in ia.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in ib.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let d = da * db;
        out.into_iter().map(|c| Rat::new(c, d.clone())).collect()
    }
}

/// `(d, [d c_i])` with `d` the lcm of the denominators.
fn common_denominator(cs: &[Rat]) -> (BigInt, Vec<BigInt>) {
    let d = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = cs.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (d, ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(rat_to_string(&int(5)), "5/1");
        assert_eq!(rat_to_string(&rat(-2, 6)), "-1/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(rat_nth_root(&rat(64, 729), 6), Some(rat(2, 3)));
        assert_eq!(rat_nth_root(&rat(-8, 27), 3), Some(rat(-2, 3)));
        assert_eq!(rat_nth_root(&int(-16), 4), None);
        assert_eq!(rat_nth_root(&rat(3, 2), 6), None);
    }

    #[test]
    fn valuations() {
        let two = BigUint::from(2u32);
        assert_eq!(valuation(&rat(12, 5), &two), 2);
        assert_eq!(valuation(&rat(3, 40), &two), -3);
    }
}
