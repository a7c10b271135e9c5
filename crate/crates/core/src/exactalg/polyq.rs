//! Operations specific to Q[x]: gcd with controlled coefficient growth,
//! squarefree decomposition, exact n-th roots and n-th power tests.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactalg::factor::is_probable_prime;
use crate::exactalg::modp::PolyFp;
use crate::exactalg::poly::{self, Poly};
use crate::exactalg::rat::{rat_nth_root, Rat};
use crate::exactalg::ratfunc::RatFunc;

pub type PolyQ = Poly<Rat>;

/// Splits `p = content * P` with `P` a primitive integer polynomial whose
/// leading coefficient is positive. Returns `(content, P)` lowest degree first.
pub fn primitive_integer_coeffs(p: &PolyQ) -> (Rat, Vec<BigInt>) {
    if p.is_zero() {
        return (Rat::zero(), vec![]);
    }
    let den_lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let mut g = int_content(&ints);
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
    (Rat::new(g, den_lcm), prim)
}

fn int_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn ints_to_poly(v: &[BigInt]) -> PolyQ {
    Poly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of integer polynomials.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    while r.len() > db && !r.is_empty() {
        let i = r.len() - 1;
        let lr = r[i].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[i - db + j] -= &lr * bc;
        }
        debug_assert!(r[i].is_zero());
        r.pop();
        trim(&mut r);
    }
    r
}

/// Word-sized primes below `2^31`, largest first, for modular gcds.
fn gcd_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut v = Vec::new();
        let mut n: u64 = (1 << 31) - 1;
        while v.len() < 1000 {
            if is_probable_prime(&BigUint::from(n)) {
                v.push(n);
            }
            n -= 2;
        }
        v
    })
}

/// Whether the integer polynomial `g` divides `a` over Z.
fn divides(g: &[BigInt], a: &[BigInt]) -> bool {
    let mut r = a.to_vec();
    let dg = g.len() - 1;
    let lg = g.last().unwrap();
    while r.len() > dg {
        let (qt, rem) = r.last().unwrap().div_rem(lg);
        if !rem.is_zero() {
            return false;
        }
        let k = r.len() - 1 - dg;
        for (j, gc) in g.iter().enumerate() {
            r[k + j] -= &qt * gc;
        }
        r.pop();
        trim(&mut r);
    }
    r.is_empty()
}

/// Gcd of primitive integer polynomials from gcds modulo many primes, glued
/// by the Chinese remainder theorem. Primes where the degree comes out too
/// high are skipped; a candidate is accepted once it is stable under one more
/// prime and divides both inputs.
fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let l = la.gcd(lb);
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut prev: Option<Vec<BigInt>> = None;
    for &q in gcd_primes() {
        let qb = BigInt::from(q);
        if (la % &qb).is_zero() || (lb % &qb).is_zero() {
            continue;
        }
        let g = PolyFp::gcd(&PolyFp::from_ints(q, a), &PolyFp::from_ints(q, b));
        let d = g.degree()?;
        if d == 0 {
            return Some(vec![BigInt::one()]);
        }
        let lq = (&l % &qb).to_u64().expect("reduced");
        let lq = if l.is_negative() { (lq + q) % q } else { lq };
        let gq: Vec<BigInt> = g
            .coeffs
            .iter()
            .map(|&c| BigInt::from((c as u128 * lq as u128 % q as u128) as u64))
            .collect();
        acc = match acc.take() {
            Some((cs, m)) if cs.len() - 1 == d => {
                let inv = (&m % &qb).modpow(&BigInt::from(q - 2), &qb);
                let cs = cs
                    .iter()
                    .zip(&gq)
                    .map(|(c, r)| {
                        let k = ((r - c) * &inv).mod_floor(&qb);
                        c + &m * k
                    })
                    .collect();
                Some((cs, m * &qb))
            }
            Some((cs, m)) if cs.len() - 1 < d => Some((cs, m)),
            _ => Some((gq, qb)),
        };
        let (cs, m) = acc.as_ref().unwrap();
        let half: BigInt = m >> 1;
        let sym: Vec<BigInt> = cs.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect();
        if prev.as_ref() == Some(&sym) {
            let c = int_content(&sym);
            let prim: Vec<BigInt> = sym.iter().map(|v| v / &c).collect();
            if divides(&prim, a) && divides(&prim, b) {
                return Some(prim);
            }
        }
        prev = Some(sym);
    }
    None
}

/// Primitive remainder sequence over Z.
fn prs_gcd(mut x: Vec<BigInt>, mut y: Vec<BigInt>) -> Vec<BigInt> {
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let mut r = prem(&x, &y);
        if !r.is_empty() {
            let c = int_content(&r);
            for v in r.iter_mut() {
                *v = &*v / &c;
            }
        }
        x = y;
        y = r;
    }
    x
}

/// Monic gcd over Q, computed modularly with a remainder-sequence fallback.
pub fn gcd(a: &PolyQ, b: &PolyQ) -> PolyQ {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (_, x) = primitive_integer_coeffs(a);
    let (_, y) = primitive_integer_coeffs(b);
    let g = modular_gcd(&x, &y).unwrap_or_else(|| prs_gcd(x, y));
    ints_to_poly(&g).monic()
}

/// `p = unit * prod(f_i^{e_i})` with each `f_i` monic, squarefree and
/// pairwise coprime; factors are listed by increasing multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition {
    pub unit: Rat,
    pub factors: Vec<(PolyQ, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> PolyQ {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Product of the factors with odd multiplicity, times the unit.
    pub fn squarefree_kernel(&self) -> PolyQ {
        self.factors
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .fold(Poly::constant(self.unit.clone()), |acc, (f, _)| &acc * f)
    }

    /// `T` with `p = kernel * T^2`.
    pub fn square_cofactor(&self) -> PolyQ {
        self.factors
            .iter()
            .fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(e / 2))
    }
}

/// Yun's algorithm.
pub fn squarefree_decomposition(p: &PolyQ) -> Result<SquarefreeDecomposition> {
    if p.is_zero() {
        return Err(Error::InvalidArgument(
            "squarefree decomposition of the zero polynomial".into(),
        ));
    }
    let unit = p.lc();
    let f = p.monic();
    let mut factors = Vec::new();
    if f.is_constant() {
        return Ok(SquarefreeDecomposition { unit, factors });
    }
    let df = f.derivative();
    let a0 = gcd(&f, &df);
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        b = b.exact_div(&a)?;
        let c = d.exact_div(&a)?;
        d = &c - &b.derivative();
        if !a.is_constant() {
            factors.push((a, i));
        }
        i += 1;
    }
    Ok(SquarefreeDecomposition { unit, factors })
}

/// `q` with `q^n = p`, if one exists over Q. For even `n` the root with
/// positive leading coefficient is returned.
pub fn nth_root_poly(p: &PolyQ, n: u32) -> Option<PolyQ> {
    assert!(n >= 1, "root index must be positive");
    if p.is_zero() {
        return Some(Poly::zero());
    }
    let dec = squarefree_decomposition(p).ok()?;
    if dec.factors.iter().any(|(_, e)| e % n != 0) {
        return None;
    }
    let c = rat_nth_root(&dec.unit, n)?;
    let q = dec
        .factors
        .iter()
        .fold(Poly::constant(c), |acc, (f, e)| &acc * &f.pow(e / n));
    debug_assert_eq!(q.pow(n), *p);
    Some(q)
}

/// True iff `h = c * s^n` for some constant `c` and `s` in Q(t).
pub fn is_nth_power_up_to_constant(h: &RatFunc, n: u32) -> Result<bool> {
    if h.is_zero() {
        return Err(Error::InvalidArgument("n-th power test of zero".into()));
    }
    let num = squarefree_decomposition(h.numer())?;
    let den = squarefree_decomposition(h.denom())?;
    Ok(num
        .factors
        .iter()
        .chain(den.factors.iter())
        .all(|(_, e)| e % n == 0))
}

pub fn discriminant(p: &PolyQ) -> Result<Rat> {
    poly::discriminant(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::int;

    fn p(cs: &[i64]) -> PolyQ {
        Poly::from_i64s(cs)
    }

    #[test]
    fn gcd_cases() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(gcd(&p(&[1, 0, 1]), &p(&[1, 1])), p(&[1]));
        assert_eq!(gcd(&PolyQ::zero(), &p(&[2, 4])), p(&[1, 2]).monic());
    }

    #[test]
    fn yun_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d.unit, int(1));
        assert_eq!(d.factors, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        let d6 = squarefree_decomposition(&p(&[0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(d6.factors, vec![(p(&[0, 1]), 6)]);
        assert!(squarefree_decomposition(&PolyQ::zero()).is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(nth_root_poly(&p(&[1, 2, 1]), 2), Some(p(&[1, 1])));
        assert_eq!(nth_root_poly(&p(&[1, 0, 0, 1]), 3), None);
        assert_eq!(nth_root_poly(&p(&[-8]), 3), Some(p(&[-2])));
        assert_eq!(nth_root_poly(&p(&[-1, 0, 1]).scale(&int(4)), 2), None);
    }

    #[test]
    fn nth_power_tests() {
        let t4 = RatFunc::from_poly(p(&[0, 0, 0, 0, 1]));
        assert!(is_nth_power_up_to_constant(&t4, 4).unwrap());
        let sq = RatFunc::from_poly(p(&[1, 0, 1]).pow(2));
        assert!(!is_nth_power_up_to_constant(&sq, 4).unwrap());
        assert!(is_nth_power_up_to_constant(&sq.scale_rat(&int(-7)), 2).unwrap());
    }
}
