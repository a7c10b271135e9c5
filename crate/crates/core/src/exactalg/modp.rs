//! Polynomials over prime fields F_q with q < 2^32, and the distinct-degree
//! irreducibility test used to certify irreducibility over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::exactalg::polyq::{self, PolyQ};

/// Coefficients lowest degree first, trimmed, each in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFp {
    pub q: u64,
    pub coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, q);
        }
        a = mulmod(a, a, q);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, q: u64) -> u64 {
    powmod(a, q - 2, q)
}

impl PolyFp {
    pub fn new(q: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { q, coeffs }
    }

    /// Reduce an integer polynomial; coefficients lowest degree first.
    pub fn from_ints(q: u64, cs: &[BigInt]) -> Self {
        let qb = BigInt::from(q);
        let v = cs
            .iter()
            .map(|c| c.mod_floor(&qb).to_u64().expect("reduced residue fits"))
            .collect();
        Self::new(q, v)
    }

    pub fn x(q: u64) -> Self {
        Self::new(q, vec![0, 1])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let q = self.q;
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + q - b) % q
            })
            .collect();
        Self::new(q, v)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.q, vec![]);
        }
        let q = self.q;
        let mut v = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                v[i + j] = (v[i + j] + mulmod(a, b, q)) % q;
            }
        }
        Self::new(q, v)
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("nonzero divisor");
        let q = self.q;
        let inv = invmod(*d.coeffs.last().unwrap(), q);
        let mut r = self.coeffs.clone();
        let mut quot = vec![0u64; r.len().saturating_sub(dd)];
        while r.len() > dd {
            let i = r.len() - 1;
            let c = mulmod(r[i], inv, q);
            quot[i - dd] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = (r[k] + q - mulmod(c, dc, q)) % q;
            }
            r.pop();
        }
        (Self::new(q, quot), Self::new(q, r))
    }

    pub fn derivative(&self) -> Self {
        let q = self.q;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % q, q))
            .collect();
        Self::new(q, v)
    }

    pub fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("nonzero divisor");
        let q = self.q;
        let inv = invmod(*d.coeffs.last().unwrap(), q);
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let i = r.len() - 1;
            let c = mulmod(r[i], inv, q);
            if c != 0 {
                for (j, &dc) in d.coeffs.iter().enumerate() {
                    let k = i - dd + j;
                    r[k] = (r[k] + q - mulmod(c, dc, q)) % q;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Self::new(q, r)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = invmod(lc, self.q);
                Self::new(self.q, self.coeffs.iter().map(|&c| mulmod(c, inv, self.q)).collect())
            }
        }
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `base^e mod m`.
    pub fn pow_mod(base: &Self, mut e: u64, m: &Self) -> Self {
        let mut acc = Self::new(base.q, vec![1]).rem(m);
        let mut b = base.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m);
            }
        }
        acc
    }
}

/// Smallest degree `k <= deg/2` for which `gcd(x^{q^k} - x, f) != 1`, if any.
/// `None` means `f` has no irreducible factor of degree at most `deg f / 2`
/// and no repeated factor, i.e. it is irreducible over F_q.
pub fn smallest_factor_degree(f: &PolyFp) -> Option<usize> {
    let n = f.degree()?;
    let q = f.q;
    let x = PolyFp::x(q);
    let mut xp = x.rem(f);
    for k in 1..=n / 2 {
        xp = PolyFp::pow_mod(&xp, q, f);
        let g = PolyFp::gcd(&xp.sub(&x), f);
        if !g.is_one() {
            return Some(k);
        }
    }
    None
}

pub fn is_irreducible_mod(f: &PolyFp) -> bool {
    matches!(f.degree(), Some(d) if d >= 1) && smallest_factor_degree(f).is_none()
}

pub fn small_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return vec![];
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// A prime `q <= prime_bound`, not dividing the leading coefficient, modulo
/// which `p` is irreducible. Such a prime proves `p` irreducible over Q;
/// `None` is inconclusive.
pub fn irreducibility_witness(p: &PolyQ, prime_bound: u64) -> Option<u64> {
    let deg = p.degree().filter(|&d| d >= 1)?;
    let (_, ints) = polyq::primitive_integer_coeffs(p);
    let lc = ints.last().expect("nonzero polynomial").clone();
    for q in small_primes(prime_bound) {
        if (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let f = PolyFp::from_ints(q, &ints);
        debug_assert_eq!(f.degree(), Some(deg));
        if is_irreducible_mod(&f) {
            return Some(q);
        }
    }
    None
}

impl PolyFp {
    pub fn eval(&self, a: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, c| (mulmod(acc, a, self.q) + c) % self.q)
    }

    /// All roots in F_q by exhaustion; meant for small `q`.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.q).filter(|&a| self.eval(a) == 0).collect()
    }
}

/// `a / b mod q`, or `None` when `q | b`.
pub fn residue(a: &BigInt, b: &BigInt, q: u64) -> Option<u64> {
    let qb = BigInt::from(q);
    let b = b.mod_floor(&qb).to_u64()?;
    if b == 0 {
        return None;
    }
    let a = a.mod_floor(&qb).to_u64()?;
    Some(mulmod(a, invmod(b, q), q))
}

/// Degrees of the irreducible factors of a squarefree `f`, by distinct-degree
/// factorization, in increasing order.
pub fn factor_degrees(f: &PolyFp) -> Vec<usize> {
    let q = f.q;
    let x = PolyFp::x(q);
    let mut rest = f.monic();
    let mut xp = x.rem(&rest);
    let mut out = Vec::new();
    let mut k = 0;
    while let Some(n) = rest.degree().filter(|&n| n > 0) {
        k += 1;
        if 2 * k > n {
            out.push(n);
            break;
        }
        xp = PolyFp::pow_mod(&xp, q, &rest);
        let g = PolyFp::gcd(&xp.sub(&x), &rest);
        if let Some(dg) = g.degree().filter(|&d| d > 0) {
            out.extend(std::iter::repeat_n(k, dg / k));
            rest = rest.div_rem(&g).0;
            xp = xp.rem(&rest);
        }
    }
    out
}

/// Bit `i` set when some sub-multiset of `degs` sums to `i`.
fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for i in (d..=n).rev() {
            if reach[i - d] {
                reach[i] = true;
            }
        }
    }
    reach
}

/// Primes `q <= prime_bound` whose factorization patterns modulo `q` jointly
/// rule out a proper factor of `p` over Q: a factor of degree `k` would need
/// `k` to be a sum of factor degrees modulo every good prime. Returns the
/// primes that narrowed the candidates down to `{0, deg p}`.
pub fn degree_pattern_certificate(p: &PolyQ, prime_bound: u64) -> Option<Vec<u64>> {
    let n = p.degree().filter(|&d| d >= 1)?;
    let (_, ints) = polyq::primitive_integer_coeffs(p);
    let lc = ints.last().expect("nonzero polynomial").clone();
    let mut possible = vec![true; n + 1];
    let mut used = Vec::new();
    for q in small_primes(prime_bound) {
        if (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let f = PolyFp::from_ints(q, &ints);
        if !PolyFp::gcd(&f, &f.derivative()).is_one() {
            continue;
        }
        let reach = subset_sums(&factor_degrees(&f), n);
        let before = possible.iter().filter(|b| **b).count();
        for (slot, r) in possible.iter_mut().zip(&reach) {
            *slot &= *r;
        }
        if possible.iter().filter(|b| **b).count() < before {
            used.push(q);
        }
        if possible.iter().filter(|b| **b).count() == 2 {
            return Some(used);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::Poly;

    #[test]
    fn roots_and_residues() {
        let f = PolyFp::new(7, vec![1, 0, 1]);
        assert!(f.roots().is_empty());
        let g = PolyFp::new(5, vec![4, 0, 1]);
        assert_eq!(g.roots(), vec![1, 4]);
        assert_eq!(residue(&BigInt::from(1), &BigInt::from(2), 5), Some(3));
        assert_eq!(residue(&BigInt::from(1), &BigInt::from(10), 5), None);
    }

    #[test]
    fn sieve() {
        assert_eq!(small_primes(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn witnesses() {
        let x2p1 = Poly::from_i64s(&[1, 0, 1]);
        assert_eq!(irreducibility_witness(&x2p1, 200), Some(3));
        let x2m1 = Poly::from_i64s(&[-1, 0, 1]);
        assert_eq!(irreducibility_witness(&x2m1, 200), None);
        // x^4 + 1 is irreducible over Q but reducible modulo every prime.
        let x4p1 = Poly::from_i64s(&[1, 0, 0, 0, 1]);
        assert_eq!(irreducibility_witness(&x4p1, 200), None);
        // x^3 - x - 1 is irreducible mod 2.
        assert_eq!(irreducibility_witness(&Poly::from_i64s(&[-1, -1, 0, 1]), 200), Some(2));
    }

    #[test]
    fn distinct_degree_patterns() {
        // (x + 1)(x^2 + x + 1)(x^3 + x + 1) mod 2 is squarefree
        let a = PolyFp::new(2, vec![1, 1]);
        let b = PolyFp::new(2, vec![1, 1, 1]);
        let c = PolyFp::new(2, vec![1, 1, 0, 1]);
        assert_eq!(factor_degrees(&a.mul(&b).mul(&c)), vec![1, 2, 3]);
        assert_eq!(factor_degrees(&PolyFp::new(7, vec![1, 0, 1])), vec![2]);
    }

    #[test]
    fn pattern_certificates() {
        // x^4 + 1 splits as 2 + 2 or 1 + 1 + 1 + 1 modulo every odd prime, so
        // degree 2 can never be excluded.
        assert_eq!(degree_pattern_certificate(&Poly::from_i64s(&[1, 0, 0, 0, 1]), 500), None);
        // x^4 - x - 1 is irreducible mod 2 already.
        assert_eq!(degree_pattern_certificate(&Poly::from_i64s(&[-1, -1, 0, 0, 1]), 500), Some(vec![2]));
        let reducible = &Poly::from_i64s(&[-2, 0, 1]) * &Poly::from_i64s(&[-3, 0, 1]);
        assert_eq!(degree_pattern_certificate(&reducible, 500), None);
    }

    #[test]
    fn factor_degree_mod_p() {
        // (x^2 + 1)(x^2 + x + 1) mod 5: x^2+1 splits mod 5
        let f = PolyFp::new(5, vec![1, 1, 2, 1, 1]);
        assert_eq!(smallest_factor_degree(&f), Some(1));
        // x^2 + x + 1 is irreducible mod 2
        assert_eq!(smallest_factor_degree(&PolyFp::new(2, vec![1, 1, 1])), None);
    }
}
