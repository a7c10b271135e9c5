//! Integer factorization: trial division, Pollard rho with Brent's cycle
//! detection, and a Miller-Rabin probable-prime test with fixed bases.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::modp::small_primes;

const MR_ROUNDS: usize = 40;
const MR_SEED: u64 = 0x6d65_7374_7265;
const TRIAL_BOUND: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInt {
    /// `1` or `-1`.
    pub sign: i8,
    /// Ascending primes with positive exponents.
    pub factors: Vec<(BigUint, u32)>,
}

impl FactoredInt {
    pub fn value(&self) -> BigInt {
        let mag = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        let s = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(s, mag)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    fn from_map(sign: i8, m: &BTreeMap<BigUint, u32>) -> Self {
        FactoredInt {
            sign,
            factors: m.iter().map(|(p, e)| (p.clone(), *e)).collect(),
        }
    }
}

impl std::fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", if self.sign < 0 { "-1" } else { "1" })?;
        for (p, e) in &self.factors {
            if *e == 1 {
                write!(f, " * {p}")?;
            } else {
                write!(f, " * {p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Effort limits for [`factor_integer`].
#[derive(Clone, Debug)]
pub struct FactorBudget {
    /// Pollard rho iterations allowed per composite cofactor.
    pub rho_iterations: u64,
    /// Known divisors tried before any search.
    pub hints: Vec<BigUint>,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { rho_iterations: 1_000_000, hints: Vec::new() }
    }
}

fn mr_bases(n: &BigUint) -> Vec<BigUint> {
    let mut rng = ChaCha8Rng::seed_from_u64(MR_SEED);
    let span = n - 3u32;
    let words = (n.bits() as usize).div_ceil(64) + 1;
    (0..MR_ROUNDS)
        .map(|_| {
            let digits: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
            BigUint::from_slice(
                &digits
                    .iter()
                    .flat_map(|w| [*w as u32, (*w >> 32) as u32])
                    .collect::<Vec<_>>(),
            ) % &span
                + 2u32
        })
        .collect()
}

/// Strong probable-prime test: trial division by small primes, then
/// Miller-Rabin with 40 bases drawn from a fixed-seed generator.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if *n == BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for a in mr_bases(n) {
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// One Brent cycle search with `f(y) = y^2 + c`; consumes from `budget`.
fn brent(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    let f = |y: &BigUint| (y * y + c) % n;
    let m = 128u64;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        *budget = budget.checked_sub(r)?;
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (q * abs_diff(&x, &y)) % n;
            }
            *budget = budget.checked_sub(steps)?;
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys);
            *budget = budget.checked_sub(1)?;
            g = abs_diff(&x, &ys).gcd(n);
            if g != one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

/// A nontrivial divisor of the composite `n`, or `None` once the budget is spent.
fn split(n: &BigUint, iterations: u64) -> Option<BigUint> {
    if let Some(r) = perfect_power_root(n) {
        return Some(r);
    }
    let mut budget = iterations;
    for c in 1u64.. {
        if budget == 0 {
            return None;
        }
        if let Some(d) = brent(n, c, &mut budget) {
            return Some(d);
        }
    }
    None
}

fn perfect_power_root(n: &BigUint) -> Option<BigUint> {
    let bits = n.bits() as u32;
    for k in 2..=bits {
        let r = n.nth_root(k);
        if r <= BigUint::one() {
            break;
        }
        if r.pow(k) == *n {
            return Some(r);
        }
    }
    None
}

fn add_factor(m: &mut BTreeMap<BigUint, u32>, p: BigUint, e: u32) {
    *m.entry(p).or_insert(0) += e;
}

/// Complete factorization of a nonzero integer within `budget`. On budget
/// exhaustion the error carries every prime found so far and the first
/// composite cofactor left unfactored.
pub fn factor_integer(n: &BigInt, budget: &FactorBudget) -> Result<FactoredInt> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut rest = n.magnitude().clone();
    let mut found = BTreeMap::new();

    for h in &budget.hints {
        if *h > BigUint::one() && is_probable_prime(h) {
            let mut e = 0;
            while (&rest % h).is_zero() {
                rest /= h;
                e += 1;
            }
            if e > 0 {
                add_factor(&mut found, h.clone(), e);
            }
        }
    }
    for p in small_primes(TRIAL_BOUND) {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            add_factor(&mut found, pb, e);
        }
    }

    let mut stack = vec![(rest, 1u32)];
    let mut left_over: Option<BigUint> = None;
    while let Some((c, e)) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            add_factor(&mut found, c, e);
            continue;
        }
        match split(&c, budget.rho_iterations) {
            Some(d) => {
                let q = &c / &d;
                stack.push((d, e));
                stack.push((q, e));
            }
            None => {
                if left_over.is_none() {
                    left_over = Some(c.clone());
                }
            }
        }
    }
    match left_over {
        None => Ok(FactoredInt::from_map(sign, &found)),
        Some(cofactor) => Err(Error::FactorBudget {
            partial: FactoredInt::from_map(sign, &found),
            cofactor,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn small_cases() {
        let f = factor_integer(&BigInt::from(12), &FactorBudget::default()).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(f.factors, vec![(u(2), 2), (u(3), 1)]);
        let g = factor_integer(&BigInt::from(-16 * 31), &FactorBudget::default()).unwrap();
        assert_eq!(g.sign, -1);
        assert_eq!(g.factors, vec![(u(2), 4), (u(31), 1)]);
        assert!(factor_integer(&BigInt::zero(), &FactorBudget::default()).is_err());
        let one = factor_integer(&BigInt::from(-1), &FactorBudget::default()).unwrap();
        assert!(one.factors.is_empty());
        assert_eq!(one.value(), BigInt::from(-1));
    }

    #[test]
    fn rho_splits_semiprime() {
        let p = u(1_000_000_007);
        let q = u(998_244_353);
        let n = BigInt::from(&p * &q * &p);
        let f = factor_integer(&n, &FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(q, 1), (p, 2)]);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn budget_failure_reports_cofactor() {
        let p: BigUint = "170141183460469231731687303715884105727".parse().unwrap();
        let q: BigUint = "618970019642690137449562111".parse().unwrap();
        let n = BigInt::from(&p * &q * 12u32);
        let tight = FactorBudget { rho_iterations: 1000, hints: vec![] };
        match factor_integer(&n, &tight) {
            Err(Error::FactorBudget { partial, cofactor }) => {
                assert_eq!(cofactor, &p * &q);
                assert_eq!(partial.factors, vec![(u(2), 2), (u(3), 1)]);
            }
            other => panic!("expected budget failure, got {other:?}"),
        }
        let hinted = FactorBudget { rho_iterations: 1000, hints: vec![q.clone()] };
        let f = factor_integer(&n, &hinted).unwrap();
        assert_eq!(f.value(), n);
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&u(2)));
        assert!(is_probable_prime(&u(1_000_000_007)));
        assert!(!is_probable_prime(&u(561)));
        assert!(!is_probable_prime(&u(3_215_031_751)));
        let m127: BigUint = "170141183460469231731687303715884105727".parse().unwrap();
        assert!(is_probable_prime(&m127));
    }
}
