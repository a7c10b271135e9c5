//! Dense univariate polynomials over a context-free field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactalg::field::{BaseField, Field};

/// Coefficients are stored lowest degree first; the last stored coefficient
/// is nonzero, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: BaseField> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, n: usize) -> Self {
        let mut v = vec![F::zero(); n];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// Horner evaluation at an element of any field the coefficients embed into.
    pub fn eval_in<G: Field>(&self, x: &G, embed: impl Fn(&F) -> G) -> G {
        self.coeffs
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, c| acc.mul(x).add(&embed(c)))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_i64(i as i64))
                .collect(),
        )
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * other) + &Self::constant(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn map<G: BaseField>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv_lc = d.lc().inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let n = r.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); n - dd];
        for i in (dd..n).rev() {
            let c = r[i].mul(&inv_lc);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = r[i - dd + j].sub(&c.mul(dc));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; errors if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InvalidArgument("polynomial division is not exact".into()))
        }
    }

    /// Monic gcd by the plain Euclidean algorithm. Over Q prefer
    /// [`crate::exactalg::polyq::gcd`], which controls coefficient growth.
    pub fn gcd_euclid(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Substitute `x -> x + s`.
    pub fn shift(&self, s: &F) -> Self {
        self.compose(&Self::new(vec![s.clone(), F::one()]))
    }
}

/// Resultant by the Euclidean remainder sequence; valid over any field.
pub fn resultant<F: BaseField>(a: &Poly<F>, b: &Poly<F>) -> F {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return F::zero();
    };
    if n == 0 {
        return b.lc().powu(m as u32);
    }
    if m == 0 {
        return a.lc().powu(n as u32);
    }
    let r = a.rem(b);
    let Some(dr) = r.degree() else {
        return F::zero();
    };
    let mut out = b.lc().powu((m - dr) as u32).mul(&resultant(b, &r));
    if (m * n) % 2 == 1 {
        out = out.neg();
    }
    out
}

/// `disc(p) = (-1)^{d(d-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant<F: BaseField>(p: &Poly<F>) -> Result<F> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidArgument(
                "discriminant needs a polynomial of degree >= 1".into(),
            ))
        }
    };
    let res = resultant(p, &p.derivative());
    let mut disc = res.div(&p.lc()).expect("nonzero leading coefficient");
    if (d * (d - 1) / 2) % 2 == 1 {
        disc = disc.neg();
    }
    Ok(disc)
}

impl<'a, F: BaseField> Add<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }
}

impl<'a, F: BaseField> Sub<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).sub(&rhs.coeff(i))).collect())
    }
}

impl<'a, F: BaseField> Mul<&'a Poly<F>> for &'a Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        Poly::new(F::mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl<F: BaseField> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| c.neg()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: BaseField> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: BaseField + fmt::Display> fmt::Display for Poly<F> {
    /// Renders in the variable `t`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "t")
    }
}

impl<F: BaseField + fmt::Display> Poly<F> {
    pub fn to_string_in(&self, var: &str) -> String {
        struct W<'a, F>(&'a Poly<F>, &'a str);
        impl<F: BaseField + fmt::Display> fmt::Display for W<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_var(f, self.1)
            }
        }
        W(self, var).to_string()
    }

    fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "{var}")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: BaseField + fmt::Display> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{int, rat, Rat};

    type P = Poly<Rat>;

    #[test]
    fn arithmetic_and_division() {
        let a = P::from_i64s(&[1, 2, 1]);
        let b = P::from_i64s(&[1, 1]);
        assert_eq!(&b * &b, a);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, b);
        assert!(r.is_zero());
        let (q, r) = P::from_i64s(&[1, 0, 0, 1]).div_rem(&P::from_i64s(&[0, 2]));
        assert_eq!(q, P::new(vec![int(0), int(0), rat(1, 2)]));
        assert_eq!(r, P::from_i64s(&[1]));
    }

    #[test]
    fn compose_and_shift() {
        let p = P::from_i64s(&[1, 0, 1]);
        assert_eq!(p.shift(&int(1)), P::from_i64s(&[2, 2, 1]));
        assert_eq!(p.compose(&p), P::from_i64s(&[2, 0, 2, 0, 1]));
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&P::from_i64s(&[1, 2, 1])).unwrap(), int(0));
        assert_eq!(discriminant(&P::from_i64s(&[1, 1, 0, 1])).unwrap(), int(-31));
        assert_eq!(discriminant(&P::from_i64s(&[1, 0, 0, 1])).unwrap(), int(-27));
        assert!(discriminant(&P::from_i64s(&[5])).is_err());
    }

    #[test]
    fn display() {
        let p = P::new(vec![int(-1), rat(1, 2), int(0), int(-3)]);
        assert_eq!(p.to_string(), "-3*t^3 + 1/2*t - 1");
        assert_eq!(P::x().to_string_in("x"), "x");
    }
}
