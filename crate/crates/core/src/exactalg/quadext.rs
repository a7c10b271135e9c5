//! Quadratic extensions `F(sqrt d)`. The radicand travels with each element,
//! so the extension needs no global context; mixing elements with different
//! radicands is a programming error and panics.

use std::fmt;

use crate::exactalg::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt<F> {
    pub a: F,
    pub b: F,
    pub d: F,
}

impl<F: Field> QuadExt<F> {
    pub fn new(a: F, b: F, d: F) -> Self {
        QuadExt { a, b, d }
    }

    pub fn from_base(a: F, d: &F) -> Self {
        let b = a.zero_like();
        QuadExt { a, b, d: d.clone() }
    }

    /// The element `sqrt d` itself.
    pub fn sqrt_d(d: &F) -> Self {
        QuadExt { a: d.zero_like(), b: d.one_like(), d: d.clone() }
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: self.b.neg(), d: self.d.clone() }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> F {
        self.a.square().sub(&self.d.mul(&self.b.square()))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `a` when `b = 0`.
    pub fn rational_part(&self) -> Option<&F> {
        self.is_rational().then_some(&self.a)
    }

    /// `b` when `a = 0`: elements of the form `b sqrt d`.
    pub fn pure_imaginary_part(&self) -> Option<&F> {
        self.a.is_zero().then_some(&self.b)
    }

    fn check(&self, o: &Self) {
        assert!(self.d == o.d, "quadratic extension elements with different radicands");
    }
}

impl<F: Field> Field for QuadExt<F> {
    fn zero_like(&self) -> Self {
        QuadExt::from_base(self.a.zero_like(), &self.d)
    }
    fn one_like(&self) -> Self {
        QuadExt::from_base(self.a.one_like(), &self.d)
    }
    fn int_like(&self, n: i64) -> Self {
        QuadExt::from_base(self.a.int_like(n), &self.d)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt { a: self.a.add(&o.a), b: self.b.add(&o.b), d: self.d.clone() }
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt { a: self.a.sub(&o.a), b: self.b.sub(&o.b), d: self.d.clone() }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let a = self.a.mul(&o.a).add(&self.d.mul(&self.b.mul(&o.b)));
        let b = self.a.mul(&o.b).add(&self.b.mul(&o.a));
        QuadExt { a, b, d: self.d.clone() }
    }
    fn neg(&self) -> Self {
        QuadExt { a: self.a.neg(), b: self.b.neg(), d: self.d.clone() }
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(QuadExt { a: self.a.mul(&n), b: self.b.neg().mul(&n), d: self.d.clone() })
    }
    fn scale_i64(&self, n: i64) -> Self {
        QuadExt { a: self.a.scale_i64(n), b: self.b.scale_i64(n), d: self.d.clone() }
    }
}

impl<F: Field + fmt::Display> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*sqrt({})", self.a, self.b, self.d)
    }
}

impl<F: Field> fmt::Debug for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})*sqrt({:?})", self.a, self.b, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{int, rat, Rat};

    type Q2 = QuadExt<Rat>;

    #[test]
    fn sqrt2_arithmetic() {
        let d = int(2);
        let s = Q2::sqrt_d(&d);
        assert_eq!(s.mul(&s), Q2::from_base(int(2), &d));
        let x = Q2::new(int(1), int(1), d.clone());
        let inv = x.inv().unwrap();
        assert_eq!(inv, Q2::new(int(-1), int(1), d.clone()));
        assert!(x.mul(&inv).is_one());
        let y = Q2::new(rat(1, 2), int(-3), d.clone());
        assert_eq!(y.conj().conj(), y);
        assert_eq!(y.mul(&y.conj()), Q2::from_base(y.norm(), &d));
    }
}
