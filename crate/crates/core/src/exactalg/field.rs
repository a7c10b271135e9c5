//! The field interface the curve arithmetic is written against.
//!
//! Elements carry enough context to build their own constants (`zero_like`,
//! `one_like`), which lets quadratic extensions whose radicand lives in the
//! element participate without a global context object.

use std::fmt::{Debug, Display};

use crate::exactalg::rat::Rat;

pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Exact `n`-th root inside the field, when the field can decide it.
    fn nth_root(&self, _n: u32) -> Option<Self> {
        None
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn square(&self) -> Self {
        self.mul(self)
    }

    fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.mul(&self.int_like(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

/// A field whose constants need no context (Q and Q(t)).
pub trait BaseField: Field + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rat(r: &Rat) -> Self;

    /// Coefficients of the product of two nonzero coefficient lists.
    fn mul_coeffs(a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        out
    }
}
