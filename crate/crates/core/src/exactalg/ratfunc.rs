//! Rational functions over Q in one variable `t`, kept in lowest terms
//! with a monic denominator so that equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactalg::field::{BaseField, Field};
use crate::exactalg::poly::Poly;
use crate::exactalg::polyq::{self, nth_root_poly, PolyQ};
use crate::exactalg::rat::{int, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: PolyQ,
    den: PolyQ,
}

impl RatFunc {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = polyq::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let c = den.lc().recip();
        RatFunc { num: num.scale(&c), den: den.scale(&c) }
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn numer(&self) -> &PolyQ {
        &self.num
    }

    pub fn denom(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, when `self` is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `None` when `t0` is a pole.
    pub fn eval(&self, t0: &Rat) -> Option<Rat> {
        let d = self.den.eval(t0);
        if num_traits::Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(t0) / d)
        }
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        if num_traits::Zero::is_zero(c) {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(n, &self.den * &self.den)
    }

    /// `self(g(t))`; `None` if the substitution makes the denominator vanish.
    pub fn compose(&self, g: &RatFunc) -> Option<Self> {
        let n = self.num.eval_in(g, |c| RatFunc::constant(c.clone()));
        let d = self.den.eval_in(g, |c| RatFunc::constant(c.clone()));
        Field::div(&n, &d)
    }

    /// Degree as a map P^1 -> P^1.
    pub fn height_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.den.is_constant() {
            return self.num.to_string_in(var);
        }
        let n = self.num.to_string_in(var);
        let n = if n.contains(' ') || n.contains('/') {
            format!("({n})")
        } else {
            n
        };
        let d = self.den.to_string_in(var);
        if d.contains(' ') || d.contains('*') || d.contains('^') {
            format!("{n}/({d})")
        } else {
            format!("{n}/{d}")
        }
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn int_like(&self, n: i64) -> Self {
        Self::from_i64(n)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Self::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        Field::add(self, &Field::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        Self::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::reduce(self.den.clone(), self.num.clone()))
        }
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        let a = nth_root_poly(&self.num, n)?;
        let b = nth_root_poly(&self.den, n)?;
        Some(Self::reduce(a, b))
    }
    fn scale_i64(&self, n: i64) -> Self {
        self.scale_rat(&int(n))
    }
}

impl BaseField for RatFunc {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn from_i64(n: i64) -> Self {
        Self::constant(int(n))
    }
    fn from_rat(r: &Rat) -> Self {
        Self::constant(r.clone())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
    };
}
binop!(Add, add, |a: &RatFunc, b: &RatFunc| Field::add(a, b));
binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| Field::sub(a, b));
binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| Field::mul(a, b));
binop!(Div, div, |a: &RatFunc, b: &RatFunc| Field::div(a, b)
    .expect("division by the zero rational function"));

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        Field::neg(self)
    }
}

impl From<PolyQ> for RatFunc {
    fn from(p: PolyQ) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("t"))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
