//! General Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`
//! over Q and the standard `(u, r, s, t)` changes of variables.

use num_traits::{One, Zero};

use crate::ellcurve::shortw::{ECPoint, ShortW};
use crate::error::{Error, Result};
use crate::exactalg::rat::{int, Rat};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LongW {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

/// `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Transform {
    pub u: Rat,
    pub r: Rat,
    pub s: Rat,
    pub t: Rat,
}

impl Transform {
    pub fn identity() -> Self {
        Transform { u: Rat::one(), r: Rat::zero(), s: Rat::zero(), t: Rat::zero() }
    }

    /// Coordinates on the new model of a point given on the old one.
    pub fn forward(&self, p: &ECPoint<Rat>) -> ECPoint<Rat> {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                let xn = (x - &self.r) / &u2;
                let yn = (y - &self.s * &u2 * &xn - &self.t) / (&u2 * &self.u);
                ECPoint::affine(xn, yn)
            }
        }
    }

    pub fn backward(&self, p: &ECPoint<Rat>) -> ECPoint<Rat> {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => {
                let u2 = &self.u * &self.u;
                let xo = &u2 * x + &self.r;
                let yo = &u2 * &self.u * y + &self.s * &u2 * x + &self.t;
                ECPoint::affine(xo, yo)
            }
        }
    }
}

impl LongW {
    pub fn new(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat) -> Result<Self> {
        let e = LongW { a1, a2, a3, a4, a6 };
        if e.discriminant().is_zero() {
            return Err(Error::DegenerateModel("singular Weierstrass model".into()));
        }
        Ok(e)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(int(a[0]), int(a[1]), int(a[2]), int(a[3]), int(a[4]))
    }

    pub fn from_short(e: &ShortW<Rat>) -> Self {
        LongW {
            a1: Rat::zero(),
            a2: Rat::zero(),
            a3: Rat::zero(),
            a4: e.a.clone(),
            a6: e.b.clone(),
        }
    }

    pub fn b2(&self) -> Rat {
        &self.a1 * &self.a1 + int(4) * &self.a2
    }
    pub fn b4(&self) -> Rat {
        int(2) * &self.a4 + &self.a1 * &self.a3
    }
    pub fn b6(&self) -> Rat {
        &self.a3 * &self.a3 + int(4) * &self.a6
    }
    pub fn b8(&self) -> Rat {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        a1 * a1 * a6 + int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    }
    pub fn c4(&self) -> Rat {
        let b2 = self.b2();
        &b2 * &b2 - int(24) * self.b4()
    }
    pub fn c6(&self) -> Rat {
        let b2 = self.b2();
        -(&b2 * &b2 * &b2) + int(36) * &b2 * self.b4() - int(216) * self.b6()
    }
    pub fn discriminant(&self) -> Rat {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(&b2 * &b2 * &b8) - int(8) * &b4 * &b4 * &b4 - int(27) * &b6 * &b6
            + int(9) * &b2 * &b4 * &b6
    }
    pub fn j_invariant(&self) -> Rat {
        let c4 = self.c4();
        &c4 * &c4 * &c4 / self.discriminant()
    }

    pub fn is_integral(&self) -> bool {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
            .iter()
            .all(|a| a.is_integer())
    }

    pub fn contains(&self, p: &ECPoint<Rat>) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => {
                y * y + &self.a1 * x * y + &self.a3 * y
                    == x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6
            }
        }
    }

    /// The model reached by `t`.
    pub fn transform(&self, t: &Transform) -> LongW {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (u, r, s, tt) = (&t.u, &t.r, &t.s, &t.t);
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        LongW {
            a1: (a1 + int(2) * s) / u,
            a2: (a2 - s * a1 + int(3) * r - s * s) / &u2,
            a3: (a3 + r * a1 + int(2) * tt) / &u3,
            a4: (a4 - s * a3 + int(2) * r * a2 - (tt + r * s) * a1 + int(3) * r * r
                - int(2) * s * tt)
                / &u4,
            a6: (a6 + r * a4 + r * r * a2 + r * r * r - tt * a3 - tt * tt - r * tt * a1) / &u6,
        }
    }

    /// The isomorphic short model `y^2 = x^3 - 27 c4 x - 54 c6` with the
    /// transform from this model to it.
    pub fn to_short(&self) -> (ShortW<Rat>, Transform) {
        let e = ShortW { a: int(-27) * self.c4(), b: int(-54) * self.c6() };
        // X = 36x + 3 b2, Y = 108 (2y + a1 x + a3)
        let u = Rat::new(1.into(), 6.into());
        let t = Transform {
            r: -self.b2() / int(12),
            s: -&self.a1 / int(2),
            t: &self.a1 * self.b2() / int(24) - &self.a3 / int(2),
            u,
        };
        (e, t)
    }

    /// `x(2P)` from `x(P)`; `None` when `2P` is the point at infinity.
    pub fn double_x(&self, x: &Rat) -> Option<Rat> {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        let x2 = x * x;
        let num = &x2 * &x2 - &b4 * &x2 - int(2) * &b6 * x - &b8;
        let den = int(4) * &x2 * x + &b2 * &x2 + int(2) * &b4 * x + &b6;
        if den.is_zero() {
            None
        } else {
            Some(num / den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_of_37a() {
        let e = LongW::from_ints([0, 0, 1, -1, 0]).unwrap();
        assert_eq!(e.discriminant(), int(37));
        assert_eq!(e.c4(), int(48));
        assert_eq!(e.c6(), int(-216));
        assert!(e.contains(&ECPoint::affine(int(0), int(0))));
    }

    #[test]
    fn short_form_round_trip() {
        let e = LongW::from_ints([1, 0, 1, 0, 0]).unwrap();
        let (s, t) = e.to_short();
        let back = LongW::from_short(&s);
        assert_eq!(e.transform(&t), back);
        let p = ECPoint::affine(int(0), int(-1));
        assert!(e.contains(&p));
        let q = t.forward(&p);
        assert!(s.contains(&q));
        assert_eq!(t.backward(&q), p);
        assert_eq!(s.j_invariant(), e.j_invariant());
    }
}
