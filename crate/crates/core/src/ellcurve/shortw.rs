//! Short Weierstrass curves `y^2 = x^3 + A x + B` over any [`Field`], with
//! the chord-tangent group law.

use crate::error::{Error, Result};
use crate::exactalg::field::Field;
use crate::exactalg::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ShortW<F> {
    pub a: F,
    pub b: F,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ECPoint<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> ECPoint<F> {
    pub fn affine(x: F, y: F) -> Self {
        ECPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            ECPoint::Affine { x, .. } => Some(x),
            ECPoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            ECPoint::Affine { y, .. } => Some(y),
            ECPoint::Infinity => None,
        }
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            ECPoint::Affine { x, y } => Some((x, y)),
            ECPoint::Infinity => None,
        }
    }

    /// Apply a coordinate map; `None` from `f` propagates.
    pub fn try_map<G>(&self, f: impl Fn(&F) -> Option<G>) -> Option<ECPoint<G>> {
        Some(match self {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::Affine { x: f(x)?, y: f(y)? },
        })
    }

    pub fn map<G>(&self, f: impl Fn(&F) -> G) -> ECPoint<G> {
        self.try_map(|c| Some(f(c))).expect("total map")
    }
}

impl<F: Field> ShortW<F> {
    /// Fails when `4A^3 + 27B^2 = 0`.
    pub fn new(a: F, b: F) -> Result<Self> {
        let e = ShortW { a, b };
        if e.disc_core().is_zero() {
            return Err(Error::DegenerateModel(format!(
                "singular curve y^2 = x^3 + ({:?})x + ({:?})",
                e.a, e.b
            )));
        }
        Ok(e)
    }

    /// `4A^3 + 27B^2`.
    fn disc_core(&self) -> F {
        self.a
            .powu(3)
            .scale_i64(4)
            .add(&self.b.square().scale_i64(27))
    }

    /// `-16 (4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> F {
        self.disc_core().scale_i64(-16)
    }

    pub fn j_invariant(&self) -> F {
        let num = self.a.powu(3).scale_i64(4 * 1728);
        num.div(&self.disc_core()).expect("nonsingular curve")
    }

    pub fn rhs(&self, x: &F) -> F {
        x.powu(3).add(&self.a.mul(x)).add(&self.b)
    }

    pub fn contains(&self, p: &ECPoint<F>) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => y.square() == self.rhs(x),
        }
    }

    pub fn check_point(&self, p: &ECPoint<F>) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotOnCurve(format!("{p:?}")))
        }
    }

    pub fn neg(&self, p: &ECPoint<F>) -> ECPoint<F> {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::affine(x.clone(), y.neg()),
        }
    }

    pub fn add(&self, p: &ECPoint<F>, q: &ECPoint<F>) -> ECPoint<F> {
        let (x1, y1) = match p {
            ECPoint::Infinity => return q.clone(),
            ECPoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            ECPoint::Infinity => return p.clone(),
            ECPoint::Affine { x, y } => (x, y),
        };
        let lambda = if x1 == x2 {
            if y1.add(y2).is_zero() {
                return ECPoint::Infinity;
            }
            let num = x1.square().scale_i64(3).add(&self.a);
            num.div(&y1.scale_i64(2)).expect("y != 0 here")
        } else {
            y2.sub(y1).div(&x2.sub(x1)).expect("x1 != x2")
        };
        let x3 = lambda.square().sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        ECPoint::affine(x3, y3)
    }

    pub fn sub(&self, p: &ECPoint<F>, q: &ECPoint<F>) -> ECPoint<F> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &ECPoint<F>) -> ECPoint<F> {
        self.add(p, p)
    }

    /// `n P` by double-and-add; negative `n` negates.
    pub fn scalar_mul(&self, n: i64, p: &ECPoint<F>) -> ECPoint<F> {
        let mut k = n.unsigned_abs();
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut acc = ECPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// `sum c_i P_i`.
    pub fn linear_combination(&self, coeffs: &[i64], pts: &[ECPoint<F>]) -> ECPoint<F> {
        coeffs
            .iter()
            .zip(pts)
            .fold(ECPoint::Infinity, |acc, (&c, p)| {
                self.add(&acc, &self.scalar_mul(c, p))
            })
    }

    /// `y^2 = x^3 + A d^2 x + B d^3`.
    pub fn quadratic_twist(&self, d: &F) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidArgument("twist by zero".into()));
        }
        ShortW::new(self.a.mul(&d.square()), self.b.mul(&d.powu(3)))
    }

    /// The isomorphic curve `y^2 = x^3 + u^4 A x + u^6 B`, reached by
    /// `(x, y) -> (u^2 x, u^3 y)`.
    pub fn scaled(&self, u: &F) -> Self {
        ShortW {
            a: self.a.mul(&u.powu(4)),
            b: self.b.mul(&u.powu(6)),
        }
    }

    pub fn scale_point(u: &F, p: &ECPoint<F>) -> ECPoint<F> {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => {
                ECPoint::affine(x.mul(&u.square()), y.mul(&u.powu(3)))
            }
        }
    }

    /// Isomorphism over the base field: equal `j` and a twist ratio that is
    /// trivial. For `j = 1728` that means `A'/A` is a 4th power, for `j = 0`
    /// that `B'/B` is a 6th power, otherwise some `u` has `A' = u^4 A` and
    /// `B' = u^6 B`. Requires a field whose `nth_root` decides n-th powers.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        if self.j_invariant() != other.j_invariant() {
            return false;
        }
        if self.b.is_zero() {
            let r = other.a.div(&self.a).expect("A != 0 when B = 0");
            return r.nth_root(4).is_some();
        }
        if self.a.is_zero() {
            let r = other.b.div(&self.b).expect("B != 0 when A = 0");
            return r.nth_root(6).is_some();
        }
        // u^2 = (B'/B) / (A'/A)
        let ra = other.a.div(&self.a).expect("A != 0");
        let rb = other.b.div(&self.b).expect("B != 0");
        let u2 = rb.div(&ra).expect("A' != 0 for equal generic j");
        u2.nth_root(2).is_some() && u2.square() == ra
    }
}

pub fn isomorphic_over_q(e1: &ShortW<Rat>, e2: &ShortW<Rat>) -> bool {
    e1.is_isomorphic(e2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{int, rat};

    fn curve(a: i64, b: i64) -> ShortW<Rat> {
        ShortW::new(int(a), int(b)).unwrap()
    }

    fn pt(x: i64, y: i64) -> ECPoint<Rat> {
        ECPoint::affine(int(x), int(y))
    }

    #[test]
    fn j_values() {
        assert_eq!(curve(1, 0).j_invariant(), int(1728));
        assert_eq!(curve(0, 1).j_invariant(), int(0));
        assert_eq!(curve(-1, 1).j_invariant(), rat(-6912, 23));
        assert!(ShortW::new(int(-3), int(2)).is_err());
    }

    #[test]
    fn three_torsion_on_x3_plus_1() {
        let e = curve(0, 1);
        let p = pt(0, 1);
        assert_eq!(e.double(&p), pt(0, -1));
        assert_eq!(e.scalar_mul(3, &p), ECPoint::Infinity);
        assert_eq!(e.add(&p, &ECPoint::Infinity), p);
        assert_eq!(e.scalar_mul(-1, &p), pt(0, -1));
    }

    #[test]
    fn twists_and_isomorphism() {
        let e = curve(1, 0);
        assert_eq!(e.quadratic_twist(&int(-1)).unwrap(), e);
        assert_eq!(e.quadratic_twist(&int(1)).unwrap(), e);
        assert!(e.quadratic_twist(&int(0)).is_err());
        assert!(isomorphic_over_q(&curve(0, 1), &curve(0, 64)));
        assert!(!isomorphic_over_q(&curve(0, 2), &curve(0, 3)));
        assert!(isomorphic_over_q(&curve(1, 1), &curve(16, 64)));
        assert!(!isomorphic_over_q(&curve(1, 1), &curve(4, 8)));
        let t = curve(-2, 5).quadratic_twist(&int(7)).unwrap();
        assert!(isomorphic_over_q(&t.quadratic_twist(&int(7)).unwrap(), &curve(-2, 5)));
        assert!(!isomorphic_over_q(&t, &curve(-2, 5)));
    }
}
