//! Weierstrass form of `v^2 = e4 X^4 + e3 X^3 + e2 X^2 + e1 X + q^2` with the
//! rational point `(X, v) = (0, q)` sent to the identity.

use crate::ellcurve::shortw::{ECPoint, ShortW};
use crate::error::{Error, Result};
use crate::exactalg::field::Field;

#[derive(Clone, Debug)]
enum Route<F> {
    /// `q != 0`: the tangent-line construction.
    Tangent { q: F, a1: F, a2: F, a3: F },
    /// `q = 0`: `X = 1/Z` turns the quartic into a cubic in `Z`.
    Inverted { e1: F },
}

/// The quartic curve, the short Weierstrass model `y^2 = x^3 - 27 c4 x - 54 c6`
/// of its Jacobian, and the data needed to map points across.
#[derive(Clone, Debug)]
pub struct QuarticDescent<F> {
    pub e: [F; 5],
    pub short: ShortW<F>,
    route: Route<F>,
    b2: F,
    la1: F,
    la3: F,
}

impl<F: Field> QuarticDescent<F> {
    /// `e = [e0, e1, e2, e3, e4]` with `e0 = q^2`.
    pub fn new(e: [F; 5], q: F) -> Result<Self> {
        if q.square() != e[0] {
            return Err(Error::Precondition("constant term is not q^2".into()));
        }
        let [_, e1, e2, e3, e4] = e.clone();
        let zero = q.zero_like();
        let (route, la) = if !q.is_zero() {
            let a1 = e1.div(&q).expect("q != 0");
            let a2 = e2.sub(&e1.square().div(&q.square().scale_i64(4)).expect("q != 0"));
            let a3 = e3.mul(&q).scale_i64(2);
            let a4 = e4.mul(&q.square()).scale_i64(-4);
            let a6 = a2.mul(&a4);
            (
                Route::Tangent { q: q.clone(), a1: a1.clone(), a2: a2.clone(), a3: a3.clone() },
                [a1, a2, a3, a4, a6],
            )
        } else {
            if e1.is_zero() {
                return Err(Error::DegenerateModel("quartic has a double root at the marked point".into()));
            }
            let a4 = e3.mul(&e1);
            let a6 = e4.mul(&e1.square());
            (Route::Inverted { e1: e1.clone() }, [zero.clone(), e2.clone(), zero, a4, a6])
        };
        let [a1, a2, a3, a4, a6] = la;
        let b2 = a1.square().add(&a2.scale_i64(4));
        let b4 = a4.scale_i64(2).add(&a1.mul(&a3));
        let b6 = a3.square().add(&a6.scale_i64(4));
        let c4 = b2.square().sub(&b4.scale_i64(24));
        let c6 = b2
            .powu(3)
            .neg()
            .add(&b2.mul(&b4).scale_i64(36))
            .sub(&b6.scale_i64(216));
        let short = ShortW::new(c4.scale_i64(-27), c6.scale_i64(-54))?;
        Ok(QuarticDescent { e, short, route, b2, la1: a1, la3: a3 })
    }

    pub fn quartic(&self, x: &F) -> F {
        self.e
            .iter()
            .rev()
            .fold(x.zero_like(), |acc, c| acc.mul(x).add(c))
    }

    /// Image on [`Self::short`] of a point `(X, v)` of the quartic curve.
    pub fn map(&self, x: &F, v: &F) -> Result<ECPoint<F>> {
        if v.square() != self.quartic(x) {
            return Err(Error::NotOnCurve(format!("({x:?}, {v:?}) on the quartic")));
        }
        let long = match &self.route {
            Route::Tangent { q, a1, a2, a3 } => {
                if x.is_zero() {
                    if v == q {
                        return Ok(ECPoint::Infinity);
                    }
                    (a2.neg(), a1.mul(a2).sub(a3))
                } else {
                    let (c, d) = (&self.e[2], &self.e[1]);
                    let vq = v.add(q);
                    let x2 = x.square();
                    let xl = q
                        .mul(&vq)
                        .scale_i64(2)
                        .add(&d.mul(x))
                        .div(&x2)
                        .expect("X != 0");
                    let yl = q
                        .square()
                        .mul(&vq)
                        .scale_i64(4)
                        .add(&q.mul(&d.mul(x).add(&c.mul(&x2))).scale_i64(2))
                        .sub(&d.square().mul(&x2).div(&q.scale_i64(2)).expect("q != 0"))
                        .div(&x2.mul(x))
                        .expect("X != 0");
                    (xl, yl)
                }
            }
            Route::Inverted { e1 } => {
                if x.is_zero() {
                    return Ok(ECPoint::Infinity);
                }
                let z = x.inv().expect("X != 0");
                let big_v = v.mul(&z.square());
                (e1.mul(&z), e1.mul(&big_v))
            }
        };
        let (xl, yl) = long;
        let xs = xl.scale_i64(36).add(&self.b2.scale_i64(3));
        let ys = yl
            .scale_i64(2)
            .add(&self.la1.mul(&xl))
            .add(&self.la3)
            .scale_i64(108);
        let p = ECPoint::affine(xs, ys);
        debug_assert!(self.short.contains(&p));
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{int, Rat};

    #[test]
    fn tangent_route_maps_points() {
        // v^2 = X^4 - 2X^3 + X + 4, points with X in {0, 1}
        let e: [Rat; 5] = [int(4), int(1), int(0), int(-2), int(1)];
        let d = QuarticDescent::new(e, int(2)).unwrap();
        assert_eq!(d.map(&int(0), &int(2)).unwrap(), ECPoint::Infinity);
        for (x, v) in [(0, -2), (1, 2), (1, -2)] {
            let p = d.map(&int(x), &int(v)).unwrap();
            assert!(d.short.contains(&p), "{x} {v}");
        }
        assert!(d.map(&int(3), &int(1)).is_err());
    }

    #[test]
    fn inverted_route_maps_points() {
        // v^2 = X^4 + X^2 + 2X has the point (0, 0) and (1, 2)
        let e: [Rat; 5] = [int(0), int(2), int(1), int(0), int(1)];
        let d = QuarticDescent::new(e, int(0)).unwrap();
        assert_eq!(d.map(&int(0), &int(0)).unwrap(), ECPoint::Infinity);
        let p = d.map(&int(1), &int(2)).unwrap();
        assert!(d.short.contains(&p));
        let m = d.map(&int(1), &int(-2)).unwrap();
        assert_eq!(d.short.add(&p, &m), ECPoint::Infinity);
    }
}
