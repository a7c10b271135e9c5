//! The plane cubic `r(x) + y^3 = 0` built from a monic sextic with split roots,
//! and its reduction to a `j = 0` Weierstrass model through the rational point
//! at infinity `[1 : -m : 0]`, `m^3` the leading coefficient of `r`.

use crate::ellcurve::descent::QuarticDescent;
use crate::ellcurve::shortw::{ECPoint, ShortW};
use crate::error::{Error, Result};
use crate::exactalg::field::BaseField;
use crate::exactalg::poly::{discriminant, Poly};

#[derive(Clone, Debug, PartialEq)]
pub struct CubicYModel<F: BaseField> {
    pub p: Poly<F>,
    pub g: Poly<F>,
    pub r: Poly<F>,
    pub roots: Vec<F>,
}

impl<F: BaseField> CubicYModel<F> {
    /// `p = prod (x - x_i)`, `g` the monic quadratic with `deg(p - g^3) <= 3`,
    /// `r = p - g^3`.
    pub fn from_roots(roots: Vec<F>) -> Result<Self> {
        if roots.len() != 6 {
            return Err(Error::InvalidArgument("expected six roots".into()));
        }
        let sum = roots.iter().fold(F::zero(), |acc, r| acc.add(r));
        if !sum.is_zero() {
            return Err(Error::Precondition("roots do not sum to zero".into()));
        }
        let p = roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![r.neg(), F::one()])
        });
        let a4 = p.coeff(4);
        let g = Poly::new(vec![a4.div(&F::from_i64(3)).expect("3 != 0"), F::zero(), F::one()]);
        let r = &p - &g.pow(3);
        if r.degree().is_some_and(|d| d > 3) {
            return Err(Error::IdentityFailed("deg(p - g^3) > 3".into()));
        }
        let m = CubicYModel { p, g, r, roots };
        for (x, y) in m.marked_points() {
            if !m.contains(&x, &y) {
                return Err(Error::IdentityFailed("marked point off the cubic".into()));
            }
        }
        Ok(m)
    }

    pub fn contains(&self, x: &F, y: &F) -> bool {
        self.r.eval(x).add(&y.powu(3)).is_zero()
    }

    /// `P_i = (x_i, g(x_i))`.
    pub fn marked_points(&self) -> Vec<(F, F)> {
        self.roots.iter().map(|x| (x.clone(), self.g.eval(x))).collect()
    }

    /// `D = disc(r)`.
    pub fn discriminant(&self) -> Result<F> {
        discriminant(&self.r)
    }
}

#[derive(Clone, Debug)]
pub struct CubicMap<F> {
    descent: QuarticDescent<F>,
    m: F,
    b: F,
    c: F,
    d: F,
    s0: F,
    inv_lambda: F,
}

impl<F: BaseField> CubicMap<F> {
    /// Image of an affine point of `r(x) + y^3 = 0`.
    pub fn apply(&self, x: &F, y: &F) -> Result<ECPoint<F>> {
        let s = y.add(&self.m.mul(x));
        let alpha = self.m.square().mul(&s).scale_i64(3).add(&self.b);
        let beta = self.c.sub(&self.m.mul(&s.square()).scale_i64(3));
        let w = alpha.mul(x).scale_i64(2).add(&beta);
        let p = self.descent.map(&s.sub(&self.s0), &w)?;
        Ok(ShortW::scale_point(&self.inv_lambda, &p))
    }

    /// The point at infinity `[1 : -m : 0]`, the chosen origin.
    pub fn apply_infinity(&self) -> ECPoint<F> {
        ECPoint::Infinity
    }

    /// The tangent at infinity, `y + m x = s0`, meets the cubic once more at
    /// `x = -gamma(s0) / beta(s0)`; this is that point and its image. Six
    /// points cut out by a conic, such as the marked points, sum to twice it.
    pub fn tangent_point(&self) -> Result<((F, F), ECPoint<F>)> {
        let beta = self.c.sub(&self.m.mul(&self.s0.square()).scale_i64(3));
        let gamma = self.s0.powu(3).add(&self.d);
        let x = gamma
            .neg()
            .div(&beta)
            .ok_or_else(|| Error::DegenerateModel("tangent at infinity is a flex tangent".into()))?;
        let y = self.s0.sub(&self.m.mul(&x));
        let p = self.apply(&x, &y)?;
        Ok(((x, y), p))
    }
}

/// The reduction's output: the model, the map, and where that model sits
/// among the sextic twists relative to `y^2 = x^3 - 16 D`.
#[derive(Clone, Debug)]
pub struct CubicReduction<F> {
    pub curve: ShortW<F>,
    pub map: CubicMap<F>,
    pub disc_r: F,
    /// `B / (-16 D)`; the model is isomorphic to `y^2 = x^3 - 16 D` exactly
    /// when this is a 6th power.
    pub twist_vs_minus_16d: F,
}

impl<F: BaseField> CubicReduction<F> {
    pub fn matches_minus_16d(&self) -> bool {
        self.twist_vs_minus_16d.nth_root(6).is_some()
    }
}

/// Lines `y + m x = s` through the point at infinity cut the cubic in two
/// further points, the roots of `alpha x^2 + beta x + gamma` with
/// `alpha = 3 m^2 s + b`, `beta = c - 3 m s^2`, `gamma = s^3 + d`.
/// `W = 2 alpha x + beta` then satisfies `W^2 = Delta(s)`, a quartic on which
/// the point at infinity becomes `(s0, -beta(s0))`, `s0 = -b / (3 m^2)`.
/// The result is scaled to `y^2 = x^3 + 16 D` when that is reachable.
pub fn cubic_y3_to_weierstrass<F: BaseField>(model: &CubicYModel<F>) -> Result<CubicReduction<F>> {
    let r = &model.r;
    if r.degree() != Some(3) {
        return Err(Error::Precondition("r must have degree 3".into()));
    }
    let a3 = r.coeff(3);
    let m = a3
        .nth_root(3)
        .ok_or_else(|| Error::Precondition("leading coefficient of r is not a cube".into()))?;
    let disc_r = discriminant(r)?;
    if disc_r.is_zero() {
        return Err(Error::DegenerateModel("disc(r) = 0".into()));
    }
    let (b, c, d) = (r.coeff(2), r.coeff(1), r.coeff(0));
    let m2 = m.square();
    // Delta(s) = -3 m^2 s^4 - 4 b s^3 - 6 m c s^2 - 12 m^2 d s + c^2 - 4 b d
    let delta = Poly::new(vec![
        c.square().sub(&b.mul(&d).scale_i64(4)),
        m2.mul(&d).scale_i64(-12),
        m.mul(&c).scale_i64(-6),
        b.scale_i64(-4),
        m2.scale_i64(-3),
    ]);
    let s0 = b.neg().div(&m2.scale_i64(3)).expect("m != 0");
    let shifted = delta.shift(&s0);
    let beta0 = c.sub(&m.mul(&s0.square()).scale_i64(3));
    let q = beta0.neg();
    let e = [0, 1, 2, 3, 4].map(|i| shifted.coeff(i));
    let descent = QuarticDescent::new(e, q)?;
    if !descent.short.a.is_zero() {
        return Err(Error::IdentityFailed("Jacobian model has A != 0".into()));
    }
    let target_b = disc_r.scale_i64(16);
    let ratio = descent.short.b.div(&target_b).expect("D != 0");
    let lambda = ratio.nth_root(6).unwrap_or_else(|| F::one());
    let inv_lambda = lambda.inv().expect("lambda != 0");
    let curve = descent.short.scaled(&inv_lambda);
    let twist = curve.b.div(&disc_r.scale_i64(-16)).expect("D != 0");
    let map = CubicMap { descent, m, b, c, d, s0, inv_lambda };
    Ok(CubicReduction { curve, map, disc_r, twist_vs_minus_16d: twist })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{int, Rat};

    fn check_model(r: Poly<Rat>, pts: &[(i64, i64)]) -> CubicReduction<Rat> {
        let model = CubicYModel {
            p: Poly::zero(),
            g: Poly::zero(),
            r,
            roots: vec![],
        };
        let red = cubic_y3_to_weierstrass(&model).unwrap();
        assert_eq!(red.curve.j_invariant(), int(0));
        for &(x, y) in pts {
            let (x, y) = (int(x), int(y));
            assert!(model.contains(&x, &y));
            assert!(red.curve.contains(&red.map.apply(&x, &y).unwrap()));
        }
        red
    }

    #[test]
    fn fermat_cubic_lands_on_plus_16d() {
        // x^3 + 1 + y^3 = 0: the point at infinity is a flex.
        let red = check_model(Poly::from_i64s(&[1, 0, 0, 1]), &[(-1, 0), (0, -1)]);
        assert_eq!(red.disc_r, int(-27));
        assert_eq!(red.curve.b, int(16 * -27));
        assert_eq!(red.twist_vs_minus_16d, int(-1));
        assert!(!red.matches_minus_16d());
    }

    #[test]
    fn non_flex_cubic() {
        // (x - 1)(x + 1)(x + 2) + y^3 = 0
        let red = check_model(Poly::from_i64s(&[-2, -1, 2, 1]), &[(1, 0), (-1, 0), (-2, 0)]);
        assert_eq!(red.curve.b, red.disc_r * int(16));
    }

    #[test]
    fn collinear_points_sum_to_tangent_point() {
        let red = check_model(Poly::from_i64s(&[-2, -1, 2, 1]), &[]);
        let ((x, y), t) = red.map.tangent_point().unwrap();
        assert_eq!(Poly::from_i64s(&[-2, -1, 2, 1]).eval(&x) + &y * &y * &y, int(0));
        // the three points on y = 0
        let sum = [1, -1, -2].iter().fold(ECPoint::Infinity, |acc, &x| {
            red.curve.add(&acc, &red.map.apply(&int(x), &int(0)).unwrap())
        });
        assert_eq!(sum, t);
        let flex = check_model(Poly::from_i64s(&[1, 0, 0, 1]), &[]);
        assert!(flex.map.tangent_point().is_err());
    }

    #[test]
    fn preconditions() {
        let model: CubicYModel<Rat> = CubicYModel {
            p: Poly::zero(),
            g: Poly::zero(),
            r: Poly::from_i64s(&[1, 0, 0, 2]),
            roots: vec![],
        };
        assert!(matches!(cubic_y3_to_weierstrass(&model), Err(Error::Precondition(_))));
    }
}
