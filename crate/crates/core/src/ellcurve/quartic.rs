//! The curve `x^4 + a2 y^2 + a1 y + a0 = 0` whose quartic `x^4 + a2 x^2 + a1 x + a0`
//! splits with roots summing to zero, and its map to `y^2 = x^3 + a2 (a1^2 - 4 a0 a2) x`.

use crate::ellcurve::descent::QuarticDescent;
use crate::ellcurve::shortw::{ECPoint, ShortW};
use crate::error::{Error, Result};
use crate::exactalg::field::BaseField;
use crate::exactalg::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticModel<F> {
    pub a0: F,
    pub a1: F,
    pub a2: F,
    pub roots: [F; 4],
    pub u: F,
}

impl<F: BaseField> QuarticModel<F> {
    /// Builds the model from the four roots and `u` with `a0 = -u^4`.
    pub fn from_roots(roots: [F; 4], u: F) -> Result<Self> {
        let sum = roots.iter().fold(F::zero(), |acc, r| acc.add(r));
        if !sum.is_zero() {
            return Err(Error::Precondition("roots do not sum to zero".into()));
        }
        let p = roots.iter().fold(Poly::one(), |acc, r| {
            &acc * &Poly::new(vec![r.neg(), F::one()])
        });
        debug_assert!(p.coeff(3).is_zero());
        let m = QuarticModel {
            a0: p.coeff(0),
            a1: p.coeff(1),
            a2: p.coeff(2),
            roots,
            u,
        };
        if m.a0 != m.u.powu(4).neg() {
            return Err(Error::Precondition("a0 != -u^4".into()));
        }
        if m.weierstrass_a().is_zero() {
            return Err(Error::DegenerateModel("a2 (a1^2 - 4 a0 a2) = 0".into()));
        }
        Ok(m)
    }

    /// `a1^2 - 4 a0 a2`.
    pub fn e(&self) -> F {
        self.a1.square().sub(&self.a0.mul(&self.a2).scale_i64(4))
    }

    /// `a2 (a1^2 - 4 a0 a2)`.
    pub fn weierstrass_a(&self) -> F {
        self.a2.mul(&self.e())
    }

    pub fn contains(&self, x: &F, y: &F) -> bool {
        x.powu(4)
            .add(&self.a2.mul(&y.square()))
            .add(&self.a1.mul(y))
            .add(&self.a0)
            .is_zero()
    }

    /// `P_i = (x_i, x_i)`.
    pub fn marked_points(&self) -> Vec<(F, F)> {
        self.roots.iter().map(|r| (r.clone(), r.clone())).collect()
    }

    /// `O = (-u, 0)`.
    pub fn origin(&self) -> (F, F) {
        (self.u.neg(), F::zero())
    }
}

#[derive(Clone, Debug)]
pub struct QuarticMap<F> {
    descent: QuarticDescent<F>,
    a1: F,
    a2: F,
    u: F,
    inv_lambda: F,
}

impl<F: BaseField> QuarticMap<F> {
    pub fn apply(&self, x: &F, y: &F) -> Result<ECPoint<F>> {
        let w = self.a2.mul(y).scale_i64(2).add(&self.a1);
        let p = self.descent.map(&x.add(&self.u), &w)?;
        Ok(ShortW::scale_point(&self.inv_lambda, &p))
    }
}

/// Completes the square `w = 2 a2 y + a1`, giving `w^2 = -4 a2 x^4 + (a1^2 - 4 a0 a2)`,
/// maps that quartic to Weierstrass form with `(x, w) = (-u, a1)` as identity,
/// and rescales onto `y^2 = x^3 + a2 (a1^2 - 4 a0 a2) x`.
pub fn quartic_to_weierstrass<F: BaseField>(m: &QuarticModel<F>) -> Result<(ShortW<F>, QuarticMap<F>)> {
    let (a2, u) = (&m.a2, &m.u);
    if a2.is_zero() || m.e().is_zero() {
        return Err(Error::DegenerateModel("a2 (a1^2 - 4 a0 a2) = 0".into()));
    }
    let n4 = a2.scale_i64(-4);
    // -4 a2 (X - u)^4 + e
    let coeffs = [
        n4.mul(&u.powu(4)).add(&m.e()),
        n4.mul(&u.powu(3)).scale_i64(-4),
        n4.mul(&u.square()).scale_i64(6),
        n4.mul(u).scale_i64(-4),
        n4,
    ];
    let descent = QuarticDescent::new(coeffs, m.a1.clone())?;
    let target_a = m.weierstrass_a();
    if !descent.short.b.is_zero() {
        return Err(Error::IdentityFailed("Jacobian model has B != 0".into()));
    }
    let ratio = descent.short.a.div(&target_a).expect("nonzero target");
    let lambda = ratio.nth_root(4).ok_or_else(|| {
        Error::IdentityFailed(format!(
            "Jacobian A / (a2 (a1^2 - 4 a0 a2)) = {ratio:?} is not a 4th power"
        ))
    })?;
    let inv_lambda = lambda.inv().expect("lambda != 0");
    let target = ShortW::new(target_a, F::zero())?;
    debug_assert_eq!(descent.short.scaled(&inv_lambda), target);
    let map = QuarticMap {
        descent,
        a1: m.a1.clone(),
        a2: m.a2.clone(),
        u: m.u.clone(),
        inv_lambda,
    };
    Ok((target, map))
}
