//! Hyperelliptic curves carrying two independent maps to elliptic curves.
//!
//! For `E: y^2 = f(x) = x^3 + ax + b` and `E': y^2 = g(x) = x^3 + a'x + b'`,
//! `u^6 f(x) = g(u^2 x)` has the solution `x = phi(u)`, and
//! `C: Y^2 = f(phi(X))` maps to `E` by `(X, Y) -> (phi, Y)` and to `E'` by
//! `(X, Y) -> (X^2 phi, X^3 Y)`. Curves are stored with denominators cleared,
//! `W^2 = F(X) = S(X) T(X)^2`.

use serde::Serialize;

use crate::ellcurve::ShortW;
use crate::error::{Error, Result};
use crate::exactalg::field::Field;
use crate::exactalg::poly::Poly;
use crate::exactalg::polyq::{gcd, squarefree_decomposition, PolyQ};
use crate::exactalg::rat::{int, rat_to_string, Rat};
use crate::exactalg::ratfunc::RatFunc;

/// `(X, W) -> (x(X), W * y_factor(X))`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordMap {
    pub x: RatFunc,
    pub y_factor: RatFunc,
}

impl CoordMap {
    /// `rhs(x(X)) = y_factor^2 F(X)` for a target with right-hand side `rhs`.
    pub fn lands_on(&self, target: &ShortW<Rat>, f: &PolyQ) -> bool {
        let x = &self.x;
        let rhs = x.powu(3) + x.scale_rat(&target.a) + RatFunc::constant(target.b.clone());
        rhs == self.y_factor.square() * RatFunc::from_poly(f.clone())
    }

    fn to_strings(&self) -> [String; 2] {
        [self.x.to_string_in("X"), format!("W*({})", self.y_factor.to_string_in("X"))]
    }
}

#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub e: ShortW<Rat>,
    pub e_prime: ShortW<Rat>,
    /// `x`-coordinate of the first map.
    pub phi: RatFunc,
    /// `F` in `W^2 = F(X)`.
    pub f_cleared: PolyQ,
    /// Squarefree kernel and square part, `F = S T^2`.
    pub s: PolyQ,
    pub t: PolyQ,
    pub rho: CoordMap,
    pub rho_prime: CoordMap,
    /// Pullback of `dx/y` along `rho` over its pullback along `rho_prime`.
    pub ratio: RatFunc,
    pub genus: i64,
}

#[derive(Serialize)]
struct CoverDoc {
    e: [String; 2],
    e_prime: [String; 2],
    phi: String,
    f: String,
    s: String,
    t: String,
    rho: [String; 2],
    rho_prime: [String; 2],
    ratio: String,
    genus: i64,
}

impl Serialize for CoverSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let c = |e: &ShortW<Rat>| [rat_to_string(&e.a), rat_to_string(&e.b)];
        CoverDoc {
            e: c(&self.e),
            e_prime: c(&self.e_prime),
            phi: self.phi.to_string_in("X"),
            f: self.f_cleared.to_string_in("X"),
            s: self.s.to_string_in("X"),
            t: self.t.to_string_in("X"),
            rho: self.rho.to_strings(),
            rho_prime: self.rho_prime.to_strings(),
            ratio: self.ratio.to_string_in("X"),
            genus: self.genus,
        }
        .serialize(s)
    }
}

impl CoverSpec {
    fn assemble(
        e: ShortW<Rat>,
        e_prime: ShortW<Rat>,
        f_cleared: PolyQ,
        rho: CoordMap,
        rho_prime: CoordMap,
    ) -> Result<Self> {
        if !rho.lands_on(&e, &f_cleared) {
            return Err(Error::IdentityFailed("first map does not land on E".into()));
        }
        if !rho_prime.lands_on(&e_prime, &f_cleared) {
            return Err(Error::IdentityFailed("second map does not land on E'".into()));
        }
        let dec = squarefree_decomposition(&f_cleared)?;
        let s = dec.squarefree_kernel();
        let t = dec.square_cofactor();
        let ratio = pullback_ratio_of(&rho, &rho_prime)?;
        let genus = genus_of(&s);
        Ok(CoverSpec { e, e_prime, phi: rho.x.clone(), f_cleared, s, t, rho, rho_prime, ratio, genus })
    }

    /// `g(X^2 phi) = X^6 f(phi)` in Q(X); meaningful for covers from [`build_cover`].
    pub fn phi_identity_holds(&self) -> bool {
        let x = RatFunc::t();
        let rhs = |e: &ShortW<Rat>, v: &RatFunc| {
            v.powu(3) + v.scale_rat(&e.a) + RatFunc::constant(e.b.clone())
        };
        let x2phi = x.square() * self.phi.clone();
        rhs(&self.e_prime, &x2phi) == x.powu(6) * rhs(&self.e, &self.phi)
    }
}

fn pullback_ratio_of(rho: &CoordMap, rho_prime: &CoordMap) -> Result<RatFunc> {
    let num = rho.x.derivative() * rho_prime.y_factor.clone();
    let den = rho_prime.x.derivative() * rho.y_factor.clone();
    Field::div(&num, &den).ok_or_else(|| Error::DegenerateModel("second map is constant".into()))
}

fn genus_of(s: &PolyQ) -> i64 {
    let d = s.degree().unwrap_or(0) as i64;
    (d - 1).div_euclid(2)
}

/// The cover of `E` and `E'` through `phi(u) = -(b' - u^6 b) / (u^2 (a' - u^4 a))`.
pub fn build_cover(e: &ShortW<Rat>, e_prime: &ShortW<Rat>) -> Result<CoverSpec> {
    let zero = |r: &Rat| *r == int(0);
    if (zero(&e.a) && zero(&e_prime.a)) || (zero(&e.b) && zero(&e_prime.b)) {
        return Err(Error::InvalidPair(
            "both curves have j = 0 or both have j = 1728".into(),
        ));
    }
    let u = Poly::x();
    let u2 = Poly::monomial(int(1), 2);
    let u4 = Poly::monomial(int(1), 4);
    let u6 = Poly::monomial(int(1), 6);
    let num = -&(&Poly::constant(e_prime.b.clone()) - &u6.scale(&e.b));
    let den = &u2 * &(&Poly::constant(e_prime.a.clone()) - &u4.scale(&e.a));
    let phi = RatFunc::new(num, den)?;
    let (n, m) = (phi.numer().clone(), phi.denom().clone());
    // F = M^4 f(N/M) = M (N^3 + a N M^2 + b M^3)
    let m2 = &m * &m;
    let inner = &(&(&(&n * &n) * &n) + &(&n * &m2).scale(&e.a)) + &(&m2 * &m).scale(&e.b);
    let f_cleared = &m * &inner;
    let inv_m2 = Field::inv(&RatFunc::from_poly(m2)).expect("M != 0");
    let rho = CoordMap { x: phi.clone(), y_factor: inv_m2.clone() };
    let x = RatFunc::from_poly(u);
    let rho_prime = CoordMap {
        x: x.square() * phi.clone(),
        y_factor: x.powu(3) * inv_m2,
    };
    CoverSpec::assemble(e.clone(), e_prime.clone(), f_cleared, rho, rho_prime)
}

/// `rho*(dx/y) / rho'*(dx/y) = phi'(X) X^3 / (X^2 phi(X))'`.
pub fn pullback_ratio(c: &CoverSpec) -> RatFunc {
    c.ratio.clone()
}

/// The closed form `(3aX^4 b' - 2X^6 b a' - b'a') / (X^3 (X^6 ba - 3X^2 ba' + 2ab'))`.
pub fn displayed_ratio(e: &ShortW<Rat>, e_prime: &ShortW<Rat>) -> Result<RatFunc> {
    let (a, b, ap, bp) = (&e.a, &e.b, &e_prime.a, &e_prime.b);
    let num = Poly::new(vec![
        -(bp * ap),
        int(0),
        int(0),
        int(0),
        int(3) * a * bp,
        int(0),
        int(-2) * b * ap,
    ]);
    let den = Poly::new(vec![
        int(0),
        int(0),
        int(0),
        int(2) * a * bp,
        int(0),
        int(-3) * b * ap,
        int(0),
        int(0),
        int(0),
        b * a,
    ]);
    RatFunc::new(num, den)
}

pub fn cover_genus(c: &CoverSpec) -> i64 {
    c.genus
}

/// The genus-2 covers used when `j` is 0 or 1728.
pub fn special_cover(j: &Rat) -> Result<CoverSpec> {
    let x = RatFunc::t();
    let inv_x = Field::inv(&x).expect("X != 0");
    if *j == int(0) {
        let e = ShortW::new(int(0), int(1))?;
        let f = Poly::from_i64s(&[1, 0, 0, 0, 0, 0, 1]);
        let rho = CoordMap { x: x.square(), y_factor: RatFunc::constant(int(1)) };
        let rho_prime = CoordMap { x: inv_x.square(), y_factor: inv_x.powu(3) };
        return CoverSpec::assemble(e.clone(), e, f, rho, rho_prime);
    }
    if *j == int(1728) {
        // y^2 = (x + 1)(x - 2)(2x - 1) is y^2 = x^3 - 9x after x -> 2x - 1, y -> 2y.
        let cubic = Poly::from_i64s(&[2, -3, -3, 2]);
        let (e, scale, shift) = short_model_of_cubic(&cubic)?;
        let f = &(&Poly::from_i64s(&[1, 0, 1]) * &Poly::from_i64s(&[-2, 0, 1])) * &Poly::from_i64s(&[-1, 0, 2]);
        let to_e = |xc: RatFunc| xc.scale_rat(&scale) + RatFunc::constant(shift.clone());
        let c = RatFunc::constant(scale.clone());
        let rho = CoordMap { x: to_e(x.square()), y_factor: c.clone() };
        let rho_prime = CoordMap { x: to_e(inv_x.square()), y_factor: c * inv_x.powu(3) };
        return CoverSpec::assemble(e.clone(), e, f, rho, rho_prime);
    }
    Err(Error::InvalidArgument(format!("no special cover for j = {j}")))
}

/// `a = b = 27j / (4(1728 - j))`, the curve `y^2 = x^3 + ax + a` of invariant `j`.
pub fn curve_with_invariant(j: &Rat) -> Result<ShortW<Rat>> {
    if *j == int(0) || *j == int(1728) {
        return Err(Error::InvalidArgument("j = 0 and j = 1728 have no curve with a = b".into()));
    }
    let a = int(27) * j / (int(4) * (int(1728) - j));
    ShortW::new(a.clone(), a)
}

pub fn cover_for_invariant(j: &Rat) -> Result<CoverSpec> {
    if *j == int(0) || *j == int(1728) {
        return special_cover(j);
    }
    let e = curve_with_invariant(j)?;
    build_cover(&e, &e)
}

/// Short model of `y^2 = c(x)` for a cubic `c`, with `x_E = scale x + shift`,
/// `y_E = scale y`.
pub fn short_model_of_cubic(c: &PolyQ) -> Result<(ShortW<Rat>, Rat, Rat)> {
    if c.degree() != Some(3) {
        return Err(Error::InvalidArgument("expected a cubic".into()));
    }
    let (c0, c1, c2, c3) = (c.coeff(0), c.coeff(1), c.coeff(2), c.coeff(3));
    let a = &c1 * &c3 - &c2 * &c2 / int(3);
    let b = &c0 * &c3 * &c3 - &c1 * &c2 * &c3 / int(3) + int(2) * &c2 * &c2 * &c2 / int(27);
    let e = ShortW::new(a, b)?;
    Ok((e, c3, c2 / int(3)))
}

/// Cover data for `y^2 = x^3 - ax + b`, `a = alpha^2 + 3 beta^2`, through the
/// conic `x1^2 + x1 x2 + x2^2 = a`.
#[derive(Clone, Debug, Serialize)]
pub struct Remark1Spec {
    #[serde(serialize_with = "ser_rat")]
    pub alpha: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub beta: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub a: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub b: Rat,
    #[serde(serialize_with = "ser_pair")]
    pub point: (Rat, Rat),
    #[serde(serialize_with = "ser_rf")]
    pub x1: RatFunc,
    #[serde(serialize_with = "ser_rf")]
    pub x2: RatFunc,
    /// Cleared `f(x1(s))`.
    #[serde(serialize_with = "ser_poly")]
    pub f_cover: PolyQ,
    pub genus: i64,
    pub conic_identity: bool,
    pub cubic_identity: bool,
    /// `x1' / x2'` is not constant.
    pub derivatives_independent: bool,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat_to_string(r))
}

fn ser_pair<S: serde::Serializer>(r: &(Rat, Rat), s: S) -> std::result::Result<S::Ok, S::Error> {
    [rat_to_string(&r.0), rat_to_string(&r.1)].serialize(s)
}

fn ser_rf<S: serde::Serializer>(r: &RatFunc, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string_in("s"))
}

fn ser_poly<S: serde::Serializer>(p: &PolyQ, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string_in("x"))
}

pub fn conic_double_cover(alpha: &Rat, beta: &Rat, b: &Rat) -> Result<Remark1Spec> {
    let a = alpha * alpha + int(3) * beta * beta;
    if a == int(0) {
        return Err(Error::InvalidArgument("alpha^2 + 3 beta^2 = 0".into()));
    }
    let p1 = alpha - beta;
    let p2 = int(2) * beta;
    // the line (p1 + l, p2 + s l) meets the conic again at
    // l = -(2 alpha + (alpha + 3 beta) s) / (1 + s + s^2)
    let q = Poly::from_i64s(&[1, 1, 1]);
    let lin = Poly::new(vec![int(-2) * alpha, -(alpha + int(3) * beta)]);
    let lam = RatFunc::new(lin, q)?;
    let s = RatFunc::t();
    let x1 = lam.clone() + RatFunc::constant(p1.clone());
    let x2 = s * lam + RatFunc::constant(p2.clone());
    let ca = RatFunc::constant(a.clone());
    let conic_identity = x1.square() + x1.clone() * x2.clone() + x2.square() == ca;
    let cubic = |v: &RatFunc| v.powu(3) - v.scale_rat(&a) + RatFunc::constant(b.clone());
    let cubic_identity = cubic(&x1) == cubic(&x2);
    let derivatives_independent = Field::div(&x1.derivative(), &x2.derivative())
        .is_some_and(|r| !r.is_constant());
    // f(x1) = f(N/M) cleared to M (N^3 - a N M^2 + b M^3)
    let (n, m) = (x1.numer().clone(), x1.denom().clone());
    let m2 = &m * &m;
    let inner = &(&(&(&n * &n) * &n) + &(&n * &m2).scale(&-a.clone())) + &(&m2 * &m).scale(b);
    let f_cover = &m * &inner;
    let dec = squarefree_decomposition(&f_cover)?;
    let genus = genus_of(&dec.squarefree_kernel());
    Ok(Remark1Spec {
        alpha: alpha.clone(),
        beta: beta.clone(),
        a,
        b: b.clone(),
        point: (p1, p2),
        x1,
        x2,
        f_cover,
        genus,
        conic_identity,
        cubic_identity,
        derivatives_independent,
    })
}

/// Two curves `y^2 = (x-a)(x-b)(x-c)` and `y^2 = (x-a')(x-b')(x-c')` glued
/// along two 2-torsion points by an affine `h` with `h(a) = a'`, `h(b) = b'`.
#[derive(Clone, Debug)]
pub struct Remark2Spec {
    pub roots1: [Rat; 3],
    /// `roots2` in the order that admits `h`.
    pub roots2: [Rat; 3],
    pub alpha: Rat,
    pub beta: Rat,
    pub q1: PolyQ,
    pub q2: PolyQ,
    pub shared_degree: usize,
    /// `z^2 = q2(x)` pushed through `h` is isomorphic over Q to the second curve.
    pub transported_isomorphic: bool,
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn two_torsion_glue(roots1: [Rat; 3], roots2: [Rat; 3]) -> Result<Remark2Spec> {
    let distinct = |r: &[Rat; 3]| r[0] != r[1] && r[1] != r[2] && r[0] != r[2];
    if !distinct(&roots1) || !distinct(&roots2) {
        return Err(Error::InvalidArgument("roots must be distinct".into()));
    }
    let [a, b, c] = roots1.clone();
    let lin = |r: &Rat| Poly::new(vec![-r.clone(), int(1)]);
    let q1 = &(&lin(&a) * &lin(&b)) * &lin(&c);
    for perm in PERMUTATIONS {
        let r2 = perm.map(|i| roots2[i].clone());
        let [ap, bp, cp] = r2.clone();
        let alpha = (&bp - &ap) / (&b - &a);
        let beta = &ap - &alpha * &a;
        if &alpha * &c + &beta == cp {
            continue;
        }
        let h_inv_c = (&cp - &beta) / &alpha;
        let q2 = (&(&lin(&a) * &lin(&b)) * &lin(&h_inv_c)).scale(&alpha);
        let shared_degree = gcd(&q1, &q2).degree().unwrap_or(0);
        let (transported, _, _) = short_model_of_cubic(&q2)?;
        let e2_cubic = &(&lin(&ap) * &lin(&bp)) * &lin(&cp);
        let (e2, _, _) = short_model_of_cubic(&e2_cubic)?;
        let transported_isomorphic = transported.is_isomorphic(&e2);
        return Ok(Remark2Spec {
            roots1,
            roots2: r2,
            alpha,
            beta,
            q1,
            q2,
            shared_degree,
            transported_isomorphic,
        });
    }
    Err(Error::Precondition(
        "every ordering gives h(c) = c', the curves are affinely equal".into(),
    ))
}
