//! Families of curves over Q(t) with independent points: quadratic twists of
//! a constant curve along a genus-two cover (any `j`, two points), Euler's
//! quartic family (`j = 1728`, four points) and the sextic family (`j = 0`,
//! six points). Also specialization to Q, certification and isomorphism
//! classes of specializations.

use num_bigint::BigInt;
use num_traits::One;

use crate::covers::{cover_for_invariant, CoverSpec};
use crate::ellcurve::{
    cubic_y3_to_weierstrass, isomorphic_over_q, quartic_to_weierstrass, CubicReduction,
    CubicYModel, ECPoint, QuarticMap, QuarticModel, ShortW,
};
use crate::error::{Error, Result};
use crate::exactalg::field::{BaseField, Field};
use crate::exactalg::modp::{residue, small_primes, PolyFp};
use crate::exactalg::polyq::{primitive_integer_coeffs, squarefree_decomposition};
use crate::exactalg::rat::{int, rat_nth_root, Rat};
use crate::exactalg::{
    degree_pattern_certificate, factor_integer, irreducibility_witness, is_nth_power_up_to_constant, nth_root_poly, FactorBudget,
    Poly, PolyQ, QuadExt, RatFunc,
};
use crate::heights::{HeightContext, RankCertificate};

/// Primes tried when looking for an irreducibility witness.
pub const WITNESS_PRIME_BOUND: u64 = 200;

/// Search bound for [`CubicFamily::least_witness`].
pub const WIDE_WITNESS_BOUND: u64 = 1000;

/// Values of `t` at which a family degenerates: zeros of the listed
/// polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct ExcludedSet {
    pub polys: Vec<(String, PolyQ)>,
    /// Every rational zero of `polys`, or `None` if the search gave up.
    pub rational_zeros: Option<Vec<Rat>>,
}

impl ExcludedSet {
    fn new(polys: Vec<(String, PolyQ)>) -> Self {
        let mut zeros = Some(Vec::new());
        for (_, p) in &polys {
            match (rational_zeros(p), zeros.as_mut()) {
                (Some(z), Some(acc)) => acc.extend(z),
                _ => zeros = None,
            }
        }
        if let Some(z) = zeros.as_mut() {
            z.sort();
            z.dedup();
        }
        ExcludedSet { polys, rational_zeros: zeros }
    }

    /// Why `t0` is excluded, if it is.
    pub fn reason(&self, t0: &Rat) -> Option<String> {
        self.polys
            .iter()
            .find(|(_, p)| p.eval(t0).is_zero())
            .map(|(label, _)| format!("{label} vanishes at t = {t0}"))
    }
}

/// Polynomials whose zeros make the curve or one of its points undefined.
fn degeneracy_polys(curve: &ShortW<RatFunc>, points: &[ECPoint<RatFunc>]) -> Vec<(String, PolyQ)> {
    let mut out = Vec::new();
    let mut push = |label: String, p: &PolyQ| {
        if p.degree().is_some_and(|d| d > 0) && !out.iter().any(|(_, q)| q == p) {
            out.push((label, p.clone()));
        }
    };
    push("denominator of A".into(), curve.a.denom());
    push("denominator of B".into(), curve.b.denom());
    let disc = curve.discriminant();
    push("discriminant".into(), disc.numer());
    for (i, p) in points.iter().enumerate() {
        if let Some((x, y)) = p.coords() {
            push(format!("denominator of x(P{})", i + 1), x.denom());
            push(format!("denominator of y(P{})", i + 1), y.denom());
        }
    }
    out
}

fn divisors(n: &BigInt, budget: &FactorBudget, cap: usize) -> Option<Vec<BigInt>> {
    let f = factor_integer(n, budget).ok()?;
    let count: usize = f.factors.iter().map(|(_, e)| *e as usize + 1).product();
    if count > cap {
        return None;
    }
    let mut ds = vec![BigInt::one()];
    for (p, e) in &f.factors {
        let p = BigInt::from(p.clone());
        let mut next = Vec::with_capacity(ds.len() * (*e as usize + 1));
        for d in &ds {
            let mut m = d.clone();
            for _ in 0..=*e {
                next.push(m.clone());
                m *= &p;
            }
        }
        ds = next;
    }
    Some(ds)
}

/// Rational zeros of `p` by the rational root theorem, skipped for factors
/// that carry an irreducibility witness.
fn rational_zeros(p: &PolyQ) -> Option<Vec<Rat>> {
    let mut k = squarefree_decomposition(p).ok()?.squarefree_kernel();
    let mut zeros = Vec::new();
    if k.coeff(0).is_zero() {
        zeros.push(int(0));
        k = Poly::new(k.coeffs()[1..].to_vec());
    }
    match k.degree() {
        None | Some(0) => return Some(zeros),
        Some(1) => {
            zeros.push(-k.coeff(0) / k.coeff(1));
            return Some(zeros);
        }
        _ => {}
    }
    if irreducibility_witness(&k, WITNESS_PRIME_BOUND).is_some() {
        return Some(zeros);
    }
    let (_, ints) = primitive_integer_coeffs(&k);
    let lc = ints[ints.len() - 1].clone();
    let mut sieve = Vec::new();
    for q in small_primes(WITNESS_PRIME_BOUND) {
        if residue(&lc, &BigInt::from(1), q) == Some(0) {
            continue;
        }
        let roots = PolyFp::from_ints(q, &ints).roots();
        if roots.is_empty() {
            return Some(zeros);
        }
        sieve.push((q, roots));
    }
    let passes = |a: &BigInt, b: &BigInt| {
        sieve.iter().all(|(q, roots)| residue(a, b, *q).is_none_or(|r| roots.contains(&r)))
    };
    let budget = FactorBudget { rho_iterations: 20_000, hints: Vec::new() };
    let num = divisors(&BigInt::from(ints[0].magnitude().clone()), &budget, 20_000)?;
    let den = divisors(&BigInt::from(ints[ints.len() - 1].magnitude().clone()), &budget, 20_000)?;
    if num.len() * den.len() > 200_000 {
        return None;
    }
    for a in &num {
        for b in &den {
            for a in [a.clone(), -a.clone()] {
                if !passes(&a, b) {
                    continue;
                }
                let r = Rat::new(a, b.clone());
                if k.eval(&r).is_zero() && !zeros.contains(&r) {
                    zeros.push(r);
                }
            }
        }
    }
    Some(zeros)
}

fn check_on_curve(curve: &ShortW<RatFunc>, points: &[ECPoint<RatFunc>]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if !curve.contains(p) {
            return Err(Error::IdentityFailed(format!("P{} is not on the family curve", i + 1)));
        }
    }
    Ok(())
}

/// Twist of a constant curve `E` by the genus-two cover `W^2 = f(t)`: the
/// two maps `p_i` to `E` give points `p_i(w) - p_i` with `x` in Q(t) and
/// `y` in `W Q(t)`, which become rational points on `y^2 = x^3 + a f^2 x + b f^3`.
#[derive(Clone, Debug)]
pub struct TwistFamily {
    pub j: Rat,
    pub cover: CoverSpec,
    pub f: PolyQ,
    pub base: ShortW<Rat>,
    pub curve: ShortW<RatFunc>,
    /// `(xi, eta)` with `p_i(w) - p_i = (xi, eta W)`.
    pub differences: Vec<(RatFunc, RatFunc)>,
    pub points: Vec<ECPoint<RatFunc>>,
    pub isotrivial: bool,
    pub excluded: ExcludedSet,
}

pub fn twist_family(j: &Rat) -> Result<TwistFamily> {
    let cover = cover_for_invariant(j)?;
    if cover.e != cover.e_prime {
        return Err(Error::InvalidPair("cover targets differ".into()));
    }
    let base = cover.e.clone();
    let f = cover.f_cleared.clone();
    let fr = RatFunc::from_poly(f.clone());
    let lift = |c: &Rat| QuadExt::from_base(RatFunc::constant(c.clone()), &fr);
    let over_ext = ShortW::new(lift(&base.a), lift(&base.b))?;

    let mut differences = Vec::new();
    let mut points = Vec::new();
    for map in [&cover.rho, &cover.rho_prime] {
        let p = ECPoint::affine(
            QuadExt::from_base(map.x.clone(), &fr),
            QuadExt::new(RatFunc::zero(), map.y_factor.clone(), fr.clone()),
        );
        over_ext.check_point(&p)?;
        // w(t, W) = (t, -W)
        let diff = over_ext.sub(&over_ext.neg(&p), &p);
        let (dx, dy) = diff
            .coords()
            .ok_or_else(|| Error::DegenerateModel("p(w) - p is the identity".into()))?;
        let xi = dx
            .rational_part()
            .ok_or_else(|| Error::IdentityFailed("x(p(w) - p) is not in Q(t)".into()))?
            .clone();
        let eta = dy
            .pure_imaginary_part()
            .ok_or_else(|| Error::IdentityFailed("y(p(w) - p) is not in W Q(t)".into()))?
            .clone();
        points.push(ECPoint::affine(&fr * &xi, &fr.square() * &eta));
        differences.push((xi, eta));
    }

    let curve = ShortW::new(fr.square().scale_rat(&base.a), fr.powu(3).scale_rat(&base.b))?;
    check_on_curve(&curve, &points)?;
    let isotrivial = if base.a.is_zero() {
        is_nth_power_up_to_constant(&curve.b, 6)?
    } else if base.b.is_zero() {
        is_nth_power_up_to_constant(&curve.a, 4)?
    } else {
        is_nth_power_up_to_constant(&fr, 2)?
    };
    let mut polys = degeneracy_polys(&curve, &points);
    polys.push(("f".into(), f.clone()));
    let excluded = ExcludedSet::new(polys);
    Ok(TwistFamily { j: j.clone(), cover, f, base, curve, differences, points, isotrivial, excluded })
}

/// Euler's four roots with `x1 x2 x3 (x1 + x2 + x3) = 1`, through the
/// quartic `x^4 + a2 y^2 + a1 y - 1 = 0` onto `y^2 = x^3 + a2 (a1^2 + 4 a2) x`.
#[derive(Clone, Debug)]
pub struct QuarticFamily {
    pub model: QuarticModel<RatFunc>,
    pub curve: ShortW<RatFunc>,
    pub map: QuarticMap<RatFunc>,
    pub points: Vec<ECPoint<RatFunc>>,
    pub origin_image: ECPoint<RatFunc>,
    pub euler_identity: bool,
    pub isotrivial: bool,
    pub excluded: ExcludedSet,
}

/// `x1, x2, x3, x4` of Euler's parametrization at `u = 1`.
pub fn euler_roots() -> [RatFunc; 4] {
    let t = RatFunc::t();
    let q = |c: &[i64]| RatFunc::from_poly(Poly::from_i64s(c));
    let two_t2_m1 = q(&[-1, 0, 2]);
    let two_t2_p1 = q(&[1, 0, 2]);
    let x1 = &(&t * &two_t2_m1) / &two_t2_p1;
    let x2 = &two_t2_m1 / &(&q(&[0, 2]) * &two_t2_p1);
    let x3 = &t.scale_rat(&int(4)) / &two_t2_m1;
    let x4 = -&(&(&x1 + &x2) + &x3);
    [x1, x2, x3, x4]
}

pub fn euler_family_1728() -> Result<QuarticFamily> {
    let roots = euler_roots();
    let [x1, x2, x3, _] = &roots;
    let euler_identity = &(&(x1 * x2) * x3) * &(&(x1 + x2) + x3) == RatFunc::one();
    if !euler_identity {
        return Err(Error::IdentityFailed("x1 x2 x3 (x1 + x2 + x3) != 1".into()));
    }
    let model = QuarticModel::from_roots(roots, RatFunc::one())?;
    let (curve, map) = quartic_to_weierstrass(&model)?;
    let points = model
        .marked_points()
        .iter()
        .map(|(x, y)| map.apply(x, y))
        .collect::<Result<Vec<_>>>()?;
    check_on_curve(&curve, &points)?;
    let (ox, oy) = model.origin();
    let origin_image = map.apply(&ox, &oy)?;
    let isotrivial = is_nth_power_up_to_constant(&curve.a, 4)?;
    let mut polys = degeneracy_polys(&curve, &points);
    for (i, r) in model.roots.iter().enumerate() {
        let p = r.denom();
        if p.degree().is_some_and(|d| d > 0) && !polys.iter().any(|(_, q)| q == p) {
            polys.push((format!("denominator of x{}", i + 1), p.clone()));
        }
    }
    let excluded = ExcludedSet::new(polys);
    Ok(QuarticFamily { model, curve, map, points, origin_image, euler_identity, isotrivial, excluded })
}

/// Where the unplaced coefficient of `x2` went and its value.
#[derive(Clone, Debug, PartialEq)]
pub struct X2Repair {
    pub degree: usize,
    pub coefficient: Rat,
}

/// The printed value of the coefficient in `x2` whose monomial is missing.
pub const X2_PRINTED_COEFFICIENT: i64 = 3549;

/// Six cubic polynomials in `t` summing to zero, the plane cubic
/// `r(x) + y^3 = 0` they define, and its `j = 0` Weierstrass family.
#[derive(Clone, Debug)]
pub struct CubicFamily {
    pub roots: Vec<PolyQ>,
    pub x2_repair: X2Repair,
    pub model: CubicYModel<RatFunc>,
    /// `disc(r)` as a polynomial in `t`.
    pub d: PolyQ,
    /// `u` with `u^3` the leading coefficient of `r`.
    pub cube_root: PolyQ,
    pub reduction: CubicReduction<RatFunc>,
    pub curve: ShortW<RatFunc>,
    pub points: Vec<ECPoint<RatFunc>>,
    /// Image of the third intersection of the tangent at infinity; the
    /// marked points sum to twice it.
    pub tangent_point: ECPoint<RatFunc>,
    pub isotrivial: bool,
    /// A prime at most [`WITNESS_PRIME_BOUND`] modulo which `D` is irreducible.
    pub irreducibility_witness: Option<u64>,
    /// The least such prime below [`WIDE_WITNESS_BOUND`].
    pub least_witness: Option<u64>,
    /// Primes at most [`WITNESS_PRIME_BOUND`] whose factorization patterns
    /// of `D` jointly prove it irreducible.
    pub pattern_certificate: Option<Vec<u64>>,
    pub excluded: ExcludedSet,
}

impl CubicFamily {
    /// `B / (-16 D)`, a 6th power exactly when the curve is `y^2 = x^3 - 16 D`.
    pub fn twist_vs_minus_16d(&self) -> &RatFunc {
        &self.reduction.twist_vs_minus_16d
    }

    pub fn matches_minus_16d(&self) -> bool {
        self.reduction.matches_minus_16d()
    }
}

fn poly(c: &[i64]) -> PolyQ {
    Poly::from_i64s(c)
}

/// `x1, x3, x4, x5, x6` and the part of `x2` without the misplaced term.
fn sextic_printed() -> ([PolyQ; 5], PolyQ) {
    let f1 = &(&poly(&[-19, 35]) * &poly(&[-13, 14])) * &poly(&[1, 1]);
    let x1 = f1.scale(&int(-126));
    let x3 = f1.scale(&int(126));
    let x4 = poly(&[-988, 3525, -3108, 1127]).scale(&int(63));
    let x5 = poly(&[69103, -259980, 265629, -113876]);
    let x6 = poly(&[-78364, 232197, -293412, 104615]);
    let x2_rest = poly(&[1135, -3084, 0, -980]).scale(&int(63));
    ([x1, x3, x4, x5, x6], x2_rest)
}

/// Places the printed coefficient `63 c t^k` of `x2` so that the six roots
/// sum to zero, solving for `c` at each `k` in turn.
pub fn repair_x2() -> Result<(PolyQ, X2Repair)> {
    let (others, rest) = sextic_printed();
    let known = others.iter().fold(rest.clone(), |acc, p| &acc + p);
    for k in 0..=3 {
        let c = -known.coeff(k) / int(63);
        let term = Poly::monomial(int(63) * &c, k);
        if (&known + &term).is_zero() {
            if c != int(X2_PRINTED_COEFFICIENT) {
                return Err(Error::IdentityFailed(format!(
                    "roots sum to zero only with coefficient {c} on t^{k}, not {X2_PRINTED_COEFFICIENT}"
                )));
            }
            return Ok((&rest + &term, X2Repair { degree: k, coefficient: c }));
        }
    }
    Err(Error::IdentityFailed(
        "no placement of the x2 coefficient makes the roots sum to zero".into(),
    ))
}

/// `[x1, ..., x6]` with the repaired `x2`.
pub fn sextic_roots() -> Result<(Vec<PolyQ>, X2Repair)> {
    let ([x1, x3, x4, x5, x6], _) = sextic_printed();
    let (x2, repair) = repair_x2()?;
    Ok((vec![x1, x2, x3, x4, x5, x6], repair))
}

fn irreducibility_witness_from(d: &PolyQ) -> Option<u64> {
    irreducibility_witness(d, WIDE_WITNESS_BOUND)
}

pub fn sextic_family_0() -> Result<CubicFamily> {
    let (roots, x2_repair) = sextic_roots()?;
    let model = CubicYModel::from_roots(roots.iter().cloned().map(RatFunc::from_poly).collect())?;
    let a3 = model.r.coeff(3);
    if !a3.is_polynomial() {
        return Err(Error::IdentityFailed("a3 is not a polynomial in t".into()));
    }
    let cube_root = nth_root_poly(a3.numer(), 3)
        .ok_or_else(|| Error::IdentityFailed("a3 is not a cube in Q[t]".into()))?;
    let d_rf = model.discriminant()?;
    if !d_rf.is_polynomial() || d_rf.is_zero() {
        return Err(Error::DegenerateModel("disc(r) is zero or not a polynomial".into()));
    }
    let d = d_rf.numer().clone();
    let reduction = cubic_y3_to_weierstrass(&model)?;
    let curve = reduction.curve.clone();
    let points = model
        .marked_points()
        .iter()
        .map(|(x, y)| reduction.map.apply(x, y))
        .collect::<Result<Vec<_>>>()?;
    check_on_curve(&curve, &points)?;
    let (_, tangent_point) = reduction.map.tangent_point()?;
    let isotrivial = is_nth_power_up_to_constant(&d_rf, 6)?;
    let irreducibility_witness = irreducibility_witness(&d, WITNESS_PRIME_BOUND);
    let least_witness = irreducibility_witness.or_else(|| irreducibility_witness_from(&d));
    let pattern_certificate = degree_pattern_certificate(&d, WITNESS_PRIME_BOUND);
    let mut all = points.clone();
    all.push(tangent_point.clone());
    let excluded = ExcludedSet::new(degeneracy_polys(&curve, &all));
    Ok(CubicFamily {
        roots,
        x2_repair,
        model,
        d,
        cube_root,
        reduction,
        curve,
        points,
        tangent_point,
        isotrivial,
        irreducibility_witness,
        least_witness,
        pattern_certificate,
        excluded,
    })
}

/// Any of the three constructions.
#[derive(Clone, Debug)]
pub enum Family {
    Twist(Box<TwistFamily>),
    Quartic(Box<QuarticFamily>),
    Cubic(Box<CubicFamily>),
}

impl Family {
    /// `twist:j=<j>`, `j1728` or `j0`.
    pub fn id(&self) -> String {
        match self {
            Family::Twist(f) => format!("twist:j={}", f.j),
            Family::Quartic(_) => "j1728".into(),
            Family::Cubic(_) => "j0".into(),
        }
    }

    pub fn j(&self) -> Rat {
        match self {
            Family::Twist(f) => f.j.clone(),
            Family::Quartic(_) => int(1728),
            Family::Cubic(_) => int(0),
        }
    }

    pub fn curve(&self) -> &ShortW<RatFunc> {
        match self {
            Family::Twist(f) => &f.curve,
            Family::Quartic(f) => &f.curve,
            Family::Cubic(f) => &f.curve,
        }
    }

    pub fn points(&self) -> &[ECPoint<RatFunc>] {
        match self {
            Family::Twist(f) => &f.points,
            Family::Quartic(f) => &f.points,
            Family::Cubic(f) => &f.points,
        }
    }

    pub fn isotrivial(&self) -> bool {
        match self {
            Family::Twist(f) => f.isotrivial,
            Family::Quartic(f) => f.isotrivial,
            Family::Cubic(f) => f.isotrivial,
        }
    }

    pub fn excluded(&self) -> &ExcludedSet {
        match self {
            Family::Twist(f) => &f.excluded,
            Family::Quartic(f) => &f.excluded,
            Family::Cubic(f) => &f.excluded,
        }
    }

    /// Why `t0` must be skipped, if it must.
    pub fn exclusion_reason(&self, t0: &Rat) -> Option<String> {
        if let Some(r) = self.excluded().reason(t0) {
            return Some(r);
        }
        if let Family::Twist(f) = self {
            let v = f.f.eval(t0);
            if rat_nth_root(&v, 2).is_some() {
                return Some(format!("f({t0}) = {v} is a square, so the twist is trivial"));
            }
        }
        None
    }
}

impl From<TwistFamily> for Family {
    fn from(f: TwistFamily) -> Self {
        Family::Twist(Box::new(f))
    }
}

impl From<QuarticFamily> for Family {
    fn from(f: QuarticFamily) -> Self {
        Family::Quartic(Box::new(f))
    }
}

impl From<CubicFamily> for Family {
    fn from(f: CubicFamily) -> Self {
        Family::Cubic(Box::new(f))
    }
}

/// A member of a family over Q, scaled to integral `A, B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializedCurve {
    pub family: String,
    pub t0: Rat,
    /// `None` exactly when `excluded` is set.
    pub curve: Option<ShortW<Rat>>,
    pub points: Vec<ECPoint<Rat>>,
    /// `u` taking the fiber at `t0` to `curve` by `(x, y) -> (u^2 x, u^3 y)`.
    pub scale: Rat,
    /// For the `j = 0` family, the tangent point `T` on `curve`, checked to
    /// satisfy `sum P_i = 2T`.
    pub tangent: Option<ECPoint<Rat>>,
    pub excluded: Option<String>,
}

impl SpecializedCurve {
    fn excluded(family: &Family, t0: &Rat, reason: String) -> Self {
        SpecializedCurve {
            family: family.id(),
            t0: t0.clone(),
            curve: None,
            points: Vec::new(),
            scale: int(1),
            tangent: None,
            excluded: Some(reason),
        }
    }

    /// `P_i - T` when a tangent point is present.
    pub fn translated_points(&self) -> Option<Vec<ECPoint<Rat>>> {
        let (curve, t) = (self.curve.as_ref()?, self.tangent.as_ref()?);
        Some(self.points.iter().map(|p| curve.sub(p, t)).collect())
    }

    /// The same fiber with the points replaced by [`Self::translated_points`].
    pub fn translated(&self) -> Option<SpecializedCurve> {
        let points = self.translated_points()?;
        Some(SpecializedCurve { points, tangent: None, ..self.clone() })
    }
}

pub fn specialize(family: &Family, t0: &Rat) -> Result<SpecializedCurve> {
    specialize_with(family, t0, &FactorBudget::default())
}

pub fn specialize_with(family: &Family, t0: &Rat, budget: &FactorBudget) -> Result<SpecializedCurve> {
    if let Some(reason) = family.exclusion_reason(t0) {
        return Ok(SpecializedCurve::excluded(family, t0, reason));
    }
    let fc = family.curve();
    let (Some(a), Some(b)) = (fc.a.eval(t0), fc.b.eval(t0)) else {
        return Ok(SpecializedCurve::excluded(family, t0, "A or B has a pole".into()));
    };
    let Ok(fiber) = ShortW::new(a, b) else {
        return Ok(SpecializedCurve::excluded(family, t0, "singular fiber".into()));
    };
    let mut pts = Vec::new();
    for (i, p) in family.points().iter().enumerate() {
        match p.try_map(|c| c.eval(t0)) {
            Some(q) => pts.push(q),
            None => {
                return Ok(SpecializedCurve::excluded(
                    family,
                    t0,
                    format!("P{} has a pole", i + 1),
                ))
            }
        }
    }
    let u = Rat::from_integer(crate::heights::minimal::integral_scale(&fiber, budget)?);
    let curve = fiber.scaled(&u);
    let points: Vec<ECPoint<Rat>> = pts.iter().map(|p| ShortW::scale_point(&u, p)).collect();
    for (i, p) in points.iter().enumerate() {
        if !curve.contains(p) {
            return Err(Error::IdentityFailed(format!("P{} off the fiber at t = {t0}", i + 1)));
        }
    }
    let tangent = match family {
        Family::Cubic(f) => {
            let Some(t) = f.tangent_point.try_map(|c| c.eval(t0)) else {
                return Ok(SpecializedCurve::excluded(family, t0, "T has a pole".into()));
            };
            let t = ShortW::scale_point(&u, &t);
            let sum = points.iter().fold(ECPoint::Infinity, |acc, p| curve.add(&acc, p));
            if !curve.contains(&t) || sum != curve.double(&t) {
                return Err(Error::IdentityFailed(format!("sum P_i != 2T at t = {t0}")));
            }
            Some(t)
        }
        _ => None,
    };
    Ok(SpecializedCurve {
        family: family.id(),
        t0: t0.clone(),
        curve: Some(curve),
        points,
        scale: u,
        tangent,
        excluded: None,
    })
}

pub fn certify(spec: &SpecializedCurve, prec_bits: usize) -> Result<RankCertificate> {
    certify_with(spec, prec_bits, &FactorBudget::default())
}

pub fn certify_with(
    spec: &SpecializedCurve,
    prec_bits: usize,
    budget: &FactorBudget,
) -> Result<RankCertificate> {
    let curve = spec.curve.as_ref().ok_or_else(|| {
        Error::Precondition(format!(
            "t = {} is excluded: {}",
            spec.t0,
            spec.excluded.as_deref().unwrap_or("")
        ))
    })?;
    HeightContext::new(curve, budget)?.certificate(&spec.points, prec_bits)
}

/// Indices of the non-excluded curves grouped into Q-isomorphism classes,
/// in order of first appearance.
pub fn distinct_classes(specs: &[SpecializedCurve]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in specs.iter().enumerate() {
        let Some(c) = &s.curve else { continue };
        let home = classes.iter_mut().find(|cl| {
            let rep = specs[cl[0]].curve.as_ref().expect("classes hold curves");
            isomorphic_over_q(rep, c)
        });
        match home {
            Some(cl) => cl.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    #[test]
    fn x2_coefficient_lands_on_t_squared() {
        let (x2, rep) = repair_x2().unwrap();
        assert_eq!(rep, X2Repair { degree: 2, coefficient: int(3549) });
        assert_eq!(x2, poly(&[1135, -3084, 3549, -980]).scale(&int(63)));
    }

    #[test]
    fn sextic_roots_at_one() {
        let (roots, _) = sextic_roots().unwrap();
        let v: Vec<Rat> = roots.iter().map(|r| r.eval(&int(1))).collect();
        let want = [-4032, 39060, 4032, 35028, -39124, -34964].map(int);
        assert_eq!(v, want);
    }

    #[test]
    fn euler_roots_at_one() {
        let r = euler_roots().map(|x| x.eval(&int(1)).unwrap());
        assert_eq!(r, [rat(1, 3), rat(1, 6), int(4), rat(-9, 2)]);
    }

    #[test]
    fn rational_zero_search() {
        let p = &poly(&[-1, 2]) * &poly(&[3, 0, 1]);
        assert_eq!(rational_zeros(&p), Some(vec![rat(1, 2)]));
        let p = &(&poly(&[0, 1]) * &poly(&[6, -5, 1])) * &poly(&[1, 0, 1]);
        let mut z = rational_zeros(&p).unwrap();
        z.sort();
        assert_eq!(z, vec![int(0), int(2), int(3)]);
    }

    #[test]
    fn same_curve_is_one_class() {
        let e = ShortW::new(int(-1), int(0)).unwrap();
        let s = SpecializedCurve {
            family: "x".into(),
            t0: int(1),
            curve: Some(e),
            points: vec![],
            scale: int(1),
            tangent: None,
            excluded: None,
        };
        assert_eq!(distinct_classes(&[s.clone(), s]), vec![vec![0, 1]]);
    }
}
