//! Canonical heights, the height pairing, Gram matrices and independence
//! certificates for curves `y^2 = x^3 + Ax + B` over Q.

use astro_float::{BigFloat, RoundingMode};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ellcurve::{ECPoint, ShortW};
use crate::error::{Error, Result};
use crate::exactalg::rat::{int, int_valuation, rat, Rat};
use crate::exactalg::{factor_integer, FactorBudget, FactoredInt};
use crate::heights::archimedean::Archimedean;
use crate::heights::local::singular_correction;
use crate::heights::minimal::{minimal_model, MinimalModelData};
use crate::heights::real::{bf_ln, bf_to_f64, bigint_to_bf, ApproxReal, GUARD_BITS};

const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits.
pub const DEFAULT_PREC_BITS: usize = 128;

/// `Half` has `h(P) ~ log H(x(P)) / 2`; `Doubled` is twice that.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    #[default]
    Half,
    Doubled,
}

impl Normalization {
    pub fn factor(self) -> i64 {
        match self {
            Normalization::Half => 1,
            Normalization::Doubled => 2,
        }
    }
}

/// Everything about a curve that heights of its points share.
#[derive(Clone, Debug)]
pub struct HeightContext {
    curve: ShortW<Rat>,
    minimal: MinimalModelData,
    arch: Archimedean,
    normalization: Normalization,
    budget: FactorBudget,
}

impl HeightContext {
    pub fn new(curve: &ShortW<Rat>, budget: &FactorBudget) -> Result<Self> {
        let minimal = minimal_model(curve, budget)?;
        let arch = Archimedean::new(&minimal.model)?;
        Ok(HeightContext {
            curve: curve.clone(),
            minimal,
            arch,
            normalization: Normalization::Half,
            budget: budget.clone(),
        })
    }

    pub fn with_normalization(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }

    pub fn curve(&self) -> &ShortW<Rat> {
        &self.curve
    }

    pub fn minimal(&self) -> &MinimalModelData {
        &self.minimal
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// `h(P)`; the point at infinity has height exactly zero.
    pub fn height(&self, pt: &ECPoint<Rat>, prec_bits: usize) -> Result<ApproxReal> {
        if !self.curve.contains(pt) {
            return Err(Error::NotOnCurve(format!("{pt:?}")));
        }
        let q = self.minimal.transform.forward(pt);
        let Some((x, y)) = q.coords() else {
            return Ok(ApproxReal::zero(prec_bits));
        };
        let wp = prec_bits + GUARD_BITS;
        let (lam_inf, tail) = self.arch.lambda(x, prec_bits)?;
        let two = BigFloat::from_word(2, wp);
        let den = bigint_to_bf(x.denom(), wp);
        let mut total = lam_inf.add(&bf_ln(&den, wp).div(&two, wp, RM), wp, RM);
        let mut primes = self.minimal.disc_factored.factors.clone();
        primes.extend(self.cofactor_primes(x, y)?);
        for (p, n) in &primes {
            let c = singular_correction(&self.minimal.model, x, y, p, *n);
            if c.is_zero() {
                continue;
            }
            let lp = bf_ln(&bigint_to_bf(&BigInt::from(p.clone()), wp), wp);
            let term = lp
                .mul(&bigint_to_bf(c.numer(), wp), wp, RM)
                .div(&bigint_to_bf(c.denom(), wp), wp, RM);
            total = total.add(&term, wp, RM);
        }
        let f = self.normalization.factor();
        if f != 1 {
            total = total.mul(&BigFloat::from_i64(f, wp), wp, RM);
        }
        let v = bf_to_f64(&total).abs();
        let rad = f as f64 * tail + 2f64.powi(-(prec_bits as i32)) * (1.0 + v);
        Ok(ApproxReal::new(total, rad, prec_bits))
    }

    /// Primes of the unfactored discriminant cofactor at which `(x, y)` is
    /// singular mod `p`, with their discriminant valuations. Usually the gcd
    /// of the cofactor with the partial derivatives is 1 and nothing needs
    /// factoring.
    fn cofactor_primes(&self, x: &Rat, y: &Rat) -> Result<Vec<(BigUint, u32)>> {
        let Some(rest) = &self.minimal.unfactored else {
            return Ok(Vec::new());
        };
        let e = &self.minimal.model;
        let fx = int(3) * x * x + int(2) * &e.a2 * x + &e.a4 - &e.a1 * y;
        let fy = int(2) * y + &e.a1 * x + &e.a3;
        let g = rest.gcd(fx.numer().magnitude()).gcd(fy.numer().magnitude());
        if g.is_one() {
            return Ok(Vec::new());
        }
        let e4 = e.c4().to_integer();
        let e6 = e.c6().to_integer();
        if !self.minimal.minimal_at_cofactor && !e4.gcd(&e6).magnitude().gcd(&g).is_one() {
            return Err(Error::FactorBudget {
                partial: FactoredInt { sign: 1, factors: Vec::new() },
                cofactor: g,
            });
        }
        let f = factor_integer(&BigInt::from(g), &self.budget)?;
        let disc = e.discriminant().to_integer();
        Ok(f
            .primes()
            .map(|p| (p.clone(), int_valuation(&disc, &BigInt::from(p.clone())) as u32))
            .collect())
    }

    /// `<P, Q> = (h(P + Q) - h(P) - h(Q)) / 2`.
    pub fn pairing(&self, p: &ECPoint<Rat>, q: &ECPoint<Rat>, prec_bits: usize) -> Result<ApproxReal> {
        let hp = self.height(p, prec_bits)?;
        if p == q {
            return Ok(hp);
        }
        let hq = self.height(q, prec_bits)?;
        let hpq = self.height(&self.curve.add(p, q), prec_bits)?;
        Ok(pairing_from_heights(&hpq, &hp, &hq))
    }

    pub fn gram(&self, points: &[ECPoint<Rat>], prec_bits: usize) -> Result<GramMatrix> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("no points".into()));
        }
        let h: Vec<ApproxReal> = points
            .iter()
            .map(|p| self.height(p, prec_bits))
            .collect::<Result<_>>()?;
        let n = points.len();
        let mut entries = vec![vec![ApproxReal::zero(prec_bits); n]; n];
        for i in 0..n {
            entries[i][i] = h[i].clone();
            for j in i + 1..n {
                let s = self.height(&self.curve.add(&points[i], &points[j]), prec_bits)?;
                let v = pairing_from_heights(&s, &h[i], &h[j]);
                entries[i][j] = v.clone();
                entries[j][i] = v;
            }
        }
        let determinant = determinant(&entries);
        Ok(GramMatrix { entries, determinant, prec_bits })
    }

    pub fn certificate(&self, points: &[ECPoint<Rat>], prec_bits: usize) -> Result<RankCertificate> {
        let gram = self.gram(points, prec_bits)?;
        let (verdict, relation) = if !gram.determinant.contains_zero() {
            (Verdict::Independent, None)
        } else {
            match find_relation(&self.curve, points, &gram, RELATION_BOUND) {
                Some(r) => (Verdict::Dependent, Some(r)),
                None => (Verdict::Inconclusive, None),
            }
        };
        Ok(RankCertificate {
            curve: self.curve.clone(),
            points: points.to_vec(),
            gram,
            verdict,
            relation,
            prec_bits,
        })
    }
}

fn pairing_from_heights(hpq: &ApproxReal, hp: &ApproxReal, hq: &ApproxReal) -> ApproxReal {
    hpq.sub(hp).sub(hq).scale_rat(&rat(1, 2))
}

/// Laplace expansion along the first row.
pub fn determinant(m: &[Vec<ApproxReal>]) -> ApproxReal {
    let n = m.len();
    let prec = m[0][0].prec_bits;
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ApproxReal::zero(prec);
    for j in 0..n {
        let minor: Vec<Vec<ApproxReal>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&determinant(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Symmetric matrix of pairings and its determinant.
#[derive(Clone, Debug, Serialize)]
pub struct GramMatrix {
    pub entries: Vec<Vec<ApproxReal>>,
    pub determinant: ApproxReal,
    pub prec_bits: usize,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Independent,
    Dependent,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub curve: ShortW<Rat>,
    pub points: Vec<ECPoint<Rat>>,
    pub gram: GramMatrix,
    pub verdict: Verdict,
    /// Integers `c` with `sum c_i P_i = O`, when one was found.
    pub relation: Option<Vec<i64>>,
    pub prec_bits: usize,
}

impl RankCertificate {
    /// Lower bound on the rank of `E(Q)` that this certificate proves.
    pub fn rank_lower_bound(&self) -> usize {
        match self.verdict {
            Verdict::Independent => self.points.len(),
            _ => 0,
        }
    }
}

/// Coefficient bound for the relation search.
pub const RELATION_BOUND: i64 = 8;

/// Torsion on a curve over Q has order at most 12.
const MAX_TORSION: i64 = 12;

/// Looks for `c != 0` with `|c_i| <= bound` and `sum c_i P_i` torsion, screening
/// candidates by the quadratic form and confirming with the group law.
pub fn find_relation(
    e: &ShortW<Rat>,
    points: &[ECPoint<Rat>],
    gram: &GramMatrix,
    bound: i64,
) -> Option<Vec<i64>> {
    let n = points.len();
    let g: Vec<Vec<f64>> = gram.entries.iter().map(|r| r.iter().map(|v| v.to_f64()).collect()).collect();
    let rad: Vec<Vec<f64>> = gram.entries.iter().map(|r| r.iter().map(|v| v.rad).collect()).collect();
    let scale = g.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    for k in 1..=bound {
        let mut c = vec![-k; n];
        loop {
            let norm = c.iter().map(|v| v.abs()).max().unwrap_or(0);
            let first = c.iter().find(|v| **v != 0).copied().unwrap_or(0);
            if norm == k && first > 0 {
                let mut q = 0.0;
                let mut slack = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        let w = (c[i] * c[j]) as f64;
                        q += w * g[i][j];
                        slack += w.abs() * (rad[i][j] + 1e-12 * scale);
                    }
                }
                if q.abs() <= slack + 1e-30 {
                    let s = e.linear_combination(&c, points);
                    if let Some(m) = torsion_order(e, &s) {
                        return Some(c.iter().map(|v| v * m).collect());
                    }
                }
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if c[i] < k {
                    c[i] += 1;
                    break;
                }
                c[i] = -k;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    None
}

/// Least `m <= 12` with `m P = O`.
pub fn torsion_order(e: &ShortW<Rat>, p: &ECPoint<Rat>) -> Option<i64> {
    let mut q = p.clone();
    for m in 1..=MAX_TORSION {
        if q.is_infinity() {
            return Some(m);
        }
        q = e.add(&q, p);
    }
    None
}

pub fn canonical_height(e: &ShortW<Rat>, p: &ECPoint<Rat>, prec_bits: usize) -> Result<ApproxReal> {
    HeightContext::new(e, &FactorBudget::default())?.height(p, prec_bits)
}

pub fn neron_tate_pairing(
    e: &ShortW<Rat>,
    p: &ECPoint<Rat>,
    q: &ECPoint<Rat>,
    prec_bits: usize,
) -> Result<ApproxReal> {
    HeightContext::new(e, &FactorBudget::default())?.pairing(p, q, prec_bits)
}

pub fn gram_determinant(e: &ShortW<Rat>, points: &[ECPoint<Rat>], prec_bits: usize) -> Result<GramMatrix> {
    HeightContext::new(e, &FactorBudget::default())?.gram(points, prec_bits)
}

pub fn independence_certificate(
    e: &ShortW<Rat>,
    points: &[ECPoint<Rat>],
    prec_bits: usize,
) -> Result<RankCertificate> {
    HeightContext::new(e, &FactorBudget::default())?.certificate(points, prec_bits)
}

/// `(1/2) log max(|num x|, |den x|)`, the naive half x-height.
pub fn naive_half_height(x: &Rat) -> f64 {
    let m = if x.numer().magnitude() > x.denom().magnitude() {
        x.numer().clone()
    } else {
        x.denom().clone()
    };
    if m.is_one() {
        return 0.0;
    }
    let bits = m.bits();
    let shift = bits.saturating_sub(60);
    let top = (m >> shift).to_f64().unwrap_or(f64::NAN).abs();
    0.5 * (top.ln() + shift as f64 * std::f64::consts::LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellcurve::LongW;
    use crate::exactalg::rat::int;

    fn e37() -> (ShortW<Rat>, ECPoint<Rat>) {
        let l = LongW::from_ints([0, 0, 1, -1, 0]).unwrap();
        let (s, t) = l.to_short();
        (s, t.forward(&ECPoint::affine(int(0), int(0))))
    }

    #[test]
    fn height_of_37a_generator() {
        let (e, p) = e37();
        let h = canonical_height(&e, &p, 128).unwrap();
        // half the regulator 0.0511114082399688 of 37a1
        assert!((h.to_f64() - 0.0255557041199844).abs() < 1e-12, "{h:?}");
    }

    #[test]
    fn torsion_has_height_zero() {
        let e = ShortW::new(int(0), int(1)).unwrap();
        let h = canonical_height(&e, &ECPoint::affine(int(0), int(1)), 128).unwrap();
        assert!(h.to_f64().abs() < 1e-30);
        let h = canonical_height(&e, &ECPoint::affine(int(2), int(3)), 128).unwrap();
        assert!(h.to_f64().abs() < 1e-30);
    }

    #[test]
    fn unfactored_cofactor_gives_same_height() {
        let starved = FactorBudget { rho_iterations: 0, hints: Vec::new() };
        let mut seen = 0;
        for k in 1_000_000_007i64..1_000_000_107 {
            // y^2 = x^3 - x + k^2 through (0, k)
            let e = ShortW::new(int(-1), int(k) * int(k)).unwrap();
            let p = ECPoint::affine(int(0), int(k));
            let Ok(ctx) = HeightContext::new(&e, &starved) else { continue };
            if ctx.minimal().unfactored.is_none() {
                continue;
            }
            seen += 1;
            let full = HeightContext::new(&e, &FactorBudget::default()).unwrap();
            let a = ctx.height(&p, 128).unwrap().to_f64();
            let b = full.height(&p, 128).unwrap().to_f64();
            assert!((a - b).abs() < 1e-30, "k = {k}: {a} vs {b}");
            if seen == 1 {
                break;
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn dependent_pair() {
        let (e, p) = e37();
        let p2 = e.double(&p);
        let cert = independence_certificate(&e, &[p, p2], 128).unwrap();
        assert_eq!(cert.verdict, Verdict::Dependent);
        assert_eq!(cert.relation, Some(vec![2, -1]));
    }

    #[test]
    fn relation_search_sees_torsion() {
        let e = ShortW::new(int(0), int(1)).unwrap();
        let t = ECPoint::affine(int(0), int(1));
        let gram = gram_determinant(&e, std::slice::from_ref(&t), 64).unwrap();
        assert_eq!(find_relation(&e, &[t], &gram, 2), Some(vec![3]));
    }
}
