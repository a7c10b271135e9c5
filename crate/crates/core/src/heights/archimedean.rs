//! The archimedean local height by the doubling series in `t = 1/x`.
//!
//! After an integral translation `x -> x - r` that puts every real root of
//! `4x^3 + b2 x^2 + 2 b4 x + b6` above zero, every real point has `x > 0` and
//! `lambda(P) = log(x)/2 + (1/8) sum 4^-n log z(t_n)` with
//! `t_{n+1} = w(t_n)/z(t_n)`.

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_traits::{FromPrimitive, Zero};

use crate::ellcurve::LongW;
use crate::error::{Error, Result};
use crate::exactalg::rat::{int, Rat};
use crate::heights::real::{bf_ln, bf_to_f64, rat_to_bf, GUARD_BITS};

const RM: RoundingMode = RoundingMode::ToEven;

fn rat_to_f64(r: &Rat) -> f64 {
    bf_to_f64(&rat_to_bf(r, 64))
}

/// Real roots of `c[0] + c[1] x + c[2] x^2 + c[3] x^3` in increasing order.
fn real_roots_cubic(c: [f64; 4]) -> Vec<f64> {
    let f = |x: f64| ((c[3] * x + c[2]) * x + c[1]) * x + c[0];
    // Fujiwara's bound
    let bound = 2.0
        * (0..3)
            .map(|i| (c[i] / c[3]).abs().powf(1.0 / (3 - i) as f64))
            .fold(0.0, f64::max)
        + 1.0;
    // critical points of f split the line into monotone pieces
    let (qa, qb, qc) = (3.0 * c[3], 2.0 * c[2], c[1]);
    let disc = qb * qb - 4.0 * qa * qc;
    let mut cuts = vec![-bound];
    if disc > 0.0 {
        let s = disc.sqrt();
        let mut r = [(-qb - s) / (2.0 * qa), (-qb + s) / (2.0 * qa)];
        r.sort_by(f64::total_cmp);
        cuts.extend(r.iter().copied().filter(|x| x.abs() < bound));
    }
    cuts.push(bound);
    let mut roots = Vec::new();
    for w in cuts.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..2200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if f(mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    roots.dedup();
    roots
}

/// Model data for the archimedean series.
#[derive(Clone, Debug)]
pub struct Archimedean {
    /// The translation `x_shifted = x - shift`.
    pub shift: BigInt,
    b: [Rat; 4],
    /// Upper bound for `|log z|` on the real locus.
    log_z_bound: f64,
}

impl Archimedean {
    pub fn new(e: &LongW) -> Result<Self> {
        let (b2, b4, b6) = (e.b2(), e.b4(), e.b6());
        let f = [rat_to_f64(&b6), 2.0 * rat_to_f64(&b4), rat_to_f64(&b2), 4.0];
        let roots = real_roots_cubic(f);
        let e_min = roots.first().copied().ok_or_else(|| {
            Error::IdentityFailed("cubic without a real root".into())
        })?;
        let target = e_min - 1.0 - 1e-6 * e_min.abs();
        let shift = BigInt::from_f64(target.floor())
            .ok_or_else(|| Error::IdentityFailed("non-finite root".into()))?;
        let b = shifted_b(e, &Rat::from_integer(shift.clone()));
        let fs = [
            rat_to_f64(&b[2]),
            2.0 * rat_to_f64(&b[1]),
            rat_to_f64(&b[0]),
            4.0,
        ];
        let roots = real_roots_cubic(fs);
        if roots.iter().any(|&r| r <= 0.0) {
            return Err(Error::IdentityFailed(format!(
                "translated 2-division roots not positive: {roots:?}"
            )));
        }
        let log_z_bound = log_z_bound(&b, &roots);
        Ok(Archimedean { shift, b, log_z_bound })
    }

    /// Terms needed for a tail below `2^-prec_bits`.
    pub fn terms(&self, prec_bits: usize) -> usize {
        let extra = (self.log_z_bound / 6.0 + 1.0).log2();
        ((prec_bits as f64 + extra) / 2.0).ceil() as usize + 1
    }

    /// `M 4^-N / 6` for `N` terms.
    pub fn tail_bound(&self, terms: usize) -> f64 {
        self.log_z_bound * 4f64.powi(-(terms as i32)) / 6.0
    }

    /// `lambda(P)` at `x(P) = x` on the unshifted model, with the truncation
    /// error bound.
    pub fn lambda(&self, x: &Rat, prec_bits: usize) -> Result<(BigFloat, f64)> {
        let p = prec_bits + GUARD_BITS;
        let xs = x - Rat::from_integer(self.shift.clone());
        if xs <= Rat::zero() {
            return Err(Error::IdentityFailed(format!("x - r = {xs} is not positive")));
        }
        let bb: Vec<BigFloat> = self.b.iter().map(|c| rat_to_bf(c, p)).collect();
        let (b2, b4, b6, b8) = (&bb[0], &bb[1], &bb[2], &bb[3]);
        let one = BigFloat::from_word(1, p);
        let two = BigFloat::from_word(2, p);
        let four = BigFloat::from_word(4, p);
        let n_terms = self.terms(prec_bits);
        let mut t = rat_to_bf(&(Rat::from_integer(1.into()) / &xs), p);
        let mut sum = BigFloat::from_word(0, p);
        let mut weight = one.clone();
        let quarter = one.div(&four, p, RM);
        for _ in 0..n_terms {
            if t.is_zero() {
                break;
            }
            let t2 = t.mul(&t, p, RM);
            let t3 = t2.mul(&t, p, RM);
            let t4 = t2.mul(&t2, p, RM);
            let z = one
                .sub(&b4.mul(&t2, p, RM), p, RM)
                .sub(&two.mul(b6, p, RM).mul(&t3, p, RM), p, RM)
                .sub(&b8.mul(&t4, p, RM), p, RM);
            if !z.is_positive() {
                return Err(Error::IdentityFailed("z(t) <= 0 on the real locus".into()));
            }
            let w = four
                .mul(&t, p, RM)
                .add(&b2.mul(&t2, p, RM), p, RM)
                .add(&two.mul(b4, p, RM).mul(&t3, p, RM), p, RM)
                .add(&b6.mul(&t4, p, RM), p, RM);
            sum = sum.add(&weight.mul(&bf_ln(&z, p), p, RM), p, RM);
            weight = weight.mul(&quarter, p, RM);
            t = w.div(&z, p, RM);
        }
        let half_log_x = bf_ln(&rat_to_bf(&xs, p), p).div(&two, p, RM);
        let lam = half_log_x.add(&sum.div(&BigFloat::from_word(8, p), p, RM), p, RM);
        Ok((lam, self.tail_bound(n_terms)))
    }
}

/// `[b2, b4, b6, b8]` of the model translated by `x -> x + r`.
fn shifted_b(e: &LongW, r: &Rat) -> [Rat; 4] {
    let (b2, b4, b6, b8) = (e.b2(), e.b4(), e.b6(), e.b8());
    let r2 = r * r;
    let r3 = &r2 * r;
    [
        &b2 + int(12) * r,
        &b4 + r * &b2 + int(6) * &r2,
        &b6 + int(2) * r * &b4 + &r2 * &b2 + int(4) * &r3,
        &b8 + int(3) * r * &b6 + int(3) * &r2 * &b4 + &r3 * &b2 + int(3) * &r2 * &r2,
    ]
}

/// `max |log z(t)|` over `t = 1/x` with `(x, y)` real, from the values at the
/// interval ends and at the zeros of `z'(t) = -2t (b4 + 3 b6 t + 2 b8 t^2)`.
fn log_z_bound(b: &[Rat; 4], roots: &[f64]) -> f64 {
    let [_, b4, b6, b8] = [0, 1, 2, 3].map(|i| rat_to_f64(&b[i]));
    let z = |t: f64| 1.0 - b4 * t * t - 2.0 * b6 * t * t * t - b8 * t * t * t * t;
    let mut intervals = vec![(0.0, 1.0 / roots[roots.len() - 1])];
    if roots.len() == 3 {
        intervals.push((1.0 / roots[1], 1.0 / roots[0]));
    }
    let mut crit = Vec::new();
    if b8 != 0.0 {
        let d = 9.0 * b6 * b6 - 8.0 * b8 * b4;
        if d >= 0.0 {
            let s = d.sqrt();
            crit.push((-3.0 * b6 - s) / (4.0 * b8));
            crit.push((-3.0 * b6 + s) / (4.0 * b8));
        }
    } else if b6 != 0.0 {
        crit.push(-b4 / (3.0 * b6));
    }
    let mut m: f64 = 0.0;
    for (lo, hi) in intervals {
        let mut pts = vec![lo, hi];
        pts.extend(crit.iter().copied().filter(|t| *t > lo && *t < hi));
        for t in pts {
            let v = z(t);
            let l = if v > 0.0 { v.ln().abs() } else { 700.0 };
            m = m.max(l);
        }
    }
    m * 1.01 + 1e-6
}
