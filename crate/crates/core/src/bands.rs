//! Block data of a `K`-periodic recurrence and its band set.
//!
//! For `p_{m+1} = (t - alpha_{m+1}) p_m - p_{m-1}` with period `K`,
//! `p_{nK+l} = a_l p_{nK-1} - b_l p_{nK-2}`, and one period advances the
//! block solution by the discriminant `x = a_{K-1} - b_{K-2}`. The spectrum
//! of the periodic Jacobi operator is `{t : |x(t)| <= 2}`.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{invalid, Error, Result};
use crate::exactpoly::{
    chebyshev_u_half, isolate_distinct, rational_from_f64, rational_to_f64, scaled_discriminant,
    ExactCoeff, Poly, Scalar,
};
use crate::recurrence::{lambda_map, Angle, CoeffSeq, LambdaDirection, Variant};

/// The `a_l`, `b_l` tables for `l = -1 .. K-1` and the discriminant.
#[derive(Debug, Clone, PartialEq)]
pub struct ABTable<T: Scalar> {
    alpha: Vec<T>,
    a: Vec<Poly<T>>,
    b: Vec<Poly<T>>,
    disc: Poly<T>,
}

/// Build the tables from one period `alpha_0 .. alpha_{K-1}`.
pub fn ab_polys<T: Scalar>(alpha: &[T]) -> Result<ABTable<T>> {
    let k = alpha.len();
    if k == 0 {
        return Err(invalid("period K must be at least 1"));
    }
    let mut a = vec![Poly::one(), Poly::linear(-alpha[0].clone())];
    let mut b = vec![Poly::zero(), Poly::one()];
    for l in 1..k {
        let step = Poly::linear(-alpha[l].clone());
        a.push(&(&step * &a[l]) - &a[l - 1]);
        b.push(&(&step * &b[l]) - &b[l - 1]);
    }
    // index shift: slot i holds l = i - 1
    let disc = &a[k] - &b[k - 1];
    Ok(ABTable { alpha: alpha.to_vec(), a, b, disc })
}

impl<T: Scalar> ABTable<T> {
    pub fn period(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    fn check(&self, l: i64) -> Result<usize> {
        let k = self.period() as i64;
        if l < -1 || l > k - 1 {
            return Err(Error::IndexOutOfRange { index: l, lo: -1, hi: k - 1 });
        }
        Ok((l + 1) as usize)
    }

    /// `a_l` for `-1 <= l <= K-1`.
    pub fn a(&self, l: i64) -> Result<&Poly<T>> {
        Ok(&self.a[self.check(l)?])
    }

    /// `b_l` for `-1 <= l <= K-1`.
    pub fn b(&self, l: i64) -> Result<&Poly<T>> {
        Ok(&self.b[self.check(l)?])
    }

    /// `x(t) = a_{K-1}(t) - b_{K-2}(t)`.
    pub fn disc(&self) -> &Poly<T> {
        &self.disc
    }

    /// `a_l b_{l+1} - a_{l+1} b_l` for `-1 <= l <= K-2`.
    pub fn wronskian(&self, l: i64) -> Result<Poly<T>> {
        let k = self.period() as i64;
        if l < -1 || l > k - 2 {
            return Err(Error::IndexOutOfRange { index: l, lo: -1, hi: k - 2 });
        }
        let i = (l + 1) as usize;
        Ok(&(&self.a[i] * &self.b[i + 1]) - &(&self.a[i + 1] * &self.b[i]))
    }

    /// `q_0 .. q_n` of `q_{j+1} = x q_j - q_{j-1}`, `q_{-1} = 0`,
    /// `q_0 = p_{K-1} = b_{K-1}`.
    pub fn q_sequence(&self, n: usize) -> Vec<Poly<T>> {
        let mut out = Vec::with_capacity(n + 1);
        let mut prev = Poly::zero();
        let mut cur = self.b[self.period()].clone();
        out.push(cur.clone());
        for _ in 0..n {
            let next = &(&self.disc * &cur) - &prev;
            prev = std::mem::replace(&mut cur, next);
            out.push(cur.clone());
        }
        out
    }
}

impl ABTable<f64> {
    /// Exact table from float diagonal values (each converted exactly).
    pub fn exact_from_f64(alpha: &[f64]) -> Result<ABTable<BigRational>> {
        let exact = alpha.iter().map(|&x| rational_from_f64(x)).collect::<Result<Vec<_>>>()?;
        ab_polys(&exact)
    }
}

/// `p_{nK+l}` assembled from the block formula
/// `(det[[a_l, a_{K-1}], [b_l, b_{K-1}]] q_{n-1} + b_l q_n) / b_{K-1}`.
///
/// The result is the solution of `p_{m+1} = (t - alpha_{m+1}) p_m - p_{m-1}`,
/// `p_{-1} = 0`, `p_0 = 1`.
pub fn block_representation(tab: &ABTable<BigRational>, n: usize, l: i64) -> Result<Poly<BigRational>> {
    let k = tab.period() as i64;
    if l < 0 || l > k - 1 {
        return Err(Error::IndexOutOfRange { index: l, lo: 0, hi: k - 1 });
    }
    let qs = tab.q_sequence(n);
    let q_n = &qs[n];
    let q_prev = if n == 0 { Poly::zero() } else { qs[n - 1].clone() };
    let (al, bl) = (tab.a(l)?, tab.b(l)?);
    let (ak, bk) = (tab.a(k - 1)?, tab.b(k - 1)?);
    let det = &(al * bk) - &(ak * bl);
    let num = &(&det * &q_prev) + &(bl * q_n);
    num.div_exact(bk)
}

/// Whether `q_n == q_0 * U_n(x / 2)` holds exactly.
pub fn chebyshev_factorization_check(tab: &ABTable<BigRational>, n: usize) -> bool {
    let qs = tab.q_sequence(n);
    let u = chebyshev_u_half::<BigRational>(n).compose(tab.disc());
    qs[n] == &qs[0] * &u
}

/// Which variable the intervals of a [`BandSet`] live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    T,
    Lambda,
}

/// Sorted, pairwise disjoint closed intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandSet {
    intervals: Vec<(f64, f64)>,
    variable: Variable,
    kappa: Option<f64>,
}

impl BandSet {
    pub fn new(intervals: Vec<(f64, f64)>, variable: Variable, kappa: Option<f64>) -> Result<BandSet> {
        for &(lo, hi) in &intervals {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(invalid(format!("bad interval [{lo}, {hi}]")));
            }
        }
        if intervals.windows(2).any(|w| !(w[0].1 < w[1].0)) {
            return Err(invalid("intervals must be sorted and disjoint"));
        }
        Ok(BandSet { intervals, variable, kappa })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn variable(&self) -> Variable {
        self.variable
    }

    pub fn kappa(&self) -> Option<f64> {
        self.kappa
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64, fatten: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| x >= lo - fatten && x <= hi + fatten)
    }

    /// Image under `lambda = -t / kappa`, re-sorted.
    pub fn to_lambda(&self, kappa: f64) -> Result<BandSet> {
        if self.variable != Variable::T {
            return Err(invalid("band set is already in the lambda variable"));
        }
        let mut out = Vec::with_capacity(self.intervals.len());
        for &(lo, hi) in &self.intervals {
            let a = lambda_map(lo, kappa, LambdaDirection::TToLambda)?;
            let b = lambda_map(hi, kappa, LambdaDirection::TToLambda)?;
            out.push(if a <= b { (a, b) } else { (b, a) });
        }
        out.sort_by(|x, y| x.0.total_cmp(&y.0));
        BandSet::new(out, Variable::Lambda, Some(kappa))
    }
}

/// Tolerances for band extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandOptions {
    /// Width of the final root brackets.
    pub tol: f64,
    /// Bands separated by less than this are merged.
    pub merge_tol: f64,
}

impl Default for BandOptions {
    fn default() -> Self {
        BandOptions { tol: 1e-12, merge_tol: 1e-10 }
    }
}

/// `{t : |x(t)| <= 2}` for the table's discriminant.
pub fn band_set<T: ExactCoeff>(tab: &ABTable<T>, opts: BandOptions) -> Result<BandSet> {
    let alpha = tab.alpha().iter().map(|a| a.to_rational()).collect::<Result<Vec<_>>>()?;
    band_set_exact(&alpha, opts)
}

/// Band set straight from one period of the diagonal, without the tables.
pub(crate) fn band_set_exact(alpha: &[BigRational], opts: BandOptions) -> Result<BandSet> {
    if !(opts.tol > 0.0) || !(opts.merge_tol >= 0.0) {
        return Err(invalid("tol must be positive and merge_tol nonnegative"));
    }
    if alpha.is_empty() {
        return Err(invalid("period must be at least 1"));
    }
    let af: Vec<f64> = alpha.iter().map(rational_to_f64).collect();
    let (upper, lower) = scaled_discriminant(alpha);
    // disc - 2 has the sign of upper; disc + 2 the sign of lower
    let inside = |t: f64| {
        upper.sign_at_f64(t) != Ordering::Greater && lower.sign_at_f64(t) != Ordering::Less
    };

    let g_lo = af.iter().cloned().fold(f64::INFINITY, f64::min) - 2.0;
    let g_hi = af.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 2.0;
    let pad = 1e-9 * (1.0 + g_lo.abs().max(g_hi.abs()));
    let (lo, hi) = (g_lo - pad, g_hi + pad);

    let mut pts: Vec<f64> = isolate_distinct(&upper, lo, hi, opts.tol)?
        .into_iter()
        .chain(isolate_distinct(&lower, lo, hi, opts.tol)?)
        .map(|r| r.value.clamp(g_lo, g_hi))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let mut raw: Vec<(f64, f64)> = Vec::new();
    for (i, &x) in pts.iter().enumerate() {
        // isolated touching points stay as zero-width bands
        if inside(x) && (i == 0 || !inside(mid(pts[i - 1], x))) && (i + 1 == pts.len() || !inside(mid(x, pts[i + 1]))) {
            raw.push((x, x));
        }
        if let Some(&y) = pts.get(i + 1) {
            if inside(mid(x, y)) {
                raw.push((x, y));
            }
        }
    }

    let mut merged: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for (a, b) in raw {
        match merged.last_mut() {
            Some(last) if a - last.1 <= opts.merge_tol => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    BandSet::new(merged, Variable::T, None)
}

fn mid(a: f64, b: f64) -> f64 {
    a + (b - a) / 2.0
}

/// Bands of an arbitrary periodic [`CoeffSeq`] (diagonal `alpha_m = -c_m`),
/// in the lambda variable.
pub fn coeff_bands(seq: &CoeffSeq, kappa: f64, opts: BandOptions) -> Result<BandSet> {
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(invalid(format!("kappa must be finite and nonzero, got {kappa}")));
    }
    band_set_exact(&seq.exact_alphas()?, opts)?.to_lambda(kappa)
}

/// Lambda bands of the almost Mathieu operator with coupling `kappa` at
/// frequency `2 pi p / q`: diagonal `alpha_m = -(2/kappa) cos(2 pi p (m + s) / q)`
/// with `s` the variant shift.
pub fn mathieu_bands(kappa: f64, p: i64, q: u64, variant: Variant, opts: BandOptions) -> Result<BandSet> {
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(invalid(format!("kappa must be finite and nonzero, got {kappa}")));
    }
    if q == 0 || p.unsigned_abs().gcd(&q) != 1 {
        return Err(invalid(format!("frequency {p}/{q} is not in lowest terms")));
    }
    let seq = CoeffSeq::cosine(2.0 / kappa, Angle::rational(p, q)?, variant.shift())?;
    coeff_bands(&seq, kappa, opts)
}

/// True iff `p` is the constant polynomial 1.
pub fn is_one<T: Scalar>(p: &Poly<T>) -> bool {
    p.degree() == Some(0) && p.coeff(0).is_one()
}
