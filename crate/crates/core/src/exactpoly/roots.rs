//! Certified real-root isolation.
//!
//! Coefficients are lifted exactly to integers (every double is a dyadic
//! rational), Sturm sequences are built with a primitive pseudo-remainder
//! sequence and evaluated exactly at dyadic points. Bisection endpoints are
//! doubles, so only the final bracket width is limited by float resolution.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::float::FloatCore;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rational_from_f64, Poly, Scalar};
use crate::error::{invalid, Error, Result};

/// A real root bracketed in `[lo, hi]` with `hi - lo <= tol` (or a single
/// point when the root was hit exactly).
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub multiplicity: usize,
}

impl RealRoot {
    /// Odd multiplicity means the polynomial changes sign across the root.
    pub fn odd_multiplicity(&self) -> bool {
        self.multiplicity % 2 == 1
    }

    pub fn is_multiple(&self) -> bool {
        self.multiplicity > 1
    }
}

/// Coefficients with an exact rational image.
pub trait ExactCoeff: Scalar {
    fn to_rational(&self) -> Result<BigRational>;
}

impl ExactCoeff for f64 {
    fn to_rational(&self) -> Result<BigRational> {
        rational_from_f64(*self)
    }
}

impl ExactCoeff for BigRational {
    fn to_rational(&self) -> Result<BigRational> {
        Ok(self.clone())
    }
}

pub(crate) fn to_exact_poly<T: ExactCoeff>(p: &Poly<T>) -> Result<Poly<BigRational>> {
    Ok(Poly::new(
        p.coeffs()
            .iter()
            .map(|c| c.to_rational())
            .collect::<Result<_>>()?,
    ))
}

/// `num / 2^exp`.
#[derive(Debug, Clone)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn from_f64(x: f64) -> Dyadic {
        let (mant, e, sign) = FloatCore::integer_decode(x);
        let mut num = BigInt::from(mant);
        if sign < 0 {
            num = -num;
        }
        if e >= 0 {
            Dyadic { num: num << e as usize, exp: 0 }
        } else {
            Dyadic { num, exp: (-e) as u32 }
        }
    }
}

/// Integer-coefficient polynomial, ascending powers, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct IntPoly {
    c: Vec<BigInt>,
    /// `c * 2^-shift` rounded to doubles, for the filtered sign test.
    approx: Vec<f64>,
    shift: u64,
}

impl IntPoly {
    fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let bits = c.iter().map(|x| x.bits()).max().unwrap_or(0);
        let shift = bits.saturating_sub(900);
        let approx = c
            .iter()
            .map(|x| (x >> shift as usize).to_f64().unwrap_or(f64::NAN))
            .collect();
        IntPoly { c, approx, shift }
    }

    /// Positive multiple of `p` with coprime integer coefficients.
    pub(crate) fn from_rational(p: &Poly<BigRational>) -> Self {
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let c = p
            .coeffs()
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        IntPoly::new(c).primitive()
    }

    fn to_rational(&self) -> Poly<BigRational> {
        Poly::new(self.c.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn primitive(self) -> Self {
        let g = self.c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() || g.is_one() {
            return self;
        }
        IntPoly::new(self.c.into_iter().map(|x| x / &g).collect())
    }

    fn derive(&self) -> Self {
        IntPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, x)| x * BigInt::from(k))
                .collect(),
        )
    }

    fn neg(self) -> Self {
        IntPoly::new(self.c.into_iter().map(|x| -x).collect())
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn prem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo-division by zero polynomial");
        let lead = &b.c[db];
        let mut r = self.c.clone();
        let mut steps = 0;
        while r.len() > db {
            let k = r.len() - 1;
            let top = r[k].clone();
            for x in r.iter_mut() {
                *x *= lead;
            }
            for (j, bj) in b.c.iter().enumerate() {
                r[k - db + j] -= &top * bj;
            }
            steps += 1;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
            if r.len() == k + 1 {
                unreachable!("leading term not cancelled");
            }
        }
        // Pad the multiplier so it is always lc^(deg a - deg b + 1).
        let full = self.c.len().saturating_sub(db);
        let mut out = r;
        for _ in steps..full {
            for x in out.iter_mut() {
                *x *= lead;
            }
        }
        IntPoly::new(out)
    }

    /// Exact sign of the value at a dyadic point.
    fn sign_at(&self, x: &Dyadic) -> Sign {
        let Some(d) = self.degree() else {
            return Sign::NoSign;
        };
        // p(n / 2^e) * 2^(e d) = sum c_k n^k 2^(e (d - k))
        let mut acc = self.c[d].clone();
        for k in (0..d).rev() {
            acc = acc * &x.num + (&self.c[k] << (x.exp as usize * (d - k)));
        }
        acc.sign()
    }

    /// Sign from double Horner when the rounding error bound allows it.
    fn sign_filtered(&self, x: f64) -> Option<Sign> {
        let d = self.degree()?;
        let ax = x.abs();
        let (mut v, mut mag, mut pw) = (0.0f64, 0.0f64, 0.0f64);
        for k in (0..=d).rev() {
            v = v * x + self.approx[k];
            mag = mag * ax + self.approx[k].abs();
            pw = pw * ax + 1.0;
        }
        // Horner error plus coefficient rounding, with slack; truncated
        // coefficients may be off by one unit each.
        let mut bound = (4 * d + 8) as f64 * f64::EPSILON * mag;
        if self.shift > 0 {
            bound += 2.0 * pw;
        }
        if !v.is_finite() || !bound.is_finite() || mag < 1e-200 || v.abs() <= bound {
            return None;
        }
        Some(if v > 0.0 { Sign::Plus } else { Sign::Minus })
    }

    fn sign_at_point(&self, x: f64) -> Sign {
        self.sign_filtered(x).unwrap_or_else(|| self.sign_at(&Dyadic::from_f64(x)))
    }

    pub(crate) fn sign_at_f64(&self, x: f64) -> Ordering {
        match self.sign_at_point(x) {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

/// Positive integer multiples of `x - 2` and `x + 2` for the discriminant `x`
/// of the diagonal `alpha`. With `D` the common denominator and `t = s / D`,
/// `D^K x` is the trace of the product of `[[s - D alpha, -D], [D, 0]]`,
/// which stays in integers.
pub(crate) fn scaled_discriminant(alpha: &[BigRational]) -> (IntPoly, IntPoly) {
    let d = alpha.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let n: Vec<BigInt> = alpha.iter().map(|a| a.numer() * (&d / a.denom())).collect();
    // entries of the running product, ascending powers of s
    let one = vec![BigInt::one()];
    let (mut m00, mut m01, mut m10, mut m11) = (one.clone(), Vec::new(), Vec::new(), one);
    // row * [[s - N, -D], [D, 0]]
    let step = |x: &[BigInt], y: &[BigInt], nk: &BigInt| -> (Vec<BigInt>, Vec<BigInt>) {
        let mut first = vec![BigInt::zero(); x.len().max(y.len()) + 1];
        for (k, c) in x.iter().enumerate() {
            first[k + 1] += c;
            first[k] -= c * nk;
        }
        for (k, c) in y.iter().enumerate() {
            first[k] += c * &d;
        }
        let second = x.iter().map(|c| -(c * &d)).collect();
        (first, second)
    };
    for nk in &n {
        let (a, b) = step(&m00, &m01, nk);
        let (c, e) = step(&m10, &m11, nk);
        (m00, m01, m10, m11) = (a, b, c, e);
    }
    let mut tr = m00;
    if tr.len() < m11.len() {
        tr.resize(m11.len(), BigInt::zero());
    }
    for (k, c) in m11.into_iter().enumerate() {
        tr[k] += c;
    }
    let two_dk = BigInt::from(2) * num_traits::pow(d.clone(), alpha.len());
    tr[0] -= &two_dk;
    // back to t: the s^k coefficient picks up D^k
    let mut pw = BigInt::one();
    for c in tr.iter_mut() {
        *c *= &pw;
        pw *= &d;
    }
    let mut lo = tr.clone();
    lo[0] += two_dk * 2;
    (IntPoly::new(tr).primitive(), IntPoly::new(lo).primitive())
}

fn gcd_int(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut a, mut b) = (a.clone().primitive(), b.clone().primitive());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b).primitive();
        a = b;
        b = r;
    }
    a
}

/// Sturm sequence `s0 = p, s1 = p', s_{i+1} = -rem(s_{i-1}, s_i)` up to
/// positive factors.
struct Sturm {
    seq: Vec<IntPoly>,
}

impl Sturm {
    fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.clone(), p.derive().primitive()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let (a, b) = (&seq[n - 2], &seq[n - 1]);
            let db = b.degree().unwrap();
            let da = a.degree().unwrap();
            let mut r = a.prem(b);
            // prem carries the factor lc(b)^(da-db+1); undo its sign.
            if b.c[db].is_negative() && (da - db + 1) % 2 == 1 {
                r = r.neg();
            }
            seq.push(r.neg().primitive());
        }
        seq.pop();
        Sturm { seq }
    }

    /// Greatest common divisor of `p` and `p'`.
    fn gcd(&self) -> &IntPoly {
        self.seq.last().unwrap()
    }

    fn variations_f64(&self, x: f64) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for s in &self.seq {
            let sg = s.sign_at_point(x);
            if sg == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && sg != last {
                count += 1;
            }
            last = sg;
        }
        count
    }

}

fn midpoint(a: f64, b: f64) -> Option<f64> {
    let m = a + (b - a) / 2.0;
    (m > a && m < b).then_some(m)
}

/// Real roots of `p` in `[lo, hi]`, ascending, each reported once.
pub fn real_roots<T: ExactCoeff>(p: &Poly<T>, lo: f64, hi: f64, tol: f64) -> Result<Vec<RealRoot>> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(invalid(format!("need finite lo < hi, got [{lo}, {hi}]")));
    }
    if p.is_zero() {
        return Err(invalid("the zero polynomial has no isolated roots"));
    }
    let exact = to_exact_poly(p)?;
    isolate_exact(&IntPoly::from_rational(&exact), lo, hi, tol)
}

pub(crate) fn isolate_exact(p: &IntPoly, lo: f64, hi: f64, tol: f64) -> Result<Vec<RealRoot>> {
    isolate_impl(p, lo, hi, tol, true)
}

/// As [`isolate_exact`] but without the square-free factorisation; every
/// root reports multiplicity 1.
pub(crate) fn isolate_distinct(p: &IntPoly, lo: f64, hi: f64, tol: f64) -> Result<Vec<RealRoot>> {
    isolate_impl(p, lo, hi, tol, false)
}

fn isolate_impl(p: &IntPoly, lo: f64, hi: f64, tol: f64, multiplicities: bool) -> Result<Vec<RealRoot>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let full = Sturm::new(p);
    let g = full.gcd().clone();
    let (sqf, factors) = if g.degree() == Some(0) {
        (full, None)
    } else {
        let sqf_rat = p
            .to_rational()
            .div_exact(&g.to_rational())
            .map_err(|_| Error::Singular("square-free part".into()))?;
        let sqf = Sturm::new(&IntPoly::from_rational(&sqf_rat));
        (sqf, multiplicities.then(|| yun(p)))
    };
    let s0 = &sqf.seq[0];

    let mut brackets = Vec::new();
    if s0.sign_at_f64(lo) == Ordering::Equal {
        brackets.push((lo, lo));
    }
    isolate(&sqf, lo, sqf.variations_f64(lo), hi, sqf.variations_f64(hi), &mut brackets);

    let mut out = Vec::with_capacity(brackets.len());
    for (a, b) in brackets {
        let (a, b) = if a == b { (a, b) } else { refine(s0, a, b, tol) };
        let multiplicity = match &factors {
            None => 1,
            Some(fs) => multiplicity_in(fs, a, b),
        };
        let value = if a == b { a } else { a + (b - a) / 2.0 };
        out.push(RealRoot { value, lo: a, hi: b, multiplicity });
    }
    Ok(out)
}

/// Collect brackets `(a, b]` holding exactly one distinct root.
fn isolate(s: &Sturm, a: f64, va: usize, b: f64, vb: usize, out: &mut Vec<(f64, f64)>) {
    let count = va.saturating_sub(vb);
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((a, b));
        return;
    }
    match midpoint(a, b) {
        // Roots closer than float resolution: report the cluster once.
        None => out.push((a, b)),
        Some(m) => {
            let vm = s.variations_f64(m);
            isolate(s, a, va, m, vm, out);
            isolate(s, m, vm, b, vb, out);
        }
    }
}

/// Shrink `(a, b]` around its single simple root of `p` to width `<= tol`.
fn refine(p: &IntPoly, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let sb = p.sign_at_f64(b);
    if sb == Ordering::Equal {
        return (b, b);
    }
    while b - a > tol {
        let Some(m) = midpoint(a, b) else { break };
        match p.sign_at_f64(m) {
            Ordering::Equal => return (m, m),
            s if s == sb => b = m,
            _ => a = m,
        }
    }
    (a, b)
}

/// Square-free factorisation `p = prod f_i^i` (Yun), as `(f_i, i)` pairs
/// with nonconstant `f_i`, each with its Sturm sequence.
fn yun(p: &IntPoly) -> Vec<(Sturm, usize)> {
    let p_rat = p.to_rational();
    let dp = p_rat.derive();
    let g = gcd_int(p, &IntPoly::from_rational(&dp)).to_rational();
    let mut b = p_rat.div_exact(&g).expect("gcd divides p");
    let c = dp.div_exact(&g).expect("gcd divides p'");
    let mut d = &c - &b.derive();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let f = gcd_int(&IntPoly::from_rational(&b), &IntPoly::from_rational(&d));
        let f_rat = f.to_rational();
        if f.degree().unwrap_or(0) > 0 {
            out.push((Sturm::new(&f), i));
        }
        b = b.div_exact(&f_rat).expect("factor divides b");
        let c = d.div_exact(&f_rat).expect("factor divides d");
        d = &c - &b.derive();
        i += 1;
    }
    out
}

fn multiplicity_in(factors: &[(Sturm, usize)], a: f64, b: f64) -> usize {
    for (s, i) in factors {
        let hit = if a == b {
            s.seq[0].sign_at_f64(a) == Ordering::Equal
        } else {
            s.variations_f64(a) > s.variations_f64(b)
        };
        if hit {
            return *i;
        }
    }
    1
}
