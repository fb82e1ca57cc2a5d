//! Integer Laurent polynomials in one variable `w`, and their exact
//! reduction at roots of unity.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::Scalar;

/// `sum_k c[k] w^(low + k)`, trimmed at both ends; zero has no coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    c: Vec<BigInt>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly(w^{} * {:?})", self.low, self.c)
    }
}

impl LaurentPoly {
    pub fn new(low: i64, mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let lead = c.iter().take_while(|x| x.is_zero()).count();
        if lead == c.len() {
            return LaurentPoly { low: 0, c: Vec::new() };
        }
        c.drain(..lead);
        LaurentPoly { low: low + lead as i64, c }
    }

    /// `w^k`.
    pub fn monomial(k: i64) -> Self {
        LaurentPoly { low: k, c: vec![BigInt::one()] }
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero element).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// Exact remainder of `w^-low * self` modulo `Phi_m`, as ascending
    /// coefficients of degree below `phi(m)`. Zero exactly when `self`
    /// vanishes at every primitive `m`-th root of unity.
    pub fn reduce_cyclotomic(&self, m: u64) -> Vec<BigInt> {
        let phi = cyclotomic(m);
        let d = phi.len() - 1;
        let mut r = self.c.clone();
        // Phi_m is monic: plain long division stays in the integers
        while r.len() > d {
            let k = r.len() - 1;
            let top = std::mem::take(&mut r[k]);
            if !top.is_zero() {
                for (j, pj) in phi.iter().enumerate().take(d) {
                    r[k - d + j] -= &top * pj;
                }
            }
            r.pop();
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
        r
    }

    /// Value at `w = exp(2 pi i j / m)`, via the exact cyclotomic remainder
    /// so cancellation happens in integers; exactly zero when it vanishes.
    pub fn eval_root_of_unity(&self, j: i64, m: u64) -> Complex64 {
        let order = m / (j.unsigned_abs().gcd(&m)).max(1);
        let j = j.rem_euclid(m as i64) as u64;
        let (jr, mr) = (j / (m / order), order);
        let rem = self.reduce_cyclotomic(mr);
        let root = |k: i64| {
            let e = (jr as i128 * k as i128).rem_euclid(mr as i128) as f64;
            Complex64::from_polar(1.0, TAU * e / mr as f64)
        };
        let mut acc = Complex64::zero();
        for (k, c) in rem.iter().enumerate() {
            acc += root(k as i64) * c.to_f64().unwrap_or(f64::NAN);
        }
        acc * root(self.low)
    }
}

/// Integer coefficients of the `m`-th cyclotomic polynomial, ascending.
pub fn cyclotomic(m: u64) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic index must be positive");
    // w^m - 1 divided by Phi_e for every proper divisor e
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    for e in (1..m).filter(|e| m % e == 0) {
        p = div_monic(&p, &cyclotomic(e));
    }
    p
}

fn div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..a.len()).rev() {
        let top = r[k].clone();
        q[k - db] = top.clone();
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] -= &top * bj;
        }
    }
    debug_assert!(r.iter().all(|x| x.is_zero()), "inexact cyclotomic division");
    q
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { low: 0, c: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::monomial(0)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.c.len() as i64).max(rhs.low + rhs.c.len() as i64);
        let mut c = vec![BigInt::zero(); (high - low) as usize];
        for (k, x) in self.c.into_iter().enumerate() {
            c[(self.low - low) as usize + k] += x;
        }
        for (k, x) in rhs.c.into_iter().enumerate() {
            c[(rhs.low - low) as usize + k] += x;
        }
        LaurentPoly::new(low, c)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        LaurentPoly::new(self.low + rhs.low, c)
    }
}

impl Scalar for LaurentPoly {
    fn from_i64(v: i64) -> Self {
        LaurentPoly::new(0, vec![BigInt::from(v)])
    }
}
