//! Dense univariate polynomials over exact rationals, floats and complex
//! floats, with certified real-root isolation.
//!
//! [`Poly`] is the statically typed workhorse used throughout the crate.
//! [`Polynomial`] wraps the two real modes behind one dynamic interface for
//! callers that only learn the mode at run time.

mod laurent;
mod roots;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use laurent::{cyclotomic, LaurentPoly};
pub use roots::{real_roots, ExactCoeff, RealRoot};
pub(crate) use roots::{isolate_distinct, scaled_discriminant};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Coefficient ring for [`Poly`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;
}

/// Scalars that also divide.
pub trait Field: Scalar + Div<Output = Self> {}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}
impl Field for f64 {}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}
impl Field for BigRational {}

impl Scalar for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}
impl Field for Complex64 {}

/// Exact conversion of an `f64` into a rational. Every finite double is a
/// dyadic rational, so no rounding happens.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::InvalidInput(format!("non-finite value {x}")))
}

/// Nearest double to an exact rational.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // to_f64 gives up when numerator and denominator overflow separately.
        let shift = x.numer().bits().max(x.denom().bits()) as i64 - 900;
        if shift <= 0 {
            return f64::NAN;
        }
        let n = x.numer() >> shift as usize;
        let d = x.denom() >> shift as usize;
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

/// Dense polynomial, `coeffs[k]` multiplies `t^k`. The zero polynomial has no
/// coefficients and the leading coefficient is never zero otherwise.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Poly::new(vec![T::zero(), T::one()])
    }

    /// `t + c`.
    pub fn linear(c: T) -> Self {
        Poly::new(vec![c, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derive(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Poly<T>) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficient-wise check with a caller supplied predicate on differences.
    pub fn all_coeffs(&self, f: impl Fn(usize, &T) -> bool) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| f(k, c))
    }
}

impl<T: Field> Poly<T> {
    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly<T>) -> Result<(Poly<T>, Poly<T>)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Poly<T>) -> Result<Poly<T>> {
        let (q, r) = self.div_rem(divisor)?;
        match r.degree() {
            None => Ok(q),
            Some(d) => Err(Error::InexactDivision(d)),
        }
    }
}

impl Poly<BigRational> {
    pub fn to_f64(&self) -> Poly<f64> {
        self.map(rational_to_f64)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| BigRational::from_i64(c)).collect())
    }
}

impl Poly<f64> {
    /// Exact rational image of the float coefficients.
    pub fn to_exact(&self) -> Result<Poly<BigRational>> {
        Ok(Poly::new(
            self.coeffs
                .iter()
                .map(|&c| rational_from_f64(c))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn max_abs_diff(&self, other: &Poly<f64>) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).abs())
            .fold(0.0, f64::max)
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl<'a, T: Scalar> Add for &'a Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, T: Scalar> Sub for &'a Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &'a Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, T: Scalar> Mul for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Chebyshev polynomial of the second kind, `U_n(y)`, integer coefficients.
pub fn chebyshev_u<T: Scalar>(n: usize) -> Poly<T> {
    let two_y = Poly::new(vec![T::zero(), T::from_i64(2)]);
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_y.clone();
    for _ in 1..n {
        let next = &(&two_y * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `U_n(x/2)`, the monic form satisfying `u_{n+1} = x u_n - u_{n-1}`.
pub fn chebyshev_u_half<T: Field>(n: usize) -> Poly<T> {
    chebyshev_u::<T>(n).compose(&Poly::new(vec![T::zero(), T::one() / T::from_i64(2)]))
}

/// Coefficient mode of a dynamically typed [`Polynomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// A real polynomial in either exact-rational or float mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Polynomial {
    Exact(Poly<BigRational>),
    Float(Poly<f64>),
}

/// Scalar of the matching mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Float(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale,
    Derive,
    Compose,
}

/// Right operand of [`Polynomial::apply`].
#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Poly(Polynomial),
    Scalar(Value),
    None,
}

impl Polynomial {
    pub fn mode(&self) -> Mode {
        match self {
            Polynomial::Exact(_) => Mode::Exact,
            Polynomial::Float(_) => Mode::Float,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            Polynomial::Exact(p) => p.degree(),
            Polynomial::Float(p) => p.degree(),
        }
    }

    pub fn is_monic(&self) -> bool {
        match self {
            Polynomial::Exact(p) => p.is_monic(),
            Polynomial::Float(p) => p.is_monic(),
        }
    }

    pub fn as_exact(&self) -> Option<&Poly<BigRational>> {
        match self {
            Polynomial::Exact(p) => Some(p),
            Polynomial::Float(_) => None,
        }
    }

    /// Float view; exact coefficients are rounded.
    pub fn to_float(&self) -> Poly<f64> {
        match self {
            Polynomial::Exact(p) => p.to_f64(),
            Polynomial::Float(p) => p.clone(),
        }
    }

    pub fn eval(&self, t: &Value) -> Result<Value> {
        match (self, t) {
            (Polynomial::Exact(p), Value::Exact(x)) => Ok(Value::Exact(p.eval(x))),
            (Polynomial::Float(p), Value::Float(x)) => Ok(Value::Float(p.eval(x))),
            _ => Err(Error::ModeMismatch("evaluation point does not match polynomial mode")),
        }
    }

    /// One arithmetic operation. Operand modes must agree; `Derive` ignores
    /// the right operand.
    pub fn apply(&self, op: PolyOp, rhs: &Operand) -> Result<Polynomial> {
        use Polynomial::{Exact, Float};
        let mismatch = || Error::ModeMismatch("operands carry different coefficient modes");
        match (op, rhs) {
            (PolyOp::Derive, _) => Ok(match self {
                Exact(p) => Exact(p.derive()),
                Float(p) => Float(p.derive()),
            }),
            (PolyOp::Scale, Operand::Scalar(v)) => match (self, v) {
                (Exact(p), Value::Exact(c)) => Ok(Exact(p.scale(c))),
                (Float(p), Value::Float(c)) => Ok(Float(p.scale(c))),
                _ => Err(mismatch()),
            },
            (_, Operand::Scalar(v)) => {
                let as_poly = match v {
                    Value::Exact(c) => Exact(Poly::constant(c.clone())),
                    Value::Float(c) => Float(Poly::constant(*c)),
                };
                self.apply(op, &Operand::Poly(as_poly))
            }
            (_, Operand::Poly(q)) => match (self, q) {
                (Exact(a), Exact(b)) => Ok(Exact(binary(op, a, b))),
                (Float(a), Float(b)) => Ok(Float(binary(op, a, b))),
                _ => Err(mismatch()),
            },
            (_, Operand::None) => Err(Error::InvalidInput(format!("{op:?} needs a right operand"))),
        }
    }
}

fn binary<T: Scalar>(op: PolyOp, a: &Poly<T>, b: &Poly<T>) -> Poly<T> {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul | PolyOp::Scale => a * b,
        PolyOp::Compose => a.compose(b),
        PolyOp::Derive => a.derive(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> Poly<BigRational> {
        Poly::from_integers(c)
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn add_cancels_to_t_squared() {
        let p = Polynomial::Exact(q(&[-1, 0, 1]));
        let out = p.apply(PolyOp::Add, &Operand::Scalar(Value::Exact(r(1)))).unwrap();
        assert_eq!(out, Polynomial::Exact(q(&[0, 0, 1])));
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&q(&[2, 1]) * &q(&[-2, 1]), q(&[-4, 0, 1]));
    }

    #[test]
    fn power_rule() {
        assert_eq!(q(&[0, 0, 0, 1]).derive(), q(&[0, 0, 3]));
    }

    #[test]
    fn zero_is_trimmed() {
        let p = &q(&[1, 2]) - &q(&[1, 2]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert_eq!(p.eval(&r(5)), r(0));
        assert_eq!(Poly::new(vec![1.0, 0.0, 0.0]).degree(), Some(0));
    }

    #[test]
    fn horner_values() {
        assert_eq!(q(&[-1, 0, 1]).eval(&r(2)), r(3));
        // r_2 of the cosine recurrence with sigma = 2, alpha = pi
        assert_eq!(q(&[-5, 0, 1]).eval(&r(0)), r(-5));
    }

    #[test]
    fn mode_mismatch_rejected() {
        let a = Polynomial::Exact(q(&[1, 1]));
        let b = Polynomial::Float(Poly::new(vec![1.0, 1.0]));
        let err = a.apply(PolyOp::Mul, &Operand::Poly(b)).unwrap_err();
        assert!(matches!(err, Error::ModeMismatch(_)));
        let err = a.eval(&Value::Float(1.0)).unwrap_err();
        assert!(matches!(err, Error::ModeMismatch(_)));
    }

    #[test]
    fn degree_of_product() {
        let a = q(&[3, -1, 4, 1]);
        let b = q(&[0, 5, 9]);
        assert_eq!((&a * &b).degree(), Some(5));
    }

    #[test]
    fn compose_and_scale() {
        // (t^2 - 1) o (t + 1) = t^2 + 2t
        let p = Polynomial::Exact(q(&[-1, 0, 1]));
        let out = p.apply(PolyOp::Compose, &Operand::Poly(Polynomial::Exact(q(&[1, 1])))).unwrap();
        assert_eq!(out, Polynomial::Exact(q(&[0, 2, 1])));
        let s = p.apply(PolyOp::Scale, &Operand::Scalar(Value::Exact(r(3)))).unwrap();
        assert_eq!(s, Polynomial::Exact(q(&[-3, 0, 3])));
    }

    #[test]
    fn exact_division() {
        let num = &q(&[-4, 0, 1]) * &q(&[7, 1]);
        assert_eq!(num.div_exact(&q(&[-2, 1])).unwrap(), &q(&[2, 1]) * &q(&[7, 1]));
        let err = q(&[1, 0, 1]).div_exact(&q(&[-1, 1])).unwrap_err();
        assert_eq!(err, Error::InexactDivision(0));
    }

    #[test]
    fn chebyshev_small_cases() {
        assert_eq!(chebyshev_u::<BigRational>(0), q(&[1]));
        let u2 = chebyshev_u::<BigRational>(2);
        assert_eq!(u2, q(&[-1, 0, 4]));
        assert_eq!(u2.eval(&r(1)), r(3));
        let u3 = chebyshev_u::<f64>(3);
        let y = std::f64::consts::FRAC_PI_4.cos();
        assert!(u3.eval(&y).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_half_argument_is_monic() {
        for n in 0..10 {
            let u = chebyshev_u_half::<BigRational>(n);
            assert!(u.is_monic());
            assert_eq!(u.degree(), Some(n));
        }
        // U_2(x/2) = x^2 - 1
        assert_eq!(chebyshev_u_half::<BigRational>(2), q(&[-1, 0, 1]));
    }

    #[test]
    fn display_exact() {
        assert_eq!(q(&[-5, 0, 1]).to_string(), "t^2 - 5");
        assert_eq!(q(&[0, -1]).to_string(), "-t");
        assert_eq!(Poly::<BigRational>::zero().to_string(), "0");
    }
}
