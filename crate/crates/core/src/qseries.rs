//! Tridiagonal cosine determinants and their q-series closed forms.
//!
//! `A_n(t; xi_1..xi_n)` is the determinant of the tridiagonal matrix with
//! diagonal `t xi_k` and unit off-diagonals. With `xi_s = w^s + w^{-s}`
//! (`w^2 = q`) its coefficients have q-binomial closed forms, which
//! degenerate in structured ways at roots of unity.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::exactpoly::{Field, LaurentPoly, Poly, Scalar};
use crate::recurrence::cos_fraction;

/// `A_n` from `A_k = t xi_k A_{k-1} - A_{k-2}`, `A_{-1} = 0`, `A_0 = 1`.
pub fn a_poly<T: Scalar>(xi: &[T], n: usize) -> Result<Poly<T>> {
    if xi.len() < n {
        return Err(invalid(format!("need {n} values of xi, got {}", xi.len())));
    }
    let mut prev = Poly::zero();
    let mut cur = Poly::one();
    for x in &xi[..n] {
        let next = &(&Poly::t().scale(x) * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `sigma_K = nu_{K-1}` with `nu_l = cos(2 pi l / K) nu_{l-1} - nu_{l-2}`,
/// `nu_{-1} = 0`, `nu_0 = 1`. `K = 0` gives `nu_{-1} = 0`.
pub fn sigma_k(k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let (mut prev, mut cur) = (0.0, 1.0);
    for l in 1..k {
        let next = cos_fraction(l as i64, k as i64) * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `sigma_K` exactly, for the periods whose cosines are rational.
pub fn sigma_k_exact(k: usize) -> Option<BigRational> {
    if !matches!(k, 1 | 2 | 3 | 4 | 6) {
        return None;
    }
    let half = BigRational::new(1.into(), 2.into());
    let cos = |l: usize| -> BigRational {
        // cos(2 pi l / K) for K in {1,2,3,4,6}
        let twelfths = (12 * l / k) % 12;
        match twelfths {
            0 => BigRational::one(),
            2 | 10 => half.clone(),
            3 | 9 => BigRational::zero(),
            4 | 8 => -half.clone(),
            6 => -BigRational::one(),
            _ => unreachable!("irrational cosine"),
        }
    };
    let (mut prev, mut cur) = (BigRational::zero(), BigRational::one());
    for l in 1..k {
        let next = cos(l) * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Some(cur)
}

/// `(z; q)_n = prod_{k<n} (1 - q^k z)`.
pub fn qpochhammer(z: Complex64, q: Complex64, n: usize) -> Complex64 {
    let mut acc = Complex64::one();
    let mut qk = Complex64::one();
    for _ in 0..n {
        acc *= Complex64::one() - qk * z;
        qk *= q;
    }
    acc
}

/// Gaussian binomial `[n, m]_q` by the q-Pascal rule
/// `[n, m] = [n-1, m-1] + q^m [n-1, m]`, which stays finite at roots of
/// unity where the quotient of q-factorials is `0/0`.
pub fn qbinomial<T: Scalar>(n: usize, m: usize, q: &T) -> Result<T> {
    if m > n {
        return Err(invalid(format!("q-binomial needs m <= n, got n = {n}, m = {m}")));
    }
    let mut qpow = vec![T::one()];
    for k in 1..=m {
        qpow.push(qpow[k - 1].clone() * q.clone());
    }
    // row[j] = [i, j] for j <= m
    let mut row = vec![T::zero(); m + 1];
    row[0] = T::one();
    for i in 1..=n {
        for j in (1..=m.min(i)).rev() {
            row[j] = row[j - 1].clone() + qpow[j].clone() * row[j].clone();
        }
    }
    Ok(row[m].clone())
}

/// Parity of the `A_n` family a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `B_{2n,s}^{(2r)}`
    Even,
    /// `B_{2n+1,s}^{(2r+1)}`
    Odd,
}

/// Where `w = q^{1/2}` lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Omega {
    Complex(Complex64),
    /// `w = exp(2 pi i m / n)`, reduced.
    Phase { m: i64, n: u64 },
}

/// A fixed choice of `w = q^{1/2}`; every half-integer power of `q` is
/// taken through it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    omega: Omega,
}

impl QContext {
    pub fn complex(omega: Complex64) -> Result<QContext> {
        if !omega.is_finite() || omega.is_zero() {
            return Err(invalid(format!("omega must be finite and nonzero, got {omega}")));
        }
        Ok(QContext { omega: Omega::Complex(omega) })
    }

    pub fn real(omega: f64) -> Result<QContext> {
        QContext::complex(Complex64::new(omega, 0.0))
    }

    /// `w = exp(2 pi i m / n)`.
    pub fn phase(m: i64, n: u64) -> Result<QContext> {
        if n == 0 {
            return Err(invalid("phase denominator must be positive"));
        }
        let m = m.rem_euclid(n as i64);
        let g = (m as u64).gcd(&n).max(1);
        Ok(QContext { omega: Omega::Phase { m: m / g as i64, n: n / g } })
    }

    pub fn kind(&self) -> Omega {
        self.omega
    }

    pub fn omega(&self) -> Complex64 {
        self.omega_pow(1)
    }

    pub fn q(&self) -> Complex64 {
        self.omega_pow(2)
    }

    /// Least `d >= 1` with `w^d = 1`, for phase contexts.
    pub fn minimal_degree(&self) -> Option<u64> {
        match self.omega {
            Omega::Phase { n, .. } => Some(n),
            Omega::Complex(_) => None,
        }
    }

    /// Least `d >= 1` with `q^d = 1`, for phase contexts.
    pub fn q_minimal_degree(&self) -> Option<u64> {
        self.minimal_degree().map(|n| n / n.gcd(&2))
    }

    /// `w^k`; phase contexts reduce `m k mod n` first.
    pub fn omega_pow(&self, k: i64) -> Complex64 {
        match self.omega {
            Omega::Complex(w) => pow_c(w, k),
            Omega::Phase { m, n } => {
                let n = n as i64;
                let j = (m as i128 * k as i128).rem_euclid(n as i128) as i64;
                let c = cos_fraction(j, n);
                // sin from the same reduced angle, folded for symmetry
                let s = if 2 * j == n || j == 0 {
                    0.0
                } else if 2 * j < n {
                    (TAU * j as f64 / n as f64).sin()
                } else {
                    -(TAU * (n - j) as f64 / n as f64).sin()
                };
                Complex64::new(c, s)
            }
        }
    }

    /// `1 - w^k`, without cancellation for phases near 0.
    pub fn one_minus_omega_pow(&self, k: i64) -> Complex64 {
        match self.omega {
            Omega::Complex(w) => Complex64::one() - pow_c(w, k),
            Omega::Phase { m, n } => {
                let n = n as i64;
                let mut j = (m as i128 * k as i128).rem_euclid(n as i128) as i64;
                if j == 0 {
                    return Complex64::zero();
                }
                if 2 * j > n {
                    j -= n;
                }
                // 1 - e^{i x} = 2 sin(x/2) (sin(x/2) - i cos(x/2))
                let h = PI * j as f64 / n as f64;
                let (s, c) = h.sin_cos();
                Complex64::new(2.0 * s * s, -2.0 * s * c)
            }
        }
    }

    /// `w^{1/2}`: `exp(pi i m / n)` for phases, principal root otherwise.
    pub fn omega_half(&self) -> Complex64 {
        match self.omega {
            Omega::Complex(w) => w.sqrt(),
            Omega::Phase { m, n } => Complex64::from_polar(1.0, PI * m as f64 / n as f64),
        }
    }

    /// `xi_s = w^s + w^{-s}`.
    pub fn xi(&self, s: i64) -> Complex64 {
        self.omega_pow(s) + self.omega_pow(-s)
    }
}

fn pow_c(w: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        num_traits::pow(w, k as usize)
    } else {
        num_traits::pow(w.inv(), k.unsigned_abs() as usize)
    }
}

fn pow_field<T: Field>(w: &T, k: i64) -> T {
    if k >= 0 {
        num_traits::pow(w.clone(), k as usize)
    } else {
        num_traits::pow(T::one() / w.clone(), k.unsigned_abs() as usize)
    }
}

/// Closed form over any field, given `w^k` through `pow`.
fn closed_form<T: Scalar>(parity: Parity, n: usize, s: usize, r: usize, pow: impl Fn(i64) -> T) -> Result<T> {
    if r > n {
        return Err(invalid(format!("need r <= n, got n = {n}, r = {r}")));
    }
    if s == 0 {
        return Err(invalid("start index s must be at least 1"));
    }
    let (n_i, s_i, r_i) = (n as i64, s as i64, r as i64);
    let q = pow(2);
    let (phase, binom, len) = match parity {
        Parity::Even => (-r_i * (4 * n_i + 2 * s_i - 2 * r_i - 1), qbinomial(n + r, 2 * r, &q)?, 2 * r),
        Parity::Odd => (
            -(2 * r_i + 1) * (2 * n_i + s_i - r_i),
            qbinomial(n + r + 1, 2 * r + 1, &q)?,
            2 * r + 1,
        ),
    };
    // (-q^{n+s-r}; q)_len
    let base = n_i + s_i - r_i;
    let mut poch = T::one();
    for k in 0..len as i64 {
        poch = poch * (T::one() + pow(2 * (base + k)));
    }
    let mut out = pow(phase) * binom * poch;
    if (n + r) % 2 == 1 {
        out = -out;
    }
    Ok(out)
}

/// `B_{2n,s}^{(2r)}` or `B_{2n+1,s}^{(2r+1)}` from the closed form, with
/// half-integer powers of `q` taken through the context's `w`.
pub fn b_coeff_closed(parity: Parity, n: usize, s: usize, r: usize, ctx: &QContext) -> Result<Complex64> {
    closed_form(parity, n, s, r, |k| ctx.omega_pow(k))
}

/// Exact closed form at a rational `w`.
pub fn b_coeff_closed_exact(parity: Parity, n: usize, s: usize, r: usize, omega: &BigRational) -> Result<BigRational> {
    if omega.is_zero() {
        return Err(Error::Singular("omega = 0".into()));
    }
    closed_form(parity, n, s, r, |k| pow_field(omega, k))
}

/// The closed form as an integer Laurent polynomial in `w`, valid at every
/// nonzero `w`.
pub fn b_coeff_laurent(parity: Parity, n: usize, s: usize, r: usize) -> Result<LaurentPoly> {
    closed_form(parity, n, s, r, LaurentPoly::monomial)
}

/// `xi_k = w^k + w^{-k}` as a Laurent polynomial.
pub fn xi_laurent(k: usize) -> LaurentPoly {
    LaurentPoly::monomial(k as i64) + LaurentPoly::monomial(-(k as i64))
}

/// Coefficients of `A_{2n}` or `A_{2n+1}` over `xi_s, xi_{s+1}, ...`,
/// produced by the coefficient recurrences
/// `B_{2n,s}^{(2r)} = xi_{s+2n-1} B_{2n-1,s}^{(2r-1)} - B_{2n-2,s}^{(2r)}` and
/// `B_{2n+1,s}^{(2r+1)} = xi_{s+2n} B_{2n,s}^{(2r)} - B_{2n-1,s}^{(2r+1)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ACoeffs<T> {
    pub parity: Parity,
    pub n: usize,
    pub s: usize,
    /// Entry `r` is `B^{(2r)}` (even) or `B^{(2r+1)}` (odd), `r = 0..=n`.
    pub coeffs: Vec<T>,
}

pub fn b_coeff_recurrence<T: Scalar>(parity: Parity, n: usize, s: usize, xi: impl Fn(usize) -> T) -> Result<ACoeffs<T>> {
    if s == 0 {
        return Err(invalid("start index s must be at least 1"));
    }
    let deg = match parity {
        Parity::Even => 2 * n,
        Parity::Odd => 2 * n + 1,
    };
    let xs: Vec<T> = (0..deg).map(|k| xi(s + k)).collect();
    let a = a_poly(&xs, deg)?;
    let off = deg % 2;
    let coeffs = (0..=n).map(|r| a.coeff(2 * r + off)).collect();
    Ok(ACoeffs { parity, n, s, coeffs })
}

/// `prod_{l=1}^{r} sin((2l-1) phi) / sin(2 l phi)`.
pub fn prop6_product(n: usize, r: usize, phi: f64) -> Result<f64> {
    if r > n {
        return Err(invalid(format!("need r <= n, got n = {n}, r = {r}")));
    }
    if !phi.is_finite() {
        return Err(invalid("phi must be finite"));
    }
    let mut acc = 1.0;
    for l in 1..=r {
        let x = 2.0 * l as f64 * phi;
        let k = (x / PI).round();
        if x == 0.0 || (k != 0.0 && (x - k * PI).abs() <= 8.0 * f64::EPSILON * x.abs()) {
            return Err(Error::Singular(format!("sin({l} * 2 phi) vanishes")));
        }
        acc *= ((2 * l - 1) as f64 * phi).sin() / x.sin();
    }
    Ok(acc)
}

/// Partial sum through `l = L` of
/// `sum_l t^{2l} q^{l/4} (q^{1/2}; q)_l / (q; q)_l`,
/// with `q^{1/4}` the context's `w^{1/2}`.
pub fn c_series_partial(t: f64, ctx: &QContext, big_l: usize) -> Result<Complex64> {
    let t2 = Complex64::new(t * t, 0.0);
    let root = ctx.omega_half();
    let mut term = Complex64::one();
    let mut sum = term;
    for l in 1..=big_l as i64 {
        let den = ctx.one_minus_omega_pow(2 * l);
        if den.is_zero() {
            return Err(Error::Singular(format!("(q; q)_{l} vanishes")));
        }
        term = term * t2 * root * ctx.one_minus_omega_pow(2 * l - 1) / den;
        sum += term;
    }
    Ok(sum)
}

/// One row of the sigma table: `sigma_{4L+j}` and the deviation from the
/// limits `0, 2/sqrt(3), 0, -2/sqrt(3)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaRow {
    pub l: usize,
    pub sigma: [f64; 4],
    pub deviation: [f64; 4],
}

pub fn sigma_limit(j: usize) -> f64 {
    let c = 2.0 / 3f64.sqrt();
    [0.0, c, 0.0, -c][j % 4]
}

/// Rows `L = 0 ..= lmax`.
pub fn sigma_limits_report(lmax: usize) -> Result<Vec<SigmaRow>> {
    if lmax < 1 {
        return Err(invalid("lmax must be at least 1"));
    }
    Ok((0..=lmax)
        .into_par_iter()
        .map(|l| {
            let mut sigma = [0.0; 4];
            let mut deviation = [0.0; 4];
            for j in 0..4 {
                sigma[j] = sigma_k(4 * l + j);
                deviation[j] = (sigma[j] - sigma_limit(j)).abs();
            }
            SigmaRow { l, sigma, deviation }
        })
        .collect())
}

/// `|diff| / max(1, |reference|)`.
pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1.0)
}

/// Largest relative gap between closed forms and recurrence coefficients
/// for `n <= nmax` and the given start indices.
pub fn closed_form_deviation(ctx: &QContext, nmax: usize, starts: &[usize]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &s in starts {
        for n in 0..=nmax {
            for parity in [Parity::Even, Parity::Odd] {
                let rec = b_coeff_recurrence(parity, n, s, |k| ctx.xi(k as i64))?;
                for r in 0..=n {
                    let c = b_coeff_closed(parity, n, s, r, ctx)?;
                    worst = worst.max(rel_err(c, rec.coeffs[r]));
                }
            }
        }
    }
    Ok(worst)
}

/// Whether closed forms equal the recurrence exactly at rational `w`.
pub fn closed_form_exact(omega: &BigRational, nmax: usize, starts: &[usize]) -> Result<bool> {
    let xi = |k: usize| pow_field(omega, k as i64) + pow_field(omega, -(k as i64));
    for &s in starts {
        for n in 0..=nmax {
            for parity in [Parity::Even, Parity::Odd] {
                let rec = b_coeff_recurrence(parity, n, s, xi)?;
                for r in 0..=n {
                    if b_coeff_closed_exact(parity, n, s, r, omega)? != rec.coeffs[r] {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// One evaluated case of the vanishing claim for odd coefficients at
/// roots of unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OddVanishingCase {
    pub n: usize,
    /// `q = exp(2 pi i m / (n+1))`.
    pub m: u64,
    /// `w = sign * exp(pi i m / (n+1))`.
    pub branch: i8,
    pub r: usize,
    /// `|B_{2n+1,1}^{(2r+1)}|` at that `w`; exactly 0 when it vanishes.
    pub abs: f64,
    /// Whether the coefficient vanishes exactly (cyclotomic remainder 0).
    pub exact_zero: bool,
}

/// Closed-form and recurrence coefficients agree as Laurent polynomials;
/// anything else is an internal error.
fn laurent_coeffs(parity: Parity, n: usize, s: usize) -> Result<Vec<LaurentPoly>> {
    let rec = b_coeff_recurrence(parity, n, s, xi_laurent)?;
    for (r, c) in rec.coeffs.iter().enumerate() {
        if b_coeff_laurent(parity, n, s, r)? != *c {
            return Err(Error::Singular(format!("closed form differs from recurrence at n = {n}, r = {r}")));
        }
    }
    Ok(rec.coeffs)
}

/// Evaluate `|B_{2n+1,1}^{(2r+1)}|` for every primitive `(n+1)`-th root `q`,
/// both square-root branches, `n <= nmax` and `r` in range (`2r <= n`, or
/// `2r < n` when `strict`). Coefficients are exact Laurent polynomials in
/// `w`, reduced modulo the cyclotomic polynomial of `w`'s order.
pub fn odd_vanishing_cases(nmax: usize, strict: bool) -> Result<Vec<OddVanishingCase>> {
    let per_n: Vec<Result<Vec<OddVanishingCase>>> = (0..=nmax)
        .into_par_iter()
        .map(|n| {
            let coeffs = laurent_coeffs(Parity::Odd, n, 1)?;
            let d = (n + 1) as u64;
            let mut out = Vec::new();
            for m in (1..=d).filter(|m| m.gcd(&d) == 1) {
                for branch in [1i8, -1] {
                    // -exp(pi i m/d) = exp(pi i (m + d)/d)
                    let num = if branch > 0 { m } else { m + d };
                    for r in 0..=n / 2 {
                        if strict && 2 * r == n {
                            continue;
                        }
                        let v = coeffs[r].eval_root_of_unity(num as i64, 2 * d);
                        let exact_zero = v == Complex64::zero();
                        out.push(OddVanishingCase { n, m, branch, r, abs: v.norm(), exact_zero });
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for v in per_n {
        out.extend(v?);
    }
    Ok(out)
}

/// Worst relative deviation of `(-1)^n B_{2n,1}^{(2r)}` from the sine
/// product, over every `w` primitive of odd degree `3 <= 2n+1 <= max_degree`
/// and every `r <= n`. The coefficient is evaluated from its exact
/// cyclotomic remainder.
pub fn sine_product_deviation(max_degree: usize) -> Result<f64> {
    let degrees: Vec<usize> = (3..=max_degree).step_by(2).collect();
    let per_d: Vec<Result<f64>> = degrees
        .into_par_iter()
        .map(|d| {
            let n = (d - 1) / 2;
            let coeffs = laurent_coeffs(Parity::Even, n, 1)?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let mut worst: f64 = 0.0;
            for m in (1..d as u64).filter(|m| m.gcd(&(d as u64)) == 1) {
                let phi = TAU * m as f64 / d as f64;
                for (r, c) in coeffs.iter().enumerate() {
                    let want = Complex64::new(prop6_product(n, r, phi)?, 0.0);
                    let got = c.eval_root_of_unity(m as i64, d as u64) * sign;
                    worst = worst.max(rel_err(got, want));
                }
            }
            Ok(worst)
        })
        .collect();
    per_d.into_iter().try_fold(0.0f64, |w, d| Ok(w.max(d?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn a_poly_small() {
        let xi = [rat(2, 1), rat(3, 1)];
        assert_eq!(a_poly(&xi, 1).unwrap(), Poly::from_integers(&[0, 2]));
        assert_eq!(a_poly(&xi, 2).unwrap(), Poly::from_integers(&[-1, 0, 6]));
        assert!(a_poly(&xi, 3).is_err());
    }

    #[test]
    fn a_poly_at_zero() {
        let xi: Vec<f64> = (1..=9).map(|k| k as f64 * 0.3).collect();
        for n in 0..=9 {
            let v = a_poly(&xi, n).unwrap().eval(&0.0);
            let want = if n % 2 == 1 { 0.0 } else if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(v, want);
        }
    }

    #[test]
    fn parity_exact() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let xi: Vec<BigRational> = (0..12).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
        for n in 0..=12 {
            let a = a_poly(&xi, n).unwrap();
            for (k, x) in a.coeffs().iter().enumerate() {
                if (n + k) % 2 == 1 {
                    assert!(x.is_zero(), "n = {n}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn derivative_identity() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(12);
        for n in 1..=8 {
            let xi: Vec<BigRational> =
                (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect();
            let lhs = a_poly(&xi, n).unwrap().derive();
            let mut rhs = Poly::zero();
            for k in 1..=n {
                let left = a_poly(&xi[..k - 1], k - 1).unwrap();
                let right = a_poly(&xi[k..], n - k).unwrap();
                rhs = &rhs + &(&left * &right).scale(&xi[k - 1]);
            }
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma_k(1), 1.0);
        assert!(sigma_k(4).abs() < 1e-15);
        assert!((sigma_k(3) + 0.75).abs() < 1e-15);
        assert_eq!(sigma_k_exact(4), Some(BigRational::zero()));
        assert_eq!(sigma_k_exact(3), Some(rat(-3, 4)));
        assert_eq!(sigma_k_exact(1), Some(BigRational::one()));
        assert_eq!(sigma_k_exact(5), None);
        for k in [1, 2, 3, 4, 6] {
            let e = crate::exactpoly::rational_to_f64(&sigma_k_exact(k).unwrap());
            assert!((e - sigma_k(k)).abs() < 1e-14);
        }
    }

    #[test]
    fn pochhammer() {
        let x = c(0.3, 0.2);
        assert_eq!(qpochhammer(x, x, 0), Complex64::one());
        assert_eq!(qpochhammer(x, c(0.7, 0.0), 1), Complex64::one() - x);
        let got = qpochhammer(x, x, 2);
        let want = (Complex64::one() - x) * (Complex64::one() - x * x);
        assert!((got - want).norm() < 1e-15);
    }

    #[test]
    fn qbinomial_values() {
        let q = c(0.4, -0.3);
        assert_eq!(qbinomial(5, 0, &q).unwrap(), Complex64::one());
        assert!((qbinomial(2, 1, &q).unwrap() - (Complex64::one() + q)).norm() < 1e-15);
        let near = qbinomial(4, 2, &(1.0 - 1e-6)).unwrap();
        assert!((near - 6.0).abs() < 1e-4);
        assert!(qbinomial(2, 3, &q).is_err());
        // against the product form away from roots of unity
        let prod = qpochhammer(q, q, 7) / (qpochhammer(q, q, 3) * qpochhammer(q, q, 4));
        assert!((qbinomial(7, 3, &q).unwrap() - prod).norm() < 1e-12);
    }

    #[test]
    fn qbinomial_at_root_of_unity() {
        // [2, 1] at q = -1 is 1 + q = 0; the quotient form is 0/0
        assert_eq!(qbinomial(2, 1, &-1.0).unwrap(), 0.0);
        // [4, 2] at q = -1 is 2
        assert_eq!(qbinomial(4, 2, &-1.0).unwrap(), 2.0);
    }

    #[test]
    fn closed_form_small_cases() {
        let ctx = QContext::complex(Complex64::from_polar(1.0, 0.37)).unwrap();
        assert!((b_coeff_closed(Parity::Even, 0, 2, 0, &ctx).unwrap() - 1.0).norm() < 1e-15);
        for s in 1..4 {
            let got = b_coeff_closed(Parity::Odd, 0, s, 0, &ctx).unwrap();
            assert!((got - ctx.xi(s as i64)).norm() < 1e-14);
        }
        assert!(b_coeff_closed(Parity::Even, 1, 1, 2, &ctx).is_err());
        assert!(b_coeff_closed(Parity::Even, 1, 0, 0, &ctx).is_err());
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for ctx in [
            QContext::real(0.8).unwrap(),
            QContext::complex(Complex64::from_polar(1.0, PI / 7.0)).unwrap(),
            QContext::phase(3, 11).unwrap(),
        ] {
            assert!(closed_form_deviation(&ctx, 10, &[1, 2, 3]).unwrap() < 1e-10);
        }
        assert!(closed_form_exact(&rat(2, 1), 10, &[1, 2, 3]).unwrap());
        assert!(closed_form_exact(&rat(-3, 5), 6, &[1, 2]).unwrap());
    }

    #[test]
    fn phase_context() {
        let ctx = QContext::phase(6, 22).unwrap();
        assert_eq!(ctx.kind(), Omega::Phase { m: 3, n: 11 });
        assert_eq!(ctx.minimal_degree(), Some(11));
        assert_eq!(ctx.q_minimal_degree(), Some(11));
        assert_eq!(QContext::phase(1, 6).unwrap().q_minimal_degree(), Some(3));
        assert!((ctx.omega_pow(11) - 1.0).norm() < 1e-15);
        assert!((ctx.omega().norm() - 1.0).abs() < 1e-15);
        assert_eq!(ctx.one_minus_omega_pow(11), Complex64::zero());
        let w = Complex64::from_polar(1.0, TAU * 3.0 / 11.0);
        assert!((ctx.one_minus_omega_pow(4) - (1.0 - w.powi(4))).norm() < 1e-15);
        assert!(QContext::phase(1, 0).is_err());
        assert!(QContext::complex(Complex64::zero()).is_err());
    }

    #[test]
    fn prop6_product_values() {
        assert_eq!(prop6_product(3, 0, 0.4).unwrap(), 1.0);
        let v = prop6_product(1, 1, TAU / 3.0).unwrap();
        assert!((v + 1.0).abs() < 1e-12);
        assert!((prop6_product(1, 1, 1e-7).unwrap() - 0.5).abs() < 1e-12);
        assert!(prop6_product(1, 1, PI / 2.0).is_err());
        assert!(prop6_product(1, 2, 0.3).is_err());
    }

    #[test]
    fn closed_form_is_a_laurent_identity() {
        for s in 1..=3 {
            for n in 0..=6 {
                assert!(laurent_coeffs(Parity::Even, n, s).is_ok());
                assert!(laurent_coeffs(Parity::Odd, n, s).is_ok());
            }
        }
        // B_{1,1}^{(1)} = xi_1
        assert_eq!(b_coeff_laurent(Parity::Odd, 0, 1, 0).unwrap(), xi_laurent(1));
    }

    #[test]
    fn strict_odd_coefficients_vanish_exactly() {
        let cases = odd_vanishing_cases(9, true).unwrap();
        assert!(!cases.is_empty());
        assert!(cases.iter().all(|c| c.exact_zero && c.abs == 0.0));
    }

    #[test]
    fn sine_product_small_degrees() {
        assert!(sine_product_deviation(15).unwrap() < 1e-10);
    }

    #[test]
    fn strict_range_vanishes() {
        let cases = odd_vanishing_cases(12, true).unwrap();
        assert!(cases.iter().all(|c| c.abs < 1e-10), "{:?}", cases.iter().find(|c| c.abs >= 1e-10));
    }

    #[test]
    fn boundary_does_not_vanish() {
        // at 2r = n (n even) the coefficient has modulus 2
        let cases = odd_vanishing_cases(8, false).unwrap();
        for c in cases.iter().filter(|c| 2 * c.r == c.n) {
            assert!((c.abs - 2.0).abs() < 1e-9, "{c:?}");
        }
    }

    #[test]
    fn c_series() {
        let ctx = QContext::complex(Complex64::from_polar(1.0, 2e-4)).unwrap();
        assert_eq!(c_series_partial(0.3, &ctx, 0).unwrap(), Complex64::one());
        assert_eq!(c_series_partial(0.0, &ctx, 10).unwrap(), Complex64::one());
        let v = c_series_partial(0.5, &ctx, 200).unwrap();
        assert!((v - 2.0 / 3f64.sqrt()).norm() < 1e-4, "{v}");
        // the same through an exact phase close to zero
        let ctx = QContext::phase(1, 31416).unwrap();
        let v = c_series_partial(0.5, &ctx, 200).unwrap();
        assert!((v - 2.0 / 3f64.sqrt()).norm() < 1e-4, "{v}");
        assert!(c_series_partial(0.5, &QContext::phase(1, 4).unwrap(), 3).is_err());
    }

    #[test]
    fn c_series_ratio_is_sine_quotient() {
        let phi = 0.3;
        let ctx = QContext::complex(Complex64::from_polar(1.0, 2.0 * phi)).unwrap();
        let t = 0.7;
        let mut want = 1.0;
        let mut term = 1.0;
        for l in 1..=6 {
            term *= t * t * prop6_product(l, l, phi).unwrap() / prop6_product(l - 1, l - 1, phi).unwrap();
            want += term;
        }
        assert!((c_series_partial(t, &ctx, 6).unwrap() - want).norm() < 1e-12);
    }

    #[test]
    fn sigma_report() {
        let rows = sigma_limits_report(10).unwrap();
        assert_eq!(rows.len(), 11);
        assert!(rows[1].sigma[0].abs() < 1e-12);
        assert!((rows[0].deviation[3] - (2.0 / 3f64.sqrt() - 0.75)).abs() < 1e-12);
        assert!(rows[10].deviation[1] < rows[5].deviation[1]);
        assert!(sigma_limits_report(0).is_err());
    }
}
