//! Generalized almost Mathieu problems.
//!
//! A potential with `m` harmonics,
//! `a_{n-1} - 2 sum_l kappa_l cos(n l theta + psi_l) a_n + a_{n+1} = lambda a_n`,
//! reduces to the `(2m+1)`-term recurrence
//! `sum_{|l| <= m} alpha_l p_{n+l} = (lambda - beta_n) p_n`, `n >= m`.
//! A multi-index lattice with a single cosine reduces to a three-term
//! recurrence whose coefficient is a sum of cosines, fed to `bands`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::exactpoly::Poly;
use crate::oracle::TridiagSpec;
use crate::recurrence::{Angle, CoeffSeq};

/// Label attached to finite-section spectra of the multi-harmonic problem:
/// they are a computable stand-in, not the zeros of `p_n`.
pub const SURROGATE_LABEL: &str = "finite-section surrogate (Hermitian banded truncation)";

/// Normalized multi-harmonic recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicRecurrence {
    m: usize,
    theta: f64,
    kappas: Vec<f64>,
    psis: Vec<f64>,
    c: Complex64,
    /// `alpha_{-m} .. alpha_m`, entry `l + m`.
    alpha: Vec<Complex64>,
}

/// Build the normalized recurrence from `kappa_1..kappa_m`, `psi_1..psi_m`.
///
/// With `c = exp(i psi_m / m)`, `alpha_l = c^{-l} kappa*_l / kappa_m`
/// where `kappa*_{+-l} = exp(+-i psi_l) kappa_l`, and
/// `beta_n = -2 cos(n theta) / kappa_m`.
pub fn harmonic_normalize(kappas: &[f64], psis: &[f64], theta: f64) -> Result<HarmonicRecurrence> {
    let m = kappas.len();
    if m == 0 || psis.len() != m {
        return Err(invalid(format!(
            "need matching nonempty kappa and psi lists, got {} and {}",
            m,
            psis.len()
        )));
    }
    if kappas.iter().chain(psis).chain([&theta]).any(|x| !x.is_finite()) {
        return Err(invalid("non-finite harmonic parameter"));
    }
    let km = kappas[m - 1];
    if km == 0.0 {
        return Err(invalid("leading harmonic kappa_m must be nonzero"));
    }
    let psi_m = psis[m - 1];
    let c = Complex64::from_polar(1.0, psi_m / m as f64);
    let mut alpha = vec![Complex64::zero(); 2 * m + 1];
    for l in 1..=m {
        // c^{-l} e^{i psi_l}; at l = m the phase cancels exactly
        let a = if l == m {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::from_polar(kappas[l - 1] / km, psis[l - 1] - l as f64 * psi_m / m as f64)
        };
        alpha[m + l] = a;
        alpha[m - l] = a.conj();
    }
    Ok(HarmonicRecurrence { m, theta, kappas: kappas.to_vec(), psis: psis.to_vec(), c, alpha })
}

impl HarmonicRecurrence {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub fn psis(&self) -> &[f64] {
        &self.psis
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    /// `alpha_l`, zero outside `|l| <= m`.
    pub fn alpha(&self, l: i64) -> Complex64 {
        let m = self.m as i64;
        if l.abs() > m {
            Complex64::zero()
        } else {
            self.alpha[(l + m) as usize]
        }
    }

    /// `beta_n = -2 cos(n theta) / kappa_m`.
    pub fn beta(&self, n: usize) -> f64 {
        -2.0 * (n as f64 * self.theta).cos() / self.kappas[self.m - 1]
    }

    fn leading(&self) -> Result<Complex64> {
        let a = self.alpha(self.m as i64);
        if a.is_zero() {
            return Err(Error::Singular("alpha_m = 0".into()));
        }
        Ok(a)
    }
}

/// `p_0 .. p_N` from `2m` initial values at the spectral value `lambda`,
/// solving the recurrence for `p_{n+m}`.
pub fn harmonic_sequence(
    hr: &HarmonicRecurrence,
    initials: &[Complex64],
    lambda: Complex64,
    n_max: usize,
) -> Result<Vec<Complex64>> {
    let m = hr.m;
    check_initials(m, initials.len(), n_max)?;
    let lead = hr.leading()?;
    let mut p = initials.to_vec();
    for n in m..=n_max - m {
        let mut rhs = (lambda - hr.beta(n)) * p[n];
        for l in -(m as i64)..m as i64 {
            rhs -= hr.alpha(l) * p[(n as i64 + l) as usize];
        }
        p.push(rhs / lead);
    }
    Ok(p)
}

/// The same recurrence with `lambda` kept symbolic: polynomial solutions.
pub fn harmonic_poly_sequence(
    hr: &HarmonicRecurrence,
    initials: &[Poly<Complex64>],
    n_max: usize,
) -> Result<Vec<Poly<Complex64>>> {
    let m = hr.m;
    check_initials(m, initials.len(), n_max)?;
    let inv_lead = hr.leading()?.inv();
    let mut p = initials.to_vec();
    for n in m..=n_max - m {
        let mut rhs = &Poly::linear(Complex64::new(-hr.beta(n), 0.0)) * &p[n];
        for l in -(m as i64)..m as i64 {
            rhs = &rhs - &p[(n as i64 + l) as usize].scale(&hr.alpha(l));
        }
        p.push(rhs.scale(&inv_lead));
    }
    Ok(p)
}

fn check_initials(m: usize, got: usize, n_max: usize) -> Result<()> {
    if got != 2 * m {
        return Err(invalid(format!("need {} initial values, got {got}", 2 * m)));
    }
    if n_max < 2 * m {
        return Err(invalid(format!("need N >= 2m = {}, got {n_max}", 2 * m)));
    }
    Ok(())
}

/// The `N x N` banded truncation on rows `n = m .. m+N-1`:
/// `M[i][i] = beta_{m+i}`, `M[i][i+l] = alpha_l`.
pub fn truncation_matrix(hr: &HarmonicRecurrence, size: usize) -> Vec<Vec<Complex64>> {
    let m = hr.m as i64;
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let l = j as i64 - i as i64;
                    if l == 0 {
                        Complex64::new(hr.beta(hr.m + i), 0.0)
                    } else if l.abs() <= m {
                        hr.alpha(l)
                    } else {
                        Complex64::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Sorted eigenvalues of [`truncation_matrix`]: Householder reduction to
/// real symmetric tridiagonal form, then Sturm bisection.
pub fn harmonic_truncation_spectrum(hr: &HarmonicRecurrence, size: usize) -> Result<Vec<f64>> {
    if size == 0 {
        return Err(invalid("truncation size must be at least 1"));
    }
    let tri = hermitian_tridiagonal(truncation_matrix(hr, size))?;
    tri.eigenvalues(1e-13)
}

/// Unitarily similar real tridiagonal form of a Hermitian matrix.
pub fn hermitian_tridiagonal(mut a: Vec<Vec<Complex64>>) -> Result<TridiagSpec> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(invalid("matrix must be square"));
    }
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n).map(|i| a[i][k].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[k + 1][k];
        let phase = if x0.is_zero() { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let mut v: Vec<Complex64> = vec![Complex64::zero(); n];
        for i in k + 1..n {
            v[i] = a[i][k];
        }
        // v = x + e^{i arg x0} |x| e_1 avoids cancellation
        v[k + 1] += phase * norm;
        let vn = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vn;
        }
        // A <- (I - 2 v v*) A (I - 2 v v*)
        for j in 0..n {
            let s: Complex64 = (k + 1..n).map(|i| v[i].conj() * a[i][j]).sum();
            for i in k + 1..n {
                a[i][j] -= v[i] * s * 2.0;
            }
        }
        for row in a.iter_mut() {
            let s: Complex64 = (k + 1..n).map(|j| row[j] * v[j]).sum();
            for j in k + 1..n {
                row[j] -= s * v[j].conj() * 2.0;
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i].re).collect();
    // a diagonal unitary scaling makes the off-diagonal real and positive
    let off = (0..n.saturating_sub(1)).map(|i| a[i + 1][i].norm()).collect();
    TridiagSpec::new(diag, off)
}

/// A `d`-dimensional lattice problem with potential
/// `2 kappa cos(sum_l angle_l n_l + beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivarSpec {
    kappa: f64,
    angles: Vec<Angle>,
    /// Phase of the potential; recorded, it does not enter the reduction.
    beta: f64,
}

impl MultivarSpec {
    pub fn new(kappa: f64, angles: Vec<Angle>, beta: f64) -> Result<MultivarSpec> {
        if kappa == 0.0 || !kappa.is_finite() {
            return Err(invalid(format!("kappa must be finite and nonzero, got {kappa}")));
        }
        if angles.is_empty() {
            return Err(invalid("dimension d must be at least 1"));
        }
        if !beta.is_finite() {
            return Err(invalid("beta must be finite"));
        }
        Ok(MultivarSpec { kappa, angles, beta })
    }

    pub fn d(&self) -> usize {
        self.angles.len()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Reduced three-term data of a lattice problem.
#[derive(Debug, Clone, PartialEq)]
pub struct MultivarReduction {
    /// `c_m = (2/kappa) sum_l cos(angle_l m)`.
    pub coeffs: CoeffSeq,
    /// `lcm` of the angle denominators when every angle is rational.
    pub period: Option<usize>,
}

pub fn multivariate_reduce(spec: &MultivarSpec) -> Result<MultivarReduction> {
    let sigma = 2.0 / spec.kappa;
    let coeffs = if spec.angles.len() == 1 {
        CoeffSeq::cosine(sigma, spec.angles[0], 0)?
    } else {
        CoeffSeq::multi_cosine(sigma, spec.angles.clone(), 0)?
    };
    let period = coeffs.period();
    Ok(MultivarReduction { coeffs, period })
}
