//! Independent reference computations: finite-section eigenvalues of
//! symmetric tridiagonal matrices by Sturm-count bisection, plain float
//! evaluation of three-term recurrences, and band/eigenvalue containment.

use rayon::prelude::*;

use crate::bands::BandSet;
use crate::error::{invalid, Result};

/// Symmetric tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagSpec {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagSpec {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Result<TridiagSpec> {
        if diag.is_empty() {
            return Err(invalid("tridiagonal matrix needs N >= 1"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(invalid(format!(
                "offdiagonal length {} does not match N = {}",
                offdiag.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(invalid("non-finite matrix entry"));
        }
        Ok(TridiagSpec { diag, offdiag })
    }

    /// `diag[n] = alpha[n mod K]`, unit off-diagonal.
    pub fn periodic_jacobi(alpha: &[f64], n: usize) -> Result<TridiagSpec> {
        if alpha.is_empty() {
            return Err(invalid("need at least one diagonal value"));
        }
        let diag = (0..n).map(|i| alpha[i % alpha.len()]).collect();
        TridiagSpec::new(diag, vec![1.0; n.saturating_sub(1)])
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x`: the count of negative
    /// pivots in the LDL^T factorization of `T - x I`.
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let b2 = if i > 0 { self.offdiag[i - 1] * self.offdiag[i - 1] } else { 0.0 };
            d = self.diag[i] - x - if i > 0 { b2 / d } else { 0.0 };
            if d == 0.0 {
                // perturb off an exact zero pivot
                d = -f64::EPSILON * (x.abs() + 1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) to absolute width `tol`.
    pub fn eigenvalue(&self, k: usize, tol: f64) -> f64 {
        let (g_lo, g_hi) = self.gershgorin();
        let pad = f64::EPSILON * (g_lo.abs().max(g_hi.abs()) + 1.0) * 4.0;
        let (mut lo, mut hi) = (g_lo - pad, g_hi + pad);
        while hi - lo > tol {
            let mid = lo + (hi - lo) / 2.0;
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo + (hi - lo) / 2.0
    }

    /// All eigenvalues, ascending, with multiplicity.
    pub fn eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        if !(tol > 0.0) {
            return Err(invalid(format!("tolerance must be positive, got {tol}")));
        }
        let mut out: Vec<f64> = (0..self.len())
            .into_par_iter()
            .map(|k| self.eigenvalue(k, tol))
            .collect();
        out.sort_by(f64::total_cmp);
        Ok(out)
    }
}

/// Eigenvalues of the `N x N` periodic Jacobi section, to `1e-12`.
pub fn periodic_jacobi_eigs(alpha: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(invalid("section size must be at least 1"));
    }
    TridiagSpec::periodic_jacobi(alpha, n)?.eigenvalues(1e-12)
}

/// Brute-force float values `p_0(t) .. p_n(t)` of
/// `p_{m+1} = (t + c(m)) p_m - p_{m-1}`.
pub fn recurrence_values(t: f64, n: usize, c: impl Fn(usize) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let (mut prev, mut cur) = (0.0, 1.0);
    out.push(cur);
    for m in 0..n {
        let next = (t + c(m)) * cur - prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContainmentReport {
    pub outliers: Vec<f64>,
    /// Eigenvalue count per band (fattened).
    pub per_band: Vec<usize>,
    pub allowed_outliers: usize,
    pub pass: bool,
}

impl ContainmentReport {
    pub fn uncovered_bands(&self) -> usize {
        self.per_band.iter().filter(|&&c| c == 0).count()
    }
}

/// Count eigenvalues outside every band widened by `fatten`; passes iff the
/// count is within budget and no band is empty.
pub fn containment_report(
    bands: &BandSet,
    eigs: &[f64],
    fatten: f64,
    allowed_outliers: usize,
) -> Result<ContainmentReport> {
    if !(fatten >= 0.0) {
        return Err(invalid(format!("fatten must be nonnegative, got {fatten}")));
    }
    let ivs = bands.intervals();
    let mut per_band = vec![0; ivs.len()];
    let mut outliers = Vec::new();
    for &e in eigs {
        let mut hit = false;
        for (i, &(lo, hi)) in ivs.iter().enumerate() {
            if e >= lo - fatten && e <= hi + fatten {
                per_band[i] += 1;
                hit = true;
            }
        }
        if !hit {
            outliers.push(e);
        }
    }
    let pass = outliers.len() <= allowed_outliers
        && !ivs.is_empty()
        && per_band.iter().all(|&c| c > 0);
    Ok(ContainmentReport { outliers, per_band, allowed_outliers, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bands::Variable;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    #[test]
    fn one_by_one() {
        assert_eq!(periodic_jacobi_eigs(&[0.3], 1).unwrap(), vec![0.3]);
    }

    #[test]
    fn two_by_two_free() {
        let e = periodic_jacobi_eigs(&[0.0], 2).unwrap();
        assert!((e[0] + 1.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn free_sections_match_closed_form() {
        for n in 1..=50 {
            let e = periodic_jacobi_eigs(&[0.0], n).unwrap();
            let mut want: Vec<f64> =
                (1..=n).map(|k| 2.0 * (k as f64 * PI / (n + 1) as f64).cos()).collect();
            want.sort_by(f64::total_cmp);
            for (a, b) in e.iter().zip(&want) {
                assert!((a - b).abs() < 1e-10, "n = {n}");
            }
        }
    }

    #[test]
    fn count_matches_eigenvalues() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let k = rng.gen_range(1..6);
            let alpha: Vec<f64> = (0..k).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let spec = TridiagSpec::periodic_jacobi(&alpha, 60).unwrap();
            let eigs = spec.eigenvalues(1e-12).unwrap();
            assert_eq!(eigs.len(), 60);
            assert!(eigs.windows(2).all(|w| w[0] <= w[1]));
            for _ in 0..20 {
                let x = rng.gen_range(-6.0..6.0);
                let below = eigs.iter().filter(|&&e| e < x).count();
                let c = spec.count_below(x);
                // eigenvalues within tol of x may land on either side
                let near = eigs.iter().filter(|&&e| (e - x).abs() < 1e-9).count();
                assert!(c.abs_diff(below) <= near, "x = {x}");
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(TridiagSpec::new(vec![], vec![]).is_err());
        assert!(TridiagSpec::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(periodic_jacobi_eigs(&[], 3).is_err());
    }

    #[test]
    fn recurrence_values_free_case() {
        // p_m(0) for c = 0: 1, 0, -1, 0, 1
        assert_eq!(recurrence_values(0.0, 4, |_| 0.0), vec![1.0, 0.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn containment_free_jacobi() {
        let bands = BandSet::new(vec![(-2.0, 2.0)], Variable::T, None).unwrap();
        let eigs = periodic_jacobi_eigs(&[0.0], 100).unwrap();
        let rep = containment_report(&bands, &eigs, 0.0, 0).unwrap();
        assert!(rep.pass);
        assert!(rep.outliers.is_empty());
    }

    #[test]
    fn containment_empty_eigs_fails() {
        let bands = BandSet::new(vec![(-2.0, 2.0)], Variable::T, None).unwrap();
        let rep = containment_report(&bands, &[], 1e-6, 10).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.uncovered_bands(), 1);
    }
}
