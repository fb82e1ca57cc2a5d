//! Verification suites behind `harper-bands verify`.

use std::f64::consts::PI;

use harper_core::bands::{ab_polys, band_set, block_representation, chebyshev_factorization_check, is_one, mathieu_bands, BandOptions};
use harper_core::exactpoly::rational_to_f64;
use harper_core::oracle::{containment_report, periodic_jacobi_eigs};
use harper_core::qseries::{closed_form_deviation, closed_form_exact, odd_vanishing_cases, sine_product_deviation, sigma_k, sigma_k_exact, sigma_limits_report, QContext};
use harper_core::recurrence::{generate_ops, Angle, CoeffSeq, Variant};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::config::Suite;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    /// Extra lines printed under the table row.
    pub notes: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        SuiteResult { name, pass, detail: detail.into(), notes: Vec::new() }
    }
}

fn random_alpha(rng: &mut StdRng, k: usize) -> Vec<BigRational> {
    (0..k)
        .map(|_| BigRational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=9).into()))
        .collect()
}

pub fn wronskian() -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(0x57);
    let mut checked = 0;
    for i in 0..100 {
        let k = 1 + i % 8;
        let tab = ab_polys(&random_alpha(&mut rng, k)).expect("K >= 1");
        for l in -1..=k as i64 - 2 {
            if !is_one(&tab.wronskian(l).expect("index in range")) {
                return SuiteResult::new("wronskian", false, format!("K = {k}, l = {l} is not 1"));
            }
            checked += 1;
        }
    }
    SuiteResult::new("wronskian", true, format!("{checked} determinants equal 1 exactly"))
}

pub fn block() -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(0x71);
    let mut checked = 0;
    for i in 0..20 {
        let k = 1 + i % 6;
        let alpha = random_alpha(&mut rng, k);
        let tab = ab_polys(&alpha).expect("K >= 1");
        let c: Vec<BigRational> = alpha.iter().map(|a| -a.clone()).collect();
        let fam = generate_ops(&CoeffSeq::periodic(c).expect("nonempty"), 5 * k, Variant::S);
        for n in 0..=4 {
            for l in 0..k {
                let ok = match block_representation(&tab, n, l as i64) {
                    Ok(p) => Some(&p) == fam.polys[n * k + l].as_exact(),
                    Err(_) => false,
                };
                if !ok {
                    return SuiteResult::new("block", false, format!("K = {k}, n = {n}, l = {l}"));
                }
                checked += 1;
            }
        }
    }
    SuiteResult::new("block", true, format!("{checked} block formulas equal direct recursion"))
}

pub fn factorization() -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(0x29);
    for k in 1..=6 {
        let tab = ab_polys(&random_alpha(&mut rng, k)).expect("K >= 1");
        for n in 0..=8 {
            if !chebyshev_factorization_check(&tab, n) {
                return SuiteResult::new("factorization", false, format!("K = {k}, n = {n}"));
            }
        }
    }
    SuiteResult::new("factorization", true, "q_n = q_0 U_n(x/2) for K <= 6, n <= 8")
}

pub fn closed_forms() -> SuiteResult {
    let ctxs = [
        ("0.8", QContext::real(0.8)),
        ("exp(i pi/7)", QContext::complex(Complex64::from_polar(1.0, PI / 7.0))),
        ("exp(2 pi i 3/11)", QContext::phase(3, 11)),
    ];
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (label, ctx) in ctxs {
        let d = ctx.and_then(|c| closed_form_deviation(&c, 10, &[1, 2, 3])).unwrap_or(f64::INFINITY);
        notes.push(format!("w = {label}: max relative deviation {d:.3e}"));
        worst = worst.max(d);
    }
    let exact = closed_form_exact(&BigRational::from_integer(2.into()), 10, &[1, 2, 3]).unwrap_or(false);
    notes.push(format!("w = 2: exact agreement {exact}"));
    let mut r = SuiteResult::new("closed-forms", worst <= 1e-10 && exact, format!("max relative deviation {worst:.3e}"));
    r.notes = notes;
    r
}

/// Vanishing of odd coefficients at roots of unity for `2r < n`; the
/// boundary `2r = n` is reported, not judged.
pub fn odd_vanishing() -> SuiteResult {
    let strict = odd_vanishing_cases(20, true).unwrap_or_default();
    let worst = strict.iter().map(|c| c.abs).fold(0.0, f64::max);
    let exact = strict.iter().filter(|c| c.exact_zero).count();
    let boundary: Vec<_> = odd_vanishing_cases(20, false)
        .unwrap_or_default()
        .into_iter()
        .filter(|c| 2 * c.r == c.n)
        .collect();
    let bmin = boundary.iter().map(|c| c.abs).fold(f64::INFINITY, f64::min);
    let bmax = boundary.iter().map(|c| c.abs).fold(0.0, f64::max);
    let mut r = SuiteResult::new(
        "odd-vanishing",
        !strict.is_empty() && worst <= 1e-10,
        format!("max |B| = {worst:.3e} over {} cases with 2r < n, n <= 20 ({exact} exactly zero)", strict.len()),
    );
    r.notes.push(format!(
        "boundary 2r = n: {} cases, |B| in [{bmin:.6}, {bmax:.6}] (does not vanish)",
        boundary.len()
    ));
    r
}

pub fn sine_product(max_degree: usize) -> SuiteResult {
    match sine_product_deviation(max_degree) {
        Ok(d) => SuiteResult::new(
            "sine-product",
            d <= 1e-10,
            format!("max relative deviation {d:.3e} for odd degrees <= {max_degree}"),
        ),
        Err(e) => SuiteResult::new("sine-product", false, e.to_string()),
    }
}

pub fn sigma() -> SuiteResult {
    let zero = (1..=25).map(|l| sigma_k(4 * l).abs()).fold(0.0, f64::max);
    let exact = sigma_k_exact(4).map(|v| v == BigRational::from_integer(0.into())).unwrap_or(false);
    let rows = sigma_limits_report(50).unwrap_or_default();
    let at = |l: usize| rows.get(l).map(|r| r.deviation).unwrap_or([f64::INFINITY; 4]);
    let d50 = at(50);
    let limits = d50[1] <= 1e-3 && d50[2] <= 1e-3 && d50[3] <= 1e-3;
    let mono = (1..4).all(|j| at(10)[j] > at(20)[j] && at(20)[j] > at(50)[j]);
    let mut r = SuiteResult::new(
        "sigma",
        zero <= 1e-9 && exact && limits && mono,
        format!("max |sigma_4L| = {zero:.3e} (L <= 25), L = 50 deviations {:.3e} {:.3e} {:.3e}", d50[1], d50[2], d50[3]),
    );
    r.notes.push(format!("sigma_4 = {:.3e}, zero in exact arithmetic: {exact}", sigma_k(4) + 0.0));
    r.notes.push(format!("deviations decrease over L = 10, 20, 50: {mono}"));
    r
}

/// Twenty sampled Mathieu problems, finite sections of size 400.
pub fn containment() -> SuiteResult {
    let mut rng = StdRng::seed_from_u64(0xc0);
    let mut worst = String::new();
    for _ in 0..20 {
        let q = rng.gen_range(1..=6u64);
        let p = loop {
            let p = rng.gen_range(0..q as i64);
            if p.unsigned_abs().gcd(&q) == 1 {
                break p;
            }
        };
        let kappa = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let ok = (|| -> Option<bool> {
            let bands = mathieu_bands(kappa, p, q, Variant::R, BandOptions::default()).ok()?;
            let seq = CoeffSeq::cosine(2.0 / kappa, Angle::rational(p, q).ok()?, 0).ok()?;
            let eigs: Vec<f64> = periodic_jacobi_eigs(&seq.alphas().ok()?, 400)
                .ok()?
                .into_iter()
                .map(|t| -t / kappa)
                .collect();
            let rep = containment_report(&bands, &eigs, 1e-6, 2 * q as usize + 2).ok()?;
            Some(rep.pass)
        })();
        if ok != Some(true) {
            worst = format!("kappa = {kappa}, p/q = {p}/{q}");
            break;
        }
    }
    // plus random rational diagonals
    if worst.is_empty() {
        for i in 0..10 {
            let k = 1 + i % 6;
            let alpha = random_alpha(&mut rng, k);
            let af: Vec<f64> = alpha.iter().map(rational_to_f64).collect();
            let ok = ab_polys(&alpha)
                .and_then(|t| band_set(&t, BandOptions::default()))
                .and_then(|b| {
                    let e = periodic_jacobi_eigs(&af, 400)?;
                    containment_report(&b, &e, 1e-6, 2 * k + 2)
                })
                .map(|r| r.pass)
                .unwrap_or(false);
            if !ok {
                worst = format!("alpha = {af:?}");
                break;
            }
        }
    }
    if worst.is_empty() {
        SuiteResult::new("containment", true, "30 problems within the 2K+2 outlier budget")
    } else {
        SuiteResult::new("containment", false, format!("failed at {worst}"))
    }
}

pub fn run(suite: Suite, max_degree: usize) -> Vec<SuiteResult> {
    let all = suite == Suite::All;
    let mut out = Vec::new();
    if all || suite == Suite::Wronskian {
        out.push(wronskian());
    }
    if all || suite == Suite::Block {
        out.push(block());
    }
    if all || suite == Suite::Factorization {
        out.push(factorization());
    }
    if all || suite == Suite::ClosedForms {
        out.push(closed_forms());
    }
    if all || suite == Suite::OddVanishing {
        out.push(odd_vanishing());
    }
    if all || suite == Suite::SineProduct {
        out.push(sine_product(max_degree));
    }
    if all || suite == Suite::Sigma {
        out.push(sigma());
    }
    if all || suite == Suite::Containment {
        out.push(containment());
    }
    out
}

pub fn render(results: &[SuiteResult]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str(&format!("{:<14} {:<4}  {}\n", r.name, if r.pass { "PASS" } else { "FAIL" }, r.detail));
        for n in &r.notes {
            s.push_str(&format!("{:<20}{}\n", "", n));
        }
    }
    s
}
