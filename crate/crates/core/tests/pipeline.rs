// Cross-module checks: band sets against finite sections, recurrences
// against brute-force evaluation.

use harper_core::bands::{ab_polys, band_set, mathieu_bands, BandOptions};
use harper_core::exactpoly::rational_to_f64;
use harper_core::oracle::{containment_report, periodic_jacobi_eigs, recurrence_values};
use harper_core::exactpoly::real_roots;
use harper_core::recurrence::{generate_ops, Angle, CoeffSeq, Variant};
use num_rational::BigRational;
use num_integer::Integer;
use rand::{Rng, SeedableRng};

fn random_alpha(rng: &mut impl Rng, k: usize) -> Vec<BigRational> {
    (0..k)
        .map(|_| BigRational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=8).into()))
        .collect()
}

#[test]
fn random_periodic_bands_contain_sections() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..12 {
        let k = rng.gen_range(1..=6);
        let alpha = random_alpha(&mut rng, k);
        let af: Vec<f64> = alpha.iter().map(rational_to_f64).collect();
        let bands = band_set(&ab_polys(&alpha).unwrap(), BandOptions::default()).unwrap();
        let eigs = periodic_jacobi_eigs(&af, 400).unwrap();
        let rep = containment_report(&bands, &eigs, 1e-6, 2 * k + 2).unwrap();
        assert!(rep.pass, "alpha = {af:?}: {rep:?}");
    }
}

#[test]
fn k2_anchor_containment() {
    let alpha = [-2.0, 2.0];
    let bands = band_set(&ab_polys(&alpha).unwrap(), BandOptions::default()).unwrap();
    let eigs = periodic_jacobi_eigs(&alpha, 400).unwrap();
    let rep = containment_report(&bands, &eigs, 1e-6, 6).unwrap();
    assert!(rep.pass, "{rep:?}");
}

#[test]
fn mathieu_bands_contain_sections() {
    for kappa in [0.5, 1.0, 2.0] {
        for q in 1..=6u64 {
            for p in 0..q as i64 {
                if p.unsigned_abs().gcd(&q) != 1 {
                    continue;
                }
                let bands = mathieu_bands(kappa, p, q, Variant::R, BandOptions::default()).unwrap();
                let seq = CoeffSeq::cosine(2.0 / kappa, Angle::rational(p, q).unwrap(), 0).unwrap();
                let eigs: Vec<f64> = periodic_jacobi_eigs(&seq.alphas().unwrap(), 400)
                    .unwrap()
                    .into_iter()
                    .map(|t| -t / kappa)
                    .collect();
                let rep = containment_report(&bands, &eigs, 1e-6, 2 * q as usize + 2).unwrap();
                assert!(rep.pass, "kappa={kappa} p/q={p}/{q}: {rep:?}");
            }
        }
    }
}

#[test]
fn float_family_matches_brute_force() {
    let seq = CoeffSeq::cosine(1.3, Angle::radians(0.71).unwrap(), 0).unwrap();
    let fam = generate_ops(&seq, 15, Variant::R);
    for t in [-2.1, -0.4, 0.0, 0.9, 1.7] {
        let vals = recurrence_values(t, 15, |m| seq.value(m));
        for (p, v) in fam.polys.iter().zip(&vals) {
            let got = p.to_float().eval(&t);
            assert!((got - v).abs() <= 1e-9 * (1.0 + v.abs()));
        }
    }
}

#[test]
fn rational_families_interlace() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(99);
    for _ in 0..10 {
        let k = rng.gen_range(1..=5);
        let c = random_alpha(&mut rng, k);
        let fam = generate_ops(&CoeffSeq::periodic(c).unwrap(), 10, Variant::R);
        for m in 1..10 {
            let a = real_roots(fam.polys[m].as_exact().unwrap(), -40.0, 40.0, 1e-12).unwrap();
            let b = real_roots(fam.polys[m + 1].as_exact().unwrap(), -40.0, 40.0, 1e-12).unwrap();
            assert_eq!((a.len(), b.len()), (m, m + 1));
            // roots can sit closer than 1e-12; brackets are half-open (lo, hi]
            for (i, x) in a.iter().enumerate() {
                assert!(b[i].hi <= x.lo && x.hi <= b[i + 1].lo, "m = {m}, i = {i}");
            }
        }
    }
}
