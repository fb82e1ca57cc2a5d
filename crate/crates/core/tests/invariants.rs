// Property tests over random inputs for the exact and float engines.

use harper_core::bands::{ab_polys, block_representation, chebyshev_factorization_check, is_one};
use harper_core::exactpoly::{chebyshev_u, rational_from_f64, rational_to_f64, real_roots, Poly};
use harper_core::qseries::a_poly;
use harper_core::recurrence::{generate_ops, CoeffSeq, Variant};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn exact_poly(max_len: usize) -> impl Strategy<Value = Poly<BigRational>> {
    prop::collection::vec(rat(), 0..=max_len).prop_map(Poly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_ring_laws(a in exact_poly(6), b in exact_poly(6), c in exact_poly(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }
    }

    #[test]
    fn sturm_count_matches_grid(roots in prop::collection::btree_set(-60i64..=60, 1..=12)) {
        // simple roots at r/10, so a grid of step 1/20 separates them
        let mut p = Poly::<BigRational>::one();
        for &r in &roots {
            p = &p * &Poly::linear(-BigRational::new(r.into(), 10.into()));
        }
        let found = real_roots(&p, -6.05, 6.05, 1e-12).unwrap();
        let f = p.to_f64();
        let mut changes = 0;
        let mut last = f.eval(&-6.05).signum();
        for i in 1..=242 {
            let x = -6.05 + i as f64 * 0.05;
            let s = f.eval(&x).signum();
            if s != last { changes += 1; }
            last = s;
        }
        prop_assert_eq!(found.len(), roots.len());
        prop_assert_eq!(changes, roots.len());
        for (got, &r) in found.iter().zip(&roots) {
            prop_assert!((got.value - r as f64 / 10.0).abs() < 1e-11);
        }
    }

    #[test]
    fn wronskian_is_one(alpha in prop::collection::vec(rat(), 1..=8)) {
        let tab = ab_polys(&alpha).unwrap();
        for l in -1..=alpha.len() as i64 - 2 {
            prop_assert!(is_one(&tab.wronskian(l).unwrap()));
        }
    }

    #[test]
    fn block_formula(alpha in prop::collection::vec(rat(), 1..=6)) {
        let k = alpha.len();
        let tab = ab_polys(&alpha).unwrap();
        let c: Vec<BigRational> = alpha.iter().map(|a| -a.clone()).collect();
        let fam = generate_ops(&CoeffSeq::periodic(c).unwrap(), 5 * k, Variant::S);
        for n in 0..=4 {
            for l in 0..k {
                let got = block_representation(&tab, n, l as i64).unwrap();
                prop_assert_eq!(Some(&got), fam.polys[n * k + l].as_exact());
            }
        }
    }

    #[test]
    fn factorization(alpha in prop::collection::vec(rat(), 1..=6), n in 0usize..=8) {
        prop_assert!(chebyshev_factorization_check(&ab_polys(&alpha).unwrap(), n));
    }

    #[test]
    fn a_poly_parity(xi in prop::collection::vec(rat(), 0..=10)) {
        let n = xi.len();
        let a = a_poly(&xi, n).unwrap();
        for (k, c) in a.coeffs().iter().enumerate() {
            if (n + k) % 2 == 1 {
                prop_assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn r_family_monic(c in prop::collection::vec(rat(), 1..=5), n in 0usize..=12) {
        let fam = generate_ops(&CoeffSeq::periodic(c).unwrap(), n, Variant::R);
        for (m, p) in fam.polys.iter().enumerate() {
            prop_assert_eq!(p.degree(), Some(m));
            prop_assert!(p.is_monic());
        }
    }
}

#[test]
fn chebyshev_trig_identity() {
    for n in 0..=30 {
        // float Horner on the monomial form cancels badly for large n, so
        // evaluate exactly at the rounded cosine
        let u = chebyshev_u::<BigRational>(n);
        for i in 1..100 {
            let th = std::f64::consts::PI * i as f64 / 100.0;
            let want = ((n + 1) as f64 * th).sin() / th.sin();
            let got = rational_to_f64(&u.eval(&rational_from_f64(th.cos()).unwrap()));
            assert!((got - want).abs() < 1e-12 * (1.0 + want.abs()), "n = {n}, theta = {th}");
        }
    }
}
