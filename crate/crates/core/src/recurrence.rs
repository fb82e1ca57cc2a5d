//! Diagonal coefficient sequences and the monic polynomial families they
//! generate through `p_{m+1} = (t + c_m) p_m - p_{m-1}`.
//!
//! All recurrences in the crate use the multiplier `t + c_m`. The
//! `t - alpha_m` form of the periodic Jacobi theory is the same engine with
//! `alpha_m = -c_m`; [`CoeffSeq::alphas`] performs that conversion.

use std::f64::consts::TAU;

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{invalid, Error, Result};
use crate::exactpoly::{rational_from_f64, rational_to_f64, Poly, Polynomial, Scalar};

/// An angle, either an exact rational multiple `2 pi p / q` or a float in
/// radians (for irrational probes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Rational { p: i64, q: u64 },
    Radians(f64),
}

impl Angle {
    /// `2 pi p / q`, reduced to lowest terms.
    pub fn rational(p: i64, q: u64) -> Result<Angle> {
        if q == 0 {
            return Err(invalid("angle denominator must be positive"));
        }
        let g = p.unsigned_abs().gcd(&q).max(1);
        Ok(Angle::Rational { p: p / g as i64, q: q / g })
    }

    pub fn radians(x: f64) -> Result<Angle> {
        if !x.is_finite() {
            return Err(invalid(format!("non-finite angle {x}")));
        }
        Ok(Angle::Radians(x))
    }

    /// `cos(m * angle)`. Rational angles reduce `p m mod q` first, so the
    /// values are exactly periodic.
    pub fn cos_multiple(&self, m: i64) -> f64 {
        match *self {
            Angle::Rational { p, q } => {
                let q = q as i64;
                let k = (p as i128 * m as i128).rem_euclid(q as i128) as i64;
                cos_fraction(k, q)
            }
            Angle::Radians(a) => (a * m as f64).cos(),
        }
    }

    /// Period of `m -> cos(m * angle)` when the angle is rational.
    pub fn period(&self) -> Option<u64> {
        match *self {
            Angle::Rational { q, .. } => Some(q),
            Angle::Radians(_) => None,
        }
    }
}

/// `cos(2 pi k / q)` for `0 <= k < q`, folded into the first quadrant so that
/// symmetric arguments give bit-identical values.
pub(crate) fn cos_fraction(k: i64, q: i64) -> f64 {
    debug_assert!((0..q).contains(&k));
    // cos(2 pi k/q) = cos(2 pi (q-k)/q)
    let k = k.min(q - k);
    // now 0 <= k/q <= 1/2; use cos(pi - x) = -cos(x) past a quarter turn
    if 4 * k == q {
        return 0.0;
    }
    if 4 * k > q {
        let x = TAU * (q - 2 * k) as f64 / (2 * q) as f64;
        -x.cos()
    } else {
        (TAU * k as f64 / q as f64).cos()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoeffKind {
    /// `c_m = values[m mod K]`, stored exactly.
    Periodic(Vec<BigRational>),
    /// `c_m = sigma cos(angle (m + shift))`.
    Cosine { sigma: f64, angle: Angle },
    /// `c_m = sigma sum_l cos(angle_l (m + shift))`.
    MultiCosine { sigma: f64, angles: Vec<Angle> },
}

/// Generator of the diagonal coefficients `c_m`, `m >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq {
    kind: CoeffKind,
    shift: i64,
}

impl CoeffSeq {
    pub fn periodic(values: Vec<BigRational>) -> Result<CoeffSeq> {
        if values.is_empty() {
            return Err(invalid("periodic coefficients need at least one value"));
        }
        Ok(CoeffSeq { kind: CoeffKind::Periodic(values), shift: 0 })
    }

    /// Periodic sequence from doubles, converted exactly.
    pub fn periodic_f64(values: &[f64]) -> Result<CoeffSeq> {
        CoeffSeq::periodic(values.iter().map(|&v| rational_from_f64(v)).collect::<Result<_>>()?)
    }

    /// `c_m = sigma cos(angle (m + shift))`; shift 0 gives the `r` family
    /// coefficients, shift 1 the `s` family.
    pub fn cosine(sigma: f64, angle: Angle, shift: i64) -> Result<CoeffSeq> {
        check_sigma(sigma)?;
        Ok(CoeffSeq { kind: CoeffKind::Cosine { sigma, angle }, shift })
    }

    pub fn multi_cosine(sigma: f64, angles: Vec<Angle>, shift: i64) -> Result<CoeffSeq> {
        check_sigma(sigma)?;
        if angles.is_empty() {
            return Err(invalid("need at least one angle"));
        }
        Ok(CoeffSeq { kind: CoeffKind::MultiCosine { sigma, angles }, shift })
    }

    pub fn kind(&self) -> &CoeffKind {
        &self.kind
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Same generator with the index advanced by `k`.
    pub fn shifted(&self, k: i64) -> CoeffSeq {
        match &self.kind {
            CoeffKind::Periodic(v) => {
                let n = v.len() as i64;
                let s = k.rem_euclid(n) as usize;
                let rotated = v[s..].iter().chain(&v[..s]).cloned().collect();
                CoeffSeq { kind: CoeffKind::Periodic(rotated), shift: 0 }
            }
            _ => CoeffSeq { kind: self.kind.clone(), shift: self.shift + k },
        }
    }

    /// `c_m` as a double.
    pub fn value(&self, m: usize) -> f64 {
        let idx = m as i64 + self.shift;
        match &self.kind {
            CoeffKind::Periodic(v) => rational_to_f64(&v[m % v.len()]),
            CoeffKind::Cosine { sigma, angle } => sigma * angle.cos_multiple(idx),
            CoeffKind::MultiCosine { sigma, angles } => {
                sigma * angles.iter().map(|a| a.cos_multiple(idx)).sum::<f64>()
            }
        }
    }

    /// `c_m` exactly, when the generator is exact.
    pub fn exact_value(&self, m: usize) -> Option<BigRational> {
        match &self.kind {
            CoeffKind::Periodic(v) => Some(v[m % v.len()].clone()),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.kind, CoeffKind::Periodic(_))
    }

    /// Period `K`: the list length, or the lcm of the angle denominators.
    pub fn period(&self) -> Option<usize> {
        match &self.kind {
            CoeffKind::Periodic(v) => Some(v.len()),
            CoeffKind::Cosine { angle, .. } => angle.period().map(|q| q as usize),
            CoeffKind::MultiCosine { angles, .. } => angles
                .iter()
                .try_fold(1u64, |acc, a| a.period().map(|q| acc.lcm(&q)))
                .map(|k| k as usize),
        }
    }

    /// One period of `alpha_m = -c_m` in the `t - alpha_m` convention.
    pub fn alphas(&self) -> Result<Vec<f64>> {
        let k = self.period().ok_or_else(|| invalid("irrational angles have no period"))?;
        Ok((0..k).map(|m| -self.value(m) + 0.0).collect())
    }

    /// Exact `alpha_m`; float generators contribute their rounded values
    /// exactly.
    pub fn exact_alphas(&self) -> Result<Vec<BigRational>> {
        match &self.kind {
            CoeffKind::Periodic(v) => Ok(v.iter().map(|c| -c.clone()).collect()),
            _ => self.alphas()?.into_iter().map(rational_from_f64).collect(),
        }
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if !sigma.is_finite() || sigma == 0.0 {
        return Err(invalid(format!("sigma must be finite and nonzero, got {sigma}")));
    }
    Ok(())
}

/// Which of the two canonical solutions of the recurrence to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Step `m` uses `c_m`.
    R,
    /// Step `m` uses `c_{m+1}`.
    S,
}

impl Variant {
    pub fn shift(self) -> i64 {
        match self {
            Variant::R => 0,
            Variant::S => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::R => "r",
            Variant::S => "s",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "r" => Ok(Variant::R),
            "s" => Ok(Variant::S),
            _ => Err(invalid(format!("variant must be r or s, got {s:?}"))),
        }
    }
}

/// `p_0 .. p_n` of `p_{m+1} = (t + c(m)) p_m - p_{m-1}`, `p_{-1} = 0`,
/// `p_0 = 1`.
pub fn three_term<T: Scalar>(n: usize, c: impl Fn(usize) -> T) -> Vec<Poly<T>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut prev = Poly::zero();
    let mut cur = Poly::one();
    out.push(cur.clone());
    for m in 0..n {
        let next = &(&Poly::linear(c(m)) * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    out
}

/// Monic polynomial family generated from a [`CoeffSeq`].
#[derive(Debug, Clone)]
pub struct OpsFamily {
    pub polys: Vec<Polynomial>,
    pub variant: Variant,
}

impl OpsFamily {
    pub fn degrees(&self) -> Vec<Option<usize>> {
        self.polys.iter().map(Polynomial::degree).collect()
    }

    /// Degrees under the labelling where the second solution starts from
    /// `s_0 = 0, s_1 = 1`, i.e. `s_{m+1} = p_m` for the `S` variant. Entry
    /// `k` is `(k, deg)`; for `S` this gives `deg s_k = k - 1`.
    pub fn labelled_degrees(&self) -> Vec<(usize, usize)> {
        let off = match self.variant {
            Variant::R => 0,
            Variant::S => 1,
        };
        self.polys
            .iter()
            .enumerate()
            .filter_map(|(m, p)| p.degree().map(|d| (m + off, d)))
            .collect()
    }
}

/// Build `p_0 .. p_n`; exact mode when the coefficients are exact.
pub fn generate_ops(coeffs: &CoeffSeq, n: usize, variant: Variant) -> OpsFamily {
    let off = variant.shift() as usize;
    let polys = if coeffs.is_exact() {
        three_term(n, |m| coeffs.exact_value(m + off).expect("exact coefficients"))
            .into_iter()
            .map(Polynomial::Exact)
            .collect()
    } else {
        three_term(n, |m| coeffs.value(m + off))
            .into_iter()
            .map(Polynomial::Float)
            .collect()
    };
    OpsFamily { polys, variant }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaDirection {
    TToLambda,
    LambdaToT,
}

/// `lambda = -t / kappa` and its inverse `t = -kappa lambda`.
pub fn lambda_map(x: f64, kappa: f64, direction: LambdaDirection) -> Result<f64> {
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(invalid(format!("kappa must be finite and nonzero, got {kappa}")));
    }
    // + 0.0 folds -0.0 into 0.0
    Ok(match direction {
        LambdaDirection::TToLambda => -x / kappa + 0.0,
        LambdaDirection::LambdaToT => -kappa * x + 0.0,
    })
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use super::*;
    use crate::exactpoly::real_roots;
    use std::f64::consts::PI;

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    #[test]
    fn cosine_at_pi_alternates() {
        let c = CoeffSeq::cosine(2.0, Angle::rational(1, 2).unwrap(), 0).unwrap();
        assert_eq!([c.value(0), c.value(1), c.value(2)], [2.0, -2.0, 2.0]);
        let f = CoeffSeq::cosine(2.0, Angle::radians(PI).unwrap(), 0).unwrap();
        assert!((f.value(1) + 2.0).abs() < 1e-15);
    }

    #[test]
    fn constant_period_one() {
        let c = CoeffSeq::periodic(ints(&[5])).unwrap();
        assert!((0..10).all(|m| c.value(m) == 5.0));
        assert_eq!(c.period(), Some(1));
    }

    #[test]
    fn multi_cosine_value_and_period() {
        let a = vec![Angle::rational(1, 3).unwrap(), Angle::rational(1, 2).unwrap()];
        let c = CoeffSeq::multi_cosine(2.0, a, 0).unwrap();
        assert_eq!(c.value(0), 4.0);
        assert_eq!(c.period(), Some(6));
    }

    #[test]
    fn invariants_rejected() {
        assert!(CoeffSeq::periodic(vec![]).is_err());
        assert!(CoeffSeq::cosine(0.0, Angle::Radians(1.0), 0).is_err());
        assert!(Angle::rational(1, 0).is_err());
        assert_eq!(Angle::rational(2, 4).unwrap(), Angle::Rational { p: 1, q: 2 });
    }

    #[test]
    fn cosine_recurrence_by_hand() {
        let c = CoeffSeq::cosine(2.0, Angle::rational(1, 2).unwrap(), 0).unwrap();
        let fam = generate_ops(&c, 2, Variant::R);
        let p = &fam.polys;
        assert_eq!(p[1].to_float(), Poly::new(vec![2.0, 1.0]));
        assert_eq!(p[2].to_float(), Poly::new(vec![-5.0, 0.0, 1.0]));
    }

    #[test]
    fn free_jacobi_family() {
        let c = CoeffSeq::periodic(ints(&[0])).unwrap();
        let fam = generate_ops(&c, 3, Variant::R);
        let want = [vec![1], vec![0, 1], vec![-1, 0, 1], vec![0, -2, 0, 1]];
        for (p, w) in fam.polys.iter().zip(want) {
            assert_eq!(p.as_exact().unwrap(), &Poly::from_integers(&w));
        }
    }

    #[test]
    fn n_zero_is_one() {
        let c = CoeffSeq::cosine(0.7, Angle::Radians(0.3), 0).unwrap();
        let fam = generate_ops(&c, 0, Variant::S);
        assert_eq!(fam.polys.len(), 1);
        assert_eq!(fam.polys[0].to_float(), Poly::one());
    }

    #[test]
    fn s_variant_degree_labels() {
        let c = CoeffSeq::periodic(ints(&[1, -2, 3])).unwrap();
        let fam = generate_ops(&c, 5, Variant::S);
        for (k, d) in fam.labelled_degrees() {
            assert_eq!(d, k - 1);
        }
        // s_2 = t + c_1
        assert_eq!(fam.polys[1].as_exact().unwrap(), &Poly::from_integers(&[-2, 1]));
    }

    #[test]
    fn lambda_map_cases() {
        use LambdaDirection::*;
        assert_eq!(lambda_map(2.0, 1.0, TToLambda).unwrap(), -2.0);
        let z = lambda_map(0.0, 3.3, TToLambda).unwrap();
        assert!(z == 0.0 && z.is_sign_positive());
        let l = lambda_map(0.37, 2.5, TToLambda).unwrap();
        assert!((lambda_map(l, 2.5, LambdaToT).unwrap() - 0.37).abs() < 1e-15);
        assert!(lambda_map(1.0, 0.0, TToLambda).is_err());
    }

    #[test]
    fn cosine_periodicity_is_bit_exact() {
        for (p, q) in [(1, 3), (2, 5), (3, 7), (5, 12), (1, 1)] {
            let ang = Angle::rational(p, q).unwrap();
            for shift in [0, 1] {
                let c = CoeffSeq::cosine(1.3, ang, shift).unwrap();
                let per = CoeffSeq::periodic_f64(
                    &(0..q as usize).map(|m| c.value(m)).collect::<Vec<_>>(),
                )
                .unwrap();
                for m in 0..4 * q as usize {
                    assert_eq!(c.value(m), per.value(m), "p/q = {p}/{q}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn cos_fraction_matches_libm() {
        for q in 1..40 {
            for k in 0..q {
                let want = (TAU * k as f64 / q as f64).cos();
                assert!((cos_fraction(k, q) - want).abs() < 4e-15);
            }
        }
    }

    #[test]
    fn interlacing_for_rational_coefficients() {
        let c = CoeffSeq::periodic(vec![
            BigRational::new(3.into(), 2.into()),
            BigRational::new((-1).into(), 3.into()),
            BigRational::zero(),
        ])
        .unwrap();
        let fam = generate_ops(&c, 10, Variant::R);
        for m in 1..10 {
            let a = real_roots(fam.polys[m].as_exact().unwrap(), -6.0, 6.0, 1e-12).unwrap();
            let b = real_roots(fam.polys[m + 1].as_exact().unwrap(), -6.0, 6.0, 1e-12).unwrap();
            assert_eq!(a.len(), m);
            assert_eq!(b.len(), m + 1);
            for (i, x) in a.iter().enumerate() {
                assert!(b[i].value < x.value - 1e-9 && x.value < b[i + 1].value - 1e-9);
            }
        }
    }
}
