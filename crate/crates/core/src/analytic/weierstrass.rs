//! The Weierstrass pe function on the lattice pi Z + pi tau Z, and the
//! classical Eisenstein series.
//!
//! The theta route is primary:
//!   pe(z|tau) = -(theta1'/theta1)'(z|tau) - E2(tau)/3,
//! with E2(tau) = 1 - 24 sum n q^n/(1-q^n). The lattice route is the oracle:
//! the defining double sum truncated over expanding square shells (Eisenstein
//! ordering; the sum is only conditionally convergent).

use super::theta::theta1_logderiv_deriv;
use super::{lattice_distance, EvalConfig, EvalError, HalfPlanePoint, PI_C};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Evaluation route for [`weierstrass_p`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WpMode {
    Theta,
    Lattice,
}

/// pe(z | tau).
pub fn weierstrass_p(
    z: Complex64,
    hp: &HalfPlanePoint,
    mode: WpMode,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    match mode {
        WpMode::Theta => Ok(-theta1_logderiv_deriv(1, z, hp, cfg)? - e2(hp, cfg)? / 3.0),
        WpMode::Lattice => wp_lattice(z, hp, cfg),
    }
}

/// l-th z-derivative of pe, via pe^{(l)} = -(theta1'/theta1)^{(l+1)}.
pub fn weierstrass_p_deriv(
    l: u32,
    z: Complex64,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    if l == 0 {
        return weierstrass_p(z, hp, WpMode::Theta, cfg);
    }
    Ok(-theta1_logderiv_deriv(l + 1, z, hp, cfg)?)
}

fn wp_lattice(z: Complex64, hp: &HalfPlanePoint, cfg: &EvalConfig) -> Result<Complex64, EvalError> {
    let w1 = PI_C;
    let w2 = PI_C * hp.tau();
    let dist = lattice_distance(z, w1, w2);
    if dist < cfg.pole_radius {
        return Err(EvalError::PoleProximity { what: "pe lattice", distance: dist });
    }
    let m_max = cfg.lattice_cutoff as i64;
    let mut acc = z.powi(-2);
    for r in 1..=m_max {
        // the square shell max(|m|, |n|) = r
        let mut shell = Complex64::new(0.0, 0.0);
        let mut add = |m: i64, n: i64| {
            let w = w1 * m as f64 + w2 * n as f64;
            shell += (z + w).powi(-2) - w.powi(-2);
        };
        for m in -r..=r {
            add(m, r);
            add(m, -r);
        }
        for n in (-r + 1)..r {
            add(r, n);
            add(-r, n);
        }
        acc += shell;
    }
    Ok(acc)
}

/// E_2(tau) = 1 - 24 sum_{n>=1} n q^n / (1 - q^n).
pub fn e2(hp: &HalfPlanePoint, cfg: &EvalConfig) -> Result<Complex64, EvalError> {
    let q = hp.q();
    let aq = q.norm();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut qn = q;
    for n in 1..cfg.max_terms {
        acc -= 24.0 * n as f64 * qn / (1.0 - qn);
        let tail = 48.0 * (n as f64 + 1.0) * qn.norm() * aq / (1.0 - aq).powi(2);
        qn *= q;
        if tail < cfg.tail_tol * acc.norm().max(1.0) {
            return Ok(acc);
        }
    }
    Err(EvalError::CutoffExhausted { what: "E2 Lambert series" })
}

/// Classical Eisenstein E_{2k}(tau) = pi^{-2k} sum' (m + n tau)^{-2k} by the
/// truncated lattice sum (weight >= 4).
pub fn e2k_classical_lattice(
    weight: u32,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    if weight < 4 || weight % 2 != 0 {
        return Err(EvalError::InvalidWeight { weight });
    }
    let tau = hp.tau();
    let m_max = cfg.lattice_cutoff as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -m_max..=m_max {
        // center the m-window on the minimum of |m + n tau|
        let shift = -((n as f64) * tau.re).round() as i64;
        for m in (shift - m_max)..=(shift + m_max) {
            if m == 0 && n == 0 {
                continue;
            }
            let w = Complex64::new(m as f64, 0.0) + tau * n as f64;
            acc += w.powi(-(weight as i32));
        }
    }
    Ok(acc / PI_C.re.powi(weight as i32))
}

/// Classical Eisenstein E_{2k}(tau) via the q-expansion
///   E_{2k} = (-1)^{k+1} B_{2k} 2^{2k}/(2k)! [1 - (4k/B_{2k}) sum sigma_{2k-1}(n) q^n].
pub fn e2k_classical_qexp(
    weight: u32,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    if weight < 2 || weight % 2 != 0 {
        return Err(EvalError::InvalidWeight { weight });
    }
    let k = (weight / 2) as i64;
    let b2k = bernoulli(weight as usize);
    // (-1)^{k+1} B_{2k} 2^{2k} / (2k)!
    let mut fact = BigRational::one();
    for j in 1..=weight as u64 {
        fact *= BigRational::from_integer(BigInt::from(j));
    }
    let sign = if (k + 1) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let front = sign * &b2k * BigRational::from_integer(BigInt::one() << weight) / fact;
    let coeff = BigRational::from_integer(BigInt::from(-4 * k)) / &b2k;

    let q = hp.q();
    let aq = q.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = q;
    for n in 1..cfg.max_terms as u64 {
        let sigma: f64 = crate::arith::divisors(n).iter().map(|&d| (d as f64).powi(weight as i32 - 1)).sum();
        sum += sigma * qn;
        let tail = 2.0 * ((n + 1) as f64).powi(weight as i32) * qn.norm() * aq / (1.0 - aq);
        qn *= q;
        if tail < cfg.tail_tol {
            let front = front.to_f64().unwrap();
            let coeff = coeff.to_f64().unwrap();
            return Ok(front * (1.0 + coeff * sum));
        }
    }
    Err(EvalError::CutoffExhausted { what: "E2k q-expansion" })
}

/// Bernoulli number B_n (B_1 = -1/2 convention), memoized.
pub fn bernoulli(n: usize) -> BigRational {
    static CACHE: OnceLock<Mutex<HashMap<usize, BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return b.clone();
    }
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    let mut bs: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, j)
        for (j, bj) in bs.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * (m as i64 + 1 - j as i64) / (j as i64 + 1);
        }
        bs.push(-acc / BigRational::from_integer(BigInt::from(m as i64 + 1)));
    }
    let result = bs[n].clone();
    let mut guard = cache.lock().unwrap();
    for (i, b) in bs.into_iter().enumerate() {
        guard.entry(i).or_insert(b);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn hp(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(re, im)).unwrap()
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn bernoulli_values() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(bernoulli(0), r(1, 1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(6), r(1, 42));
        assert_eq!(bernoulli(12), r(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn e2_at_small_q_and_periodicity() {
        // deep point: q ~ e^{-12 pi}, E2 -> 1
        let deep = hp(0.0, 6.0);
        assert!((e2(&deep, &cfg()).unwrap() - 1.0).norm() < 1e-14);
        // E2(tau + 1) = E2(tau)
        let a = e2(&hp(0.2, 1.1), &cfg()).unwrap();
        let b = e2(&hp(1.2, 1.1), &cfg()).unwrap();
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn e2k_lattice_vs_qexp() {
        // E4 at tau = 1.3i (and E6 for good measure)
        let hp0 = hp(0.0, 1.3);
        for weight in [4u32, 6] {
            let lat = e2k_classical_lattice(weight, &hp0, &cfg()).unwrap();
            let qe = e2k_classical_qexp(weight, &hp0, &cfg()).unwrap();
            let rel = (lat - qe).norm() / qe.norm();
            assert!(rel <= 1e-6, "weight {weight}: rel err {rel:.2e}");
        }
        // weight 2 lattice is rejected (conditionally convergent)
        assert!(matches!(
            e2k_classical_lattice(2, &hp0, &cfg()),
            Err(EvalError::InvalidWeight { weight: 2 })
        ));
    }

    #[test]
    fn e2k_periodicity() {
        for weight in [4u32, 6] {
            let a = e2k_classical_qexp(weight, &hp(0.15, 1.2), &cfg()).unwrap();
            let b = e2k_classical_qexp(weight, &hp(1.15, 1.2), &cfg()).unwrap();
            assert!((a - b).norm() < 1e-12 * a.norm());
        }
    }

    #[test]
    fn e4_normalization() {
        // E4(tau) = (1/45)(1 + 240 q + ...) at a deep point: close to 1/45
        let deep = hp(0.0, 8.0);
        let v = e2k_classical_qexp(4, &deep, &cfg()).unwrap();
        assert!((v.re - 1.0 / 45.0).abs() < 1e-12);
    }

    #[test]
    fn wp_even_and_periodic() {
        let mut rng = StdRng::seed_from_u64(3);
        let c = cfg();
        for _ in 0..10 {
            let hp0 = hp(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.5));
            let z = Complex64::new(rng.gen_range(0.3..1.0), rng.gen_range(0.1..0.6));
            let p = |w| weierstrass_p(w, &hp0, WpMode::Theta, &c).unwrap();
            let v = p(z);
            assert!((p(-z) - v).norm() <= 1e-12 * v.norm().max(1.0), "even");
            assert!((p(z + PI_C) - v).norm() <= 1e-10 * v.norm().max(1.0), "period pi");
            assert!(
                (p(z + PI_C * hp0.tau()) - v).norm() <= 1e-10 * v.norm().max(1.0),
                "period pi tau"
            );
        }
    }

    #[test]
    fn wp_theta_vs_lattice_oracle() {
        let mut cfg400 = cfg();
        cfg400.lattice_cutoff = 400;
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..6 {
            let hp0 = hp(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.5));
            let z = Complex64::new(rng.gen_range(0.3..1.2), rng.gen_range(-0.5..0.5));
            let t = weierstrass_p(z, &hp0, WpMode::Theta, &cfg400).unwrap();
            let l = weierstrass_p(z, &hp0, WpMode::Lattice, &cfg400).unwrap();
            assert!((t - l).norm() <= 1e-4 * t.norm().max(1.0), "z={z} tau={}", hp0.tau());
        }
    }

    #[test]
    fn wp_laurent_leading_term() {
        // z^2 pe(z) -> 1 along a ray towards 0
        let hp0 = hp(0.1, 1.0);
        let mut c = cfg();
        c.pole_radius = 1e-9;
        let dir = Complex64::new(0.6, 0.35);
        for t in [1e-2, 1e-3] {
            let z = dir * t;
            let v = weierstrass_p(z, &hp0, WpMode::Theta, &c).unwrap();
            assert!((z * z * v - 1.0).norm() < 1e-3, "t={t}");
        }
    }

    #[test]
    fn wp_pole_rejection_in_lattice_mode() {
        let hp0 = hp(0.0, 1.0);
        let z = PI_C * hp0.tau() + Complex64::new(0.01, 0.0);
        assert!(matches!(
            weierstrass_p(z, &hp0, WpMode::Lattice, &cfg()),
            Err(EvalError::PoleProximity { .. })
        ));
    }

    #[test]
    fn wp_derivative_consistency() {
        let hp0 = hp(0.2, 1.1);
        let z = Complex64::new(0.7, 0.2);
        let c = cfg();
        let h = 1e-5;
        for l in 1..=2u32 {
            let d = weierstrass_p_deriv(l, z, &hp0, &c).unwrap();
            let f = |w| weierstrass_p_deriv(l - 1, w, &hp0, &c).unwrap();
            let fd = (f(z + h) - f(z - h)) / (2.0 * h);
            assert!((d - fd).norm() < 1e-6 * d.norm().max(1.0), "l={l}");
        }
    }
}
