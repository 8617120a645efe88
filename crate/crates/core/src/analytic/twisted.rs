//! The character-twisted sums and their Eisenstein series.
//!
//! For an even Dirichlet character chi mod N:
//!
//!   g(z|tau;chi) = sum_{k=1}^{N-1} chi(k) theta1'/theta1 (z + k pi tau | N tau)
//!                = 4 sum_{n>=1} [sum_k chi(k) q^{kn}] / (1 - q^{Nn}) sin 2nz,
//!
//! and its companion (the image under tau -> -1/(N tau)):
//!
//!   (1/tau) g(z/tau | -1/(N tau); chi)
//!     = sum_k chi(k) cot(z - k pi/N) + 4 sum_n g_n(chi) q^n/(1-q^n) sin 2nz,
//!
//! with g_n(chi) the Gauss sums. The twisted Eisenstein series are
//!
//!   E_{2k}(tau, chi) = pi^{-2k} sum_{m,n} chi(n) (m + n tau)^{-2k},
//!   F_{2k}(tau, chi) = N^{2k} pi^{-2k} sum_{m,n} chi(m) (m + n N tau)^{-2k},
//!
//! summed over shifted symmetric windows (absolutely convergent for 2k >= 4,
//! so the exhaustion order is immaterial; the shifts keep skew lattices
//! accurate at a fixed cutoff).

use super::theta::{cot_derivative, theta1_logderiv};
use super::weierstrass::bernoulli;
use super::{real_comb_distance, EvalConfig, EvalError, HalfPlanePoint, PI_C};
use crate::characters::DirichletCharacter;
use num_complex::Complex64;
use num_traits::ToPrimitive;

/// Evaluation route for [`g_twisted`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GMode {
    /// Sum of shifted theta1 log-derivatives at parameter N tau.
    ThetaShift,
    /// The sine series; converges for |Im z| < pi Im tau.
    SineSeries,
}

/// Evaluation route for [`cot_coefficient_b`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BMode {
    /// (1/l!) sum_k chi(k) cot^{(l)}(k pi / N).
    Derivative,
    /// (N/pi)^{l+1} sum_{m != 0} chi(m) / m^{l+1}, via Hurwitz zeta.
    LValue,
}

fn require_even(chi: &DirichletCharacter) -> Result<(), EvalError> {
    if chi.is_even() {
        Ok(())
    } else {
        Err(EvalError::OddCharacter { modulus: chi.modulus() })
    }
}

/// g(z | tau; chi) for an even character chi.
pub fn g_twisted(
    z: Complex64,
    hp: &HalfPlanePoint,
    chi: &DirichletCharacter,
    mode: GMode,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    require_even(chi)?;
    let n = chi.modulus();
    match mode {
        GMode::ThetaShift => {
            let hp_n = hp.scale(n as f64);
            let tau = hp.tau();
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..n {
                let c = chi.eval_complex(k as i64);
                if c.norm() == 0.0 {
                    continue;
                }
                acc += c * theta1_logderiv(z + PI_C * tau * k as f64, &hp_n, cfg)?;
            }
            Ok(acc)
        }
        GMode::SineSeries => {
            let q = hp.q();
            let aq = q.norm();
            let ratio = aq * (2.0 * z.im.abs()).exp();
            if ratio >= 0.995 {
                return Err(EvalError::StripViolation { ratio });
            }
            let chi_vals: Vec<Complex64> =
                (0..n).map(|k| chi.eval_complex(k as i64)).collect();
            let mut acc = Complex64::new(0.0, 0.0);
            let mut qn = q; // q^n
            for t in 1..cfg.max_terms {
                let mut num = Complex64::new(0.0, 0.0);
                let mut qkn = qn; // q^{kn}
                for chi_k in chi_vals.iter().skip(1) {
                    if chi_k.norm() != 0.0 {
                        num += chi_k * qkn;
                    }
                    qkn *= qn;
                }
                // here qkn = q^{Nn}
                acc += 4.0 * num / (1.0 - qkn) * (2.0 * t as f64 * z).sin();
                let tail = 8.0 * n as f64 * ratio.powi(t as i32 + 1) / (1.0 - ratio);
                qn *= q;
                if tail < cfg.tail_tol * (1.0 + acc.norm()) {
                    return Ok(acc);
                }
            }
            Err(EvalError::CutoffExhausted { what: "g sine series" })
        }
    }
}

/// sum_k chi(k) cot(z - k pi / N).
pub fn cot_sum_twisted(
    z: Complex64,
    chi: &DirichletCharacter,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    let n = chi.modulus();
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let c = chi.eval_complex(k as i64);
        if c.norm() == 0.0 {
            continue;
        }
        let pole = real_comb_distance(z, k as f64 * PI_C.re / n as f64, PI_C.re);
        if pole < cfg.pole_radius {
            return Err(EvalError::PoleProximity { what: "cotangent", distance: pole });
        }
        let w = z - PI_C * (k as f64) / (n as f64);
        acc += c * w.cos() / w.sin();
    }
    Ok(acc)
}

/// Gauss sums g_n(chi) for n = 0..N-1 as complex values (period N in n).
fn gauss_values(chi: &DirichletCharacter) -> Vec<Complex64> {
    (0..chi.modulus()).map(|t| chi.gauss_sum(t as i64).to_complex()).collect()
}

/// The companion sum_k chi(k) cot(z - k pi/N) + 4 sum_n g_n(chi) q^n/(1-q^n) sin 2nz.
/// Equals (1/tau) g(z/tau | -1/(N tau); chi).
pub fn g_companion(
    z: Complex64,
    hp: &HalfPlanePoint,
    chi: &DirichletCharacter,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    require_even(chi)?;
    let n = chi.modulus();
    let cot_part = cot_sum_twisted(z, chi, cfg)?;
    let g_vals = gauss_values(chi);
    let q = hp.q();
    let aq = q.norm();
    let ratio = aq * (2.0 * z.im.abs()).exp();
    if ratio >= 0.995 {
        return Err(EvalError::StripViolation { ratio });
    }
    let mut acc = cot_part;
    let mut qn = q;
    for t in 1..cfg.max_terms {
        let g = g_vals[(t as u64 % n) as usize];
        if g.norm() != 0.0 {
            acc += 4.0 * g * qn / (1.0 - qn) * (2.0 * t as f64 * z).sin();
        }
        let tail = 8.0 * n as f64 * ratio.powi(t as i32 + 1) / ((1.0 - aq) * (1.0 - ratio));
        qn *= q;
        if tail < cfg.tail_tol * (1.0 + acc.norm()) {
            return Ok(acc);
        }
    }
    Err(EvalError::CutoffExhausted { what: "companion Gauss-sum series" })
}

/// sum_{n>=1} w(n) q^{sn}/(1 - q^{sn}) sin(2 a n z), for |w| <= 1 weights.
pub fn lambert_sine_sum(
    w: &dyn Fn(u64) -> Complex64,
    s: u64,
    a: u64,
    z: Complex64,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    let qs = hp.q().powu(s as u32);
    let aqs = qs.norm();
    let ratio = aqs * (2.0 * a as f64 * z.im.abs()).exp();
    if ratio >= 0.995 {
        return Err(EvalError::StripViolation { ratio });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qsn = qs;
    for t in 1..cfg.max_terms {
        let wt = w(t as u64);
        if wt.norm() != 0.0 {
            acc += wt * qsn / (1.0 - qsn) * (2.0 * (a * t as u64) as f64 * z).sin();
        }
        let tail = 4.0 * ratio.powi(t as i32 + 1) / ((1.0 - aqs) * (1.0 - ratio));
        qsn *= qs;
        if tail < cfg.tail_tol * (1.0 + acc.norm()) {
            return Ok(acc);
        }
    }
    Err(EvalError::CutoffExhausted { what: "Lambert sine series" })
}

/// E_{2k}(tau, chi) by the truncated lattice double sum (even chi, 2k >= 4).
pub fn eisenstein_e_lattice(
    chi: &DirichletCharacter,
    weight: u32,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    require_even(chi)?;
    eisenstein_e_lattice_unchecked(chi, weight, hp, cfg)
}

/// The same lattice sum without the parity gate; for an odd character the
/// symmetric windows cancel pairwise and the value is exactly zero, which is
/// a useful check of the summation itself.
pub fn eisenstein_e_lattice_unchecked(
    chi: &DirichletCharacter,
    weight: u32,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    if weight < 4 || weight % 2 != 0 {
        return Err(EvalError::InvalidWeight { weight });
    }
    let tau = hp.tau();
    let m_max = cfg.lattice_cutoff as i64;
    let nmod = chi.modulus() as i64;
    // whole character periods in the chi direction
    let n_half = nmod * ((m_max + nmod - 1) / nmod);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -n_half..=n_half {
        let c = chi.eval_complex(n);
        if c.norm() == 0.0 {
            continue;
        }
        let shift = -((n as f64) * tau.re).round() as i64;
        let mut line = Complex64::new(0.0, 0.0);
        for m in (shift - m_max)..=(shift + m_max) {
            if m == 0 && n == 0 {
                continue;
            }
            let w = Complex64::new(m as f64, 0.0) + tau * n as f64;
            line += w.powi(-(weight as i32));
        }
        acc += c * line;
    }
    Ok(acc / PI_C.re.powi(weight as i32))
}

/// F_{2k}(tau, chi) by the truncated lattice double sum (even chi, 2k >= 4).
pub fn eisenstein_f_lattice(
    chi: &DirichletCharacter,
    weight: u32,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    require_even(chi)?;
    if weight < 4 || weight % 2 != 0 {
        return Err(EvalError::InvalidWeight { weight });
    }
    let nmod = chi.modulus();
    let ntau = hp.tau() * nmod as f64;
    let m_max = cfg.lattice_cutoff as i64;
    let half = nmod as i64 * ((m_max + nmod as i64 - 1) / nmod as i64);
    let mut acc = Complex64::new(0.0, 0.0);
    for n in -m_max..=m_max {
        let shift = -((n as f64) * ntau.re).round() as i64;
        let mut line = Complex64::new(0.0, 0.0);
        for m in (shift - half)..=(shift + half) {
            if m == 0 && n == 0 {
                continue;
            }
            let c = chi.eval_complex(m);
            if c.norm() == 0.0 {
                continue;
            }
            let w = Complex64::new(m as f64, 0.0) + ntau * n as f64;
            line += c * w.powi(-(weight as i32));
        }
        acc += line;
    }
    Ok(acc * (nmod as f64 / PI_C.re).powi(weight as i32))
}

/// E_{2k}(tau, chi) from the q-expansion
/// ((-1)^k 2^{2k+1}/(2k-1)!) sum_{m,n>=1} n^{2k-1} chi(m) q^{mn}
/// evaluated at the nome (weight 2k >= 2).
pub fn eisenstein_e_qexp_eval(
    chi: &DirichletCharacter,
    weight: u32,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    require_even(chi)?;
    if weight < 2 || weight % 2 != 0 {
        return Err(EvalError::InvalidWeight { weight });
    }
    let k = weight / 2;
    let mut pref = if k % 2 == 0 { 1.0 } else { -1.0 };
    pref *= 2f64.powi(weight as i32 + 1);
    for j in 1..weight {
        pref /= j as f64;
    }
    let q = hp.q();
    let aq = q.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qj = q;
    for j in 1..cfg.max_terms as u64 {
        // c_j = sum_{m | j} chi(m) (j/m)^{2k-1}
        let mut cj = Complex64::new(0.0, 0.0);
        for d in crate::arith::divisors(j) {
            let c = chi.eval_complex(d as i64);
            if c.norm() != 0.0 {
                cj += c * ((j / d) as f64).powi(weight as i32 - 1);
            }
        }
        acc += cj * qj;
        let tail = 4.0 * ((j + 1) as f64).powi(weight as i32) * qj.norm() * aq / (1.0 - aq);
        qj *= q;
        if tail < cfg.tail_tol * (1.0 + acc.norm()) {
            return Ok(pref * acc);
        }
    }
    Err(EvalError::CutoffExhausted { what: "twisted Eisenstein q-expansion" })
}

/// F_{2k}(tau, chi) from its q-sum
///   -B_{2k-1}(chi) + ((-1)^k 2^{2k+1}/(2k-1)!) sum_{m,n>=1} n^{2k-1} g_n(chi) q^{mn}
/// (weight 2k >= 2; same prefactor as E_{2k}, forced by the z^{2k-1} Taylor
/// coefficient of the companion and confirmed against the lattice form).
pub fn eisenstein_f_qsum_eval(
    chi: &DirichletCharacter,
    weight: u32,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    require_even(chi)?;
    if weight < 2 || weight % 2 != 0 {
        return Err(EvalError::InvalidWeight { weight });
    }
    let k = weight / 2;
    let b_part = cot_coefficient_b(chi, weight - 1, BMode::Derivative)?;
    let mut pref = if k % 2 == 0 { 1.0 } else { -1.0 };
    pref *= 2f64.powi(weight as i32 + 1);
    for j in 1..weight {
        pref /= j as f64;
    }
    let g_vals = gauss_values(chi);
    let nmod = chi.modulus();
    let q = hp.q();
    let aq = q.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut qj = q;
    for j in 1..cfg.max_terms as u64 {
        // d_j = sum_{n | j} n^{2k-1} g_n(chi)
        let mut dj = Complex64::new(0.0, 0.0);
        for d in crate::arith::divisors(j) {
            let g = g_vals[(d % nmod) as usize];
            if g.norm() != 0.0 {
                dj += g * (d as f64).powi(weight as i32 - 1);
            }
        }
        acc += dj * qj;
        let tail =
            4.0 * nmod as f64 * ((j + 1) as f64).powi(weight as i32) * qj.norm() * aq / (1.0 - aq);
        qj *= q;
        if tail < cfg.tail_tol * (1.0 + acc.norm()) {
            return Ok(-b_part + pref * acc);
        }
    }
    Err(EvalError::CutoffExhausted { what: "companion Eisenstein q-sum" })
}

/// B_l(chi): Taylor data of the twisted cotangent sum at z = 0.
/// The two-sided sum vanishes for even l (even chi), so both modes return
/// (numerically) zero there.
pub fn cot_coefficient_b(
    chi: &DirichletCharacter,
    l: u32,
    mode: BMode,
) -> Result<Complex64, EvalError> {
    require_even(chi)?;
    let nmod = chi.modulus();
    match mode {
        BMode::Derivative => {
            let mut fact = 1.0f64;
            for j in 1..=l as u64 {
                fact *= j as f64;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 1..nmod {
                let c = chi.eval_complex(k as i64);
                if c.norm() == 0.0 {
                    continue;
                }
                let x = Complex64::new(k as f64 * PI_C.re / nmod as f64, 0.0);
                acc += c * cot_derivative(l, x);
            }
            Ok(acc / fact)
        }
        BMode::LValue => {
            if l % 2 == 0 {
                // chi(-m)/(-m)^{l+1} cancels chi(m)/m^{l+1}
                return Ok(Complex64::new(0.0, 0.0));
            }
            let s = (l + 1) as f64;
            let mut lval = Complex64::new(0.0, 0.0);
            for a in 1..nmod {
                let c = chi.eval_complex(a as i64);
                if c.norm() != 0.0 {
                    lval += c * hurwitz_zeta(s, a as f64 / nmod as f64);
                }
            }
            lval *= (nmod as f64).powf(-s);
            // B_l = (-1)^l (N/pi)^{l+1} x two-sided sum, and the two-sided
            // sum is 2 L(l+1, chi); l is odd here so the sign is -1
            Ok(-2.0 * lval * (nmod as f64 / PI_C.re).powf(s))
        }
    }
}

/// Hurwitz zeta(s, x) for real s >= 2 and 0 < x <= 1, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: f64, x: f64) -> f64 {
    assert!(s >= 2.0 && x > 0.0 && x <= 1.0);
    const J: usize = 24;
    let mut acc = 0.0f64;
    for j in 0..J {
        acc += (x + j as f64).powf(-s);
    }
    let t = x + J as f64;
    acc += t.powf(1.0 - s) / (s - 1.0);
    acc += 0.5 * t.powf(-s);
    // correction terms B_{2r}/(2r)! * s(s+1)...(s+2r-2) * t^{-s-2r+1}
    let mut poch = s; // rising factorial with 2r-1 factors
    let mut fact = 2.0f64; // (2r)!
    for r in 1..=8u32 {
        let b2r = bernoulli(2 * r as usize).to_f64().unwrap();
        acc += b2r / fact * poch * t.powf(-s - 2.0 * r as f64 + 1.0);
        poch *= (s + 2.0 * r as f64 - 1.0) * (s + 2.0 * r as f64);
        fact *= (2.0 * r as f64 + 1.0) * (2.0 * r as f64 + 2.0);
    }
    acc
}

/// Fit the odd Taylor coefficients a_1, a_3, ..., a_{2n-1} of an odd function
/// from samples at z = h, 2h, ..., nh (solving the Vandermonde system in z^2).
pub fn taylor_fit_odd(
    f: &mut dyn FnMut(Complex64) -> Result<Complex64, EvalError>,
    n: usize,
    h: f64,
) -> Result<Vec<Complex64>, EvalError> {
    let mut mat = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
    for j in 0..n {
        let z = Complex64::new(h * (j as f64 + 1.0), 0.0);
        let y = f(z)? / z;
        let z2 = z * z;
        let mut p = Complex64::new(1.0, 0.0);
        for i in 0..n {
            mat[j][i] = p;
            p *= z2;
        }
        mat[j][n] = y;
    }
    // Gaussian elimination with partial pivoting
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| mat[a][col].norm().total_cmp(&mat[b][col].norm()))
            .unwrap();
        mat.swap(col, piv);
        let d = mat[col][col];
        for i in col..=n {
            mat[col][i] /= d;
        }
        for row in 0..n {
            if row != col {
                let factor = mat[row][col];
                if factor.norm() != 0.0 {
                    for i in col..=n {
                        let delta = factor * mat[col][i];
                        mat[row][i] -= delta;
                    }
                }
            }
        }
    }
    Ok((0..n).map(|j| mat[j][n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{e2k_classical_lattice, theta};
    use crate::analytic::ThetaMode;
    use num_complex::Complex64;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn hp(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(re, im)).unwrap()
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn chi8() -> DirichletCharacter {
        DirichletCharacter::from_kronecker(8).unwrap()
    }

    fn chi5() -> DirichletCharacter {
        DirichletCharacter::legendre_top(5).unwrap()
    }

    fn chi12() -> DirichletCharacter {
        DirichletCharacter::from_kronecker(12).unwrap()
    }

    #[test]
    fn g_vanishes_at_origin() {
        let hp0 = hp(0.1, 1.0);
        for chi in [chi8(), DirichletCharacter::psi10()] {
            let s = g_twisted(Complex64::new(0.0, 0.0), &hp0, &chi, GMode::SineSeries, &cfg()).unwrap();
            assert!(s.norm() < 1e-14);
            let t = g_twisted(Complex64::new(0.0, 0.0), &hp0, &chi, GMode::ThetaShift, &cfg()).unwrap();
            assert!(t.norm() < 1e-11);
        }
    }

    #[test]
    fn g_dual_modes_agree() {
        let mut rng = StdRng::seed_from_u64(41);
        for chi in [chi5(), chi8(), DirichletCharacter::psi10(), chi12()] {
            for _ in 0..8 {
                let hp0 = hp(rng.gen_range(-0.5..0.5), rng.gen_range(0.8..1.5));
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.8..0.8));
                let a = g_twisted(z, &hp0, &chi, GMode::ThetaShift, &cfg()).unwrap();
                let b = g_twisted(z, &hp0, &chi, GMode::SineSeries, &cfg()).unwrap();
                assert!(
                    (a - b).norm() <= 1e-10 * a.norm().max(1.0),
                    "N={} z={z} tau={}",
                    chi.modulus(),
                    hp0.tau()
                );
            }
        }
    }

    #[test]
    fn g_periodic_in_pi() {
        let hp0 = hp(0.2, 1.0);
        let z = Complex64::new(0.37, 0.21);
        let chi = chi8();
        let a = g_twisted(z, &hp0, &chi, GMode::SineSeries, &cfg()).unwrap();
        let b = g_twisted(z + PI_C, &hp0, &chi, GMode::SineSeries, &cfg()).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn g_rejects_odd_characters() {
        let odd = DirichletCharacter::from_kronecker(-4).unwrap();
        let hp0 = hp(0.0, 1.0);
        assert!(matches!(
            g_twisted(Complex64::new(0.3, 0.0), &hp0, &odd, GMode::SineSeries, &cfg()),
            Err(EvalError::OddCharacter { modulus: 4 })
        ));
        assert!(matches!(
            g_companion(Complex64::new(0.3, 0.0), &hp0, &odd, &cfg()),
            Err(EvalError::OddCharacter { .. })
        ));
    }

    #[test]
    fn g_strip_violation() {
        let hp0 = hp(0.0, 0.3);
        let z = Complex64::new(0.0, 2.0); // e^{2*2} >> 1/|q|
        assert!(matches!(
            g_twisted(z, &hp0, &chi8(), GMode::SineSeries, &cfg()),
            Err(EvalError::StripViolation { .. })
        ));
    }

    #[test]
    fn principal_character_constant_offset() {
        // for the principal character the two modes differ by exactly
        // -i sum_{k=1}^{N-1} chi0(k) = -i phi(N)
        let chi0 = DirichletCharacter::principal(5);
        let hp0 = hp(0.1, 1.1);
        let z = Complex64::new(0.5, 0.2);
        let a = g_twisted(z, &hp0, &chi0, GMode::ThetaShift, &cfg()).unwrap();
        let b = g_twisted(z, &hp0, &chi0, GMode::SineSeries, &cfg()).unwrap();
        let expected = -Complex64::i() * 4.0;
        assert!((a - b - expected).norm() < 1e-10);
    }

    #[test]
    fn companion_equals_transformed_g() {
        // (1/tau) g(z/tau | -1/(N tau); chi) against the cot + Gauss series,
        // including the point from the operation contract
        let cases = [
            (DirichletCharacter::psi10(), Complex64::new(0.4, 0.0), Complex64::new(0.1, 0.9)),
            (chi8(), Complex64::new(0.7, 0.1), Complex64::new(-0.2, 1.2)),
            (chi5(), Complex64::new(-0.4, 0.2), Complex64::new(0.3, 0.8)),
            (chi12(), Complex64::new(0.25, -0.1), Complex64::new(0.05, 1.4)),
        ];
        for (chi, z, tau) in cases {
            let hp0 = HalfPlanePoint::new(tau).unwrap();
            let lhs = g_companion(z, &hp0, &chi, &cfg()).unwrap();
            let hp_inv = hp0.invert_scaled(chi.modulus() as f64);
            let rhs =
                g_twisted(z / tau, &hp_inv, &chi, GMode::ThetaShift, &cfg()).unwrap() / tau;
            assert!(
                (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0),
                "N={} z={z} tau={tau}: {lhs} vs {rhs}",
                chi.modulus()
            );
        }
    }

    #[test]
    fn companion_pole_rejection() {
        let hp0 = hp(0.0, 1.0);
        let z = Complex64::new(PI / 8.0 + 0.01, 0.0); // near cot(z - pi/8) pole
        assert!(matches!(
            g_companion(z, &hp0, &chi8(), &cfg()),
            Err(EvalError::PoleProximity { .. })
        ));
    }

    #[test]
    fn cot_sum_closed_forms() {
        // q -> 0 limits: sum chi8(k) cot(z - k pi/8) = -4 sqrt2 sin 2z / cos 4z
        // and sum psi10(k) cot(z - k pi/10) = -4 sqrt5 sin 2z cos z / cos 5z
        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(-1.4..1.4), rng.gen_range(-0.6..0.6));
            let s8 = cot_sum_twisted(z, &chi8(), &cfg());
            if let Ok(v) = s8 {
                let closed = -4.0 * 2f64.sqrt() * (2.0 * z).sin() / (4.0 * z).cos();
                if (4.0 * z).cos().norm() > 0.2 {
                    assert!((v - closed).norm() <= 1e-11 * v.norm().max(1.0), "d8 z={z}");
                }
            }
            let s10 = cot_sum_twisted(z, &DirichletCharacter::psi10(), &cfg());
            if let Ok(v) = s10 {
                let closed =
                    -4.0 * 5f64.sqrt() * (2.0 * z).sin() * z.cos() / (5.0 * z).cos();
                if (5.0 * z).cos().norm() > 0.2 {
                    assert!((v - closed).norm() <= 1e-11 * v.norm().max(1.0), "d10 z={z}");
                }
            }
        }
    }

    #[test]
    fn odd_character_lattice_pairs_to_zero() {
        // chi odd in the n slot: symmetric windows cancel exactly
        let odd = DirichletCharacter::from_kronecker(-4).unwrap();
        let hp0 = hp(0.3, 1.1);
        let mut small = cfg();
        small.lattice_cutoff = 40;
        let v = eisenstein_e_lattice_unchecked(&odd, 4, &hp0, &small).unwrap();
        assert!(v.norm() < 1e-13);
    }

    #[test]
    fn e_lattice_matches_qexp() {
        let hp0 = hp(0.0, 1.2);
        for (chi, weight) in [(chi8(), 4u32), (chi8(), 6), (chi5(), 4), (chi12(), 4)] {
            let lat = eisenstein_e_lattice(&chi, weight, &hp0, &cfg()).unwrap();
            let qe = eisenstein_e_qexp_eval(&chi, weight, &hp0, &cfg()).unwrap();
            let rel = (lat - qe).norm() / qe.norm();
            assert!(rel <= 1e-6, "N={} weight={weight} rel={rel:.2e}", chi.modulus());
        }
    }

    #[test]
    fn e_f_imaginary_relation() {
        // E_{2k}(-1/(N tau), chi) = tau^{2k} F_{2k}(tau, chi)
        let mut rng = StdRng::seed_from_u64(9);
        for (chi, weight) in [(chi5(), 4u32), (chi8(), 4), (chi12(), 6)] {
            let tau = Complex64::new(rng.gen_range(-0.3..0.3), rng.gen_range(0.9..1.3));
            let hp0 = HalfPlanePoint::new(tau).unwrap();
            let hp_inv = hp0.invert_scaled(chi.modulus() as f64);
            let lhs = eisenstein_e_lattice(&chi, weight, &hp_inv, &cfg()).unwrap();
            let rhs = tau.powu(weight) * eisenstein_f_lattice(&chi, weight, &hp0, &cfg()).unwrap();
            let rel = (lhs - rhs).norm() / rhs.norm();
            assert!(rel <= 1e-6, "N={} weight={weight} rel={rel:.2e}", chi.modulus());
        }
    }

    #[test]
    fn f_lattice_matches_qsum() {
        let hp0 = hp(0.1, 1.1);
        for (chi, weight) in [(chi5(), 4u32), (chi8(), 4), (chi12(), 4)] {
            let lat = eisenstein_f_lattice(&chi, weight, &hp0, &cfg()).unwrap();
            let qs = eisenstein_f_qsum_eval(&chi, weight, &hp0, &cfg()).unwrap();
            let rel = (lat - qs).norm() / qs.norm();
            assert!(rel <= 1e-6, "N={} weight={weight} rel={rel:.2e}", chi.modulus());
        }
    }

    #[test]
    fn lattice_rejects_low_weight() {
        assert!(matches!(
            eisenstein_e_lattice(&chi8(), 2, &hp(0.0, 1.0), &cfg()),
            Err(EvalError::InvalidWeight { weight: 2 })
        ));
    }

    #[test]
    fn b_coefficients_dual_mode() {
        for chi in [chi5(), chi8(), chi12()] {
            for l in [1u32, 3] {
                let a = cot_coefficient_b(&chi, l, BMode::Derivative).unwrap();
                let b = cot_coefficient_b(&chi, l, BMode::LValue).unwrap();
                assert!(
                    (a - b).norm() <= 1e-9 * a.norm().max(1.0),
                    "N={} l={l}: {a} vs {b}",
                    chi.modulus()
                );
            }
            // even index vanishes
            let z2 = cot_coefficient_b(&chi, 2, BMode::Derivative).unwrap();
            assert!(z2.norm() < 1e-10, "B_2 = 0");
            assert_eq!(cot_coefficient_b(&chi, 2, BMode::LValue).unwrap().norm(), 0.0);
        }
    }

    #[test]
    fn hurwitz_zeta_known_values() {
        assert!((hurwitz_zeta(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(4.0, 1.0) - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((hurwitz_zeta(2.0, 0.5) - PI * PI / 2.0).abs() < 1e-13);
        // zeta(3) reference value
        assert!((hurwitz_zeta(3.0, 1.0) - 1.2020569031595943).abs() < 1e-14);
    }

    #[test]
    fn taylor_fit_recovers_sine_series() {
        // f(z) = sin 2z: a1 = 2, a3 = -8/6, a5 = 32/120
        let mut f = |z: Complex64| Ok((2.0 * z).sin());
        let coeffs = taylor_fit_odd(&mut f, 6, 0.1).unwrap();
        assert!((coeffs[0] - 2.0).norm() < 1e-9);
        assert!((coeffs[1] + 8.0 / 6.0).norm() < 1e-8);
        assert!((coeffs[2] - 32.0 / 120.0).norm() < 1e-7);
    }

    #[test]
    fn taylor_fit_of_g_matches_eisenstein() {
        // g(z|tau;chi) = -sum E_{2k+2}(tau,chi) z^{2k+1}
        let c = cfg();
        for (chi, tau) in [(chi8(), Complex64::new(0.1, 0.85)), (chi5(), Complex64::new(-0.2, 0.95))] {
            let hp0 = HalfPlanePoint::new(tau).unwrap();
            let mut f = |z: Complex64| g_twisted(z, &hp0, &chi, GMode::SineSeries, &c);
            let fit = taylor_fit_odd(&mut f, 6, 0.1).unwrap();
            for (k, slot) in [(0u32, 0usize), (1, 1)] {
                let e = eisenstein_e_qexp_eval(&chi, 2 * k + 2, &hp0, &c).unwrap();
                let rel = (fit[slot] + e).norm() / e.norm();
                assert!(rel <= 1e-6, "N={} k={k} rel={rel:.2e}", chi.modulus());
            }
        }
    }

    #[test]
    fn taylor_fit_of_companion_matches_f_series() {
        let c = cfg();
        for (chi, tau) in [(chi8(), Complex64::new(0.1, 0.9)), (DirichletCharacter::psi10(), Complex64::new(0.0, 1.05))] {
            let hp0 = HalfPlanePoint::new(tau).unwrap();
            let t = hp0.tau();
            let hp_inv = hp0.invert_scaled(chi.modulus() as f64);
            let mut f =
                |z: Complex64| Ok(g_twisted(z / t, &hp_inv, &chi, GMode::ThetaShift, &c)? / t);
            // the companion has cot poles at k pi/N: keep nodes inside (0, pi/N)
            let h = 0.35 * PI / (chi.modulus() as f64 * 7.0);
            let fit = taylor_fit_odd(&mut f, 7, h).unwrap();
            for (k, slot) in [(0u32, 0usize), (1, 1)] {
                let fv = eisenstein_f_qsum_eval(&chi, 2 * k + 2, &hp0, &c).unwrap();
                let rel = (fit[slot] + fv).norm() / fv.norm();
                assert!(rel <= 1e-6, "N={} k={k} rel={rel:.2e}", chi.modulus());
            }
        }
    }

    #[test]
    fn wp_twisted_sum_identity() {
        // sum_k chi(k) pe(z + k pi tau | N tau)
        //   = -8 sum_n n [sum_k chi(k) q^{kn}]/(1-q^{Nn}) cos 2nz
        use crate::analytic::{weierstrass_p, WpMode};
        let c = cfg();
        let chi = chi8();
        let hp0 = hp(0.15, 0.95);
        let n = chi.modulus();
        let hp_n = hp0.scale(n as f64);
        let z = Complex64::new(0.45, 0.2);
        let mut lhs = Complex64::new(0.0, 0.0);
        for k in 1..n {
            let cv = chi.eval_complex(k as i64);
            if cv.norm() == 0.0 {
                continue;
            }
            lhs += cv
                * weierstrass_p(z + PI_C * hp0.tau() * k as f64, &hp_n, WpMode::Theta, &c).unwrap();
        }
        let q = hp0.q();
        let mut rhs = Complex64::new(0.0, 0.0);
        for t in 1..300u32 {
            let qn = q.powu(t);
            let mut num = Complex64::new(0.0, 0.0);
            for k in 1..n {
                num += chi.eval_complex(k as i64) * qn.powu(k as u32);
            }
            rhs += -8.0 * t as f64 * num / (1.0 - qn.powu(n as u32)) * (2.0 * t as f64 * z).cos();
        }
        assert!((lhs - rhs).norm() <= 1e-8 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn four_variable_theta_identity_spot() {
        // the log-derivative / theta-product identity used throughout:
        // sum of three log derivatives minus the one at the sum of arguments
        let c = cfg();
        let hp0 = hp(0.1, 1.0);
        let x1 = Complex64::new(0.4, 0.1);
        let x2 = Complex64::new(-0.3, 0.2);
        let x3 = Complex64::new(0.6, -0.15);
        let xs = x1 + x2 + x3;
        let ld = |w| theta1_logderiv(w, &hp0, &c).unwrap();
        let lhs = ld(x1) + ld(x2) + ld(x3) - ld(xs);
        let t1 = |w| theta(1, w, &hp0, ThetaMode::Series, &c).unwrap();
        let rhs = crate::analytic::theta1_prime_zero(&hp0, &c) * t1(x1 + x2) * t1(x1 + x3)
            * t1(x2 + x3)
            / (t1(x1) * t1(x2) * t1(x3) * t1(xs));
        assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
    }
}
