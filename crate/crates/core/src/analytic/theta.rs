//! Jacobi theta functions theta_1..theta_4, their logarithmic derivatives,
//! and the Dedekind eta function.
//!
//! Series forms:
//!   theta1(z|tau) = 2 q^{1/8} sum_{n>=0} (-1)^n q^{n(n+1)/2} sin(2n+1)z
//!   theta2(z|tau) = 2 q^{1/8} sum_{n>=0} q^{n(n+1)/2} cos(2n+1)z
//!   theta3(z|tau) = 1 + 2 sum_{n>=1} q^{n^2/2} cos 2nz
//!   theta4(z|tau) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2/2} cos 2nz
//!
//! Product forms:
//!   theta1 = 2 q^{1/8} sin z (q;q) (q e^{2iz};q) (q e^{-2iz};q)
//!   theta2 = 2 q^{1/8} cos z (q;q) (-q e^{2iz};q) (-q e^{-2iz};q)
//!   theta3 =            (q;q) (-q^{1/2} e^{2iz};q) (-q^{1/2} e^{-2iz};q)
//!   theta4 =            (q;q) (q^{1/2} e^{2iz};q) (q^{1/2} e^{-2iz};q)

use super::{lattice_distance, EvalConfig, EvalError, HalfPlanePoint, PI_C};
use num_complex::Complex64;

/// Evaluation route for [`theta`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaMode {
    Series,
    Product,
}

/// theta_j(z | tau) for j in 1..=4.
pub fn theta(
    j: u8,
    z: Complex64,
    hp: &HalfPlanePoint,
    mode: ThetaMode,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    assert!((1..=4).contains(&j), "theta index must be 1..4");
    match mode {
        ThetaMode::Series => theta_series(j, z, hp, cfg),
        ThetaMode::Product => theta_product(j, z, hp, cfg),
    }
}

fn theta_series(j: u8, z: Complex64, hp: &HalfPlanePoint, cfg: &EvalConfig) -> Result<Complex64, EvalError> {
    let q = hp.q();
    let aq = q.norm();
    let grow = (2.0 * z.im.abs()).exp();
    match j {
        1 | 2 => {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut qp = Complex64::new(1.0, 0.0); // q^{n(n+1)/2}
            for n in 0..cfg.max_terms {
                let nf = n as f64;
                let angle = (2.0 * nf + 1.0) * z;
                let term = match j {
                    1 => {
                        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                        qp * angle.sin() * s
                    }
                    _ => qp * angle.cos(),
                };
                acc += term;
                // next term is bounded by 2 |q|^{(n+1)(n+2)/2} e^{(2n+3)|Im z|}
                let bound = 2.0 * qp.norm() * aq.powf(nf + 1.0) * grow.powf(nf + 1.5);
                if bound < cfg.tail_tol * (1.0 + acc.norm()) {
                    return Ok(2.0 * hp.q_pow(1.0 / 8.0) * acc);
                }
                qp *= q.powu(n as u32 + 1);
            }
            Err(EvalError::CutoffExhausted { what: "theta series" })
        }
        _ => {
            let sign: f64 = if j == 4 { -1.0 } else { 1.0 };
            let mut acc = Complex64::new(1.0, 0.0);
            for n in 1..cfg.max_terms {
                let nf = n as f64;
                let term = 2.0 * hp.q_pow(nf * nf / 2.0) * (2.0 * nf * z).cos() * sign.powi(n as i32);
                acc += term;
                let bound = 2.0 * aq.powf((nf + 1.0) * (nf + 1.0) / 2.0) * grow.powf(nf + 1.0);
                if bound < cfg.tail_tol * (1.0 + acc.norm()) {
                    return Ok(acc);
                }
            }
            Err(EvalError::CutoffExhausted { what: "theta series" })
        }
    }
}

fn theta_product(j: u8, z: Complex64, hp: &HalfPlanePoint, cfg: &EvalConfig) -> Result<Complex64, EvalError> {
    let q = hp.q();
    let aq = q.norm();
    let e2 = (2.0 * Complex64::i() * z).exp();
    let e2i = e2.inv();
    let grow = e2.norm().max(e2i.norm());
    let (prefactor, x, sign): (Complex64, Complex64, f64) = match j {
        1 => (2.0 * hp.q_pow(1.0 / 8.0) * z.sin(), q, -1.0),
        2 => (2.0 * hp.q_pow(1.0 / 8.0) * z.cos(), q, 1.0),
        3 => (Complex64::new(1.0, 0.0), hp.q_pow(0.5), 1.0),
        _ => (Complex64::new(1.0, 0.0), hp.q_pow(0.5), -1.0),
    };
    // prod (1 - q^k)(1 + sign x q^{k-1} e^{2iz})(1 + sign x q^{k-1} e^{-2iz})
    let mut acc = prefactor;
    let mut qk = Complex64::new(1.0, 0.0); // q^{k-1}
    for k in 1..cfg.max_terms {
        let w = x * qk;
        acc *= (1.0 - q * qk) * (1.0 + sign * w * e2) * (1.0 + sign * w * e2i);
        let bound = (x.norm() * aq.powi(k as i32 - 1)).max(aq.powi(k as i32)) * (1.0 + grow);
        if bound < cfg.tail_tol {
            return Ok(acc);
        }
        qk *= q;
    }
    Err(EvalError::CutoffExhausted { what: "theta product" })
}

/// theta_1'(0 | tau) = 2 q^{1/8} (q;q)_inf^3.
pub fn theta1_prime_zero(hp: &HalfPlanePoint, cfg: &EvalConfig) -> Complex64 {
    let p = qpochhammer(hp.q(), cfg);
    2.0 * hp.q_pow(1.0 / 8.0) * p * p * p
}

/// (x; x)_inf = prod_{k>=1} (1 - x^k) for |x| < 1.
pub fn qpochhammer(x: Complex64, cfg: &EvalConfig) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut xk = x;
    for _ in 1..cfg.max_terms {
        acc *= 1.0 - xk;
        xk *= x;
        if xk.norm() < cfg.tail_tol {
            break;
        }
    }
    acc
}

/// Reduce z by the quasi-periods pi and pi*tau:
/// theta1'/theta1 (z + m pi tau) = theta1'/theta1 (z) - 2 i m, period pi.
/// Returns the reduced point and the additive correction.
fn logderiv_reduce(z: Complex64, hp: &HalfPlanePoint) -> (Complex64, Complex64) {
    let tau = hp.tau();
    let m = (z.im / (PI_C.re * tau.im)).round();
    let mut zr = z - m * PI_C * tau;
    let k = (zr.re / PI_C.re).round();
    zr -= k * PI_C;
    (zr, Complex64::new(0.0, -2.0 * m))
}

/// theta_1'/theta_1 (z | tau) via the product form
///   cot z + sum_k [ -2i u_k/(1-u_k) + 2i v_k/(1-v_k) ],
/// u_k = q^k e^{2iz}, v_k = q^k e^{-2iz}, with quasi-period reduction so the
/// sum converges for any z away from the zero lattice of theta_1.
pub fn theta1_logderiv(z: Complex64, hp: &HalfPlanePoint, cfg: &EvalConfig) -> Result<Complex64, EvalError> {
    let (zr, corr) = logderiv_reduce(z, hp);
    let dist = lattice_distance(zr, PI_C, PI_C * hp.tau());
    if dist < cfg.pole_radius {
        return Err(EvalError::PoleProximity { what: "theta1", distance: dist });
    }
    let q = hp.q();
    let aq = q.norm();
    let e2 = (2.0 * Complex64::i() * zr).exp();
    let e2i = e2.inv();
    let mut acc = zr.cos() / zr.sin() + corr;
    let mut qk = q;
    for k in 1..cfg.max_terms {
        let u = qk * e2;
        let v = qk * e2i;
        acc += Complex64::i() * 2.0 * (v / (1.0 - v) - u / (1.0 - u));
        // geometric tail: |u_{k+1}|/|u_k| = |q|, and |u| stays below 1 after
        // the reduction, so the remainder is within a small factor of this
        let tail = 10.0 * (u.norm() + v.norm()) * aq / (1.0 - aq);
        qk *= q;
        if k >= 2 && tail < cfg.tail_tol * (1.0 + acc.norm()) {
            return Ok(acc);
        }
    }
    Err(EvalError::CutoffExhausted { what: "theta1 log-derivative" })
}

/// p-th z-derivative of theta_1'/theta_1 for p >= 1:
///   cot^{(p)}(z) + sum_k [ -2i (2i)^p S_p(u_k) + 2i (-2i)^p S_p(v_k) ],
/// where S_p(x) = sum_{j>=1} j^p x^j = x A_p(x) / (1-x)^{p+1} with the
/// Eulerian polynomial A_p.
pub fn theta1_logderiv_deriv(
    p: u32,
    z: Complex64,
    hp: &HalfPlanePoint,
    cfg: &EvalConfig,
) -> Result<Complex64, EvalError> {
    assert!(p >= 1);
    let (zr, _) = logderiv_reduce(z, hp);
    let dist = lattice_distance(zr, PI_C, PI_C * hp.tau());
    if dist < cfg.pole_radius {
        return Err(EvalError::PoleProximity { what: "theta1", distance: dist });
    }
    let q = hp.q();
    let aq = q.norm();
    let e2 = (2.0 * Complex64::i() * zr).exp();
    let e2i = e2.inv();
    let two_i = Complex64::new(0.0, 2.0);
    let c_plus = -two_i * two_i.powu(p); // -2i (2i)^p
    let c_minus = two_i * (-two_i).powu(p); // +2i (-2i)^p
    let mut acc = cot_derivative(p, zr);
    let mut qk = q;
    let scale = 20.0f64.powi(p as i32 + 1);
    for k in 1..cfg.max_terms {
        let u = qk * e2;
        let v = qk * e2i;
        acc += c_plus * eulerian_s(p, u) + c_minus * eulerian_s(p, v);
        let tail = scale * (u.norm() + v.norm()) * aq / (1.0 - aq);
        qk *= q;
        if k >= 2 && tail < cfg.tail_tol * (1.0 + acc.norm()) {
            return Ok(acc);
        }
    }
    Err(EvalError::CutoffExhausted { what: "theta1 log-derivative derivative" })
}

/// S_p(x) = sum_{j>=1} j^p x^j in closed form.
fn eulerian_s(p: u32, x: Complex64) -> Complex64 {
    let a = eulerian_coeffs(p);
    let mut poly = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        poly = poly * x + c as f64;
    }
    x * poly / (1.0 - x).powu(p + 1)
}

/// Coefficients of the Eulerian polynomial A_p (A_0 = 1).
fn eulerian_coeffs(p: u32) -> Vec<i64> {
    let mut a = vec![1i64];
    for n in 1..=p {
        let mut next = vec![0i64; n as usize];
        for (j, item) in next.iter_mut().enumerate() {
            let from_same = if j < a.len() { (j as i64 + 1) * a[j] } else { 0 };
            let from_prev = if j >= 1 { (n as i64 - j as i64) * a[j - 1] } else { 0 };
            *item = from_same + from_prev;
        }
        a = next;
    }
    a
}

/// cot^{(p)}(z), via the polynomial recursion P_0 = c, P_{n+1} = -(1+c^2) P_n'
/// in c = cot z.
pub(crate) fn cot_derivative(p: u32, z: Complex64) -> Complex64 {
    let c = z.cos() / z.sin();
    let poly = cot_poly(p);
    let mut acc = Complex64::new(0.0, 0.0);
    for &k in poly.iter().rev() {
        acc = acc * c + k as f64;
    }
    acc
}

fn cot_poly(p: u32) -> Vec<i64> {
    let mut poly = vec![0i64, 1]; // cot
    for _ in 0..p {
        // derivative in z: -(1+c^2) * dP/dc
        let mut dp = vec![0i64; poly.len().max(2) - 1];
        for (i, &c) in poly.iter().enumerate().skip(1) {
            dp[i - 1] = c * i as i64;
        }
        let mut next = vec![0i64; dp.len() + 2];
        for (i, &c) in dp.iter().enumerate() {
            next[i] -= c;
            next[i + 2] -= c;
        }
        while next.len() > 1 && *next.last().unwrap() == 0 {
            next.pop();
        }
        poly = next;
    }
    poly
}

/// Dedekind eta: q^{1/24} (q;q)_inf. Satisfies eta(-1/tau) = sqrt(-i tau) eta(tau).
pub fn dedekind_eta(hp: &HalfPlanePoint, cfg: &EvalConfig) -> Complex64 {
    hp.q_pow(1.0 / 24.0) * qpochhammer(hp.q(), cfg)
}
