//! Expanders producing exact q-series: Euler products and eta quotients,
//! Lambert series in several shapes, twisted Eisenstein q-expansions, and
//! theta series of binary quadratic forms.

use super::{FormalSeries, SeriesError};
use crate::characters::DirichletCharacter;
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

/// (q^a; q^a)_inf = prod_{k>=1} (1 - q^{ak}), truncated to `len` coefficients.
pub fn euler_product(a: u64, len: usize) -> FormalSeries {
    assert!(a >= 1);
    let mut c = vec![BigRational::zero(); len];
    if len > 0 {
        c[0] = BigRational::one();
    }
    let mut m = a as usize; // multiply by (1 - q^m) for m = a, 2a, ...
    while m < len {
        for j in (m..len).rev() {
            let delta = c[j - m].clone();
            c[j] -= delta;
        }
        m += a as usize;
    }
    FormalSeries::from_rational_coeffs(Rational64::zero(), c)
}

/// A finite product prod_i (q^{a_i}; q^{a_i})_inf^{e_i} together with a
/// rational power of q and a rational scalar in front.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(u64, i64)>,
    pub q_power: Rational64,
    pub scalar: BigRational,
}

impl EtaQuotientSpec {
    pub fn new(factors: Vec<(u64, i64)>, q_power: Rational64) -> Self {
        EtaQuotientSpec { factors, q_power, scalar: BigRational::one() }
    }

    pub fn with_scalar(mut self, scalar: BigRational) -> Self {
        self.scalar = scalar;
        self
    }

    /// Spec for prod_i eta(a_i tau)^{e_i}; the q-prefactor is
    /// sum_i a_i e_i / 24.
    pub fn from_eta_powers(powers: &[(u64, i64)]) -> Self {
        let mut num = 0i64;
        for &(a, e) in powers {
            num += a as i64 * e;
        }
        EtaQuotientSpec {
            factors: powers.to_vec(),
            q_power: Rational64::new(num, 24),
            scalar: BigRational::one(),
        }
    }
}

/// Expand an eta quotient exactly to `len` coefficients past the prefactor.
pub fn eta_quotient_expand(spec: &EtaQuotientSpec, len: usize) -> Result<FormalSeries, SeriesError> {
    let mut acc = FormalSeries::one(len);
    for &(a, e) in &spec.factors {
        let base = euler_product(a, len);
        let powered = base.pow(e as i32)?;
        acc = acc.mul(&powered)?;
    }
    Ok(acc.shift(spec.q_power).scale(&spec.scalar))
}

/// sum_{m,n >= 1} f(m) g(n) q^{mn}: the generic double Lambert shape.
/// Every "pattern over 1 - q^{Nn}" sum in the catalog reduces to this.
pub fn double_lambert_series(
    len: usize,
    f: impl Fn(u64) -> BigRational,
    g: impl Fn(u64) -> BigRational,
) -> FormalSeries {
    let mut coeffs = vec![BigRational::zero(); len];
    for m in 1..len as u64 {
        let fm = f(m);
        if fm.is_zero() {
            continue;
        }
        let mut mn = m;
        let mut n = 1u64;
        while (mn as usize) < len {
            let gn = g(n);
            if !gn.is_zero() {
                coeffs[mn as usize] += &fm * gn;
            }
            n += 1;
            mn += m;
        }
    }
    FormalSeries::from_rational_coeffs(Rational64::zero(), coeffs)
}

/// sum_{n >= 1} w(n) q^{sn} / (1 - q^{sn}).
pub fn lambert_scaled(len: usize, s: u64, w: impl Fn(u64) -> BigRational) -> FormalSeries {
    let mut coeffs = vec![BigRational::zero(); len];
    for n in 1..len as u64 {
        let wn = w(n);
        if wn.is_zero() {
            continue;
        }
        let step = s * n;
        let mut j = step;
        while (j as usize) < len {
            coeffs[j as usize] += &wn;
            j += step;
        }
    }
    FormalSeries::from_rational_coeffs(Rational64::zero(), coeffs)
}

/// sum_{n >= 1} w(n) q^{sn} / (1 - q^{sn})^2.
pub fn lambert_scaled_squared(len: usize, s: u64, w: impl Fn(u64) -> BigRational) -> FormalSeries {
    let mut coeffs = vec![BigRational::zero(); len];
    for n in 1..len as u64 {
        let wn = w(n);
        if wn.is_zero() {
            continue;
        }
        let step = s * n;
        let mut j = step;
        let mut m = 1i64;
        while (j as usize) < len {
            coeffs[j as usize] += &wn * BigRational::from_integer(BigInt::from(m));
            j += step;
            m += 1;
        }
    }
    FormalSeries::from_rational_coeffs(Rational64::zero(), coeffs)
}

fn chi_rat(chi: &DirichletCharacter, n: u64) -> Result<BigRational, SeriesError> {
    chi.eval_int(n as i64)
        .map(|v| BigRational::from_integer(BigInt::from(v)))
        .map_err(|_| {
            SeriesError::UnsupportedCharacter(format!(
                "character mod {} takes non-real values; q-expansions here are rational",
                chi.modulus()
            ))
        })
}

/// sum_{m,n >= 1} n^l chi(m) q^{mn}; coefficient of q^k is
/// sum_{d | k} (k/d)^l chi(d).
pub fn lambert_expand(
    chi: &DirichletCharacter,
    l: u32,
    len: usize,
) -> Result<FormalSeries, SeriesError> {
    // surface the complex-character error before building closures
    for m in 0..chi.modulus() {
        chi_rat(chi, m)?;
    }
    Ok(double_lambert_series(
        len,
        |m| chi_rat(chi, m).unwrap(),
        |n| BigRational::from_integer(BigInt::from(n).pow(l)),
    ))
}

/// The three standard twisted Lambert shapes with the character on the
/// summation index n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistedLambert {
    /// sum chi(n) q^n / (1 - q^n)
    Over1MinusQn,
    /// sum chi(n) n q^n / (1 - q^n)
    NOver1MinusQn,
    /// sum chi(n) q^n / (1 - q^n)^2
    OverSquared,
}

pub fn lambert_twisted_expand(
    chi: &DirichletCharacter,
    variant: TwistedLambert,
    len: usize,
) -> Result<FormalSeries, SeriesError> {
    for m in 0..chi.modulus() {
        chi_rat(chi, m)?;
    }
    let w = |n: u64| chi_rat(chi, n).unwrap();
    Ok(match variant {
        TwistedLambert::Over1MinusQn => lambert_scaled(len, 1, w),
        TwistedLambert::NOver1MinusQn => {
            lambert_scaled(len, 1, |n| w(n) * BigRational::from_integer(BigInt::from(n)))
        }
        TwistedLambert::OverSquared => lambert_scaled_squared(len, 1, w),
    })
}

/// E_{2k}(tau, chi) as an exact q-series:
/// ((-1)^k 2^{2k+1} / (2k-1)!) sum_{m,n>=1} n^{2k-1} chi(m) q^{mn}.
/// Only even characters are admitted.
pub fn eisenstein_qexp(
    chi: &DirichletCharacter,
    weight: u32,
    len: usize,
) -> Result<FormalSeries, SeriesError> {
    if weight < 2 || weight % 2 != 0 {
        return Err(SeriesError::UnsupportedCharacter(format!(
            "weight must be even and >= 2, got {weight}"
        )));
    }
    if !chi.is_even() {
        return Err(SeriesError::UnsupportedCharacter(format!(
            "E_{weight}(tau, chi) requires an even character; chi mod {} is odd",
            chi.modulus()
        )));
    }
    let k = weight / 2;
    let sum = lambert_expand(chi, weight - 1, len)?;
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let num = BigInt::from(sign) << (weight + 1); // (-1)^k 2^{2k+1}
    let mut den = BigInt::one(); // (2k-1)!
    for j in 1..weight {
        den *= j;
    }
    Ok(sum.scale(&BigRational::new(num, den)))
}

/// Theta series of a positive definite integral form Q(m, n) = a m^2 + b mn + c n^2:
/// sum over all integer pairs of q^{Q(m,n)}.
pub fn qform_theta(a: i64, b: i64, c: i64, len: usize) -> Result<FormalSeries, SeriesError> {
    let disc = 4 * a * c - b * b;
    if a <= 0 || disc <= 0 {
        return Err(SeriesError::NotPositiveDefinite { a, b, c });
    }
    let len_i = len as i64;
    let mut coeffs = vec![BigRational::zero(); len];
    // Q >= disc/(4a) * n^2 bounds n; for fixed n, m ranges around -bn/(2a).
    let n_bound = ((4 * a * len_i) as f64 / disc as f64).sqrt() as i64 + 2;
    for n in -n_bound..=n_bound {
        let center = -(b as f64) * n as f64 / (2.0 * a as f64);
        let half = ((len_i as f64) / a as f64).sqrt() + 2.0;
        let (m_lo, m_hi) = ((center - half) as i64 - 1, (center + half) as i64 + 1);
        for m in m_lo..=m_hi {
            let v = a * m * m + b * m * n + c * n * n;
            if (0..len_i).contains(&v) {
                coeffs[v as usize] += BigRational::one();
            }
        }
    }
    Ok(FormalSeries::from_rational_coeffs(Rational64::zero(), coeffs))
}
