//! High-precision complex evaluation: Jacobi theta functions and their
//! logarithmic derivatives, the Weierstrass pe function, Dedekind eta,
//! character-twisted sums g(z|tau;chi) with their companions, and twisted
//! Eisenstein lattice sums.
//!
//! Everything here is a stateless evaluator of (point, config); the exact
//! counterparts live in `qseries`.

mod theta;
mod twisted;
mod weierstrass;

pub use theta::{
    dedekind_eta, qpochhammer, theta, theta1_logderiv, theta1_logderiv_deriv, theta1_prime_zero,
    ThetaMode,
};
pub use twisted::{
    cot_coefficient_b, cot_sum_twisted, eisenstein_e_lattice, eisenstein_e_lattice_unchecked,
    eisenstein_e_qexp_eval, eisenstein_f_lattice, eisenstein_f_qsum_eval, g_companion, g_twisted,
    hurwitz_zeta, lambert_sine_sum, taylor_fit_odd, BMode, GMode,
};
pub use weierstrass::{
    bernoulli, e2, e2k_classical_lattice, e2k_classical_qexp, weierstrass_p, weierstrass_p_deriv,
    WpMode,
};

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use std::fmt;

/// tau in the upper half-plane along with its nome q = exp(2 pi i tau).
#[derive(Clone, Copy, Debug)]
pub struct HalfPlanePoint {
    tau: Complex64,
    q: Complex64,
}

impl HalfPlanePoint {
    pub fn new(tau: Complex64) -> Result<Self, EvalError> {
        if !(tau.im > 0.0) || !tau.is_finite() {
            return Err(EvalError::NotUpperHalfPlane { tau });
        }
        Ok(HalfPlanePoint { tau, q: (Complex64::i() * TAU * tau).exp() })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    /// The nome q, |q| < 1.
    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// q^r computed as exp(2 pi i tau r): one consistent branch for the
    /// fractional powers q^{1/8}, q^{1/24}, ...
    pub fn q_pow(&self, r: f64) -> Complex64 {
        (Complex64::i() * TAU * self.tau * r).exp()
    }

    /// The point at k * tau (parameter rescaling, e.g. theta(.|N tau)).
    pub fn scale(&self, k: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(self.tau * k).expect("positive rescale stays in the half-plane")
    }

    /// The point at -1/(k tau).
    pub fn invert_scaled(&self, k: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(-(self.tau * k).inv()).expect("inversion stays in the half-plane")
    }
}

/// Cutoffs and tolerances for the numerical evaluators.
#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    /// Series terms are accumulated until the tail bound drops below
    /// `tail_tol` times the running scale.
    pub tail_tol: f64,
    /// Hard cap on series terms; exceeding it is an explicit failure.
    pub max_terms: usize,
    /// Half-width M of truncated lattice double sums.
    pub lattice_cutoff: usize,
    /// Sample points closer than this to a pole or zero are rejected.
    pub pole_radius: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { tail_tol: 1e-15, max_terms: 100_000, lattice_cutoff: 300, pole_radius: 0.05 }
    }
}

/// Errors from the complex evaluators.
#[derive(Clone, Debug, PartialEq)]
pub enum EvalError {
    NotUpperHalfPlane { tau: Complex64 },
    /// The twisted constructions require chi(-1) = 1.
    OddCharacter { modulus: u64 },
    /// The tail bound was not reached within `max_terms`.
    CutoffExhausted { what: &'static str },
    /// The point is within `pole_radius` of a pole or zero.
    PoleProximity { what: &'static str, distance: f64 },
    /// z lies outside the convergence strip of a sine series.
    StripViolation { ratio: f64 },
    /// Lattice mode needs weight 2k with k >= 2.
    InvalidWeight { weight: u32 },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::NotUpperHalfPlane { tau } => write!(f, "tau = {tau} is not in the upper half-plane"),
            EvalError::OddCharacter { modulus } => {
                write!(f, "character mod {modulus} is odd; construction requires chi(-1) = 1")
            }
            EvalError::CutoffExhausted { what } => write!(f, "series cutoff exhausted in {what}"),
            EvalError::PoleProximity { what, distance } => {
                write!(f, "point within {distance:.2e} of a pole/zero of {what}")
            }
            EvalError::StripViolation { ratio } => {
                write!(f, "outside the convergence strip (term ratio {ratio:.3} >= 1)")
            }
            EvalError::InvalidWeight { weight } => {
                write!(f, "lattice sum needs even weight >= 4, got {weight}")
            }
        }
    }
}

impl std::error::Error for EvalError {}

/// Distance from z to the lattice { a w1 + b w2 : a, b integers }.
pub(crate) fn lattice_distance(z: Complex64, w1: Complex64, w2: Complex64) -> f64 {
    // solve z = a w1 + b w2 over the reals
    let det = w1.re * w2.im - w1.im * w2.re;
    let a = (z.re * w2.im - z.im * w2.re) / det;
    let b = (w1.re * z.im - w1.im * z.re) / det;
    let mut best = f64::INFINITY;
    for da in [a.floor(), a.ceil()] {
        for db in [b.floor(), b.ceil()] {
            let p = w1 * da + w2 * db;
            best = best.min((z - p).norm());
        }
    }
    best
}

/// Distance from z to { x0 + k s : k integer } on the real axis.
pub(crate) fn real_comb_distance(z: Complex64, x0: f64, s: f64) -> f64 {
    let k = ((z.re - x0) / s).round();
    (z - Complex64::new(x0 + k * s, 0.0)).norm()
}

pub(crate) const PI_C: Complex64 = Complex64 { re: PI, im: 0.0 };
