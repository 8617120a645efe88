//! Exact truncated power series in q over the rationals, optionally extended
//! by a single formal sqrt(d).
//!
//! A [`FormalSeries`] stores coefficients for q^offset, q^{offset+1}, ...,
//! q^{offset+len-1}, where the global `offset` is an exact rational. This is
//! how fractional leading powers like q^{1/8} or q^{3/8} are represented:
//! every coefficient sits at offset + integer. Everything below the offset is
//! exactly zero; everything at offset + len and beyond is unknown.
//!
//! Arithmetic never reports coefficients beyond the minimum truncation order
//! of its inputs. Series with different sqrt(d) extensions do not mix.

mod expanders;

pub use expanders::{
    double_lambert_series, eisenstein_qexp, eta_quotient_expand, euler_product, lambert_expand,
    lambert_scaled, lambert_scaled_squared, lambert_twisted_expand, qform_theta, EtaQuotientSpec,
    TwistedLambert,
};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Errors from formal series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Two series whose offsets differ by a non-integer cannot combine.
    OffsetMismatch { lhs: Rational64, rhs: Rational64 },
    /// Inversion requires a nonzero constant (leading) coefficient.
    ZeroLeadingCoefficient,
    /// Two series extended by different sqrt(d) cannot combine.
    SurdMismatch { lhs: u64, rhs: u64 },
    /// An expander was handed a character it cannot use.
    UnsupportedCharacter(String),
    /// qform_theta requires a positive definite form.
    NotPositiveDefinite { a: i64, b: i64, c: i64 },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::OffsetMismatch { lhs, rhs } => {
                write!(f, "offsets {lhs} and {rhs} are not congruent mod 1")
            }
            SeriesError::ZeroLeadingCoefficient => {
                write!(f, "series with zero leading coefficient has no inverse")
            }
            SeriesError::SurdMismatch { lhs, rhs } => {
                write!(f, "cannot mix sqrt({lhs}) and sqrt({rhs}) coefficients")
            }
            SeriesError::UnsupportedCharacter(msg) => write!(f, "{msg}"),
            SeriesError::NotPositiveDefinite { a, b, c } => {
                write!(f, "form ({a},{b},{c}) is not positive definite")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// A coefficient a + b sqrt(d); the d lives on the series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coeff {
    pub rat: BigRational,
    pub surd: BigRational,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { rat: BigRational::zero(), surd: BigRational::zero() }
    }

    pub fn from_rat(r: BigRational) -> Self {
        Coeff { rat: r, surd: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::from_rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    fn add(&self, o: &Coeff) -> Coeff {
        Coeff { rat: &self.rat + &o.rat, surd: &self.surd + &o.surd }
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        Coeff { rat: &self.rat - &o.rat, surd: &self.surd - &o.surd }
    }

    fn neg(&self) -> Coeff {
        Coeff { rat: -self.rat.clone(), surd: -self.surd.clone() }
    }

    /// (a1 + b1 s)(a2 + b2 s) with s^2 = d.
    fn mul(&self, o: &Coeff, d: u64) -> Coeff {
        let d = BigRational::from_integer(BigInt::from(d));
        Coeff {
            rat: &self.rat * &o.rat + (&self.surd * &o.surd) * &d,
            surd: &self.rat * &o.surd + &self.surd * &o.rat,
        }
    }

    /// Multiplicative inverse in Q(sqrt(d)).
    fn inv(&self, d: u64) -> Option<Coeff> {
        let d = BigRational::from_integer(BigInt::from(d));
        let norm = &self.rat * &self.rat - (&self.surd * &self.surd) * &d;
        if norm.is_zero() {
            return None;
        }
        Some(Coeff { rat: &self.rat / &norm, surd: -(&self.surd / &norm) })
    }

    pub fn to_f64(&self, d: Option<u64>) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        if self.surd.is_zero() {
            r
        } else {
            r + self.surd.to_f64().unwrap_or(f64::NAN) * (d.unwrap_or(0) as f64).sqrt()
        }
    }

    /// Render as "3/2" or "1/2+3*sqrt(5)".
    pub fn to_string_with(&self, d: Option<u64>) -> String {
        if self.surd.is_zero() {
            return format!("{}", self.rat);
        }
        let d = d.unwrap_or(0);
        if self.rat.is_zero() {
            return format!("{}*sqrt({})", self.surd, d);
        }
        if self.surd.is_negative() {
            format!("{}-{}*sqrt({})", self.rat, -self.surd.clone(), d)
        } else {
            format!("{}+{}*sqrt({})", self.rat, self.surd, d)
        }
    }
}

/// Truncated formal power series q^offset (c_0 + c_1 q + ... + c_{len-1} q^{len-1}).
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries {
    offset: Rational64,
    surd: Option<u64>,
    coeffs: Vec<Coeff>,
}

/// Result of [`FormalSeries::compare`].
#[derive(Debug, Clone, PartialEq)]
pub enum Comparison {
    /// Coefficients agree on the whole compared range, which ends at this
    /// exponent (exclusive).
    Equal { checked_below: Rational64 },
    /// First differing exponent with both coefficients.
    Mismatch { exponent: Rational64, lhs: Coeff, rhs: Coeff },
}

impl FormalSeries {
    pub fn zero(len: usize) -> Self {
        FormalSeries { offset: Rational64::zero(), surd: None, coeffs: vec![Coeff::zero(); len] }
    }

    pub fn one(len: usize) -> Self {
        let mut s = FormalSeries::zero(len);
        if len > 0 {
            s.coeffs[0] = Coeff::from_int(1);
        }
        s
    }

    pub fn constant(c: BigRational, len: usize) -> Self {
        let mut s = FormalSeries::zero(len);
        if len > 0 {
            s.coeffs[0] = Coeff::from_rat(c);
        }
        s
    }

    /// c * q^power, known to len terms past the leading power.
    pub fn monomial(c: BigRational, power: Rational64, len: usize) -> Self {
        let mut s = FormalSeries::zero(len);
        if len > 0 {
            s.coeffs[0] = Coeff::from_rat(c);
        }
        s.offset = power;
        s
    }

    pub fn from_rational_coeffs(offset: Rational64, coeffs: Vec<BigRational>) -> Self {
        FormalSeries { offset, surd: None, coeffs: coeffs.into_iter().map(Coeff::from_rat).collect() }
    }

    /// Integer-offset series with coefficient at q^j given by `f(j)`.
    pub fn from_fn(len: usize, f: impl Fn(u64) -> BigRational) -> Self {
        FormalSeries {
            offset: Rational64::zero(),
            surd: None,
            coeffs: (0..len as u64).map(|j| Coeff::from_rat(f(j))).collect(),
        }
    }

    /// Attach a sqrt(d) extension (the surd parts of existing coefficients
    /// keep their meaning; a rational series simply becomes embeddable).
    pub fn with_surd(mut self, d: u64) -> Self {
        self.surd = Some(d);
        self
    }

    pub fn set_coeff(&mut self, idx: usize, c: Coeff) {
        self.coeffs[idx] = c;
    }

    pub fn offset(&self) -> Rational64 {
        self.offset
    }

    pub fn surd(&self) -> Option<u64> {
        self.surd
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exponent below which every coefficient is known (offset + len).
    pub fn known_below(&self) -> Rational64 {
        self.offset + Rational64::from_integer(self.coeffs.len() as i64)
    }

    /// The coefficient at exponent e: exactly zero below the offset or off
    /// the offset lattice, known in the window, None past the truncation.
    pub fn coeff_at(&self, e: Rational64) -> Option<Coeff> {
        let delta = e - self.offset;
        if !delta.is_integer() || delta < Rational64::zero() {
            return Some(Coeff::zero());
        }
        let idx = delta.to_integer() as usize;
        if idx < self.coeffs.len() {
            Some(self.coeffs[idx].clone())
        } else {
            None
        }
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    fn unify_surd(&self, o: &FormalSeries) -> Result<Option<u64>, SeriesError> {
        match (self.surd, o.surd) {
            (None, x) => Ok(x),
            (x, None) => Ok(x),
            (Some(a), Some(b)) if a == b => Ok(Some(a)),
            (Some(a), Some(b)) => Err(SeriesError::SurdMismatch { lhs: a, rhs: b }),
        }
    }

    pub fn add(&self, o: &FormalSeries) -> Result<FormalSeries, SeriesError> {
        let surd = self.unify_surd(o)?;
        if !(self.offset - o.offset).is_integer() {
            return Err(SeriesError::OffsetMismatch { lhs: self.offset, rhs: o.offset });
        }
        let offset = self.offset.min(o.offset);
        let end = self.known_below().min(o.known_below());
        let len = (end - offset).to_integer().max(0) as usize;
        let mut coeffs = vec![Coeff::zero(); len];
        for series in [self, o] {
            let shift = (series.offset - offset).to_integer() as usize;
            for (j, c) in series.coeffs.iter().enumerate() {
                let idx = shift + j;
                if idx < len {
                    coeffs[idx] = coeffs[idx].add(c);
                }
            }
        }
        Ok(FormalSeries { offset, surd, coeffs })
    }

    pub fn sub(&self, o: &FormalSeries) -> Result<FormalSeries, SeriesError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FormalSeries {
        FormalSeries {
            offset: self.offset,
            surd: self.surd,
            coeffs: self.coeffs.iter().map(Coeff::neg).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> FormalSeries {
        let k = Coeff::from_rat(c.clone());
        self.scale_coeff(&k)
    }

    pub fn scale_int(&self, c: i64) -> FormalSeries {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiply by a + b sqrt(d), where d is the series surd.
    pub fn scale_coeff(&self, k: &Coeff) -> FormalSeries {
        let d = self.surd.unwrap_or(0);
        FormalSeries {
            offset: self.offset,
            surd: self.surd,
            coeffs: self.coeffs.iter().map(|c| c.mul(k, d)).collect(),
        }
    }

    /// Multiply by q^r.
    pub fn shift(&self, r: Rational64) -> FormalSeries {
        let mut s = self.clone();
        s.offset += r;
        s
    }

    /// Cauchy product; offsets add, truncation is the minimum of the inputs.
    pub fn mul(&self, o: &FormalSeries) -> Result<FormalSeries, SeriesError> {
        let surd = self.unify_surd(o)?;
        let d = surd.unwrap_or(0);
        let len = self.coeffs.len().min(o.coeffs.len());
        let mut coeffs = vec![Coeff::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b, d));
            }
        }
        Ok(FormalSeries { offset: self.offset + o.offset, surd, coeffs })
    }

    /// Multiplicative inverse to the same truncation; the leading coefficient
    /// must be nonzero. The offset negates.
    pub fn inverse(&self) -> Result<FormalSeries, SeriesError> {
        let d = self.surd.unwrap_or(0);
        let c0 = self.coeffs.first().ok_or(SeriesError::ZeroLeadingCoefficient)?;
        let r0 = c0.inv(d).ok_or(SeriesError::ZeroLeadingCoefficient)?;
        let len = self.coeffs.len();
        let mut inv = vec![Coeff::zero(); len];
        inv[0] = r0.clone();
        for n in 1..len {
            let mut acc = Coeff::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !inv[n - k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&inv[n - k], d));
                }
            }
            inv[n] = acc.mul(&r0, d).neg();
        }
        Ok(FormalSeries { offset: -self.offset, surd: self.surd, coeffs: inv })
    }

    pub fn pow(&self, e: i32) -> Result<FormalSeries, SeriesError> {
        if e == 0 {
            let mut s = FormalSeries::one(self.coeffs.len());
            s.surd = self.surd;
            return Ok(s);
        }
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Compare coefficients for all exponents below `order` (as far as both
    /// sides are known). Offsets must be congruent mod 1.
    pub fn compare(&self, o: &FormalSeries, order: i64) -> Result<Comparison, SeriesError> {
        self.unify_surd(o)?;
        if !(self.offset - o.offset).is_integer() {
            return Err(SeriesError::OffsetMismatch { lhs: self.offset, rhs: o.offset });
        }
        let start = self.offset.min(o.offset);
        let end = self
            .known_below()
            .min(o.known_below())
            .min(Rational64::from_integer(order));
        let mut e = start;
        while e < end {
            // both sides are known on this range by construction
            let a = self.coeff_at(e).unwrap_or_else(Coeff::zero);
            let b = o.coeff_at(e).unwrap_or_else(Coeff::zero);
            if a != b {
                return Ok(Comparison::Mismatch { exponent: e, lhs: a, rhs: b });
            }
            e += Rational64::one();
        }
        Ok(Comparison::Equal { checked_below: end })
    }

    /// Numerical evaluation at a complex nome with |q| < 1. Fractional powers
    /// of q use the principal branch.
    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        let lead = if self.offset.is_zero() {
            Complex64::new(1.0, 0.0)
        } else {
            q.powc(Complex64::new(self.offset.to_f64().unwrap(), 0.0))
        };
        let sq = self.surd.map(|d| (d as f64).sqrt()).unwrap_or(0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut qp = lead;
        for c in &self.coeffs {
            if !c.is_zero() {
                let v = c.rat.to_f64().unwrap_or(0.0) + c.surd.to_f64().unwrap_or(0.0) * sq;
                acc += qp * v;
            }
            qp *= q;
        }
        acc
    }

    /// Sparse "c * q^e" rendering of the nonzero coefficients.
    pub fn to_sparse_string(&self, max_terms: usize) -> String {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.offset + Rational64::from_integer(j as i64);
            parts.push(format!("{} * q^{}", c.to_string_with(self.surd), e));
            if parts.len() >= max_terms {
                parts.push("...".into());
                break;
            }
        }
        if parts.is_empty() {
            format!("0 + O(q^{})", self.known_below())
        } else {
            format!("{} + O(q^{})", parts.join(" + "), self.known_below())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn series_of(v: &[i64]) -> FormalSeries {
        FormalSeries::from_fn(v.len(), |j| rat(v[j as usize], 1))
    }

    /// Independent partition count by dynamic programming over parts.
    fn partitions_oracle(upto: usize) -> Vec<i64> {
        let mut p = vec![0i64; upto];
        p[0] = 1;
        for part in 1..upto {
            for n in part..upto {
                p[n] += p[n - part];
            }
        }
        p
    }

    #[test]
    fn mul_identity_and_geometric() {
        let s = series_of(&[3, 1, 4, 1, 5]);
        let one = FormalSeries::one(5);
        assert_eq!(s.mul(&one).unwrap(), s);
        // (1 - q)(1 + q + q^2 + ...) = 1
        let a = series_of(&[1, -1, 0, 0, 0, 0]);
        let b = series_of(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(a.mul(&b).unwrap(), FormalSeries::one(6));
    }

    #[test]
    fn euler_product_times_inverse_is_one() {
        let e = euler_product(1, 100);
        let inv = e.inverse().unwrap();
        assert_eq!(e.mul(&inv).unwrap(), FormalSeries::one(100));
    }

    #[test]
    fn inverse_gives_partition_numbers() {
        let inv = euler_product(1, 10).inverse().unwrap();
        let oracle = partitions_oracle(10);
        assert_eq!(oracle[..10], [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
        for (j, &p) in oracle.iter().enumerate() {
            assert_eq!(inv.coeffs()[j], Coeff::from_int(p), "p({j})");
        }
    }

    #[test]
    fn inverse_of_one_minus_q_squared() {
        let s = series_of(&[1, -2, 1, 0, 0, 0, 0, 0]);
        let inv = s.inverse().unwrap();
        for j in 0..8 {
            assert_eq!(inv.coeffs()[j], Coeff::from_int(j as i64 + 1), "(j+1) q^j");
        }
    }

    #[test]
    fn inverse_rejects_zero_constant() {
        let s = series_of(&[0, 1, 1]);
        assert_eq!(s.inverse(), Err(SeriesError::ZeroLeadingCoefficient));
    }

    #[test]
    fn offsets_add_on_mul_and_negate_on_inverse() {
        let a = FormalSeries::monomial(rat(2, 1), Rational64::new(1, 8), 10);
        let b = FormalSeries::monomial(rat(3, 1), Rational64::new(3, 8), 10);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.offset(), Rational64::new(1, 2));
        assert_eq!(p.coeffs()[0], Coeff::from_int(6));
        let inv = a.inverse().unwrap();
        assert_eq!(inv.offset(), Rational64::new(-1, 8));
    }

    #[test]
    fn add_requires_congruent_offsets() {
        let a = FormalSeries::monomial(rat(1, 1), Rational64::new(1, 8), 4);
        let b = FormalSeries::monomial(rat(1, 1), Rational64::new(3, 8), 4);
        assert!(matches!(a.add(&b), Err(SeriesError::OffsetMismatch { .. })));
        // congruent mod 1 aligns: q^{1/8} + q^{9/8}
        let c = FormalSeries::monomial(rat(1, 1), Rational64::new(9, 8), 4);
        let s = a.add(&c).unwrap();
        assert_eq!(s.offset(), Rational64::new(1, 8));
        assert_eq!(s.coeffs()[0], Coeff::from_int(1));
        assert_eq!(s.coeffs()[1], Coeff::from_int(1));
    }

    #[test]
    fn truncation_is_min_of_inputs() {
        let a = series_of(&[1, 1, 1, 1, 1, 1, 1, 1]);
        let b = series_of(&[1, 1, 1]);
        assert_eq!(a.mul(&b).unwrap().len(), 3);
        assert_eq!(a.add(&b).unwrap().len(), 3);
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let e = euler_product(1, 50);
        assert_eq!(
            e.compare(&e, 50).unwrap(),
            Comparison::Equal { checked_below: Rational64::from_integer(50) }
        );
        // (q;q)_inf vs (q;q)_inf + q^40
        let bump = FormalSeries::monomial(rat(1, 1), Rational64::from_integer(40), 10);
        let e2 = e.add(&bump).unwrap();
        match e.compare(&e2, 50).unwrap() {
            Comparison::Mismatch { exponent, lhs, rhs } => {
                assert_eq!(exponent, Rational64::from_integer(40));
                assert_eq!(rhs.sub(&lhs), Coeff::from_int(1));
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn compare_offset_alignment() {
        // q * (1 + q) vs series with offset 0 equal to q + q^2
        let a = FormalSeries::from_rational_coeffs(Rational64::one(), vec![rat(1, 1), rat(1, 1)]);
        let b = series_of(&[0, 1, 1]);
        assert!(matches!(a.compare(&b, 3).unwrap(), Comparison::Equal { .. }));
        // fractional vs integer offset errors
        let c = FormalSeries::monomial(rat(1, 1), Rational64::new(1, 2), 3);
        assert!(matches!(a.compare(&c, 3), Err(SeriesError::OffsetMismatch { .. })));
    }

    #[test]
    fn surd_arithmetic() {
        // (1 + sqrt5 q)^2 = 1 + 2 sqrt5 q + 5 q^2
        let mut s = FormalSeries::zero(3).with_surd(5);
        s.set_coeff(0, Coeff::from_int(1));
        s.set_coeff(1, Coeff { rat: BigRational::zero(), surd: BigRational::one() });
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coeffs()[0], Coeff::from_int(1));
        assert_eq!(sq.coeffs()[1], Coeff { rat: BigRational::zero(), surd: rat(2, 1) });
        assert_eq!(sq.coeffs()[2], Coeff::from_int(5));
        assert_eq!(sq.coeffs()[1].to_string_with(Some(5)), "2*sqrt(5)");
        // mixing sqrt(5) and sqrt(8) errors
        let t = FormalSeries::zero(3).with_surd(8);
        assert_eq!(s.mul(&t), Err(SeriesError::SurdMismatch { lhs: 5, rhs: 8 }));
    }

    #[test]
    fn eval_complex_matches_horner() {
        let s = FormalSeries::from_rational_coeffs(
            Rational64::new(1, 2),
            vec![rat(1, 1), rat(-3, 2), rat(5, 1)],
        );
        let q = Complex64::new(0.02, 0.015);
        let direct = q.powc(Complex64::new(0.5, 0.0)) * (1.0 - 1.5 * q + 5.0 * q * q);
        assert!((s.eval_complex(q) - direct).norm() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_axioms(
            a in proptest::collection::vec(-9i64..10, 64),
            b in proptest::collection::vec(-9i64..10, 64),
            c in proptest::collection::vec(-9i64..10, 64),
        ) {
            let (a, b, c) = (series_of(&a), series_of(&b), series_of(&c));
            // commutativity and associativity of mul
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            // distributivity
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_round_trip(mut v in proptest::collection::vec(-9i64..10, 32)) {
            if v[0] == 0 { v[0] = 1; }
            let s = series_of(&v);
            let inv = s.inverse().unwrap();
            prop_assert_eq!(s.mul(&inv).unwrap(), FormalSeries::one(32));
        }
    }
}
