//! Exact arithmetic with roots of unity and with sums of roots of unity.
//!
//! A [`RootOfUnity`] is a single e^{2 pi i a/m} stored as the reduced fraction
//! a/m. A [`Cyclotomic`] is an integer combination of m-th roots of unity,
//! i.e. an element of Z[zeta_m] written on the (redundant) basis
//! 1, zeta, ..., zeta^{m-1}. Equality and zero tests reduce modulo the m-th
//! cyclotomic polynomial, so identities like 1 + zeta_2 = 0 hold exactly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::arith::{gcd, lcm};

/// e^{2 pi i num/den} with 0 <= num < den and gcd(num, den) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0);
        let num = num.rem_euclid(den as i64) as u64;
        let g = gcd(num, den);
        if g == 0 {
            // num == 0
            return RootOfUnity { num: 0, den: 1 };
        }
        RootOfUnity { num: num / g, den: den / g }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { num: 1, den: 2 }
    }

    /// Denominator of the reduced fraction: the order of this root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    /// Numerator of the reduced fraction.
    pub fn exponent(&self) -> u64 {
        self.num
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn is_minus_one(&self) -> bool {
        self.den == 2 && self.num == 1
    }

    /// The value as an integer when it is +-1.
    pub fn as_sign(&self) -> Option<i64> {
        if self.is_one() {
            Some(1)
        } else if self.is_minus_one() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn mul(&self, other: &RootOfUnity) -> RootOfUnity {
        let den = lcm(self.den, other.den);
        let num = (self.num as u128 * (den / self.den) as u128
            + other.num as u128 * (den / other.den) as u128)
            % den as u128;
        RootOfUnity::new(num as i64, den)
    }

    pub fn pow(&self, k: i64) -> RootOfUnity {
        let e = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        RootOfUnity::new(e, self.den)
    }

    pub fn conj(&self) -> RootOfUnity {
        RootOfUnity::new(-(self.num as i64), self.den)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.num as f64 / self.den as f64)
    }

    /// Total order by the angle num/den in [0, 1); gives characters a fixed
    /// deterministic sort key.
    pub fn angle_cmp(&self, other: &RootOfUnity) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

/// An element of Z[zeta_m]: coefficient j multiplies zeta_m^j.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<BigInt>,
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        assert!(order >= 1);
        Cyclotomic { order, coeffs: vec![BigInt::zero(); order as usize] }
    }

    pub fn from_integer(n: i64, order: u64) -> Self {
        let mut c = Cyclotomic::zero(order);
        c.coeffs[0] = BigInt::from(n);
        c
    }

    pub fn from_root(root: &RootOfUnity, order: u64) -> Self {
        assert!(order % root.den == 0, "order {} not a multiple of {}", order, root.den);
        let mut c = Cyclotomic::zero(order);
        c.coeffs[(root.num * (order / root.den)) as usize] = BigInt::one();
        c
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Add `coeff * zeta^exp` in place.
    pub fn add_term(&mut self, coeff: i64, exp: u64) {
        let e = (exp % self.order) as usize;
        self.coeffs[e] += coeff;
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, other);
        let mut c = a;
        for (x, y) in c.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        c
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, other);
        let mut c = a;
        for (x, y) in c.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        c
    }

    pub fn neg(&self) -> Cyclotomic {
        let mut c = self.clone();
        for x in c.coeffs.iter_mut() {
            *x = -x.clone();
        }
        c
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, other);
        let m = a.order as usize;
        let mut c = Cyclotomic::zero(a.order);
        for i in 0..m {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if b.coeffs[j].is_zero() {
                    continue;
                }
                let k = (i + j) % m;
                c.coeffs[k] += &a.coeffs[i] * &b.coeffs[j];
            }
        }
        c
    }

    /// Multiply by a single root of unity (a cyclic shift of coefficients).
    pub fn mul_root(&self, root: &RootOfUnity) -> Cyclotomic {
        let order = lcm(self.order, root.den);
        let a = self.promote(order);
        let shift = (root.num * (order / root.den)) as usize;
        let m = order as usize;
        let mut c = Cyclotomic::zero(order);
        for i in 0..m {
            if !a.coeffs[i].is_zero() {
                c.coeffs[(i + shift) % m] = a.coeffs[i].clone();
            }
        }
        c
    }

    /// Complex conjugation: zeta^j -> zeta^{-j}.
    pub fn conj(&self) -> Cyclotomic {
        let m = self.order as usize;
        let mut c = Cyclotomic::zero(self.order);
        for i in 0..m {
            if !self.coeffs[i].is_zero() {
                c.coeffs[(m - i) % m] = self.coeffs[i].clone();
            }
        }
        c
    }

    /// Re-express in Z[zeta_M] for a multiple M of the current order.
    pub fn promote(&self, new_order: u64) -> Cyclotomic {
        assert!(new_order % self.order == 0);
        if new_order == self.order {
            return self.clone();
        }
        let k = (new_order / self.order) as usize;
        let mut c = Cyclotomic::zero(new_order);
        for (i, v) in self.coeffs.iter().enumerate() {
            if !v.is_zero() {
                c.coeffs[i * k] = v.clone();
            }
        }
        c
    }

    fn unify(a: &Cyclotomic, b: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = lcm(a.order, b.order);
        (a.promote(m), b.promote(m))
    }

    /// Exact zero test: reduce modulo the m-th cyclotomic polynomial.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|c| c.is_zero()) {
            return true;
        }
        let phi = cyclotomic_polynomial(self.order);
        let rem = poly_rem(&self.coeffs, &phi);
        rem.iter().all(|c| c.is_zero())
    }

    pub fn equals(&self, other: &Cyclotomic) -> bool {
        self.sub(other).is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, v) in self.coeffs.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let vf = bigint_to_f64(v);
            acc += Complex64::from_polar(1.0, TAU * j as f64 / self.order as f64) * vf;
        }
        acc
    }

    /// sqrt(d) for a positive fundamental discriminant d, as the quadratic
    /// Gauss sum sum_k (d/k) zeta_d^k in Z[zeta_d].
    pub fn sqrt_fundamental(d: u64) -> Cyclotomic {
        let mut c = Cyclotomic::zero(d);
        for k in 1..d {
            let s = crate::characters::kronecker(d as i64, k as i64);
            if s != 0 {
                c.add_term(s, k);
            }
        }
        c
    }
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    // Values in this crate stay tiny; the lossy path is fine.
    let (sign, digits) = v.to_u64_digits();
    let mut x = 0.0f64;
    for d in digits.iter().rev() {
        x = x * 1.8446744073709552e19 + *d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -x
    } else {
        x
    }
}

/// Polynomial remainder of `a` (coefficients low to high) modulo monic `m`.
fn poly_rem(a: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let dm = m.len() - 1;
    assert!(m[dm].is_one(), "modulus must be monic");
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let off = r.len() - dm;
        for i in 0..dm {
            r[off + i] -= &lead * &m[i];
        }
    }
    r
}

/// Exact quotient of integer polynomials (remainder must vanish).
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let lead = r.last().unwrap().clone();
        let dq = r.len() - 1 - db;
        let c = &lead / &b[db];
        q[dq] = c.clone();
        for i in 0..=db {
            let idx = dq + i;
            let delta = &c * &b[i];
            r[idx] -= delta;
        }
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
    }
    assert!(r.iter().all(|c| c.is_zero()), "division not exact");
    q
}

/// The m-th cyclotomic polynomial, memoized. Computed as
/// (x^m - 1) / prod_{d | m, d < m} Phi_d(x).
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let poly = if m == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^m - 1
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        let mut q = num;
        for d in crate::arith::divisors(m) {
            if d < m {
                let phi_d = cyclotomic_polynomial(d);
                q = poly_div_exact(&q, &phi_d);
            }
        }
        q
    };
    cache.lock().unwrap().insert(m, poly.clone());
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_reduction() {
        let r = RootOfUnity::new(6, 8);
        assert_eq!(r.order(), 4);
        assert_eq!(r.exponent(), 3);
        assert_eq!(RootOfUnity::new(-1, 4), RootOfUnity::new(3, 4));
        assert!(RootOfUnity::new(5, 5).is_one());
    }

    #[test]
    fn root_algebra() {
        let i = RootOfUnity::new(1, 4);
        assert!(i.mul(&i).is_minus_one());
        assert!(i.pow(4).is_one());
        assert_eq!(i.conj(), RootOfUnity::new(3, 4));
        assert_eq!(RootOfUnity::minus_one().as_sign(), Some(-1));
    }

    #[test]
    fn cyclotomic_polynomials() {
        let to_i64 = |p: Vec<BigInt>| -> Vec<i64> {
            p.iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        // Phi_105 is the first with a coefficient of magnitude 2.
        let p105 = cyclotomic_polynomial(105);
        assert!(p105.iter().any(|c| c.magnitude() > &1u32.into()));
    }

    #[test]
    fn exact_zero_tests() {
        // 1 + zeta_2 = 0
        let mut a = Cyclotomic::from_integer(1, 2);
        a.add_term(1, 1);
        assert!(a.is_zero());
        // 1 + zeta_3 + zeta_3^2 = 0
        let mut b = Cyclotomic::from_integer(1, 3);
        b.add_term(1, 1);
        b.add_term(1, 2);
        assert!(b.is_zero());
        // 1 + zeta_4 is not zero
        let mut c = Cyclotomic::from_integer(1, 4);
        c.add_term(1, 1);
        assert!(!c.is_zero());
    }

    #[test]
    fn sqrt5_squares_to_5() {
        let s5 = Cyclotomic::sqrt_fundamental(5);
        let sq = s5.mul(&s5);
        assert!(sq.equals(&Cyclotomic::from_integer(5, 5)));
        assert!((s5.to_complex().re - 5f64.sqrt()).abs() < 1e-12);
        assert!(s5.to_complex().im.abs() < 1e-12);
    }

    #[test]
    fn sqrt8_and_sqrt12() {
        for d in [8u64, 12] {
            let s = Cyclotomic::sqrt_fundamental(d);
            assert!(s.mul(&s).equals(&Cyclotomic::from_integer(d as i64, d)));
            assert!((s.to_complex().re - (d as f64).sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn promote_preserves_value() {
        let s5 = Cyclotomic::sqrt_fundamental(5);
        let s5_in_10 = s5.promote(10);
        assert!(s5_in_10.sub(&s5.promote(10)).is_zero());
        assert!((s5_in_10.to_complex() - s5.to_complex()).norm() < 1e-13);
    }
}
