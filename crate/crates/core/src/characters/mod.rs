//! Dirichlet characters modulo N with exact root-of-unity values.
//!
//! A character is stored as its complete value table on residues 0..N-1.
//! Construction goes through the structure of (Z/N)^x: the group is split by
//! CRT into cyclic factors with fixed generators (smallest primitive root for
//! odd prime powers; -1 and 5 for 2^a with a >= 3), and characters are
//! enumerated as exponent tuples on those generators.

mod cyclotomic;
mod kronecker;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, RootOfUnity};
pub use kronecker::kronecker;

use crate::arith::{divisors, euler_phi, gcd, lcm, mod_pow, smallest_primitive_root};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use std::sync::OnceLock;

/// Errors from character construction and manipulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharError {
    /// The value table does not define a Dirichlet character.
    NotACharacter(String),
    /// induce() called with a target modulus not divisible by the source.
    NotDivisible { modulus: u64, target: u64 },
    /// An operation needed rational (+-1) values but the character is complex.
    ComplexValued { modulus: u64 },
    /// A named character the CLI knows nothing about.
    UnknownName(String),
}

impl fmt::Display for CharError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharError::NotACharacter(msg) => write!(f, "not a Dirichlet character: {msg}"),
            CharError::NotDivisible { modulus, target } => {
                write!(f, "modulus {modulus} does not divide target modulus {target}")
            }
            CharError::ComplexValued { modulus } => {
                write!(f, "character mod {modulus} takes non-real values")
            }
            CharError::UnknownName(name) => write!(f, "unknown character name {name:?}"),
        }
    }
}

impl std::error::Error for CharError {}

/// chi(n) is either 0 (off the units) or a root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharValue {
    Zero,
    Root(RootOfUnity),
}

impl CharValue {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            CharValue::Zero => Complex64::new(0.0, 0.0),
            CharValue::Root(r) => r.to_complex(),
        }
    }

    /// The value as an integer in {-1, 0, 1}, if it is one.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            CharValue::Zero => Some(0),
            CharValue::Root(r) => r.as_sign(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, CharValue::Zero)
    }

    fn mul(&self, other: &CharValue) -> CharValue {
        match (self, other) {
            (CharValue::Root(a), CharValue::Root(b)) => CharValue::Root(a.mul(b)),
            _ => CharValue::Zero,
        }
    }
}

/// A Dirichlet character modulo N as a complete, exact value table.
#[derive(Debug)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<CharValue>,
    even: bool,
    conductor: OnceLock<u64>,
}

impl Clone for DirichletCharacter {
    fn clone(&self) -> Self {
        let conductor = OnceLock::new();
        if let Some(c) = self.conductor.get() {
            let _ = conductor.set(*c);
        }
        DirichletCharacter { modulus: self.modulus, values: self.values.clone(), even: self.even, conductor }
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.values == other.values
    }
}
impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    /// Build from a value table, validating the character axioms:
    /// chi(1) = 1, chi(n) = 0 iff gcd(n, N) > 1, chi(mn) = chi(m)chi(n).
    pub fn from_values(modulus: u64, values: Vec<CharValue>) -> Result<Self, CharError> {
        if modulus == 0 || values.len() != modulus as usize {
            return Err(CharError::NotACharacter(format!(
                "table length {} does not match modulus {}",
                values.len(),
                modulus
            )));
        }
        let unit = |n: u64| gcd(n, modulus) == 1;
        if modulus == 1 {
            if values[0] != CharValue::Root(RootOfUnity::one()) {
                return Err(CharError::NotACharacter("chi mod 1 must be identically one".into()));
            }
        } else {
            if values[1 % modulus as usize] != CharValue::Root(RootOfUnity::one()) {
                return Err(CharError::NotACharacter("chi(1) != 1".into()));
            }
            for n in 0..modulus {
                let ok = unit(n) != values[n as usize].is_zero();
                if !ok {
                    return Err(CharError::NotACharacter(format!(
                        "support wrong at {n}: chi vanishes exactly off the units"
                    )));
                }
            }
            for m in 0..modulus {
                for n in m..modulus {
                    let lhs = &values[(m * n % modulus) as usize];
                    let rhs = values[m as usize].mul(&values[n as usize]);
                    if *lhs != rhs {
                        return Err(CharError::NotACharacter(format!(
                            "chi({m}*{n}) != chi({m})chi({n})"
                        )));
                    }
                }
            }
        }
        let even = if modulus == 1 {
            true
        } else {
            values[(modulus - 1) as usize] == CharValue::Root(RootOfUnity::one())
        };
        Ok(DirichletCharacter { modulus, values, even, conductor: OnceLock::new() })
    }

    /// The principal character mod N.
    pub fn principal(modulus: u64) -> Self {
        let values = (0..modulus.max(1))
            .map(|n| {
                if gcd(n, modulus) == 1 {
                    CharValue::Root(RootOfUnity::one())
                } else {
                    CharValue::Zero
                }
            })
            .collect();
        DirichletCharacter { modulus: modulus.max(1), values, even: true, conductor: OnceLock::new() }
    }

    /// Enumerate all phi(N) characters mod N, deterministically ordered:
    /// the principal character first, the rest sorted lexicographically by
    /// value table (roots of unity ordered by angle).
    pub fn enumerate(modulus: u64) -> Vec<Self> {
        assert!(modulus >= 1);
        if modulus == 1 {
            return vec![DirichletCharacter::principal(1)];
        }
        // cyclic factor generators of (Z/N)^x, each lifted to mod N
        let mut gens: Vec<(u64, u64)> = Vec::new(); // (generator mod N, order)
        for (p, e) in crate::arith::factor(modulus) {
            let pe = p.pow(e);
            let rest = modulus / pe;
            let lift = |g: u64| -> u64 { crt_lift(g, pe, 1, rest) };
            if p == 2 {
                match e {
                    1 => {}
                    2 => gens.push((lift(3), 2)),
                    _ => {
                        gens.push((lift(pe - 1), 2)); // -1
                        gens.push((lift(5), pe / 4)); // 5 has order 2^{e-2}
                    }
                }
            } else {
                let g = smallest_primitive_root(pe);
                gens.push((lift(g), euler_phi(pe)));
            }
        }
        // discrete logs of every unit with respect to the generator tuple
        let phi = euler_phi(modulus) as usize;
        let mut dlog: Vec<Option<Vec<u64>>> = vec![None; modulus as usize];
        let orders: Vec<u64> = gens.iter().map(|&(_, d)| d).collect();
        let mut exps = vec![0u64; gens.len()];
        loop {
            let mut x = 1u64;
            for (i, &(g, _)) in gens.iter().enumerate() {
                x = x * mod_pow(g, exps[i], modulus) % modulus;
            }
            dlog[x as usize] = Some(exps.clone());
            // increment the exponent tuple
            let mut i = 0;
            loop {
                if i == gens.len() {
                    break;
                }
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == gens.len() {
                break;
            }
        }
        debug_assert_eq!(dlog.iter().filter(|d| d.is_some()).count(), phi);

        // characters = exponent tuples on the generators
        let big_l = orders.iter().fold(1u64, |a, &d| lcm(a, d));
        let mut chars = Vec::with_capacity(phi);
        let mut cexp = vec![0u64; gens.len()];
        loop {
            let values: Vec<CharValue> = (0..modulus)
                .map(|n| match &dlog[n as usize] {
                    None => CharValue::Zero,
                    Some(es) => {
                        let mut num = 0u64;
                        for (i, &e) in es.iter().enumerate() {
                            num = (num + (cexp[i] * e % orders[i]) * (big_l / orders[i])) % big_l;
                        }
                        CharValue::Root(RootOfUnity::new(num as i64, big_l))
                    }
                })
                .collect();
            let even = values[(modulus - 1) as usize] == CharValue::Root(RootOfUnity::one());
            chars.push(DirichletCharacter { modulus, values, even, conductor: OnceLock::new() });
            let mut i = 0;
            loop {
                if i == gens.len() {
                    break;
                }
                cexp[i] += 1;
                if cexp[i] < orders[i] {
                    break;
                }
                cexp[i] = 0;
                i += 1;
            }
            if i == gens.len() {
                break;
            }
        }
        chars.sort_by(|a, b| {
            for (x, y) in a.values.iter().zip(b.values.iter()) {
                let ord = match (x, y) {
                    (CharValue::Zero, CharValue::Zero) => std::cmp::Ordering::Equal,
                    (CharValue::Zero, _) => std::cmp::Ordering::Less,
                    (_, CharValue::Zero) => std::cmp::Ordering::Greater,
                    (CharValue::Root(r), CharValue::Root(s)) => r.angle_cmp(s),
                };
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        });
        chars
    }

    /// The character n -> (d/n) of modulus |d|. Valid for d = 0, 1 (mod 4);
    /// a d whose symbol has period longer than |d| is rejected.
    pub fn from_kronecker(d: i64) -> Result<Self, CharError> {
        if d == 0 {
            return Err(CharError::NotACharacter("(0/n) is not a character".into()));
        }
        let modulus = d.unsigned_abs();
        // the symbol's period always divides 4|d|, so this range is conclusive
        for n in 0..4 * modulus as i64 {
            if kronecker(d, n) != kronecker(d, n % modulus as i64) {
                return Err(CharError::NotACharacter(format!(
                    "({d}/n) is not periodic with period {modulus}"
                )));
            }
        }
        let values = (0..modulus)
            .map(|n| match kronecker(d, n as i64) {
                0 => CharValue::Zero,
                1 => CharValue::Root(RootOfUnity::one()),
                _ => CharValue::Root(RootOfUnity::minus_one()),
            })
            .collect();
        DirichletCharacter::from_values(modulus, values)
    }

    /// The character n -> (n/p) (quadratic residue symbol with n on top) of
    /// modulus p, for an odd prime p.
    pub fn legendre_top(p: u64) -> Result<Self, CharError> {
        let values = (0..p)
            .map(|n| {
                if n == 0 {
                    CharValue::Zero
                } else if (1..p).any(|x| x * x % p == n) {
                    CharValue::Root(RootOfUnity::one())
                } else {
                    CharValue::Root(RootOfUnity::minus_one())
                }
            })
            .collect();
        DirichletCharacter::from_values(p, values)
    }

    /// The even character mod 10 induced from (n/5): +1 at 1, 9 and -1 at 3, 7.
    pub fn psi10() -> Self {
        DirichletCharacter::legendre_top(5).unwrap().induce(10).unwrap()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| match v {
            CharValue::Zero => true,
            CharValue::Root(r) => r.is_one(),
        })
    }

    /// chi(n) via the periodic extension to all of Z.
    pub fn eval(&self, n: i64) -> CharValue {
        let idx = n.rem_euclid(self.modulus as i64) as usize;
        self.values[idx]
    }

    pub fn eval_complex(&self, n: i64) -> Complex64 {
        self.eval(n).to_complex()
    }

    /// chi(n) as an integer in {-1, 0, 1}; errors if the value is a complex
    /// root of unity (the q-series layer works over the rationals).
    pub fn eval_int(&self, n: i64) -> Result<i64, CharError> {
        self.eval(n).as_int().ok_or(CharError::ComplexValued { modulus: self.modulus })
    }

    /// True when every value lies in {0, +-1}.
    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.as_int().is_some())
    }

    /// The smallest d | N such that a character mod d induces chi.
    /// Cached; safe to race from multiple threads.
    pub fn conductor(&self) -> u64 {
        *self.conductor.get_or_init(|| {
            for d in divisors(self.modulus) {
                // chi is induced mod d iff chi(a) = 1 whenever a = 1 (mod d)
                // and gcd(a, N) = 1.
                let induced = (1..=self.modulus)
                    .filter(|&a| a % d == 1 % d && gcd(a, self.modulus) == 1)
                    .all(|a| self.values[(a % self.modulus) as usize] == CharValue::Root(RootOfUnity::one()));
                if induced {
                    return d;
                }
            }
            self.modulus
        })
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The character mod N' (a multiple of N) induced by chi.
    pub fn induce(&self, target: u64) -> Result<Self, CharError> {
        if target == 0 || target % self.modulus != 0 {
            return Err(CharError::NotDivisible { modulus: self.modulus, target });
        }
        let values = (0..target)
            .map(|k| {
                if gcd(k, target) == 1 {
                    self.values[(k % self.modulus) as usize]
                } else {
                    CharValue::Zero
                }
            })
            .collect();
        let even = self.even;
        Ok(DirichletCharacter { modulus: target, values, even, conductor: OnceLock::new() })
    }

    /// The primitive character mod conductor(chi) that induces chi.
    pub fn primitive_core(&self) -> Self {
        let f = self.conductor();
        let values = (0..f)
            .map(|k| {
                if gcd(k, f) != 1 {
                    return CharValue::Zero;
                }
                // lift k to a residue coprime to N in the same class mod f
                let mut a = k;
                while gcd(a, self.modulus) != 1 {
                    a += f;
                }
                self.values[(a % self.modulus) as usize]
            })
            .collect();
        DirichletCharacter::from_values(f, values).expect("primitive core is a character")
    }

    /// The Gauss sum g_n(chi) = sum_{k=1}^{N-1} chi(k) e^{2 pi i n k / N},
    /// exact in Z[zeta_M] with M = lcm(N, order of the values).
    pub fn gauss_sum(&self, n: i64) -> Cyclotomic {
        let big_l = self.value_order();
        let m = lcm(self.modulus.max(1), big_l);
        let mut acc = Cyclotomic::zero(m);
        for k in 1..self.modulus {
            if let CharValue::Root(r) = &self.values[k as usize] {
                let e_chi = r.exponent() * (m / r.order());
                let nk = (n as i128 * k as i128).rem_euclid(self.modulus as i128) as u64;
                let e_exp = nk * (m / self.modulus);
                acc.add_term(1, (e_chi + e_exp) % m);
            }
        }
        acc
    }

    /// lcm of the orders of the nonzero values.
    pub fn value_order(&self) -> u64 {
        self.values
            .iter()
            .filter_map(|v| match v {
                CharValue::Root(r) => Some(r.order()),
                CharValue::Zero => None,
            })
            .fold(1, lcm)
    }

    /// Serializable view: {modulus, conductor, parity, values}.
    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            modulus: self.modulus,
            conductor: self.conductor(),
            parity: if self.even { "even" } else { "odd" },
            primitive: self.is_primitive(),
            values: self
                .values
                .iter()
                .map(|v| match v {
                    CharValue::Zero => None,
                    CharValue::Root(r) => Some((r.order(), r.exponent())),
                })
                .collect(),
        }
    }
}

/// JSON shape used by the CLI for a character.
#[derive(Serialize, Debug, Clone)]
pub struct CharacterJson {
    pub modulus: u64,
    pub conductor: u64,
    pub parity: &'static str,
    pub primitive: bool,
    /// (order, exponent) of each value as a root of unity, or null for 0.
    pub values: Vec<Option<(u64, u64)>>,
}

/// x = a (mod m), x = b (mod n) for coprime m, n.
fn crt_lift(a: u64, m: u64, b: u64, n: u64) -> u64 {
    if n == 1 {
        return a % m;
    }
    // x = a + m*t with t = (b - a) * m^{-1} (mod n)
    let minv = mod_inverse(m % n, n);
    let diff = (b as i128 - a as i128).rem_euclid(n as i128) as u64;
    let t = diff as u128 * minv as u128 % n as u128;
    (a as u128 + m as u128 * t) as u64 % (m * n) as u64
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // extended Euclid
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r == 1, "not invertible");
    old_s.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi8() -> DirichletCharacter {
        DirichletCharacter::from_kronecker(8).unwrap()
    }

    #[test]
    fn enumerate_counts() {
        for n in 1..=50u64 {
            let chars = DirichletCharacter::enumerate(n);
            assert_eq!(chars.len() as u64, euler_phi(n), "N={n}");
            assert!(chars[0].is_principal(), "principal first for N={n}");
        }
    }

    #[test]
    fn enumerate_n1() {
        let chars = DirichletCharacter::enumerate(1);
        assert_eq!(chars.len(), 1);
        assert_eq!(chars[0].eval(7).as_int(), Some(1));
        assert_eq!(chars[0].eval(0).as_int(), Some(1));
    }

    #[test]
    fn enumerate_n5_contains_legendre() {
        let chars = DirichletCharacter::enumerate(5);
        assert_eq!(chars.len(), 4);
        let legendre = DirichletCharacter::legendre_top(5).unwrap();
        assert!(chars.iter().any(|c| *c == legendre));
    }

    #[test]
    fn enumerate_n8_even_primitive_is_kronecker8() {
        let chars = DirichletCharacter::enumerate(8);
        assert_eq!(chars.len(), 4);
        let even_primitive: Vec<_> =
            chars.iter().filter(|c| c.is_even() && c.is_primitive()).collect();
        assert_eq!(even_primitive.len(), 1);
        let k8 = chi8();
        for n in 0..8 {
            assert_eq!(even_primitive[0].eval(n), k8.eval(n));
        }
    }

    #[test]
    fn multiplicativity_all_small_moduli() {
        for n in 1..=50u64 {
            for chi in DirichletCharacter::enumerate(n) {
                for a in 0..n {
                    for b in 0..n {
                        let lhs = chi.eval((a * b) as i64);
                        let rhs = chi.eval(a as i64).mul(&chi.eval(b as i64));
                        assert_eq!(lhs, rhs, "N={n} a={a} b={b}");
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_exact() {
        for n in 2..=50u64 {
            for chi in DirichletCharacter::enumerate(n) {
                if chi.is_principal() {
                    continue;
                }
                let order = chi.value_order();
                let mut sum = Cyclotomic::zero(order);
                for k in 0..n {
                    if let CharValue::Root(r) = chi.eval(k as i64) {
                        sum = sum.add(&Cyclotomic::from_root(&r, order));
                    }
                }
                assert!(sum.is_zero(), "orthogonality fails for some chi mod {n}");
            }
        }
    }

    #[test]
    fn parity_flag_matches_minus_one() {
        for n in 1..=30u64 {
            for chi in DirichletCharacter::enumerate(n) {
                let at_minus_one = chi.eval(-1);
                if chi.is_even() {
                    assert_eq!(at_minus_one.as_int(), Some(1));
                } else {
                    assert_eq!(at_minus_one.as_int(), Some(-1));
                }
            }
        }
    }

    #[test]
    fn periodic_extension_and_examples() {
        let psi = DirichletCharacter::psi10();
        // psi10(13) = psi10(3) = -1
        assert_eq!(psi.eval(13).as_int(), Some(-1));
        assert_eq!(psi.eval(-1).as_int(), Some(1));
        assert_eq!(psi.eval(1).as_int(), Some(1));
        for n in 0..30 {
            if gcd(n as u64 % 10, 10) > 1 {
                assert!(psi.eval(n).is_zero());
            }
        }
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(DirichletCharacter::principal(12).conductor(), 1);
        assert_eq!(DirichletCharacter::psi10().conductor(), 5);
        assert!(!DirichletCharacter::psi10().is_primitive());
        assert_eq!(chi8().conductor(), 8);
        assert!(chi8().is_primitive());
    }

    #[test]
    fn induce_examples() {
        let trivial = DirichletCharacter::enumerate(1).remove(0);
        let principal7 = trivial.induce(7).unwrap();
        assert!(principal7.is_principal());
        assert_eq!(principal7.modulus(), 7);

        let legendre5 = DirichletCharacter::legendre_top(5).unwrap();
        let induced = legendre5.induce(10).unwrap();
        assert_eq!(induced, DirichletCharacter::psi10());

        let same = legendre5.induce(5).unwrap();
        assert_eq!(same, legendre5);

        assert!(matches!(
            legendre5.induce(7),
            Err(CharError::NotDivisible { modulus: 5, target: 7 })
        ));
    }

    #[test]
    fn conductor_round_trip_all_small_moduli() {
        for n in 1..=50u64 {
            for chi in DirichletCharacter::enumerate(n) {
                let core = chi.primitive_core();
                assert_eq!(core.modulus(), chi.conductor());
                assert!(core.is_primitive(), "core must be primitive (N={n})");
                let back = core.induce(n).unwrap();
                assert_eq!(back, chi, "induce(primitive_core) round trip N={n}");
            }
        }
    }

    #[test]
    fn gauss_sum_psi10_table() {
        // g_n(psi10) for n = 0..9; even-index values follow
        // g_{2j} = (j/5) sqrt(5), odd-index g_n = psi10(n) sqrt(5).
        let psi = DirichletCharacter::psi10();
        let sqrt5 = Cyclotomic::sqrt_fundamental(5);
        let expect: [i64; 10] = [0, 1, 1, -1, -1, 0, -1, -1, 1, 1];
        for n in 0..10 {
            let g = psi.gauss_sum(n as i64);
            let target = match expect[n] {
                0 => Cyclotomic::zero(10),
                1 => sqrt5.clone(),
                _ => sqrt5.neg(),
            };
            assert!(g.equals(&target), "g_{n}(psi10)");
            // numerical double check
            let direct: Complex64 = (1..10)
                .map(|k| {
                    psi.eval_complex(k)
                        * Complex64::from_polar(1.0, std::f64::consts::TAU * (n as f64) * k as f64 / 10.0)
                })
                .sum();
            assert!((g.to_complex() - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn gauss_sum_sqrt_d() {
        // g_1(chi_d) = sqrt(d) for the fundamental discriminants used here
        for d in [5u64, 8, 12] {
            let chi = DirichletCharacter::from_kronecker(d as i64).unwrap();
            let g1 = chi.gauss_sum(1);
            let sd = Cyclotomic::sqrt_fundamental(d);
            assert!(g1.equals(&sd.promote(lcm(d, g1.order()))), "g_1 = sqrt({d})");
        }
    }

    #[test]
    fn gauss_sum_primitivity_law() {
        // g_n(chi) = conj(chi(n)) g_1(chi) for primitive chi, N <= 24
        for n in 1..=24u64 {
            for chi in DirichletCharacter::enumerate(n) {
                if !chi.is_primitive() {
                    continue;
                }
                let g1 = chi.gauss_sum(1);
                for t in 0..=(n as i64) {
                    let gn = chi.gauss_sum(t);
                    let rhs = match chi.eval(t) {
                        CharValue::Zero => Cyclotomic::zero(gn.order()),
                        CharValue::Root(r) => g1.mul_root(&r.conj()),
                    };
                    assert!(gn.equals(&rhs), "N={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn complex_value_conversion_agreement() {
        // exact-to-complex of the value table agrees with direct evaluation
        for chi in DirichletCharacter::enumerate(16) {
            for k in 0..16 {
                if let CharValue::Root(r) = chi.eval(k) {
                    let via_cyc = Cyclotomic::from_root(&r, r.order()).to_complex();
                    assert!((via_cyc - r.to_complex()).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn enumerate_deterministic() {
        let a = DirichletCharacter::enumerate(24);
        let b = DirichletCharacter::enumerate(24);
        assert_eq!(a, b);
    }

    #[test]
    fn kronecker_character_rejects_bad_period() {
        // (3/n) has period 12, not 3, so the mod-3 table is not multiplicative
        assert!(DirichletCharacter::from_kronecker(3).is_err());
        // fundamental discriminants give valid characters
        for d in [5i64, 8, 12, -4, -15, -20, -24, -32, -36] {
            assert!(DirichletCharacter::from_kronecker(d).is_ok(), "d={d}");
        }
    }

    #[test]
    fn json_shape() {
        let psi = DirichletCharacter::psi10();
        let j = psi.to_json();
        assert_eq!(j.modulus, 10);
        assert_eq!(j.conductor, 5);
        assert_eq!(j.parity, "even");
        assert!(!j.primitive);
        assert_eq!(j.values[0], None);
        assert_eq!(j.values[1], Some((1, 0)));
        assert_eq!(j.values[3], Some((2, 1)));
    }
}
