//! The Kronecker symbol (d/n), extending the Jacobi and Legendre symbols to
//! all integer pairs.
//!
//! Rules used:
//! - (d/0) = 1 if d = +-1, else 0;
//! - (d/-1) = -1 if d < 0, else 1;
//! - (d/2) = 0 for even d, 1 for d = +-1 (mod 8), -1 for d = +-3 (mod 8);
//! - (d/p) is the Legendre symbol for odd primes p;
//! - completely multiplicative in the bottom argument.

use crate::arith::{factor, mod_pow};

/// Kronecker symbol (d/n).
pub fn kronecker(d: i64, n: i64) -> i64 {
    if n == 0 {
        return if d == 1 || d == -1 { 1 } else { 0 };
    }
    let mut r = 1i64;
    let mut n = n;
    if n < 0 {
        if d < 0 {
            r = -r;
        }
        n = -n;
    }
    let mut n = n as u64;
    // factor out twos
    while n % 2 == 0 {
        if d % 2 == 0 {
            return 0;
        }
        let dm = d.rem_euclid(8);
        if dm == 3 || dm == 5 {
            r = -r;
        }
        n /= 2;
    }
    for (p, e) in factor(n) {
        let l = legendre(d, p);
        if l == 0 {
            return 0;
        }
        if l == -1 && e % 2 == 1 {
            r = -r;
        }
    }
    r
}

/// Legendre symbol (a/p) for an odd prime p, by Euler's criterion.
fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let e = mod_pow(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        // (-4/n) for n = 1..5
        assert_eq!((1..=5).map(|n| kronecker(-4, n)).collect::<Vec<_>>(), vec![1, 0, -1, 0, 1]);
        // (5/n) for n = 1..4
        assert_eq!((1..=4).map(|n| kronecker(5, n)).collect::<Vec<_>>(), vec![1, -1, -1, 1]);
        // (d/1) = 1 for any d
        for d in -30..30 {
            assert_eq!(kronecker(d, 1), 1);
        }
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(12, 5), -1);
        assert_eq!(kronecker(12, 11), 1);
    }

    #[test]
    fn non_fundamental_collapse() {
        // (-32/n) agrees with (-8/n), (-36/n) with (-4/n) away from 3
        for n in 1..200 {
            assert_eq!(kronecker(-32, n), kronecker(-8, n));
            let expect = if n % 3 == 0 { 0 } else { kronecker(-4, n) };
            assert_eq!(kronecker(-36, n), expect);
            assert_eq!(kronecker(-48, n), if n % 2 == 0 { 0 } else { kronecker(-3, n) });
        }
    }

    #[test]
    fn periodicity_fundamental() {
        for d in [5i64, 8, 12, -4, -15, -20, -24] {
            let period = d.unsigned_abs() as i64;
            for n in 0..3 * period {
                assert_eq!(kronecker(d, n), kronecker(d, n + period), "d={d} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn multiplicative_in_bottom(d in -60i64..60, m in 1i64..400, n in 1i64..400) {
            prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
        }

        #[test]
        fn legendre_agreement(d in -60i64..60) {
            // against quadratic residues mod small odd primes
            for p in [3i64, 5, 7, 11, 13] {
                let a = d.rem_euclid(p);
                let expect = if a == 0 {
                    0
                } else if (1..p).any(|x| (x * x - a) % p == 0) {
                    1
                } else {
                    -1
                };
                prop_assert_eq!(kronecker(d, p), expect);
            }
        }
    }
}
