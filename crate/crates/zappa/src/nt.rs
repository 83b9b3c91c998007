//! Elementary number theory over machine integers.
//!
//! Small, exact helpers used by the parameter enumerations and predicted-order
//! formulas: gcd, modular exponentiation, Euler's totient, the unit group of
//! Z_m, and 2-adic valuations. All values fit comfortably in `u64`.

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Least common multiple; `lcm(0, x) = 0`.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `base^exp mod m` for `m >= 1` (so `mod 1` is always 0).
pub fn mod_pow(base: u64, exp: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = base % m;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result
}

/// Euler's totient via trial-division factorization; `totient(1) = 1`.
pub fn totient(m: u64) -> u64 {
    assert!(m >= 1, "totient is defined for m >= 1");
    let mut n = m;
    let mut phi = m;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            phi -= phi / p;
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// The unit group U(m): residues in `[0, m)` coprime to m, ascending, together
/// with its order φ(m). For m = 1 the single residue 0 is the unit (Z_1 is
/// trivial and its only element is invertible), and φ(1) = 1.
pub fn unit_group(m: u64) -> (Vec<u64>, u64) {
    assert!(m >= 1, "unit group is defined for m >= 1");
    if m == 1 {
        return (vec![0], 1);
    }
    let units: Vec<u64> = (0..m).filter(|&r| gcd(r, m) == 1).collect();
    let phi = units.len() as u64;
    (units, phi)
}

/// 2-adic valuation: the largest i with 2^i dividing n. Panics on 0.
pub fn v2(n: u64) -> u32 {
    assert!(n != 0, "v2(0) is undefined");
    n.trailing_zeros()
}

/// The odd part of n: `n / 2^v2(n)`. Panics on 0.
pub fn odd_part(n: u64) -> u64 {
    n >> v2(n)
}

/// Primality by trial division; 0 and 1 are not prime.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    assert!(m >= 1);
    if m == 1 {
        return Some(0);
    }
    // Extended Euclid on (a mod m, m).
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(1, 999), 1);
        assert_eq!(gcd(0, 0), 0);
    }

    #[test]
    fn lcm_basics() {
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(1, 9), 9);
        assert_eq!(lcm(0, 5), 0);
        for a in 1..20u64 {
            for b in 1..20u64 {
                let l = lcm(a, b);
                assert_eq!(l % a, 0);
                assert_eq!(l % b, 0);
                assert_eq!(l * gcd(a, b), a * b);
            }
        }
    }

    #[test]
    fn mod_pow_matches_naive() {
        for m in 1..30u64 {
            for b in 0..m.max(2) {
                let mut acc = 1 % m;
                for e in 0..12u64 {
                    assert_eq!(mod_pow(b, e, m), acc, "b={b} e={e} m={m}");
                    acc = acc * b % m;
                }
            }
        }
    }

    /// Independent totient oracle: count coprime residues directly.
    fn phi_by_count(m: u64) -> u64 {
        if m == 1 {
            return 1;
        }
        (1..=m).filter(|&r| gcd(r, m) == 1).count() as u64
    }

    #[test]
    fn totient_agrees_with_counting() {
        for m in 1..=200u64 {
            assert_eq!(totient(m), phi_by_count(m), "m={m}");
        }
        assert_eq!(totient(8), 4);
        assert_eq!(totient(9), 6);
        assert_eq!(totient(1), 1);
    }

    #[test]
    fn unit_group_of_8() {
        let (units, phi) = unit_group(8);
        assert_eq!(units, vec![1, 3, 5, 7]);
        assert_eq!(phi, 4);
    }

    #[test]
    fn unit_group_of_9() {
        let (units, phi) = unit_group(9);
        assert_eq!(units, vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(phi, 6);
    }

    #[test]
    fn unit_group_degenerate_modulus() {
        let (units, phi) = unit_group(1);
        assert_eq!(units, vec![0]);
        assert_eq!(phi, 1);
    }

    #[test]
    fn unit_group_is_closed_under_multiplication() {
        for m in 2..=60u64 {
            let (units, _) = unit_group(m);
            for &u in &units {
                for &v in &units {
                    assert!(units.binary_search(&(u * v % m)).is_ok(), "m={m} u={u} v={v}");
                }
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(v2(96), 5);
        assert_eq!(odd_part(96), 3);
        assert_eq!(v2(7), 0);
        assert_eq!(odd_part(7), 7);
        assert_eq!(v2(8), 3);
        assert_eq!(odd_part(8), 1);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn modular_inverses() {
        for m in 1..=50u64 {
            for a in 0..m.max(1) {
                match mod_inv(a, m) {
                    Some(inv) => {
                        assert_eq!(gcd(a, m), if m == 1 { gcd(a, 1) } else { 1 });
                        if m > 1 {
                            assert_eq!(a * inv % m, 1, "a={a} m={m}");
                        }
                    }
                    None => assert_ne!(gcd(a, m), 1, "a={a} m={m}"),
                }
            }
        }
    }
}
