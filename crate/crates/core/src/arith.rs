//! Small modular-arithmetic helpers used by the Pascal constructions.

use crate::error::BuildError;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `base^exp mod modulus`.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `modulus` via the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    if modulus == 0 {
        return None;
    }
    if modulus == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % modulus) as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(modulus as i128) as u64)
}

/// Multiplicative order of `base` modulo `p`: least `ψ > 0` with `base^ψ ≡ 1`.
pub fn mult_order(base: u32, p: u64) -> Result<u64, BuildError> {
    if p == 0 {
        return Err(BuildError::ZeroModulus);
    }
    if gcd(base as u64, p) != 1 {
        return Err(BuildError::NotCoprime { period: p, base });
    }
    if p == 1 {
        return Ok(1);
    }
    let b = base as u64 % p;
    let mut x = b;
    let mut order = 1;
    while x != 1 {
        x = ((x as u128 * b as u128) % p as u128) as u64;
        order += 1;
    }
    Ok(order)
}

/// Proper and improper divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(2, 3), Ok(2));
        assert_eq!(mult_order(2, 5), Ok(4));
        assert_eq!(mult_order(10, 7), Ok(6));
        assert_eq!(mult_order(7, 1), Ok(1));
        assert_eq!(
            mult_order(2, 6),
            Err(BuildError::NotCoprime { period: 6, base: 2 })
        );
    }

    #[test]
    fn order_matches_brute_force() {
        for base in 2u32..12 {
            for p in 1u64..200 {
                if gcd(base as u64, p) != 1 {
                    continue;
                }
                let brute = (1..=p)
                    .find(|&k| mod_pow(base as u64, k, p) == 1 % p)
                    .unwrap();
                assert_eq!(mult_order(base, p).unwrap(), brute, "b={base} p={p}");
            }
        }
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(2, 3), Some(2));
        assert_eq!(mod_inverse(4, 5), Some(4));
        assert_eq!(mod_inverse(2, 4), None);
        for m in 2u64..60 {
            for a in 1..m {
                if let Some(inv) = mod_inverse(a, m) {
                    assert_eq!(a * inv % m, 1);
                } else {
                    assert_ne!(gcd(a, m), 1);
                }
            }
        }
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }
}
