//! Prime field arithmetic on `u64` values.
//!
//! Elements are plain `u64` in `[0, p)`. The modulus is capped below 2^62 so
//! that a product plus one accumulated addend stays inside `u128` with a
//! single reduction per multiply-add.

use super::ExactAlgError;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

/// A prime field `F_p`, p < 2^63. Acts as the arithmetic context for raw
/// `u64` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Construct the field, rejecting composite moduli.
    pub fn new(p: u64) -> Result<Self, ExactAlgError> {
        if !is_prime_u64(p) {
            return Err(ExactAlgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        let m = v.rem_euclid(self.p as i64);
        m as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    /// a + b*c with one reduction.
    #[inline]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        ((a as u128 + b as u128 * c as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn rand_element<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn rand_nonzero<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }

    /// Random element outside {0, 1}; scaling checks need a nontrivial factor.
    pub fn rand_scaling<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(2..self.p)
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to
/// be exact for all n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 7, 11, 101, 103, 2_147_483_647];
        for p in primes {
            assert!(is_prime_u64(p), "{p} should be prime");
        }
        let composites = [0u64, 1, 4, 9, 91, 561, 2_147_483_649, 1 << 62];
        for c in composites {
            assert!(!is_prime_u64(c), "{c} should be composite");
        }
    }

    #[test]
    fn default_prime_is_largest_below_2_62() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        for n in DEFAULT_PRIME + 1..1u64 << 62 {
            assert!(!is_prime_u64(n), "{n} is prime but above DEFAULT_PRIME");
        }
    }

    #[test]
    fn field_ops() {
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.add(100, 5), 4);
        assert_eq!(f.sub(3, 7), 97);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.mul(50, 51), 50 * 51 % 101);
        assert_eq!(f.mul(f.inv(37), 37), 1);
        assert_eq!(f.pow(2, 100), 1); // Fermat
        assert_eq!(f.reduce_i64(-1), 100);
    }

    #[test]
    fn large_field_mul_add_no_overflow() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let a = DEFAULT_PRIME - 1;
        assert_eq!(f.mul(a, a), f.pow(a, 2));
        assert_eq!(f.mul_add(a, a, a), f.add(a, f.mul(a, a)));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(
            PrimeField::new(100).unwrap_err(),
            ExactAlgError::NotPrime(100)
        );
    }
}
