//! Miller–Rabin primality testing for field characteristics.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Witness set {2, 3, ..., 41} is deterministic below this bound.
pub const DETERMINISTIC_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Extra witnesses used above the deterministic bound. A composite may still
/// slip through in principle, which is why large moduli must be trusted.
const EXTRA_WITNESSES: [u32; 12] = [43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Prime,
    Composite,
    /// Passed every witness, but `n` is above the deterministic bound.
    ProbablePrime,
}

pub fn classify(n: &BigUint) -> Primality {
    if n < &BigUint::from(2u32) {
        return Primality::Composite;
    }
    for &w in WITNESSES.iter().chain(EXTRA_WITNESSES.iter()) {
        let w = BigUint::from(w);
        if n == &w {
            return Primality::Prime;
        }
        if (n % &w).is_zero() {
            return Primality::Composite;
        }
    }

    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }

    let deterministic = n.to_u128().is_some_and(|v| v < DETERMINISTIC_LIMIT);
    let extra: &[u32] = if deterministic { &[] } else { &EXTRA_WITNESSES };
    for &w in WITNESSES.iter().chain(extra.iter()) {
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        let mut witnessed = true;
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                witnessed = false;
                break;
            }
        }
        if witnessed {
            return Primality::Composite;
        }
    }

    if deterministic {
        Primality::Prime
    } else {
        Primality::ProbablePrime
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(limit: usize) -> Vec<bool> {
        let mut is_prime = vec![true; limit + 1];
        is_prime[0] = false;
        is_prime[1] = false;
        let mut i = 2;
        while i * i <= limit {
            if is_prime[i] {
                let mut j = i * i;
                while j <= limit {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        is_prime
    }

    #[test]
    fn agrees_with_sieve() {
        let table = sieve(20_000);
        for (n, &expected) in table.iter().enumerate() {
            let got = classify(&BigUint::from(n));
            assert_eq!(got == Primality::Prime, expected, "n = {n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // Strong pseudoprimes to several small bases.
        for n in [
            3_215_031_751u64,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
        ] {
            assert_eq!(classify(&BigUint::from(n)), Primality::Composite, "{n}");
        }
    }

    #[test]
    fn large_primes_are_probable() {
        let p256 = BigUint::parse_bytes(
            b"ffffffff00000001000000000000000000000000ffffffffffffffffffffffff",
            16,
        )
        .unwrap();
        assert_eq!(classify(&p256), Primality::ProbablePrime);
        assert_eq!(classify(&(&p256 * &p256)), Primality::Composite);
        let m61 = BigUint::from((1u64 << 61) - 1);
        assert_eq!(classify(&m61), Primality::Prime);
    }
}
