//! Prime sieving and factorization over the naturals and the positive rationals.

use std::fmt;

use num_integer::Integer;

use crate::error::{invalid, Result};

/// A prime with a nonzero exponent. Exponents are negative only inside a
/// [`SignedFactorization`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: i64,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: i64) -> Self {
        debug_assert!(exponent != 0);
        PrimePower { prime, exponent }
    }
}

/// Prime factorization of a positive integer, primes strictly increasing.
/// The empty factorization is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<PrimePower>,
}

/// Factorization of a positive rational in lowest terms; exponents may be negative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignedFactorization {
    factors: Vec<PrimePower>,
}

macro_rules! factor_list_impl {
    ($t:ty) => {
        impl $t {
            pub fn factors(&self) -> &[PrimePower] {
                &self.factors
            }

            pub fn is_one(&self) -> bool {
                self.factors.is_empty()
            }

            pub fn iter(&self) -> std::slice::Iter<'_, PrimePower> {
                self.factors.iter()
            }
        }

        impl<'a> IntoIterator for &'a $t {
            type Item = &'a PrimePower;
            type IntoIter = std::slice::Iter<'a, PrimePower>;

            fn into_iter(self) -> Self::IntoIter {
                self.factors.iter()
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.factors.is_empty() {
                    return write!(f, "1");
                }
                for (i, pp) in self.factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, " * ")?;
                    }
                    if pp.exponent == 1 {
                        write!(f, "{}", pp.prime)?;
                    } else {
                        write!(f, "{}^{}", pp.prime, pp.exponent)?;
                    }
                }
                Ok(())
            }
        }
    };
}

factor_list_impl!(Factorization);
factor_list_impl!(SignedFactorization);

impl Factorization {
    /// Product of the prime powers. Panics on `u64` overflow, which cannot
    /// happen for a factorization produced by [`factorize`].
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, pp| acc * pp.prime.pow(u32::try_from(pp.exponent).expect("positive exponent")))
    }

    /// `Some((p, k))` when the factorization is exactly `p^k` with `k >= 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [pp] => Some((pp.prime, pp.exponent as u32)),
            _ => None,
        }
    }

    /// All positive divisors, unsorted.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for pp in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..pp.exponent {
                pk *= pp.prime;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out
    }
}

impl SignedFactorization {
    /// Numerator and denominator in lowest terms.
    pub fn to_fraction(&self) -> (u64, u64) {
        let mut num = 1u64;
        let mut den = 1u64;
        for pp in &self.factors {
            let pk = pp.prime.pow(pp.exponent.unsigned_abs() as u32);
            if pp.exponent > 0 {
                num *= pk;
            } else {
                den *= pk;
            }
        }
        (num, den)
    }
}

/// Smallest-prime-factor table on `[2, limit]`, built with a linear sieve.
///
/// Memory is one `u32` per integer up to `limit` plus the prime list.
#[derive(Clone, Debug)]
pub struct SieveTable {
    limit: usize,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SieveTable {
    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn spf(&self, n: usize) -> Option<u64> {
        if (2..=self.limit).contains(&n) {
            Some(self.spf[n] as u64)
        } else {
            None
        }
    }

    pub fn is_prime(&self, n: usize) -> bool {
        n >= 2 && n <= self.limit && self.spf[n] as usize == n
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    fn factor(&self, mut n: usize) -> Factorization {
        let mut factors: Vec<PrimePower> = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            factors.push(PrimePower::new(p as u64, e));
        }
        Factorization { factors }
    }
}

pub fn build_sieve(limit: usize) -> Result<SieveTable> {
    if limit < 2 {
        return Err(invalid(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > u32::MAX as usize {
        return Err(invalid(format!("sieve limit {limit} exceeds u32 range")));
    }
    let mut spf = vec![0u32; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            let m = i * p as usize;
            if p > si || m > limit {
                break;
            }
            spf[m] = p;
        }
    }
    Ok(SieveTable { limit, spf, primes })
}

/// Factorizes `n`, using `sieve` when given (then `n` must not exceed its
/// limit) and trial division up to `sqrt(n)` otherwise.
pub fn factorize(n: u64, sieve: Option<&SieveTable>) -> Result<Factorization> {
    if n == 0 {
        return Err(invalid("cannot factorize 0"));
    }
    match sieve {
        Some(s) => {
            if n as u128 > s.limit as u128 {
                return Err(invalid(format!("{n} exceeds sieve limit {}", s.limit)));
            }
            Ok(s.factor(n as usize))
        }
        None => Ok(trial_division(n)),
    }
}

fn trial_division(mut n: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut push = |n: &mut u64, p: u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push(PrimePower::new(p, e));
        }
    };
    push(&mut n, 2);
    let mut p = 3u64;
    while p.saturating_mul(p) <= n {
        push(&mut n, p);
        p += 2;
    }
    if n > 1 {
        factors.push(PrimePower::new(n, 1));
    }
    Factorization { factors }
}

/// Signed factorization of `numerator / denominator` after reduction.
pub fn factorize_rational(numerator: u64, denominator: u64) -> Result<SignedFactorization> {
    if numerator == 0 || denominator == 0 {
        return Err(invalid("numerator and denominator must be positive"));
    }
    let g = numerator.gcd(&denominator);
    let num = trial_division(numerator / g);
    let den = trial_division(denominator / g);
    let mut factors: Vec<PrimePower> = num
        .factors
        .into_iter()
        .chain(den.factors.into_iter().map(|pp| PrimePower::new(pp.prime, -pp.exponent)))
        .collect();
    // coprime after reduction, so primes are distinct
    factors.sort_by_key(|pp| pp.prime);
    Ok(SignedFactorization { factors })
}

/// All primes `<= limit`, increasing.
pub fn primes_up_to(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let sieve = build_sieve(limit).expect("limit >= 2");
    sieve.primes.iter().map(|&p| p as u64).collect()
}
