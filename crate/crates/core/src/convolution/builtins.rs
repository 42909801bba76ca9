//! Values of the builtin functions, pointwise (via trial-division
//! factorization) and tabulated (via sieve loops). The two paths share no
//! code, so each checks the other.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};

use super::expr::Builtin;
use crate::error::Result;
use crate::factor::{factorize, Factorization, SieveTable};
use crate::ladditive::LAdditiveFunction;
use crate::mangoldt::MangoldtOf;
use crate::rational::{int, ExactRational};

fn id_pow(n: u64, k: i32) -> ExactRational {
    let base = BigInt::from(n);
    let p = Pow::pow(&base, k.unsigned_abs());
    if k >= 0 {
        ExactRational::from_integer(p)
    } else {
        ExactRational::new(BigInt::one(), p)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn random_value(seed: u64, n: u64) -> i64 {
    (splitmix64(splitmix64(seed) ^ n) % 7) as i64 - 3
}

fn multiplicative(fact: &Factorization, at_prime_power: impl Fn(u64, u32) -> BigInt) -> BigInt {
    fact.iter().map(|pp| at_prime_power(pp.prime, pp.exponent as u32)).product()
}

impl Builtin {
    /// Value at a single `n >= 1`.
    pub fn eval_at(&self, n: u64) -> Result<ExactRational> {
        let fact = || factorize(n, None);
        let v = match self {
            Builtin::One => ExactRational::one(),
            Builtin::Eps => int(u8::from(n == 1)),
            Builtin::IdPow(k) => id_pow(n, *k),
            Builtin::Mu => {
                let f = fact()?;
                if f.iter().any(|pp| pp.exponent > 1) {
                    ExactRational::zero()
                } else if f.factors().len() % 2 == 0 {
                    ExactRational::one()
                } else {
                    -ExactRational::one()
                }
            }
            Builtin::Tau => int(multiplicative(&fact()?, |_, a| BigInt::from(a + 1))),
            Builtin::Sigma(k) => int(multiplicative(&fact()?, |p, a| {
                let pk = Pow::pow(&BigInt::from(p), *k);
                (0..=a).map(|j| Pow::pow(&pk, j)).sum()
            })),
            Builtin::Phi => int(multiplicative(&fact()?, |p, a| Pow::pow(&BigInt::from(p), a - 1) * (p - 1))),
            Builtin::Additive(f) => f.eval_natural(n)?,
            Builtin::Multiplier(f) => f.h_eval(n)?,
            Builtin::Mangoldt(f) => MangoldtOf::new(f.clone()).eval(n)?,
            Builtin::Random(seed) => int(random_value(*seed, n)),
        };
        Ok(v)
    }

    /// Values on `[1, limit]`; `sieve` must cover `limit` when `limit >= 2`.
    pub(crate) fn tabulate_with(&self, limit: usize, sieve: &SieveTable) -> Result<Vec<ExactRational>> {
        let v = match self {
            Builtin::One => vec![ExactRational::one(); limit],
            Builtin::Eps => {
                let mut v = vec![ExactRational::zero(); limit];
                v[0] = ExactRational::one();
                v
            }
            Builtin::IdPow(k) => (1..=limit as u64).map(|n| id_pow(n, *k)).collect(),
            Builtin::Mu => mobius_table(limit, sieve).into_iter().map(int).collect(),
            Builtin::Tau => {
                let mut t = vec![0u32; limit + 1];
                for d in 1..=limit {
                    for m in (d..=limit).step_by(d) {
                        t[m] += 1;
                    }
                }
                t[1..].iter().map(|&x| int(x)).collect()
            }
            Builtin::Sigma(k) => sigma_table(limit, *k),
            Builtin::Phi => {
                let mut phi: Vec<u64> = (0..=limit as u64).collect();
                for &p in sieve.primes() {
                    let p = p as usize;
                    if p > limit {
                        break;
                    }
                    for m in (p..=limit).step_by(p) {
                        phi[m] -= phi[m] / p as u64;
                    }
                }
                phi[1..].iter().map(|&x| int(x)).collect()
            }
            Builtin::Additive(f) => additive_tables(f, limit, sieve).0,
            Builtin::Multiplier(f) => additive_tables(f, limit, sieve).1,
            Builtin::Mangoldt(f) => MangoldtOf::new(f.clone()).tabulate_with(limit, sieve)?,
            Builtin::Random(seed) => (1..=limit as u64).map(|n| int(random_value(*seed, n))).collect(),
        };
        Ok(v)
    }
}

/// `(f, h_f)` on `[1, limit]`, splitting `n = p m` at its smallest prime:
/// `f(n) = f(p) h(m) + f(m) h(p)` and `h(n) = h(p) h(m)`.
fn additive_tables(
    f: &LAdditiveFunction,
    limit: usize,
    sieve: &SieveTable,
) -> (Vec<ExactRational>, Vec<ExactRational>) {
    let mut fv = Vec::with_capacity(limit);
    let mut hv = Vec::with_capacity(limit);
    if limit == 0 {
        return (fv, hv);
    }
    fv.push(ExactRational::zero());
    hv.push(ExactRational::one());
    for n in 2..=limit {
        let p = sieve.spf(n).expect("sieve covers limit") as usize;
        let (fp, hp) = (f.f_at_prime(p as u64), f.h_at_prime(p as u64));
        let m = n / p;
        let fn_ = &fp * &hv[m - 1] + &fv[m - 1] * &hp;
        let hn = hp * &hv[m - 1];
        fv.push(fn_);
        hv.push(hn);
    }
    (fv, hv)
}

fn mobius_table(limit: usize, sieve: &SieveTable) -> Vec<i8> {
    let mut mu = vec![0i8; limit + 1];
    mu[1] = 1;
    for n in 2..=limit {
        let p = sieve.spf(n).expect("sieve covers limit") as usize;
        let m = n / p;
        mu[n] = if m.is_multiple_of(p) { 0 } else { -mu[m] };
    }
    mu.remove(0);
    mu
}

fn sigma_table(limit: usize, k: u32) -> Vec<ExactRational> {
    // u128 accumulation, BigUint if any d^k or partial sum overflows
    let mut acc = vec![0u128; limit + 1];
    let mut overflow = false;
    'outer: for d in 1..=limit {
        let Some(dk) = (d as u128).checked_pow(k) else {
            overflow = true;
            break;
        };
        for m in (d..=limit).step_by(d) {
            match acc[m].checked_add(dk) {
                Some(s) => acc[m] = s,
                None => {
                    overflow = true;
                    break 'outer;
                }
            }
        }
    }
    if !overflow {
        return acc[1..].iter().map(|&x| int(x)).collect();
    }
    let mut big = vec![BigUint::zero(); limit + 1];
    for d in 1..=limit {
        let dk = Pow::pow(&BigUint::from(d), k);
        for m in (d..=limit).step_by(d) {
            big[m] += &dk;
        }
    }
    big.into_iter().skip(1).map(|x| int(BigInt::from(x))).collect()
}
