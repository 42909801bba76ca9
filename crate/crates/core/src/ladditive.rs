//! L-additive functions: `f(mn) = f(m) h(n) + f(n) h(m)` with `h` completely
//! multiplicative and nonzero.
//!
//! A function is described by its values on primes, `f(p)` and `h(p)`. On a
//! natural number `n = p1^a1 ... ps^as` it evaluates as
//!
//! ```text
//! f(n) = h(n) * sum_i a_i f(p_i) / h(p_i)
//! ```
//!
//! and the same sum with signed exponents extends it to positive rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::factor::{factorize, factorize_rational, Factorization, SieveTable, SignedFactorization};
use crate::rational::{int, ExactRational};

/// Value of `f` or `h` on a prime not listed explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeRule {
    /// The same value on every prime.
    Constant(ExactRational),
    /// `p`.
    Identity,
    /// `1 / p`.
    Reciprocal,
}

impl PrimeRule {
    pub fn at(&self, p: u64) -> ExactRational {
        match self {
            PrimeRule::Constant(c) => c.clone(),
            PrimeRule::Identity => int(p),
            PrimeRule::Reciprocal => ExactRational::new(BigInt::one(), BigInt::from(p)),
        }
    }

    fn can_vanish(&self) -> bool {
        matches!(self, PrimeRule::Constant(c) if c.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LAdditiveFunction {
    name: String,
    f_overrides: BTreeMap<u64, ExactRational>,
    f_default: PrimeRule,
    h_overrides: BTreeMap<u64, ExactRational>,
    h_default: PrimeRule,
}

impl LAdditiveFunction {
    /// Arithmetic derivative: `f(p) = 1`, `h(p) = p`.
    pub fn delta() -> Self {
        Self::builtin("delta", PrimeRule::Constant(ExactRational::one()), PrimeRule::Identity)
    }

    /// Partial derivative with respect to `p0`: `f(p0) = 1`, zero on other
    /// primes, `h(p) = p`. `p0` is assumed prime.
    pub fn delta_partial(p0: u64) -> Self {
        let mut f =
            Self::builtin(&format!("delta_p:{p0}"), PrimeRule::Constant(ExactRational::zero()), PrimeRule::Identity);
        f.f_overrides.insert(p0, ExactRational::one());
        f
    }

    /// Logarithmic derivative `delta(n) / n`, completely additive.
    pub fn ld() -> Self {
        Self::builtin("ld", PrimeRule::Reciprocal, PrimeRule::Constant(ExactRational::one()))
    }

    /// Number of prime factors counted with multiplicity.
    pub fn big_omega() -> Self {
        Self::builtin("big_omega", PrimeRule::Constant(ExactRational::one()), PrimeRule::Constant(ExactRational::one()))
    }

    /// A user-defined function. `h` must never vanish on a prime.
    pub fn custom(
        name: impl Into<String>,
        f_overrides: BTreeMap<u64, ExactRational>,
        f_default: PrimeRule,
        h_overrides: BTreeMap<u64, ExactRational>,
        h_default: PrimeRule,
    ) -> Result<Self> {
        if h_default.can_vanish() || h_overrides.values().any(Zero::is_zero) {
            return Err(invalid("h must be nonzero on every prime"));
        }
        Ok(LAdditiveFunction { name: name.into(), f_overrides, f_default, h_overrides, h_default })
    }

    fn builtin(name: &str, f_default: PrimeRule, h_default: PrimeRule) -> Self {
        LAdditiveFunction {
            name: name.to_string(),
            f_overrides: BTreeMap::new(),
            f_default,
            h_overrides: BTreeMap::new(),
            h_default,
        }
    }

    /// Resolves `delta`, `ld`, `big_omega` and `delta_p:<prime>`.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "delta" => Ok(Self::delta()),
            "ld" => Ok(Self::ld()),
            "big_omega" => Ok(Self::big_omega()),
            _ => {
                let p = name.strip_prefix("delta_p:").ok_or_else(|| Error::UnknownName(name.to_string()))?;
                let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime in '{name}'")))?;
                let f = factorize(p, None)?;
                if f.as_prime_power().map(|(_, k)| k) != Some(1) {
                    return Err(invalid(format!("{p} is not prime")));
                }
                Ok(Self::delta_partial(p))
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn f_at_prime(&self, p: u64) -> ExactRational {
        self.f_overrides.get(&p).cloned().unwrap_or_else(|| self.f_default.at(p))
    }

    pub fn h_at_prime(&self, p: u64) -> ExactRational {
        self.h_overrides.get(&p).cloned().unwrap_or_else(|| self.h_default.at(p))
    }

    /// `h ≡ 1`, i.e. the function is completely additive.
    pub fn is_completely_additive(&self) -> bool {
        self.h_overrides.values().all(One::is_one) && matches!(&self.h_default, PrimeRule::Constant(c) if c.is_one())
    }

    /// `sum_i a_i f(p_i) / h(p_i)` over a (possibly signed) list of prime powers.
    fn weighted_sum<'a>(&self, factors: impl IntoIterator<Item = &'a crate::factor::PrimePower>) -> ExactRational {
        let mut acc = ExactRational::zero();
        for pp in factors {
            let f = self.f_at_prime(pp.prime);
            if f.is_zero() {
                continue;
            }
            acc += f / self.h_at_prime(pp.prime) * int(pp.exponent);
        }
        acc
    }

    fn h_product<'a>(&self, factors: impl IntoIterator<Item = &'a crate::factor::PrimePower>) -> ExactRational {
        let mut acc = ExactRational::one();
        for pp in factors {
            let h = self.h_at_prime(pp.prime);
            let e = pp.exponent as i32;
            acc *= num_traits::pow::Pow::pow(&h, e);
        }
        acc
    }

    /// `f(n)` from an already computed factorization.
    pub fn eval_factorization(&self, fact: &Factorization) -> ExactRational {
        if fact.is_one() {
            return ExactRational::zero();
        }
        let s = self.weighted_sum(fact);
        if s.is_zero() {
            return s;
        }
        s * self.h_product(fact)
    }

    pub fn h_factorization(&self, fact: &Factorization) -> ExactRational {
        self.h_product(fact)
    }

    /// `f(n)` for `n >= 1`, optionally factorizing through a sieve.
    pub fn eval_with(&self, n: u64, sieve: Option<&SieveTable>) -> Result<ExactRational> {
        Ok(self.eval_factorization(&factorize(n, sieve)?))
    }

    pub fn eval_natural(&self, n: u64) -> Result<ExactRational> {
        self.eval_with(n, None)
    }

    /// `h(n)`, the completely multiplicative companion.
    pub fn h_eval(&self, n: u64) -> Result<ExactRational> {
        Ok(self.h_product(&factorize(n, None)?))
    }

    /// `f(1/n) = -f(n) / h(n)^2`.
    pub fn eval_inverse(&self, n: u64) -> Result<ExactRational> {
        let fact = factorize(n, None)?;
        let h = self.h_product(&fact);
        Ok(-self.eval_factorization(&fact) / (&h * &h))
    }

    /// Quotient rule: `f(n/m) = (f(n) h(m) - f(m) h(n)) / h(m)^2`.
    pub fn eval_rational(&self, numerator: u64, denominator: u64) -> Result<ExactRational> {
        if numerator == 0 || denominator == 0 {
            return Err(invalid("numerator and denominator must be positive"));
        }
        let fn_ = factorize(numerator, None)?;
        let fm = factorize(denominator, None)?;
        let (f_n, h_n) = (self.eval_factorization(&fn_), self.h_product(&fn_));
        let (f_m, h_m) = (self.eval_factorization(&fm), self.h_product(&fm));
        Ok((f_n * &h_m - f_m * h_n) / (&h_m * &h_m))
    }

    /// `f(x) = h(x) sum_i x_i f(p_i)/h(p_i)` over the signed factorization of `x`.
    pub fn eval_signed(&self, x: &SignedFactorization) -> ExactRational {
        if x.is_one() {
            return ExactRational::zero();
        }
        self.weighted_sum(x) * self.h_product(x)
    }

    /// `h(x)` on a positive rational.
    pub fn h_signed(&self, x: &SignedFactorization) -> ExactRational {
        self.h_product(x)
    }

    /// Evaluates `f(numerator/denominator)` through the reduced signed factorization.
    pub fn eval_rational_by_factorization(&self, numerator: u64, denominator: u64) -> Result<ExactRational> {
        Ok(self.eval_signed(&factorize_rational(numerator, denominator)?))
    }

    /// `f(n) / h(n)`, completely additive.
    pub fn quotient_ratio(&self, n: u64) -> Result<ExactRational> {
        let fact = factorize(n, None)?;
        Ok(self.eval_factorization(&fact) / self.h_product(&fact))
    }
}

impl fmt::Display for LAdditiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
