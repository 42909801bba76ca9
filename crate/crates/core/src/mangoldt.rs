//! Generalized von Mangoldt function of an L-additive `f`:
//! `f(p)/h(p)` on prime powers `p^k` (`k >= 1`), zero elsewhere.

use num_traits::Zero;

use crate::convolution::TabulatedFunction;
use crate::error::Result;
use crate::factor::{build_sieve, factorize, SieveTable};
use crate::ladditive::LAdditiveFunction;
use crate::rational::ExactRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MangoldtOf {
    base: LAdditiveFunction,
}

impl MangoldtOf {
    pub fn new(base: LAdditiveFunction) -> Self {
        MangoldtOf { base }
    }

    pub fn base(&self) -> &LAdditiveFunction {
        &self.base
    }

    fn at_prime(&self, p: u64) -> ExactRational {
        self.base.f_at_prime(p) / self.base.h_at_prime(p)
    }

    pub fn eval(&self, n: u64) -> Result<ExactRational> {
        Ok(match factorize(n, None)?.as_prime_power() {
            Some((p, _)) => self.at_prime(p),
            None => ExactRational::zero(),
        })
    }

    pub fn tabulate(&self, limit: usize) -> Result<TabulatedFunction> {
        let sieve = build_sieve(limit.max(2))?;
        TabulatedFunction::from_values(self.tabulate_with(limit, &sieve)?)
    }

    /// Scans the powers of each prime up to `limit`.
    pub(crate) fn tabulate_with(&self, limit: usize, sieve: &SieveTable) -> Result<Vec<ExactRational>> {
        let mut values = vec![ExactRational::zero(); limit];
        for &p in sieve.primes() {
            let p = p as usize;
            if p > limit {
                break;
            }
            let v = self.at_prime(p as u64);
            if v.is_zero() {
                continue;
            }
            let mut pk = p;
            loop {
                values[pk - 1] = v.clone();
                match pk.checked_mul(p) {
                    Some(next) if next <= limit => pk = next,
                    _ => break,
                }
            }
        }
        Ok(values)
    }
}

pub mod presets {
    //! Inversion identities for the generalized von Mangoldt function.

    use crate::convolution::verify::{Identity, IdentityInstance};
    use crate::convolution::{Builtin, FunctionExpr};
    use crate::ladditive::LAdditiveFunction;
    use crate::rational::frac;

    fn for_delta_and_ld(
        build: impl Fn(&LAdditiveFunction) -> Vec<(String, FunctionExpr, FunctionExpr)>,
    ) -> Vec<IdentityInstance> {
        [LAdditiveFunction::delta(), LAdditiveFunction::ld()]
            .iter()
            .flat_map(build)
            .map(|(label, lhs, rhs)| IdentityInstance::new(label, lhs, rhs))
            .collect()
    }

    pub fn identities() -> Vec<Identity> {
        let one = || FunctionExpr::Builtin(Builtin::One);
        let mu = || FunctionExpr::Builtin(Builtin::Mu);
        let tau = || FunctionExpr::Builtin(Builtin::Tau);
        let id = || FunctionExpr::Builtin(Builtin::IdPow(1));
        let ld = || FunctionExpr::additive(LAdditiveFunction::ld());
        let lambda_ld = || FunctionExpr::mangoldt(LAdditiveFunction::ld());

        let thm31 = for_delta_and_ld(|f| {
            let (fe, h, lam) = parts(f);
            vec![(format!("f={f}"), fe, h.clone().conv(h.times(lam)))]
        });
        let thm32 = for_delta_and_ld(|f| {
            let (fe, h, lam) = parts(f);
            vec![
                (format!("f={f},mu*f/h"), lam.clone(), mu().conv(fe.clone().over(h.clone()))),
                (format!("f={f},-1*mu.f/h"), lam, one().conv(mu().times(fe).over(h)).neg()),
            ]
        });
        let eq23 = for_delta_and_ld(|f| {
            let (fe, h, lam) = parts(f);
            vec![(format!("f={f}"), tau().conv(lam), fe.times(tau()).over(h).scaled(frac(1, 2)))]
        });

        vec![
            Identity { name: "thm3.1".into(), statement: "f = h_f * h_f.lambda_f".into(), instances: thm31 },
            Identity {
                name: "thm3.2".into(),
                statement: "lambda_f = mu * f/h_f = -(1 * mu.f/h_f)".into(),
                instances: thm32,
            },
            Identity { name: "eq23".into(), statement: "tau * lambda_f = f.tau / (2 h_f)".into(), instances: eq23 },
            Identity {
                name: "cor3.8".into(),
                statement: "ld = 1 * lambda_ld".into(),
                instances: vec![IdentityInstance::new("", ld(), one().conv(lambda_ld()))],
            },
            Identity {
                name: "cor3.9".into(),
                statement: "lambda_ld = mu * ld = -(1 * mu.ld)".into(),
                instances: vec![
                    IdentityInstance::new("mu*ld", lambda_ld(), mu().conv(ld())),
                    IdentityInstance::new("-1*mu.ld", lambda_ld(), one().conv(mu().times(ld())).neg()),
                ],
            },
            Identity {
                name: "delta-mangoldt".into(),
                statement: "delta = id * id.lambda_ld".into(),
                instances: vec![IdentityInstance::new(
                    "",
                    FunctionExpr::additive(LAdditiveFunction::delta()),
                    id().conv(id().times(lambda_ld())),
                )],
            },
        ]
    }

    fn parts(f: &LAdditiveFunction) -> (FunctionExpr, FunctionExpr, FunctionExpr) {
        (FunctionExpr::additive(f.clone()), FunctionExpr::multiplier(f.clone()), FunctionExpr::mangoldt(f.clone()))
    }
}
