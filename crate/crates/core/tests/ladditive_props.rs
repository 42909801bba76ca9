use std::collections::{BTreeMap, HashMap};

use arith_deriv::rational::{frac, int};
use arith_deriv::{build_sieve, factorize, factorize_rational, ExactRational, LAdditiveFunction, PrimeRule};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn builtins() -> Vec<LAdditiveFunction> {
    vec![
        LAdditiveFunction::delta(),
        LAdditiveFunction::delta_partial(2),
        LAdditiveFunction::delta_partial(7),
        LAdditiveFunction::ld(),
        LAdditiveFunction::big_omega(),
    ]
}

fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn leibniz_rule_and_additive_quotient() {
    const M: u64 = 300;
    for f in builtins() {
        let table: Vec<(ExactRational, ExactRational, ExactRational)> = (1..=M * M)
            .map(|n| (f.eval_natural(n).unwrap(), f.h_eval(n).unwrap(), f.quotient_ratio(n).unwrap()))
            .collect();
        let at = |n: u64| &table[n as usize - 1];
        for m in 1..=M {
            for n in m..=M {
                let (fm, hm, qm) = at(m);
                let (fn_, hn, qn) = at(n);
                let (fmn, _, qmn) = at(m * n);
                assert_eq!(*fmn, fm * hn + fn_ * hm, "{f}: f({m}*{n})");
                assert_eq!(*qmn, qm + qn, "{f}: (f/h)({m}*{n})");
            }
        }
    }
}

#[test]
fn delta_matches_logarithmic_sum() {
    for n in 1..=10_000u64 {
        let expected: ExactRational = trial_division(n)
            .into_iter()
            .map(|(p, a)| frac(a as i64, p as i64))
            .fold(ExactRational::zero(), |acc, x| acc + x)
            * int(n);
        assert_eq!(LAdditiveFunction::delta().eval_natural(n).unwrap(), expected, "delta({n})");
    }
}

#[test]
fn delta_matches_leibniz_recursion() {
    // delta(1) = 0, delta(p) = 1, delta(p m) = m + p delta(m)
    let mut memo: Vec<u64> = vec![0; 10_001];
    for n in 2..=10_000u64 {
        let p = trial_division(n)[0].0;
        let m = n / p;
        memo[n as usize] = if m == 1 { 1 } else { m + p * memo[m as usize] };
        assert_eq!(LAdditiveFunction::delta().eval_natural(n).unwrap(), int(memo[n as usize]), "delta({n})");
    }
}

#[test]
fn sieve_agrees_with_trial_division() {
    let sieve = build_sieve(10_000).unwrap();
    for n in 1..=10_000u64 {
        let with = factorize(n, Some(&sieve)).unwrap();
        let without = factorize(n, None).unwrap();
        assert_eq!(with, without);
        let pairs: Vec<(u64, u32)> = with.iter().map(|pp| (pp.prime, pp.exponent as u32)).collect();
        assert_eq!(pairs, trial_division(n), "{n}");
        if n >= 2 {
            let spf = sieve.spf(n as usize).unwrap();
            assert_eq!(spf, trial_division(n)[0].0);
            assert_eq!(sieve.is_prime(n as usize), spf == n);
        }
    }
}

#[test]
fn factorization_round_trip() {
    let sieve = build_sieve(100_000).unwrap();
    for n in 1..=100_000u64 {
        let f = factorize(n, Some(&sieve)).unwrap();
        let prod: u64 = f.iter().map(|pp| pp.prime.pow(pp.exponent as u32)).product();
        assert_eq!(prod, n);
        assert!(f.iter().all(|pp| pp.exponent > 0));
        assert!(f.factors().windows(2).all(|w| w[0].prime < w[1].prime));
    }
}

fn rational_pair() -> impl Strategy<Value = (u64, u64)> {
    (1u64..=400, 1u64..=400)
}

fn h_rational(f: &LAdditiveFunction, a: u64, b: u64) -> ExactRational {
    f.h_signed(&factorize_rational(a, b).unwrap())
}

fn custom_function() -> impl Strategy<Value = LAdditiveFunction> {
    let rule = prop_oneof![
        (-5i64..=5).prop_map(|c| PrimeRule::Constant(int(c))),
        Just(PrimeRule::Identity),
        Just(PrimeRule::Reciprocal),
    ];
    let nonzero_rule = prop_oneof![
        (1i64..=4, prop::bool::ANY).prop_map(|(c, neg)| PrimeRule::Constant(int(if neg { -c } else { c }))),
        Just(PrimeRule::Identity),
        Just(PrimeRule::Reciprocal),
    ];
    let overrides =
        prop::collection::btree_map(prop::sample::select(vec![2u64, 3, 5, 7, 11]), (1i64..=3, 1i64..=3), 0..3);
    (rule, nonzero_rule, overrides).prop_map(|(f_default, h_default, ov)| {
        let f_over: BTreeMap<u64, ExactRational> = ov.iter().map(|(&p, &(a, b))| (p, frac(a, b))).collect();
        let h_over: BTreeMap<u64, ExactRational> = ov.iter().map(|(&p, &(a, _))| (p, int(a + 1))).collect();
        LAdditiveFunction::custom("custom", f_over, f_default, h_over, h_default).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn well_defined_under_scaling(a in 1u64..=200, b in 1u64..=200, c in 1u64..=200) {
        for f in builtins() {
            prop_assert_eq!(f.eval_rational(a * c, b * c).unwrap(), f.eval_rational(a, b).unwrap());
        }
    }

    #[test]
    fn factorize_rational_ignores_common_factors(a in 1u64..=5000, b in 1u64..=5000, c in 1u64..=500) {
        prop_assert_eq!(factorize_rational(a * c, b * c).unwrap(), factorize_rational(a, b).unwrap());
        let (num, den) = factorize_rational(a, b).unwrap().to_fraction();
        let g = gcd(a, b);
        prop_assert_eq!((num, den), (a / g, b / g));
    }

    #[test]
    fn leibniz_rule_on_rationals((a, b) in rational_pair(), (c, d) in rational_pair()) {
        for f in builtins() {
            let lhs = f.eval_rational(a * c, b * d).unwrap();
            let rhs = f.eval_rational(a, b).unwrap() * h_rational(&f, c, d)
                + f.eval_rational(c, d).unwrap() * h_rational(&f, a, b);
            prop_assert_eq!(lhs, rhs, "{} at {}/{} * {}/{}", f, a, b, c, d);
        }
    }

    #[test]
    fn signed_factorization_agrees_with_quotient_rule((a, b) in rational_pair()) {
        for f in builtins() {
            prop_assert_eq!(
                f.eval_rational_by_factorization(a, b).unwrap(),
                f.eval_rational(a, b).unwrap()
            );
        }
    }

    #[test]
    fn inverse_and_quotient_rule(n in 1u64..=5000, m in 1u64..=5000) {
        for f in builtins() {
            let (fn_, hn) = (f.eval_natural(n).unwrap(), f.h_eval(n).unwrap());
            let (fm, hm) = (f.eval_natural(m).unwrap(), f.h_eval(m).unwrap());
            prop_assert_eq!(f.eval_inverse(n).unwrap(), -&fn_ / (&hn * &hn));
            prop_assert_eq!(f.eval_rational(1, n).unwrap(), f.eval_inverse(n).unwrap());
            prop_assert_eq!(f.eval_rational(n, m).unwrap(), (fn_ * &hm - fm * hn) / (&hm * &hm));
        }
    }

    #[test]
    fn custom_functions_obey_leibniz(f in custom_function(), m in 1u64..=400, n in 1u64..=400) {
        let fmn = f.eval_natural(m * n).unwrap();
        let rhs = f.eval_natural(m).unwrap() * f.h_eval(n).unwrap() + f.eval_natural(n).unwrap() * f.h_eval(m).unwrap();
        prop_assert_eq!(fmn, rhs);
        prop_assert_eq!(
            f.quotient_ratio(m * n).unwrap(),
            f.quotient_ratio(m).unwrap() + f.quotient_ratio(n).unwrap()
        );
        prop_assert!(f.eval_natural(1).unwrap().is_zero());
        prop_assert!(f.h_eval(1).unwrap().is_one());
    }
}

#[test]
fn custom_function_matches_memoized_recursion() {
    // f(p) = p + 1, h(p) = p^-1 except h(3) = 2
    let f = LAdditiveFunction::custom(
        "c",
        BTreeMap::new(),
        PrimeRule::Identity,
        BTreeMap::from([(3, int(2))]),
        PrimeRule::Reciprocal,
    )
    .unwrap();
    let fp = |p: u64| int(p);
    let hp = |p: u64| if p == 3 { int(2) } else { frac(1, p as i64) };
    let mut memo: HashMap<u64, (ExactRational, ExactRational)> = HashMap::new();
    memo.insert(1, (int(0), int(1)));
    for n in 2..=3000u64 {
        let p = trial_division(n)[0].0;
        let (fm, hm) = memo[&(n / p)].clone();
        let value = (fp(p) * &hm + fm * hp(p), hp(p) * hm);
        assert_eq!(f.eval_natural(n).unwrap(), value.0, "{n}");
        assert_eq!(f.h_eval(n).unwrap(), value.1, "{n}");
        memo.insert(n, value);
    }
}
