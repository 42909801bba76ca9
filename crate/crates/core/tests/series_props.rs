use std::f64::consts::PI;

use arith_deriv::series::{
    check_preset, dirichlet_partial_sum, log_mangoldt_partial_sum, prime_f, zeta, zeta_derivative, ComplexPoint,
    SeriesPreset,
};
use arith_deriv::{dirichlet_convolve, tabulate, FunctionExpr};

fn real(x: f64) -> ComplexPoint {
    ComplexPoint::real(x).unwrap()
}

#[test]
fn zeta_agrees_with_closed_forms() {
    assert!((zeta(real(2.0), 1e-12).unwrap().value.re - PI * PI / 6.0).abs() < 1e-10);
    assert!((zeta(real(4.0), 1e-12).unwrap().value.re - PI.powi(4) / 90.0).abs() < 1e-10);
    assert!((zeta(real(6.0), 1e-12).unwrap().value.re - PI.powi(6) / 945.0).abs() < 1e-10);
}

#[test]
fn series_product_law() {
    let s = real(4.0);
    let z4 = PI.powi(4) / 90.0;
    let one = FunctionExpr::parse("1").unwrap();
    let mut previous = (f64::INFINITY, f64::INFINITY);
    for limit in [1_000, 10_000, 100_000] {
        let a = tabulate(&one, limit).unwrap();
        let conv = dirichlet_convolve(&a, &a).unwrap();
        let lhs = dirichlet_partial_sum(&conv, s).value;
        let single = dirichlet_partial_sum(&a, s).value;
        let err_zeta = (lhs - z4 * z4).norm();
        let err_product = (lhs - single * single).norm();
        assert!(err_zeta < previous.0, "N = {limit}: {err_zeta}");
        assert!(err_product < previous.1, "N = {limit}: {err_product}");
        previous = (err_zeta, err_product);
    }
    assert!(previous.0 < 1e-12);
}

#[test]
fn constant_series_matches_zeta() {
    let s = real(4.0);
    let limit = 1_000_000;
    let a = tabulate(&FunctionExpr::parse("1").unwrap(), limit).unwrap();
    let partial = dirichlet_partial_sum(&a, s).value;
    let z = zeta(s, 1e-14).unwrap();
    // sum_{n > N} n^-4 < N^-3 / 3
    let tail = (limit as f64).powi(-3) / 3.0;
    assert!((partial - z.value).norm() <= tail + z.tail_bound + 1e-15);
}

#[test]
fn prime_f_increases_towards_reference() {
    for s in [1.0, 2.0, 3.5] {
        let reference = prime_f(real(s), 1_000_000).unwrap();
        let mut last = 0.0;
        for limit in [10, 100, 1_000, 10_000, 100_000] {
            let est = prime_f(real(s), limit).unwrap();
            assert!(est.value.re > last);
            assert!(est.value.re <= reference.value.re);
            if est.tail_bound.is_finite() {
                assert!(reference.value.re - est.value.re <= est.tail_bound, "s = {s}, L = {limit}");
            }
            assert!(est.tail_bound >= 0.0);
            last = est.value.re;
        }
    }
}

#[test]
fn classical_mangoldt_matches_log_derivative_of_zeta() {
    let s = real(2.0);
    let sum = log_mangoldt_partial_sum(1_000_000, s).value.re;
    let expected = -zeta_derivative(s, 1e-4).unwrap().re / zeta(s, 1e-14).unwrap().value.re;
    assert!((sum - expected).abs() < 1e-4, "{sum} vs {expected}");
}

#[test]
fn presets_one_beyond_their_half_plane() {
    // At N = 10^6 the coefficient sums tau.delta, sigma.delta and
    // sigma_2.delta still carry a truncation tail above 1e-6 at s = bound + 1.
    // Those cases must show the tail shrinking with N and must pass one
    // step further out; every other preset must pass outright.
    const TAIL_LIMITED: &[&str] = &["cor-tau", "cor-sigma", "cor-sigmak(2)"];
    let presets = [
        SeriesPreset::LemmaFld,
        SeriesPreset::Thm33,
        SeriesPreset::CorTau,
        SeriesPreset::CorMu,
        SeriesPreset::CorPhi,
        SeriesPreset::CorSigma,
        SeriesPreset::CorSigmaK(2),
    ];
    let n = 1_000_000;
    for preset in presets {
        let s = real(preset.half_plane() + 1.0);
        let r = check_preset(preset, s, n, n, 1e-6).unwrap();
        println!(
            "{:<14} s = {}  |lhs - rhs| = {:.3e}  {}",
            r.name,
            s,
            r.abs_error,
            if r.pass { "pass" } else { "FAIL" }
        );
        if TAIL_LIMITED.contains(&r.name.as_str()) {
            assert!(!r.pass, "{} now passes at bound + 1; update the expectation", r.name);
            let coarse = check_preset(preset, s, n / 10, n, 1e-6).unwrap();
            assert!(coarse.abs_error > 2.0 * r.abs_error, "{}: tail not shrinking", r.name);
            let further = check_preset(preset, real(preset.half_plane() + 2.0), n, n, 1e-6).unwrap();
            assert!(further.pass, "{}: {:e}", r.name, further.abs_error);
        } else {
            assert!(r.pass, "{}: {:e}", r.name, r.abs_error);
        }
    }
}

#[test]
fn complex_points_are_supported() {
    let s = ComplexPoint::new(4.0, 3.0).unwrap();
    let r = check_preset(SeriesPreset::Thm33, s, 100_000, 100_000, 1e-6).unwrap();
    assert!(r.pass, "{:e}", r.abs_error);
    assert!(r.rhs.im.abs() > 1e-3);
}
