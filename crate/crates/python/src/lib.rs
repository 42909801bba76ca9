//! Python bindings. Exact values cross the boundary as `fractions.Fraction`,
//! series values as `complex`.

use std::collections::BTreeMap;

use arith_deriv::convolution::verify::{self as identities, VerificationReport};
use arith_deriv::series::{self, ComplexPoint, SeriesCheckReport};
use arith_deriv::{
    convolve_at as core_convolve_at, dirichlet_convolve, factorize as core_factorize,
    factorize_rational as core_factorize_rational, tabulate as core_tabulate, Error, ExactRational, FunctionExpr,
    LAdditiveFunction, MangoldtOf, PrimeRule,
};
use num_complex::Complex64;
use pyo3::exceptions::{PyKeyError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::UnknownName(msg) => PyKeyError::new_err(msg),
        Error::DivisionByZero(_) => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn point(s: Complex64) -> PyResult<ComplexPoint> {
    ComplexPoint::new(s.re, s.im).map_err(to_py)
}

fn parse(src: &str) -> PyResult<FunctionExpr> {
    FunctionExpr::parse(src).map_err(to_py)
}

/// Prime factorization of `n >= 1` as a list of `(prime, exponent)`.
#[pyfunction]
fn factorize(n: u64) -> PyResult<Vec<(u64, i64)>> {
    let f = core_factorize(n, None).map_err(to_py)?;
    Ok(f.iter().map(|pp| (pp.prime, pp.exponent)).collect())
}

/// Signed factorization of `numerator/denominator` in lowest terms.
#[pyfunction]
fn factorize_rational(numerator: u64, denominator: u64) -> PyResult<Vec<(u64, i64)>> {
    let f = core_factorize_rational(numerator, denominator).map_err(to_py)?;
    Ok(f.iter().map(|pp| (pp.prime, pp.exponent)).collect())
}

#[pyfunction]
fn primes_up_to(limit: usize) -> Vec<u64> {
    arith_deriv::primes_up_to(limit)
}

fn prime_rule(obj: &Bound<'_, PyAny>) -> PyResult<PrimeRule> {
    if let Ok(s) = obj.extract::<String>() {
        return match s.as_str() {
            "identity" => Ok(PrimeRule::Identity),
            "reciprocal" => Ok(PrimeRule::Reciprocal),
            _ => Err(PyValueError::new_err(format!("unknown prime rule '{s}'"))),
        };
    }
    Ok(PrimeRule::Constant(obj.extract::<ExactRational>()?))
}

/// An L-additive function `f` with its completely multiplicative `h`.
#[pyclass(name = "LAdditive", module = "arith_deriv", frozen)]
struct PyLAdditive {
    inner: LAdditiveFunction,
}

#[pymethods]
impl PyLAdditive {
    /// `delta`, `ld`, `big_omega` or `delta_p:<prime>`.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyLAdditive { inner: LAdditiveFunction::from_name(name).map_err(to_py)? })
    }

    /// Rules are `"identity"` (p), `"reciprocal"` (1/p) or a constant.
    #[staticmethod]
    #[pyo3(signature = (name, f_default, h_default, f_overrides = BTreeMap::new(), h_overrides = BTreeMap::new()))]
    fn custom(
        name: &str,
        f_default: &Bound<'_, PyAny>,
        h_default: &Bound<'_, PyAny>,
        f_overrides: BTreeMap<u64, ExactRational>,
        h_overrides: BTreeMap<u64, ExactRational>,
    ) -> PyResult<Self> {
        let inner =
            LAdditiveFunction::custom(name, f_overrides, prime_rule(f_default)?, h_overrides, prime_rule(h_default)?)
                .map_err(to_py)?;
        Ok(PyLAdditive { inner })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn eval(&self, n: u64) -> PyResult<ExactRational> {
        self.inner.eval_natural(n).map_err(to_py)
    }

    fn h(&self, n: u64) -> PyResult<ExactRational> {
        self.inner.h_eval(n).map_err(to_py)
    }

    fn eval_rational(&self, numerator: u64, denominator: u64) -> PyResult<ExactRational> {
        self.inner.eval_rational(numerator, denominator).map_err(to_py)
    }

    fn eval_inverse(&self, n: u64) -> PyResult<ExactRational> {
        self.inner.eval_inverse(n).map_err(to_py)
    }

    fn quotient_ratio(&self, n: u64) -> PyResult<ExactRational> {
        self.inner.quotient_ratio(n).map_err(to_py)
    }

    fn mangoldt(&self, n: u64) -> PyResult<ExactRational> {
        MangoldtOf::new(self.inner.clone()).eval(n).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("LAdditive('{}')", self.inner.name())
    }
}

/// Generalized von Mangoldt function of the named L-additive function.
#[pyfunction]
fn mangoldt(function: &str, n: u64) -> PyResult<ExactRational> {
    let f = LAdditiveFunction::from_name(function).map_err(to_py)?;
    MangoldtOf::new(f).eval(n).map_err(to_py)
}

/// Values of an expression on `[1, limit]`.
#[pyfunction]
fn tabulate(expr: &str, limit: usize) -> PyResult<Vec<ExactRational>> {
    Ok(core_tabulate(&parse(expr)?, limit).map_err(to_py)?.into_values())
}

/// `(a * b)(n)` for `n` in `[1, limit]`, by the harmonic loop.
#[pyfunction]
fn convolve(a: &str, b: &str, limit: usize) -> PyResult<Vec<ExactRational>> {
    let ta = core_tabulate(&parse(a)?, limit).map_err(to_py)?;
    let tb = core_tabulate(&parse(b)?, limit).map_err(to_py)?;
    Ok(dirichlet_convolve(&ta, &tb).map_err(to_py)?.into_values())
}

/// `(a * b)(n)` by divisor enumeration.
#[pyfunction]
fn convolve_at(a: &str, b: &str, n: u64) -> PyResult<ExactRational> {
    core_convolve_at(&parse(a)?, &parse(b)?, n).map_err(to_py)
}

fn report_dict<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("identity", &r.identity)?;
    d.set_item("range", r.range)?;
    d.set_item("holds", r.holds)?;
    d.set_item("instances", r.instances)?;
    match &r.mismatch {
        Some(m) => {
            let md = PyDict::new(py);
            md.set_item("instance", &m.instance)?;
            md.set_item("n", m.n)?;
            md.set_item("lhs", &m.lhs)?;
            md.set_item("rhs", &m.rhs)?;
            d.set_item("mismatch", md)?;
        }
        None => d.set_item("mismatch", py.None())?,
    }
    d.set_item("elapsed_secs", r.elapsed_secs)?;
    Ok(d)
}

/// Checks a named identity exactly on `[1, limit]`; `"all"` checks every one
/// and returns a list.
#[pyfunction]
#[pyo3(signature = (identity, limit = 10_000, seed = identities::DEFAULT_SEED))]
fn verify<'py>(py: Python<'py>, identity: &str, limit: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    if identity == "all" {
        let reports = py.detach(|| identities::verify_all(limit, seed)).map_err(to_py)?;
        let list: Vec<Bound<'py, PyDict>> = reports.iter().map(|r| report_dict(py, r)).collect::<PyResult<_>>()?;
        return Ok(list.into_pyobject(py)?.into_any());
    }
    let r = py.detach(|| identities::verify_identity_seeded(identity, limit, seed)).map_err(to_py)?;
    Ok(report_dict(py, &r)?.into_any())
}

/// `(name, statement)` for every convolution identity.
#[pyfunction]
fn list_identities() -> Vec<(String, String)> {
    identities::catalog(identities::DEFAULT_SEED).into_iter().map(|i| (i.name, i.statement)).collect()
}

/// Compares a series preset with its closed form at `s`.
#[pyfunction]
#[pyo3(signature = (preset, s, limit = 1_000_000, prime_limit = 1_000_000, tolerance = 1e-6))]
fn series_check<'py>(
    py: Python<'py>,
    preset: &str,
    s: Complex64,
    limit: usize,
    prime_limit: usize,
    tolerance: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let s = point(s)?;
    let r: SeriesCheckReport =
        py.detach(|| series::check_series_identity(preset, s, limit, prime_limit, tolerance)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("name", &r.name)?;
    d.set_item("s", r.s.to_complex())?;
    d.set_item("N", r.limit)?;
    d.set_item("prime_limit", r.prime_limit)?;
    d.set_item("lhs", r.lhs)?;
    d.set_item("rhs", r.rhs)?;
    d.set_item("abs_error", r.abs_error)?;
    d.set_item("tolerance", r.tolerance)?;
    d.set_item("pass", r.pass)?;
    Ok(d)
}

/// Riemann zeta for `Re(s) >= 1.5`; returns `(value, tail_bound)`.
#[pyfunction]
#[pyo3(signature = (s, precision = 1e-12))]
fn zeta(s: Complex64, precision: f64) -> PyResult<(Complex64, f64)> {
    let e = series::zeta(point(s)?, precision).map_err(to_py)?;
    Ok((e.value, e.tail_bound))
}

/// `F(s)` summed over primes up to `prime_limit`; returns `(value, tail_bound)`.
#[pyfunction]
#[pyo3(signature = (s, prime_limit = 1_000_000))]
fn prime_f(s: Complex64, prime_limit: usize) -> PyResult<(Complex64, f64)> {
    let e = series::prime_f(point(s)?, prime_limit).map_err(to_py)?;
    Ok((e.value, e.tail_bound))
}

#[pymodule(name = "arith_deriv")]
fn arith_deriv_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLAdditive>()?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(factorize_rational, m)?)?;
    m.add_function(wrap_pyfunction!(primes_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(mangoldt, m)?)?;
    m.add_function(wrap_pyfunction!(tabulate, m)?)?;
    m.add_function(wrap_pyfunction!(convolve, m)?)?;
    m.add_function(wrap_pyfunction!(convolve_at, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(list_identities, m)?)?;
    m.add_function(wrap_pyfunction!(series_check, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(prime_f, m)?)?;
    Ok(())
}
