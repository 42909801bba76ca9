//! Double-precision Dirichlet series: the Riemann zeta function, the prime
//! sum `F(s) = sum_p 1/(p^(s+1) - p)`, truncated series of exact tabulations,
//! and tolerance checks of the closed forms for `sum f(n) delta(n) / n^s`.
//!
//! Truncated coefficient sums carry no in-code tail bound. For the preset
//! checks the omitted tail is controlled by `delta(n) <= n log2(n) / 2`: at
//! `s >= 4` and `N = 10^6` the tail of `sum delta(n)/n^s` is below `1e-9`,
//! which is why `1e-6` is the recommended tolerance at that scale.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convolution::{tabulate, Builtin, FunctionExpr, TabulatedFunction};
use crate::error::{invalid, Error, Result};
use crate::factor::{factorize, primes_up_to};
use crate::ladditive::LAdditiveFunction;
use crate::rational::to_f64;

/// Smallest real part accepted by [`zeta`]; there is no analytic continuation.
pub const ZETA_MIN_RE: f64 = 1.5;

/// Precision requested from [`zeta`] when evaluating closed forms.
pub const CLOSED_FORM_ZETA_PRECISION: f64 = 1e-14;

const BLOCK: usize = 1024;

/// A point `s = re + i im` with finite coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ComplexPointWire", into = "ComplexPointWire")]
pub struct ComplexPoint {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct ComplexPointWire {
    re: f64,
    im: f64,
}

impl TryFrom<ComplexPointWire> for ComplexPoint {
    type Error = Error;

    fn try_from(w: ComplexPointWire) -> Result<Self> {
        ComplexPoint::new(w.re, w.im)
    }
}

impl From<ComplexPoint> for ComplexPointWire {
    fn from(p: ComplexPoint) -> Self {
        ComplexPointWire { re: p.re, im: p.im }
    }
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(invalid(format!("s must be finite, got {re} + {im}i")));
        }
        Ok(ComplexPoint { re, im })
    }

    pub fn real(re: f64) -> Result<Self> {
        Self::new(re, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `s - k` for real `k`.
    pub fn shifted(self, k: f64) -> ComplexPoint {
        ComplexPoint { re: self.re - k, im: self.im }
    }

    /// Parses `re` or `re,im`.
    pub fn parse(src: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed complex point '{src}', expected re or re,im"));
        let mut parts = src.split(',');
        let re: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let im: f64 = match parts.next() {
            Some(p) => p.trim().parse().map_err(|_| bad())?,
            None => 0.0,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Self::new(re, im)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{}{:+}i", self.re, self.im)
        }
    }
}

/// A series value with the truncation point and a bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesEstimate {
    pub value: Complex64,
    /// Number of terms (or the prime limit) actually summed.
    pub truncation: u64,
    /// Bound on `|value - exact|`; zero means the tail is not bounded
    /// (truncation only), infinity means no bound is available.
    pub tail_bound: f64,
}

fn pow_neg(n: f64, s: Complex64) -> Complex64 {
    (-s * n.ln()).exp()
}

/// Deterministic sum: fixed blocks summed in parallel, then a pairwise tree
/// over the block sums in index order.
fn tree_sum(terms: impl IndexedParallelIterator<Item = Complex64>) -> Complex64 {
    let mut level: Vec<Complex64> =
        terms.chunks(BLOCK).map(|chunk| chunk.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b)).collect();
    while level.len() > 1 {
        level = level.chunks(2).map(|pair| pair.iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b)).collect();
    }
    level.pop().unwrap_or_default()
}

/// Remainder bound for Euler-Maclaurin with the `B_2` and `B_4` corrections:
/// `|s(s+1)...(s+5)| N^(-re(s)-5) / (42 * 720 * (re(s)+5))`.
fn zeta_remainder_bound(s: Complex64, n: f64) -> f64 {
    let rising: f64 = (0..6).map(|j| (s + j as f64).norm()).product();
    rising * n.powf(-s.re - 5.0) / (42.0 * 720.0 * (s.re + 5.0))
}

/// Riemann zeta for `re(s) >= 1.5`: direct sum of `N - 1` terms, integral
/// tail `N^(1-s)/(s-1)`, and Euler-Maclaurin corrections, with `N` doubled
/// until the remainder bound meets `target_precision`.
pub fn zeta(s: ComplexPoint, target_precision: f64) -> Result<SeriesEstimate> {
    if s.re < ZETA_MIN_RE {
        return Err(Error::OutOfDomain(format!("zeta requires Re(s) >= {ZETA_MIN_RE}, got Re(s) = {}", s.re)));
    }
    if target_precision.is_nan() || target_precision <= 0.0 {
        return Err(invalid("target precision must be positive"));
    }
    let z = s.to_complex();
    let mut n: u64 = 16;
    while zeta_remainder_bound(z, n as f64) > target_precision / 2.0 && n < (1 << 24) {
        n *= 2;
    }
    let nf = n as f64;
    let head = tree_sum((1..n as usize).into_par_iter().map(|k| pow_neg(k as f64, z)));
    let n_s = pow_neg(nf, z);
    let tail = n_s * nf / (z - 1.0) + n_s / 2.0 + z * n_s / (12.0 * nf)
        - z * (z + 1.0) * (z + 2.0) * n_s / (720.0 * nf.powi(3));
    let rounding = nf * f64::EPSILON * 4.0;
    Ok(SeriesEstimate { value: head + tail, truncation: n, tail_bound: zeta_remainder_bound(z, nf) + rounding })
}

/// `F(s) = sum_{p <= prime_limit} 1/(p^(s+1) - p)`.
///
/// The tail bound uses `|p^(s+1) - p| >= p^(re(s)+1) / 2` whenever
/// `p^re(s) >= 2`, giving `2 L^(-re(s)) / re(s)` for the primes beyond `L`.
pub fn prime_f(s: ComplexPoint, prime_limit: usize) -> Result<SeriesEstimate> {
    if s.re <= 0.0 {
        return Err(Error::OutOfDomain(format!("F(s) requires Re(s) > 0, got Re(s) = {}", s.re)));
    }
    if prime_limit < 2 {
        return Err(invalid("prime limit must be at least 2"));
    }
    Ok(prime_f_over(s, &primes_up_to(prime_limit), prime_limit))
}

fn prime_f_over(s: ComplexPoint, primes: &[u64], prime_limit: usize) -> SeriesEstimate {
    let z1 = s.to_complex() + 1.0;
    let value = tree_sum(primes.par_iter().map(|&p| {
        let pf = p as f64;
        1.0 / ((z1 * pf.ln()).exp() - pf)
    }));
    let l = prime_limit as f64;
    let tail_bound = if l.powf(s.re) >= 2.0 { 2.0 * l.powf(-s.re) / s.re } else { f64::INFINITY };
    SeriesEstimate { value, truncation: prime_limit as u64, tail_bound }
}

/// `sum_{n <= N} a(n) / n^s` for a tabulation on `[1, N]`; each exact
/// coefficient is rounded to `f64` before the multiplication.
pub fn dirichlet_partial_sum(a: &TabulatedFunction, s: ComplexPoint) -> SeriesEstimate {
    let z = s.to_complex();
    let value = tree_sum(a.values().par_iter().enumerate().map(|(i, v)| {
        let c = to_f64(v);
        if c == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            pow_neg((i + 1) as f64, z) * c
        }
    }));
    SeriesEstimate { value, truncation: a.limit() as u64, tail_bound: 0.0 }
}

/// Classical von Mangoldt `log p` on prime powers, the float counterpart of the
/// generalized function for the completely additive `log`.
pub fn log_mangoldt(n: u64) -> f64 {
    match factorize(n.max(1), None).ok().and_then(|f| f.as_prime_power()) {
        Some((p, _)) => (p as f64).ln(),
        None => 0.0,
    }
}

/// `log n` computed additively from the factorization.
pub fn log_additive(n: u64) -> f64 {
    factorize(n.max(1), None)
        .map(|f| f.iter().map(|pp| pp.exponent as f64 * (pp.prime as f64).ln()).sum())
        .unwrap_or(0.0)
}

/// `sum_{n <= limit} Lambda(n) / n^s`, classical von Mangoldt.
pub fn log_mangoldt_partial_sum(limit: usize, s: ComplexPoint) -> SeriesEstimate {
    let z = s.to_complex();
    let mut lam = vec![0.0f64; limit + 1];
    for p in primes_up_to(limit) {
        let lp = (p as f64).ln();
        let mut pk = p;
        while pk as usize <= limit {
            lam[pk as usize] = lp;
            pk = match pk.checked_mul(p) {
                Some(x) => x,
                None => break,
            };
        }
    }
    let value = tree_sum(lam.par_iter().enumerate().skip(1).map(|(n, &l)| {
        if l == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            pow_neg(n as f64, z) * l
        }
    }));
    SeriesEstimate { value, truncation: limit as u64, tail_bound: 0.0 }
}

/// Central difference `(zeta(s+h) - zeta(s-h)) / 2h`.
pub fn zeta_derivative(s: ComplexPoint, h: f64) -> Result<Complex64> {
    let hi = zeta(ComplexPoint::new(s.re + h, s.im)?, 1e-15)?;
    let lo = zeta(ComplexPoint::new(s.re - h, s.im)?, 1e-15)?;
    Ok((hi.value - lo.value) / (2.0 * h))
}

/// Closed-form Dirichlet series identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesPreset {
    /// `sum lambda_ld(n)/n^s = F(s)`.
    LemmaFld,
    /// `sum delta(n)/n^s = zeta(s-1) F(s-1)`.
    Thm33,
    /// `sum tau(n) delta(n)/n^s = 2 zeta(s-1)^2 F(s-1)`.
    CorTau,
    /// `sum mu(n) delta(n)/n^s = -F(s-1)/zeta(s-1)`.
    CorMu,
    /// `sum phi(n) delta(n)/n^s = zeta(s-2)/zeta(s-1) (F(s-2) - F(s-1))`.
    CorPhi,
    /// `sum sigma(n) delta(n)/n^s = zeta(s-1) zeta(s-2) (F(s-2) + F(s-1))`.
    CorSigma,
    /// `sum sigma_k(n) delta(n)/n^s = zeta(s-1) zeta(s-k-1) (F(s-1) + F(s-k-1))`.
    CorSigmaK(u32),
}

impl SeriesPreset {
    pub const ALL_NAMES: [&'static str; 7] =
        ["lemma-Fld", "thm3.3", "cor-tau", "cor-mu", "cor-phi", "cor-sigma", "cor-sigmak(k)"];

    /// Accepts the names in [`Self::ALL_NAMES`], with `cor-sigmak(2)` or
    /// `cor-sigmak:2` for the parameterized family.
    pub fn from_name(name: &str) -> Result<Self> {
        let p = match name {
            "lemma-Fld" | "lemma-fld" => SeriesPreset::LemmaFld,
            "thm3.3" => SeriesPreset::Thm33,
            "cor-tau" => SeriesPreset::CorTau,
            "cor-mu" => SeriesPreset::CorMu,
            "cor-phi" => SeriesPreset::CorPhi,
            "cor-sigma" => SeriesPreset::CorSigma,
            _ => {
                let k = name
                    .strip_prefix("cor-sigmak(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| name.strip_prefix("cor-sigmak:"))
                    .ok_or_else(|| Error::UnknownName(format!("no series preset named '{name}'")))?;
                let k = k.parse().map_err(|_| Error::Parse(format!("bad k in '{name}'")))?;
                SeriesPreset::CorSigmaK(k)
            }
        };
        Ok(p)
    }

    pub fn name(&self) -> String {
        match self {
            SeriesPreset::LemmaFld => "lemma-Fld".into(),
            SeriesPreset::Thm33 => "thm3.3".into(),
            SeriesPreset::CorTau => "cor-tau".into(),
            SeriesPreset::CorMu => "cor-mu".into(),
            SeriesPreset::CorPhi => "cor-phi".into(),
            SeriesPreset::CorSigma => "cor-sigma".into(),
            SeriesPreset::CorSigmaK(k) => format!("cor-sigmak({k})"),
        }
    }

    pub fn statement(&self) -> String {
        match self {
            SeriesPreset::LemmaFld => "sum lambda_ld(n)/n^s = F(s)".into(),
            SeriesPreset::Thm33 => "sum delta(n)/n^s = zeta(s-1) F(s-1)".into(),
            SeriesPreset::CorTau => "sum tau(n)delta(n)/n^s = 2 zeta(s-1)^2 F(s-1)".into(),
            SeriesPreset::CorMu => "sum mu(n)delta(n)/n^s = -F(s-1)/zeta(s-1)".into(),
            SeriesPreset::CorPhi => "sum phi(n)delta(n)/n^s = zeta(s-2)/zeta(s-1) (F(s-2) - F(s-1))".into(),
            SeriesPreset::CorSigma => "sum sigma(n)delta(n)/n^s = zeta(s-1) zeta(s-2) (F(s-2) + F(s-1))".into(),
            SeriesPreset::CorSigmaK(k) => {
                format!("sum sigma_{k}(n)delta(n)/n^s = zeta(s-1) zeta(s-{k}-1) (F(s-1) + F(s-{k}-1))")
            }
        }
    }

    /// The check requires `Re(s)` strictly above this value.
    pub fn half_plane(&self) -> f64 {
        match self {
            SeriesPreset::LemmaFld => 1.0,
            SeriesPreset::Thm33 | SeriesPreset::CorTau | SeriesPreset::CorMu => 2.0,
            SeriesPreset::CorPhi | SeriesPreset::CorSigma => 3.0,
            SeriesPreset::CorSigmaK(k) => *k as f64 + 2.0,
        }
    }

    /// Coefficients `a(n)` of the left-hand series.
    pub fn coefficients(&self) -> FunctionExpr {
        let delta = FunctionExpr::additive(LAdditiveFunction::delta());
        let with = |b: Builtin| FunctionExpr::Builtin(b).times(delta.clone());
        match self {
            SeriesPreset::LemmaFld => FunctionExpr::mangoldt(LAdditiveFunction::ld()),
            SeriesPreset::Thm33 => delta.clone(),
            SeriesPreset::CorTau => with(Builtin::Tau),
            SeriesPreset::CorMu => with(Builtin::Mu),
            SeriesPreset::CorPhi => with(Builtin::Phi),
            SeriesPreset::CorSigma => with(Builtin::Sigma(1)),
            SeriesPreset::CorSigmaK(k) => with(Builtin::Sigma(*k)),
        }
    }

    /// Right-hand closed form from [`zeta`] and the prime sum truncated at
    /// `prime_limit`.
    pub fn closed_form(&self, s: ComplexPoint, prime_limit: usize) -> Result<Complex64> {
        if prime_limit < 2 {
            return Err(invalid("prime limit must be at least 2"));
        }
        let primes = primes_up_to(prime_limit);
        let z = |shift: f64| -> Result<Complex64> { Ok(zeta(s.shifted(shift), CLOSED_FORM_ZETA_PRECISION)?.value) };
        let f = |shift: f64| -> Result<Complex64> {
            let at = s.shifted(shift);
            if at.re <= 0.0 {
                return Err(Error::OutOfDomain(format!("F needs Re > 0, got {}", at.re)));
            }
            Ok(prime_f_over(at, &primes, prime_limit).value)
        };
        let v = match self {
            SeriesPreset::LemmaFld => f(0.0)?,
            SeriesPreset::Thm33 => z(1.0)? * f(1.0)?,
            SeriesPreset::CorTau => 2.0 * z(1.0)? * z(1.0)? * f(1.0)?,
            SeriesPreset::CorMu => -f(1.0)? / z(1.0)?,
            SeriesPreset::CorPhi => z(2.0)? / z(1.0)? * (f(2.0)? - f(1.0)?),
            SeriesPreset::CorSigma => z(1.0)? * z(2.0)? * (f(2.0)? + f(1.0)?),
            SeriesPreset::CorSigmaK(k) => {
                let k1 = *k as f64 + 1.0;
                z(1.0)? * z(k1)? * (f(1.0)? + f(k1)?)
            }
        };
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesCheckReport {
    pub name: String,
    pub s: ComplexPoint,
    #[serde(rename = "N")]
    pub limit: u64,
    pub prime_limit: u64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares the truncated left-hand series of a preset with its closed form.
pub fn check_series_identity(
    name: &str,
    s: ComplexPoint,
    limit: usize,
    prime_limit: usize,
    tolerance: f64,
) -> Result<SeriesCheckReport> {
    let preset = SeriesPreset::from_name(name)?;
    check_preset(preset, s, limit, prime_limit, tolerance)
}

pub fn check_preset(
    preset: SeriesPreset,
    s: ComplexPoint,
    limit: usize,
    prime_limit: usize,
    tolerance: f64,
) -> Result<SeriesCheckReport> {
    if s.re <= preset.half_plane() {
        return Err(Error::OutOfDomain(format!(
            "{} requires Re(s) > {}, got Re(s) = {}",
            preset.name(),
            preset.half_plane(),
            s.re
        )));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    if limit < 1 {
        return Err(invalid("series limit must be at least 1"));
    }
    let (lhs, rhs) = rayon::join(
        || -> Result<Complex64> {
            let coeffs = tabulate(&preset.coefficients(), limit)?;
            Ok(dirichlet_partial_sum(&coeffs, s).value)
        },
        || preset.closed_form(s, prime_limit),
    );
    let (lhs, rhs) = (lhs?, rhs?);
    let abs_error = (lhs - rhs).norm();
    Ok(SeriesCheckReport {
        name: preset.name(),
        s,
        limit: limit as u64,
        prime_limit: prime_limit as u64,
        lhs,
        rhs,
        abs_error,
        tolerance,
        pass: abs_error <= tolerance,
    })
}
