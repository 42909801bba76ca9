//! Exact Dirichlet convolution on `[1, N]`.

mod builtins;
pub mod expr;
pub mod presets;
pub mod verify;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::factor::{build_sieve, factorize, SieveTable};
use crate::rational::{serde_fraction_vec, to_fraction_string, ExactRational};

pub use expr::{Builtin, FunctionExpr};
use verify::Corruption;

/// Values of an arithmetic function on `1..=limit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TabulationWire", into = "TabulationWire")]
pub struct TabulatedFunction {
    values: Vec<ExactRational>,
}

#[derive(Serialize, Deserialize)]
struct TabulationWire {
    limit: usize,
    #[serde(with = "serde_fraction_vec")]
    values: Vec<ExactRational>,
}

impl TryFrom<TabulationWire> for TabulatedFunction {
    type Error = Error;

    fn try_from(w: TabulationWire) -> Result<Self> {
        if w.values.len() != w.limit {
            return Err(invalid(format!("expected {} values, found {}", w.limit, w.values.len())));
        }
        TabulatedFunction::from_values(w.values)
    }
}

impl From<TabulatedFunction> for TabulationWire {
    fn from(t: TabulatedFunction) -> Self {
        TabulationWire { limit: t.values.len(), values: t.values }
    }
}

impl TabulatedFunction {
    /// `values[0]` is the value at `n = 1`.
    pub fn from_values(values: Vec<ExactRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("a tabulation needs at least the value at 1"));
        }
        Ok(TabulatedFunction { values })
    }

    pub fn limit(&self) -> usize {
        self.values.len()
    }

    /// Value at `n`, `1 <= n <= limit`.
    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<ExactRational> {
        self.values
    }

    /// CSV with header `n,value`, values as `p/q`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,value\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, to_fraction_string(v)));
        }
        out
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&ExactRational, &ExactRational) -> ExactRational) -> Self {
        TabulatedFunction { values: self.values.iter().zip(&other.values).map(|(a, b)| op(a, b)).collect() }
    }
}

/// `(a * b)(n) = sum_{d | n} a(d) b(n/d)` on the common range, using the
/// harmonic double loop over `d` and its multiples.
pub fn dirichlet_convolve(a: &TabulatedFunction, b: &TabulatedFunction) -> Result<TabulatedFunction> {
    let n = a.limit();
    if b.limit() != n {
        return Err(invalid(format!("limit mismatch: {} vs {}", n, b.limit())));
    }
    let mut out = vec![ExactRational::zero(); n];
    for d in 1..=n {
        let ad = &a.values[d - 1];
        if ad.is_zero() {
            continue;
        }
        for (k, m) in (d..=n).step_by(d).enumerate() {
            let bk = &b.values[k];
            if !bk.is_zero() {
                out[m - 1] += ad * bk;
            }
        }
    }
    Ok(TabulatedFunction { values: out })
}

/// Dirichlet inverse by the recursion `b(1) = 1/a(1)`,
/// `b(n) = -1/a(1) sum_{d | n, d < n} a(n/d) b(d)`.
pub fn dirichlet_inverse(a: &TabulatedFunction) -> Result<TabulatedFunction> {
    let n = a.limit();
    let a1 = &a.values[0];
    if a1.is_zero() {
        return Err(Error::NotInvertible);
    }
    let inv_a1 = a1.recip();
    let mut acc = vec![ExactRational::zero(); n];
    let mut out = vec![ExactRational::zero(); n];
    for d in 1..=n {
        // every proper divisor of d has already pushed its contribution
        let bd = if d == 1 { inv_a1.clone() } else { -&acc[d - 1] * &inv_a1 };
        if !bd.is_zero() {
            for (k, m) in (2 * d..=n).step_by(d).enumerate() {
                let ak = &a.values[k + 1];
                if !ak.is_zero() {
                    acc[m - 1] += ak * &bd;
                }
            }
        }
        out[d - 1] = bd;
    }
    Ok(TabulatedFunction { values: out })
}

/// Tabulates an expression on `[1, limit]`.
pub fn tabulate(expr: &FunctionExpr, limit: usize) -> Result<TabulatedFunction> {
    if limit < 1 {
        return Err(invalid("tabulation limit must be at least 1"));
    }
    let sieve = build_sieve(limit.max(2))?;
    tabulate_with(expr, limit, &sieve)
}

pub(crate) fn tabulate_with(expr: &FunctionExpr, limit: usize, sieve: &SieveTable) -> Result<TabulatedFunction> {
    tabulate_corrupted(expr, limit, sieve, None)
}

/// As [`tabulate_with`], but every leaf table of `corruption.builtin` gets
/// 1 added at `corruption.n`.
pub(crate) fn tabulate_corrupted(
    expr: &FunctionExpr,
    limit: usize,
    sieve: &SieveTable,
    corruption: Option<&Corruption>,
) -> Result<TabulatedFunction> {
    let rec = |e: &FunctionExpr| tabulate_corrupted(e, limit, sieve, corruption);
    let both = |a: &FunctionExpr, b: &FunctionExpr| -> Result<(TabulatedFunction, TabulatedFunction)> {
        let (ta, tb) = rayon::join(|| rec(a), || rec(b));
        Ok((ta?, tb?))
    };
    let t = match expr {
        FunctionExpr::Builtin(b) => {
            let mut values = b.tabulate_with(limit, sieve)?;
            if let Some(c) = corruption.filter(|c| &c.builtin == b) {
                if let Some(v) = values.get_mut(c.n as usize - 1) {
                    *v += ExactRational::one();
                }
            }
            TabulatedFunction { values }
        }
        FunctionExpr::DirichletConv(a, b) => {
            let (ta, tb) = both(a, b)?;
            dirichlet_convolve(&ta, &tb)?
        }
        FunctionExpr::PointwiseMul(a, b) => {
            let (ta, tb) = both(a, b)?;
            ta.zip_with(&tb, |x, y| x * y)
        }
        FunctionExpr::PointwiseDiv(a, b) => {
            let (ta, tb) = both(a, b)?;
            if let Some(i) = tb.values.iter().position(Zero::is_zero) {
                return Err(Error::DivisionByZero(i as u64 + 1));
            }
            ta.zip_with(&tb, |x, y| x / y)
        }
        FunctionExpr::ScalarMul(c, e) => {
            let mut t = rec(e)?;
            t.values.iter_mut().for_each(|v| *v *= c);
            t
        }
        FunctionExpr::Add(a, b) => {
            let (ta, tb) = both(a, b)?;
            ta.zip_with(&tb, |x, y| x + y)
        }
        FunctionExpr::Negate(e) => {
            let mut t = rec(e)?;
            t.values.iter_mut().for_each(|v| *v = -&*v);
            t
        }
    };
    Ok(t)
}

/// Value of an expression at one point; convolutions are expanded by divisor
/// enumeration.
pub fn eval_at(expr: &FunctionExpr, n: u64) -> Result<ExactRational> {
    if n == 0 {
        return Err(invalid("arithmetic functions are defined for n >= 1"));
    }
    let v = match expr {
        FunctionExpr::Builtin(b) => b.eval_at(n)?,
        FunctionExpr::DirichletConv(a, b) => convolve_at(a, b, n)?,
        FunctionExpr::PointwiseMul(a, b) => eval_at(a, n)? * eval_at(b, n)?,
        FunctionExpr::PointwiseDiv(a, b) => {
            let d = eval_at(b, n)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero(n));
            }
            eval_at(a, n)? / d
        }
        FunctionExpr::ScalarMul(c, e) => c * eval_at(e, n)?,
        FunctionExpr::Add(a, b) => eval_at(a, n)? + eval_at(b, n)?,
        FunctionExpr::Negate(e) => -eval_at(e, n)?,
    };
    Ok(v)
}

/// `(a * b)(n)` by enumerating the divisors of `n`.
pub fn convolve_at(a: &FunctionExpr, b: &FunctionExpr, n: u64) -> Result<ExactRational> {
    let divisors = factorize(n, None)?.divisors();
    let mut acc = ExactRational::zero();
    for d in divisors {
        let ad = eval_at(a, d)?;
        if ad.is_zero() {
            continue;
        }
        acc += ad * eval_at(b, n / d)?;
    }
    Ok(acc)
}

/// The Dirichlet identity on `[1, limit]`.
pub fn epsilon(limit: usize) -> TabulatedFunction {
    let mut values = vec![ExactRational::zero(); limit.max(1)];
    values[0] = ExactRational::one();
    TabulatedFunction { values }
}
