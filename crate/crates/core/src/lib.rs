//! Exact arithmetic for L-additive functions (the arithmetic derivative and
//! its relatives), Dirichlet convolution identities, the generalized von
//! Mangoldt function, and floating-point checks of the Dirichlet series
//! `sum delta(n)/n^s = zeta(s-1) F(s-1)` and its corollaries.

pub mod cli;
pub mod convolution;
pub mod error;
pub mod factor;
pub mod ladditive;
pub mod mangoldt;
pub mod rational;
pub mod series;

pub use convolution::{
    convolve_at, dirichlet_convolve, dirichlet_inverse, eval_at, tabulate, Builtin, FunctionExpr, TabulatedFunction,
};
pub use error::{Error, Result};
pub use factor::{
    build_sieve, factorize, factorize_rational, primes_up_to, Factorization, PrimePower, SieveTable,
    SignedFactorization,
};
pub use ladditive::{LAdditiveFunction, PrimeRule};
pub use mangoldt::MangoldtOf;
pub use rational::ExactRational;
