//! Exact verification of convolution identities on `[1, N]`.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{tabulate_corrupted, Builtin, FunctionExpr};
use crate::error::{invalid, Error, Result};
use crate::factor::build_sieve;
use crate::rational::{serde_fraction, ExactRational};

/// Seed used for identities involving random functions unless one is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// One concrete equation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityInstance {
    pub label: String,
    pub lhs: FunctionExpr,
    pub rhs: FunctionExpr,
}

impl IdentityInstance {
    pub fn new(label: impl Into<String>, lhs: FunctionExpr, rhs: FunctionExpr) -> Self {
        IdentityInstance { label: label.into(), lhs, rhs }
    }
}

/// A named identity, possibly instantiated for several choices of its free
/// functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    /// Human-readable statement of the identity.
    pub statement: String,
    pub instances: Vec<IdentityInstance>,
}

/// A deliberate fault: the tabulated values of `builtin` are off by one at
/// `n`. Used to confirm that verification actually detects errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corruption {
    pub builtin: Builtin,
    pub n: u64,
}

impl Corruption {
    /// Parses `<builtin>@<n>`, e.g. `tau@12`.
    pub fn parse(src: &str) -> Result<Self> {
        let (name, n) =
            src.rsplit_once('@').ok_or_else(|| Error::Parse(format!("expected <builtin>@<n>, got '{src}'")))?;
        let n: u64 = n.parse().ok().filter(|&n| n >= 1).ok_or_else(|| Error::Parse(format!("bad index in '{src}'")))?;
        Ok(Corruption { builtin: Builtin::from_name(name)?, n })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub instance: String,
    pub n: u64,
    #[serde(with = "serde_fraction")]
    pub lhs: ExactRational,
    #[serde(with = "serde_fraction")]
    pub rhs: ExactRational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    /// Upper end of the checked range `[1, range]`.
    pub range: u64,
    pub holds: bool,
    pub instances: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    pub elapsed_secs: f64,
}

/// Every registered identity: the convolution presets followed by the
/// von Mangoldt presets. `seed` feeds identities over random functions.
pub fn catalog(seed: u64) -> Vec<Identity> {
    let mut all = super::presets::identities(seed);
    all.extend(crate::mangoldt::presets::identities());
    all
}

pub fn find_identity(name: &str, seed: u64) -> Result<Identity> {
    catalog(seed)
        .into_iter()
        .find(|id| id.name == name)
        .ok_or_else(|| Error::UnknownName(format!("no identity named '{name}'")))
}

pub fn verify_identity(name: &str, limit: usize) -> Result<VerificationReport> {
    verify_identity_seeded(name, limit, DEFAULT_SEED)
}

pub fn verify_identity_seeded(name: &str, limit: usize, seed: u64) -> Result<VerificationReport> {
    let id = find_identity(name, seed)?;
    verify_instances(&id.name, &id.instances, limit)
}

/// Verifies every catalog identity, in catalog order.
pub fn verify_all(limit: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    verify_all_corrupted(limit, seed, None)
}

pub fn verify_all_corrupted(
    limit: usize,
    seed: u64,
    corruption: Option<&Corruption>,
) -> Result<Vec<VerificationReport>> {
    catalog(seed).par_iter().map(|id| verify_instances_corrupted(&id.name, &id.instances, limit, corruption)).collect()
}

/// Checks `lhs = rhs` exactly on `[1, limit]` for each instance; stops at the
/// first instance that fails and reports its smallest failing `n`.
pub fn verify_instances(name: &str, instances: &[IdentityInstance], limit: usize) -> Result<VerificationReport> {
    verify_instances_corrupted(name, instances, limit, None)
}

pub fn verify_instances_corrupted(
    name: &str,
    instances: &[IdentityInstance],
    limit: usize,
    corruption: Option<&Corruption>,
) -> Result<VerificationReport> {
    if limit < 1 {
        return Err(invalid("verification range must be at least 1"));
    }
    let start = Instant::now();
    let sieve = build_sieve(limit.max(2))?;
    let mut mismatch = None;
    for inst in instances {
        let (lhs, rhs) = rayon::join(
            || tabulate_corrupted(&inst.lhs, limit, &sieve, corruption),
            || tabulate_corrupted(&inst.rhs, limit, &sieve, corruption),
        );
        let (lhs, rhs) = (lhs?, rhs?);
        let first = lhs.values().par_iter().zip(rhs.values().par_iter()).position_first(|(a, b)| a != b);
        if let Some(i) = first {
            mismatch = Some(Mismatch {
                instance: inst.label.clone(),
                n: i as u64 + 1,
                lhs: lhs.values()[i].clone(),
                rhs: rhs.values()[i].clone(),
            });
            break;
        }
    }
    Ok(VerificationReport {
        identity: name.to_string(),
        range: limit as u64,
        holds: mismatch.is_none(),
        instances: instances.len(),
        mismatch,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}
