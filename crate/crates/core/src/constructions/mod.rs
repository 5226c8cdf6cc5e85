//! Concrete groups and generating strings: the two families of 6×6 matrix
//! strings in `SL₃(q) ⋊ ⟨t⟩`, the prime scan for the first family, Coxeter
//! groups of types B and D, and a small permutation example of degree 27.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cstring::CStringError;
use crate::engine::EngineError;
use crate::ff::FieldError;
use crate::linalg::LinalgError;

mod ambient;
mod coxeter;
mod scan;
mod thm12;
mod thm13;

pub use ambient::{sl3_order, Ambient};
pub use coxeter::{coxeter_group, example55_group, CoxeterFamily, CoxeterGroup, Example55, EXAMPLE55_CYCLES};
pub use scan::{scan_primes, PrimeScan, REFERENCE_FAILING_LIST};
pub use thm12::{build_thm12, check_thm12_conditions, ConditionReport, Thm12Constants, Thm12Instance};
pub use thm13::{build_thm13, Thm13Constants, Thm13Instance};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("q = {0} does not satisfy the field conditions")]
    ConditionsFail(u64),
    #[error("p = {0} must be a prime with p ≡ 1 mod 3 and p ≡ 5 mod 8")]
    CongruenceFail(u64),
    #[error("rank {0} is too small (need at least 3)")]
    RankTooSmall(usize),
    #[error("no choice of roots satisfies the matrix identities")]
    NoValidRoots,
    #[error("ambient group order could not be certified")]
    Uncertified,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    CString(#[from] CStringError),
}

/// One machine-checked claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of every checkable claim about a construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub checks: Vec<Check>,
}

impl LemmaReport {
    pub fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
