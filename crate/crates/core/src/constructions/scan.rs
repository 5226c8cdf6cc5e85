//! Which `q ≡ 7 mod 24` up to a bound fail the eigenvalue-order condition.

use alloc::vec::Vec;

use super::thm12::check_thm12_conditions;
use super::ConstructionError;
use crate::ff::{is_prime, prime_power};

/// The published list of failures below 10000. It includes `343 = 7³`,
/// which only a scan over prime powers can produce.
pub const REFERENCE_FAILING_LIST: [u64; 20] = [
    199, 343, 919, 1039, 1063, 2239, 3079, 3919, 4423, 4759, 4783, 5167, 6967, 7039, 7759, 7879, 8287, 8887,
    9511, 9679,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeScan {
    pub bound: u64,
    /// Primes `p ≤ bound` with `p ≡ 1 mod 3` and `p ≡ 7 mod 8`.
    pub primes: Vec<u64>,
    pub failing_primes: Vec<u64>,
    /// Same scan over prime powers.
    pub prime_powers: Vec<u64>,
    pub failing_prime_powers: Vec<u64>,
}

impl PrimeScan {
    /// Non-prime entries of the prime-power failing list.
    pub fn composite_failures(&self) -> Vec<u64> {
        self.failing_prime_powers.iter().copied().filter(|&q| !is_prime(q)).collect()
    }

    /// The published list restricted to this bound.
    pub fn reference_list(&self) -> Vec<u64> {
        REFERENCE_FAILING_LIST.iter().copied().filter(|&q| q <= self.bound).collect()
    }
}

pub fn scan_primes(bound: u64) -> Result<PrimeScan, ConstructionError> {
    let mut scan = PrimeScan {
        bound,
        primes: Vec::new(),
        failing_primes: Vec::new(),
        prime_powers: Vec::new(),
        failing_prime_powers: Vec::new(),
    };
    for q in (7..=bound).step_by(24) {
        if prime_power(q).is_none() {
            continue;
        }
        let fails = !check_thm12_conditions(q)?.order_condition;
        scan.prime_powers.push(q);
        if fails {
            scan.failing_prime_powers.push(q);
        }
        if is_prime(q) {
            scan.primes.push(q);
            if fails {
                scan.failing_primes.push(q);
            }
        }
    }
    Ok(scan)
}
