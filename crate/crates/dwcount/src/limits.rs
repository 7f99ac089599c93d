//! Work budgets guarding the superpolynomial evaluation loops.
//!
//! Two kinds of work are metered separately: terms of the defining
//! character sum (the dominant cost of the exact and floating-point
//! evaluations) and tuples enumerated by the brute-force homomorphism
//! oracle.

use crate::error::{Error, Result};
use crate::seifert::SeifertData;

/// Default cap on summed character-sum terms.
pub const DEFAULT_MAX_TERMS: u64 = 100_000_000;

/// Default cap on enumerated homomorphism tuples.
pub const DEFAULT_MAX_TUPLES: u64 = 10_000_000;

/// Caps on the two work meters. All evaluation entry points take one of
/// these and refuse up front when the estimate exceeds the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WorkBudget {
    pub max_terms: u64,
    pub max_tuples: u64,
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget {
            max_terms: DEFAULT_MAX_TERMS,
            max_tuples: DEFAULT_MAX_TUPLES,
        }
    }
}

impl WorkBudget {
    /// Budget with both caps set to the same value, as configured by the
    /// CLI `--max-work` flag or the `DWCOUNT_MAX_WORK` variable.
    pub fn uniform(max_work: u64) -> Self {
        WorkBudget {
            max_terms: max_work,
            max_tuples: max_work,
        }
    }

    /// Effectively unbounded budget (`--force`).
    pub fn unlimited() -> Self {
        WorkBudget::uniform(u64::MAX)
    }

    pub fn check_terms(&self, estimate: u128) -> Result<()> {
        if estimate > self.max_terms as u128 {
            return Err(Error::WorkLimitExceeded {
                estimate,
                budget: self.max_terms,
            });
        }
        Ok(())
    }

    pub fn check_tuples(&self, estimate: u128) -> Result<()> {
        if estimate > self.max_tuples as u128 {
            return Err(Error::WorkLimitExceeded {
                estimate,
                budget: self.max_tuples,
            });
        }
        Ok(())
    }
}

/// Estimated accumulation work for one invariant table over all classes:
/// (r + 1) * m^6 dense-vector updates.
pub fn estimate_dw_work(manifold: &SeifertData, m: u64) -> u128 {
    let r = manifold.fibers().len() as u128 + 1;
    r.saturating_mul((m as u128).saturating_pow(6))
}

/// Estimated tuple count for the brute-force homomorphism oracle:
/// m^(r+1) candidate assignments.
pub fn estimate_enum_tuples(manifold: &SeifertData, m: u64) -> u128 {
    let r = manifold.fibers().len() as u32;
    (m as u128).saturating_pow(r + 1)
}
