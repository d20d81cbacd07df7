//! Stabilization policy shared by the Ratliff-Rush chains of both backends.

use serde::{Deserialize, Serialize};

/// How the increasing colon chain `Q_m = (I^{n+m} : I^m)` is declared stable.
///
/// Stability is observed, not proven: the chain must repeat for `consecutive`
/// indices in a row and the first repeated value must also equal `Q_{2m}`
/// (doubling check). Anything that hits `chain_cap` first is reported as
/// `CapReached` and never treated as a closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizationPolicy {
    /// Number of consecutive equal chain values required (default 3).
    pub consecutive: u32,
    /// Largest chain index `m` tried before giving up (default 64).
    pub chain_cap: u32,
    /// Largest exponent entry tolerated in the polynomial backend (default 64).
    pub exponent_limit: u32,
    /// Largest power index tabulated by the filtration machinery (default 200).
    pub horizon_cap: u32,
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        StabilizationPolicy {
            consecutive: 3,
            chain_cap: 64,
            exponent_limit: 64,
            horizon_cap: 200,
        }
    }
}

/// Outcome of a chain stabilization attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    /// `consecutive` equal values observed and the doubling check passed.
    Stable,
    /// The chain cap was hit first; the returned value is uncertified.
    CapReached,
}

impl CertStatus {
    pub fn is_stable(self) -> bool {
        matches!(self, CertStatus::Stable)
    }
}
