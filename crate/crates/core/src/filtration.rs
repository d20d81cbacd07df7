//! The ideal-adic filtration machinery over the semigroup backend: memoized
//! powers, Ratliff-Rush closures and their filtration, Hilbert data.

use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::policy::{CertStatus, StabilizationPolicy};
use crate::semigroup::SemigroupIdeal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("operation is undefined for the unit ideal")]
    UnitIdeal,
    #[error("filtration horizon cap {0} exceeded")]
    HorizonExceeded(u32),
    #[error("Hilbert function failed to stabilize within the cap")]
    NoStabilization,
}

/// Thread-safe memo table for the powers `I^n` (with `I^0` the unit ideal).
pub struct PowerCache {
    base: SemigroupIdeal,
    powers: Mutex<Vec<SemigroupIdeal>>,
}

impl PowerCache {
    pub fn new(base: SemigroupIdeal) -> PowerCache {
        let unit = SemigroupIdeal::unit(base.semigroup().clone());
        PowerCache { powers: Mutex::new(vec![unit, base.clone()]), base }
    }

    pub fn base(&self) -> &SemigroupIdeal {
        &self.base
    }

    pub fn power(&self, n: u32) -> SemigroupIdeal {
        let mut powers = self.powers.lock().unwrap();
        while powers.len() <= n as usize {
            let next = powers
                .last()
                .unwrap()
                .product(&self.base)
                .expect("cached powers share the semigroup");
            powers.push(next);
        }
        powers[n as usize].clone()
    }
}

/// True iff `next` is exactly `prev` translated by `v` as an exponent set.
fn translates_by(next: &SemigroupIdeal, prev: &SemigroupIdeal, v: u64) -> bool {
    let conductor = prev.semigroup().conductor();
    // Beyond both thresholds plus a conductor margin the two sets agree
    // automatically, so comparing below this bound decides equality.
    let bound = next.threshold().max(prev.threshold() + v) + conductor + v + 1;
    let shifted: Vec<u64> = prev
        .elements_below(bound - v)
        .into_iter()
        .map(|e| e + v)
        .collect();
    next.elements_below(bound) == shifted
}

/// Stabilized value of the chain `(I^{n+m} : I^m)`.
///
/// The certificate is exact: `t^v` (with `v` the valuation of `I`) is a
/// reduction, so some power satisfies `I^{m+1} = t^v·I^m`, after which every
/// later power is a pure translate and the colon chain is constant. A run
/// that merely repeats for a while can still jump later, so chain equality
/// alone is never trusted. `chain_cap` bounds the search for the reduction
/// index; hitting it yields the last chain value marked `CapReached`.
pub fn ratliff_rush(
    cache: &PowerCache,
    n: u32,
    policy: &StabilizationPolicy,
) -> Result<(SemigroupIdeal, CertStatus), FiltrationError> {
    if cache.base().is_unit() {
        return Err(FiltrationError::UnitIdeal);
    }
    assert!(n >= 1, "power index must be positive");

    let v = cache.base().min_exponent();
    for m in 1..=policy.chain_cap {
        if translates_by(&cache.power(m + 1), &cache.power(m), v) {
            let q = cache
                .power(n + m)
                .colon(&cache.power(m))
                .expect("same semigroup");
            return Ok((q, CertStatus::Stable));
        }
    }
    let q = cache
        .power(n + policy.chain_cap)
        .colon(&cache.power(policy.chain_cap))
        .expect("same semigroup");
    Ok((q, CertStatus::CapReached))
}

/// Hilbert function table, h-polynomial and coefficients `(e0, e1, e2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    /// `table[n] = ℓ(I^n/I^{n+1})` for `0 ≤ n ≤ N + 10`.
    pub table: Vec<u64>,
    /// Least `N` with `table[n] = e0` for all tabulated `n ≥ N`.
    pub stabilization: u32,
    /// Coefficients of the h-polynomial, constant term first.
    pub h: Vec<i64>,
    /// `(e0, e1, e2)` from the derivatives of the h-polynomial at 1.
    pub e: [i64; 3],
}

const HILBERT_MARGIN: usize = 10;

pub fn hilbert_data(
    cache: &PowerCache,
    policy: &StabilizationPolicy,
) -> Result<HilbertData, FiltrationError> {
    if cache.base().is_unit() {
        return Err(FiltrationError::UnitIdeal);
    }
    // The multiplicity of a monomial ideal is its minimal valuation; reaching
    // that value certifies stabilization in the valuation setting.
    let e0 = cache.base().min_exponent();

    let mut table: Vec<u64> = Vec::new();
    let mut run = 0usize;
    let needed = policy.consecutive.max(1) as usize + HILBERT_MARGIN;
    let stabilization = loop {
        let n = table.len() as u32;
        if n > policy.horizon_cap {
            return Err(FiltrationError::NoStabilization);
        }
        let len = cache
            .power(n)
            .quotient_length(&cache.power(n + 1))
            .expect("I^{n+1} ⊆ I^n");
        table.push(len);
        if len == e0 {
            run += 1;
            if run >= needed {
                break table.len() - run;
            }
        } else {
            run = 0;
        }
    } as u32;

    table.truncate(stabilization as usize + HILBERT_MARGIN + 1);

    // h(z) = (1 − z)·Σ_{n<N} H(n) z^n + e0 z^N.
    let n_stab = stabilization as usize;
    let mut h = vec![0i64; n_stab + 1];
    for i in 0..=n_stab {
        let curr = if i < n_stab { table[i] as i64 } else { e0 as i64 };
        let prev = if i == 0 { 0 } else { table[i - 1] as i64 };
        h[i] = curr - prev;
    }
    while h.len() > 1 && *h.last().unwrap() == 0 {
        h.pop();
    }

    let e1: i64 = h.iter().enumerate().map(|(i, &c)| i as i64 * c).sum();
    let e2: i64 = h
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as i64) * (i as i64 - 1) / 2 * c)
        .sum();
    Ok(HilbertData {
        table,
        stabilization,
        h,
        e: [e0 as i64, e1, e2],
    })
}

impl HilbertData {
    pub fn e0(&self) -> u64 {
        self.e[0] as u64
    }

    /// `H(n)` with the constant tail, zero in negative degrees.
    pub fn value(&self, n: i64) -> u64 {
        if n < 0 {
            0
        } else if (n as usize) < self.table.len() {
            self.table[n as usize]
        } else {
            self.e0()
        }
    }

    /// `ℓ(A/I^{n+1}) = Σ_{j≤n} H(j)`.
    pub fn partial_sum(&self, n: i64) -> u64 {
        (0..=n).map(|j| self.value(j)).sum()
    }

    /// Evaluates the h-polynomial at `z = 1`; equals `e0`.
    pub fn h_at_one(&self) -> i64 {
        self.h.iter().sum()
    }
}

/// The Ratliff-Rush filtration table of an ideal.
#[derive(Debug, Clone)]
pub struct RRFiltration {
    /// `table[n-1]` is the closure of `I^n` with its certificate.
    table: Vec<(SemigroupIdeal, CertStatus)>,
    /// Largest `n` with a closure strictly bigger than `I^n` (0 if none).
    pub amp: u32,
    pub horizon: u32,
    /// All per-power chain certificates were `Stable`.
    pub certified: bool,
}

impl RRFiltration {
    /// The tabulated closure of `I^n`; beyond the horizon the filtration has
    /// been observed to agree with the powers, so `I^n` itself is returned.
    pub fn closure(&self, cache: &PowerCache, n: u32) -> SemigroupIdeal {
        if n == 0 {
            SemigroupIdeal::unit(cache.base().semigroup().clone())
        } else if (n as usize) <= self.table.len() {
            self.table[n as usize - 1].0.clone()
        } else {
            cache.power(n)
        }
    }

    pub fn cert(&self, n: u32) -> CertStatus {
        if (1..=self.table.len() as u32).contains(&n) {
            self.table[n as usize - 1].1
        } else {
            CertStatus::Stable
        }
    }

    /// Exponents witnessing the discrepancy of degree `n`, i.e. the finite
    /// set `̃I^n ∖ I^n`.
    pub fn discrepancy(&self, cache: &PowerCache, n: u32) -> Vec<u64> {
        let closure = self.closure(cache, n);
        let power = cache.power(n);
        let bound = closure.threshold().max(power.threshold());
        closure
            .elements_below(bound)
            .into_iter()
            .filter(|&e| !power.contains(e))
            .collect()
    }
}

/// Tabulates the Ratliff-Rush filtration up to a horizon where the Hilbert
/// function has stabilized and the filtration agrees with the powers for
/// `consecutive` indices in a row.
pub fn rr_filtration(
    cache: &PowerCache,
    policy: &StabilizationPolicy,
) -> Result<RRFiltration, FiltrationError> {
    let hilbert = hilbert_data(cache, policy)?;
    rr_filtration_with(cache, policy, &hilbert)
}

pub fn rr_filtration_with(
    cache: &PowerCache,
    policy: &StabilizationPolicy,
    hilbert: &HilbertData,
) -> Result<RRFiltration, FiltrationError> {
    if cache.base().is_unit() {
        return Err(FiltrationError::UnitIdeal);
    }
    let k = policy.consecutive.max(1);
    let mut table: Vec<(SemigroupIdeal, CertStatus)> = Vec::new();
    let mut amp = 0u32;
    let mut clean_run = 0u32;
    let mut n = 0u32;
    loop {
        n += 1;
        if n > policy.horizon_cap {
            return Err(FiltrationError::HorizonExceeded(policy.horizon_cap));
        }
        let (closure, cert) = ratliff_rush(cache, n, policy)?;
        let gap = closure != cache.power(n);
        table.push((closure, cert));
        if gap {
            amp = n;
            clean_run = 0;
        } else {
            clean_run += 1;
        }
        if n >= hilbert.stabilization && clean_run >= k {
            break;
        }
    }
    let certified = table.iter().all(|(_, c)| c.is_stable());
    Ok(RRFiltration { amp, horizon: n, certified, table })
}

/// Everything downstream consumers need about one ideal: the power cache,
/// Hilbert data and the Ratliff-Rush filtration.
pub struct FiltrationData {
    pub cache: PowerCache,
    pub hilbert: HilbertData,
    pub rr: RRFiltration,
}

impl FiltrationData {
    pub fn analyze(
        ideal: SemigroupIdeal,
        policy: &StabilizationPolicy,
    ) -> Result<FiltrationData, FiltrationError> {
        let cache = PowerCache::new(ideal);
        let hilbert = hilbert_data(&cache, policy)?;
        let rr = rr_filtration_with(&cache, policy, &hilbert)?;
        Ok(FiltrationData { cache, hilbert, rr })
    }
}

/// Hilbert data of `I^t` treated as a single ideal (Veronese transport).
pub fn hilbert_of_power(
    cache: &PowerCache,
    t: u32,
    policy: &StabilizationPolicy,
) -> Result<HilbertData, FiltrationError> {
    assert!(t >= 1);
    let power_cache = PowerCache::new(cache.power(t));
    hilbert_data(&power_cache, policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{NumericalSemigroup, SemigroupIdeal};

    fn setup(gens: &[u64], exps: &[u64]) -> PowerCache {
        let sg = NumericalSemigroup::from_generators(gens).unwrap();
        PowerCache::new(SemigroupIdeal::from_exponents(sg, exps).unwrap())
    }

    #[test]
    fn power_cache_basics() {
        let cache = setup(&[5, 6], &[10, 11]);
        assert!(cache.power(0).is_unit());
        assert_eq!(cache.power(1), *cache.base());
        assert_eq!(cache.power(2).minimal_generators(), vec![20, 21, 22]);
        let ab = cache.power(2).product(&cache.power(3)).unwrap();
        assert_eq!(ab, cache.power(5));
    }

    #[test]
    fn rr_principal_is_closed() {
        let cache = setup(&[5, 6], &[5]);
        let policy = StabilizationPolicy::default();
        for n in 1..=4 {
            let (cl, cert) = ratliff_rush(&cache, n, &policy).unwrap();
            assert_eq!(cl, cache.power(n));
            assert!(cert.is_stable());
        }
    }

    #[test]
    fn rr_example_contains_24() {
        let cache = setup(&[5, 6], &[10, 11]);
        let (cl, cert) = ratliff_rush(&cache, 2, &StabilizationPolicy::default()).unwrap();
        assert!(cl.contains(24));
        assert!(!cache.power(2).contains(24));
        assert!(cert.is_stable());
    }

    #[test]
    fn rr_maximal_ideal_closed() {
        let cache = setup(&[5, 6], &[5, 6]);
        let (cl, cert) = ratliff_rush(&cache, 1, &StabilizationPolicy::default()).unwrap();
        assert_eq!(cl, cache.power(1));
        assert!(cert.is_stable());
    }

    #[test]
    fn rr_rejects_unit() {
        let cache = setup(&[5, 6], &[0]);
        assert_eq!(
            ratliff_rush(&cache, 1, &StabilizationPolicy::default()).unwrap_err(),
            FiltrationError::UnitIdeal
        );
    }

    #[test]
    fn filtration_amp_values() {
        let policy = StabilizationPolicy::default();
        let principal = rr_filtration(&setup(&[5, 6], &[5]), &policy).unwrap();
        assert_eq!(principal.amp, 0);
        assert!(principal.certified);

        let example = rr_filtration(&setup(&[5, 6], &[10, 11]), &policy).unwrap();
        assert!(example.amp >= 2);

        let maximal = rr_filtration(&setup(&[5, 6], &[5, 6]), &policy).unwrap();
        assert_eq!(maximal.amp, 0);
    }

    #[test]
    fn hilbert_small_maximal_ideal() {
        // Frozen from the gap-counting oracle: H = (1, 2, 2, ...).
        let data = hilbert_data(&setup(&[2, 3], &[2, 3]), &StabilizationPolicy::default()).unwrap();
        assert_eq!(&data.table[..3], &[1, 2, 2]);
        assert_eq!(data.h, vec![1, 1]);
        assert_eq!(data.e, [2, 1, 0]);
    }

    #[test]
    fn hilbert_five_six_maximal_ideal() {
        // Frozen from the gap-counting oracle: H = (1, 2, 3, 4, 5, 5, ...).
        let data = hilbert_data(&setup(&[5, 6], &[5, 6]), &StabilizationPolicy::default()).unwrap();
        assert_eq!(&data.table[..6], &[1, 2, 3, 4, 5, 5]);
        assert_eq!(data.h, vec![1, 1, 1, 1, 1]);
        assert_eq!(data.e, [5, 10, 10]);
    }

    #[test]
    fn hilbert_principal() {
        let data = hilbert_data(&setup(&[5, 6], &[5]), &StabilizationPolicy::default()).unwrap();
        assert!(data.table.iter().all(|&v| v == 5));
        assert_eq!(data.h, vec![5]);
        assert_eq!(data.e, [5, 0, 0]);
        assert_eq!(data.stabilization, 0);
    }

    #[test]
    fn hilbert_of_power_scales_multiplicity() {
        let cache = setup(&[5, 6], &[10, 11]);
        let policy = StabilizationPolicy::default();
        let base = hilbert_data(&cache, &policy).unwrap();
        let t1 = hilbert_of_power(&cache, 1, &policy).unwrap();
        assert_eq!(base, t1);
        let t3 = hilbert_of_power(&cache, 3, &policy).unwrap();
        assert_eq!(t3.e[0], 3 * base.e[0]);
        assert_eq!(t3.e[0], 30);
    }
}
