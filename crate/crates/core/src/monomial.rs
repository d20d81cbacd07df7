//! Monomial-ideal arithmetic in `k[X_1..X_n]`, enough to compute Ratliff-Rush
//! closures of m-primary monomial ideals via colon chains.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::policy::{CertStatus, StabilizationPolicy};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("exponent vector has arity {got}, expected {expected}")]
    BadArity { expected: usize, got: usize },
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("ideal is not primary to the maximal ideal")]
    NotMPrimary,
    #[error("exponent entry exceeded the configured limit {limit}")]
    ExponentLimit { limit: u32 },
}

/// An ideal generated by monomials, stored as its unique minimal
/// (divisibility-antichain) generating set, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort();
    gens.dedup();
    let keep: Vec<Vec<u32>> = gens
        .iter()
        .filter(|g| !gens.iter().any(|h| h != *g && divides(h, g)))
        .cloned()
        .collect();
    keep
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Vec<u32>>) -> Result<MonomialIdeal, MonomialError> {
        if gens.is_empty() {
            return Err(MonomialError::EmptyGenerators);
        }
        for g in &gens {
            if g.len() != nvars {
                return Err(MonomialError::BadArity { expected: nvars, got: g.len() });
            }
        }
        Ok(MonomialIdeal { nvars, gens: minimalize(gens) })
    }

    pub fn unit(nvars: usize) -> MonomialIdeal {
        MonomialIdeal { nvars, gens: vec![vec![0; nvars]] }
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].iter().all(|&e| e == 0)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn max_entry(&self) -> u32 {
        self.gens.iter().flatten().copied().max().unwrap_or(0)
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<(), MonomialError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(MonomialError::BadArity { expected: self.nvars, got: other.nvars })
        }
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.same_ring(other)?;
        let sums: Vec<Vec<u32>> = self
            .gens
            .iter()
            .flat_map(|a| {
                other
                    .gens
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        Ok(MonomialIdeal { nvars: self.nvars, gens: minimalize(sums) })
    }

    /// `self^n` by repeated squaring, minimalizing at every step.
    pub fn power(&self, n: u32) -> MonomialIdeal {
        let mut result = MonomialIdeal::unit(self.nvars);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.product(&base).expect("same ring");
            }
            n >>= 1;
            if n > 0 {
                base = base.product(&base).expect("same ring");
            }
        }
        result
    }

    /// `(self : x^a)` for a single monomial: generators `max(h − a, 0)`.
    fn colon_monomial(&self, a: &[u32]) -> MonomialIdeal {
        let gens: Vec<Vec<u32>> = self
            .gens
            .iter()
            .map(|h| h.iter().zip(a).map(|(x, y)| x.saturating_sub(*y)).collect())
            .collect();
        MonomialIdeal { nvars: self.nvars, gens: minimalize(gens) }
    }

    /// Intersection via the componentwise-max lattice on generator pairs.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.same_ring(other)?;
        let joins: Vec<Vec<u32>> = self
            .gens
            .iter()
            .flat_map(|a| {
                other
                    .gens
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| *x.max(y)).collect())
            })
            .collect();
        Ok(MonomialIdeal { nvars: self.nvars, gens: minimalize(joins) })
    }

    /// `(self : other) = ∩_g (self : g)` over the generators of `other`.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal, MonomialError> {
        self.same_ring(other)?;
        let mut acc: Option<MonomialIdeal> = None;
        for g in &other.gens {
            let part = self.colon_monomial(g);
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part)?,
            });
        }
        Ok(acc.expect("antichain is nonempty"))
    }

    pub fn contains_monomial(&self, m: &[u32]) -> Result<bool, MonomialError> {
        if m.len() != self.nvars {
            return Err(MonomialError::BadArity { expected: self.nvars, got: m.len() });
        }
        Ok(self.gens.iter().any(|g| divides(g, m)))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool, MonomialError> {
        self.same_ring(other)?;
        Ok(other.gens.iter().all(|g| self.gens.iter().any(|h| divides(h, g))))
    }

    /// True iff every variable has a pure power among the generators.
    pub fn is_primary_to_max(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.gens
                .iter()
                .any(|g| g.iter().enumerate().all(|(j, &e)| j == i || e == 0))
        })
    }

    pub fn min_total_degree(&self) -> u32 {
        self.gens
            .iter()
            .map(|g| g.iter().sum::<u32>())
            .min()
            .unwrap_or(0)
    }
}

/// Ratliff-Rush closure of `I^n` as the observed stable value of the chain
/// `Q_m = (I^{n+m} : I^m)`.
pub fn rr_closure(
    ideal: &MonomialIdeal,
    n: u32,
    policy: &StabilizationPolicy,
) -> Result<(MonomialIdeal, CertStatus), MonomialError> {
    if !ideal.is_primary_to_max() {
        return Err(MonomialError::NotMPrimary);
    }
    assert!(n >= 1, "power index must be positive");

    let mut powers: Vec<MonomialIdeal> = vec![MonomialIdeal::unit(ideal.nvars), ideal.clone()];
    let power = |k: u32, powers: &mut Vec<MonomialIdeal>| -> Result<MonomialIdeal, MonomialError> {
        while powers.len() <= k as usize {
            let next = powers.last().unwrap().product(ideal)?;
            if next.max_entry() > policy.exponent_limit {
                return Err(MonomialError::ExponentLimit { limit: policy.exponent_limit });
            }
            powers.push(next);
        }
        Ok(powers[k as usize].clone())
    };

    let k = policy.consecutive.max(1) as usize;
    let mut chain: Vec<MonomialIdeal> = Vec::new();
    for m in 1..=policy.chain_cap {
        let q = power(n + m, &mut powers)?.colon(&power(m, &mut powers)?)?;
        chain.push(q);
        if chain.len() >= k {
            let start = chain.len() - k;
            if chain[start..].iter().all(|q| *q == chain[start]) {
                let m0 = (start + 1) as u32;
                let q2 = power(n + 2 * m0, &mut powers)?.colon(&power(2 * m0, &mut powers)?)?;
                if q2 == chain[start] {
                    return Ok((chain[start].clone(), CertStatus::Stable));
                }
            }
        }
    }
    Ok((chain.pop().expect("chain_cap >= 1"), CertStatus::CapReached))
}
