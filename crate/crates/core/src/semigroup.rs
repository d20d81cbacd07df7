//! Numerical semigroups and monomial ideals in the associated one-dimensional
//! local domains `k[[t^{a_1}, ..., t^{a_k}]]`.
//!
//! An ideal is stored by its exponent set `E` in the canonical form
//! `E = sporadic ∪ { s ∈ S : s ≥ threshold }` with every sporadic exponent
//! below the threshold and the threshold minimal. Equality, intersection and
//! length computations then reduce to finite set operations.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators have gcd {0} > 1; the semigroup would not be cofinite")]
    NonCoprime(u64),
    #[error("exponent {0} is not a member of the semigroup")]
    ExponentNotInRing(u64),
    #[error("operands live over different semigroups")]
    MixedSemigroups,
    #[error("quotient denominator is not contained in the numerator")]
    NotContained,
}

/// A cofinite additive submonoid of the nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    frobenius: i64,
    conductor: u64,
    gaps: Vec<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens` by sieving membership up to a
    /// bound past the largest possible gap (`2·min·max` suffices; the sieve is
    /// certified by the run of `min(gens)` consecutive members it ends on).
    pub fn from_generators(gens: &[u64]) -> Result<Arc<NumericalSemigroup>, SemigroupError> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        gens.sort_unstable();
        gens.dedup();
        let g = gens.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(SemigroupError::NonCoprime(g));
        }

        let min = gens[0] as usize;
        let max = *gens.last().unwrap() as usize;
        let bound = 2 * min * max + max + 1;
        let mut member = vec![false; bound];
        member[0] = true;
        for x in 1..bound {
            member[x] = gens.iter().any(|&g| x >= g as usize && member[x - g as usize]);
        }
        debug_assert!(member[bound - min..].iter().all(|&m| m), "sieve bound too small");

        let frobenius = (0..bound).rev().find(|&x| !member[x]).map_or(-1, |x| x as i64);
        let gaps: Vec<u64> = (0..bound).filter(|&x| !member[x]).map(|x| x as u64).collect();

        // Keep only the minimal generating system so equal semigroups compare
        // equal structurally.
        let minimal: Vec<u64> = gens
            .iter()
            .copied()
            .filter(|&g| {
                !(1..g).any(|a| member[a as usize] && member[(g - a) as usize])
            })
            .collect();

        Ok(Arc::new(NumericalSemigroup {
            generators: minimal,
            frobenius,
            conductor: (frobenius + 1) as u64,
            gaps,
        }))
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        let x = x as u64;
        x >= self.conductor || self.gaps.binary_search(&x).is_err()
    }

    fn contains_u(&self, x: u64) -> bool {
        x >= self.conductor || self.gaps.binary_search(&x).is_err()
    }

    /// Members of `S` in `[0, bound)`, ascending.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&x| self.contains_u(x)).collect()
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }
}

/// A monomial ideal of the semigroup ring, stored by its exponent set in
/// canonical (sporadic set + minimal threshold) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupIdeal {
    semigroup: Arc<NumericalSemigroup>,
    sporadic: Vec<u64>,
    threshold: u64,
}

impl SemigroupIdeal {
    /// Canonicalizes an exponent set given its members below `bound`; the
    /// caller guarantees the full set is `members ∪ { s ∈ S : s ≥ bound }`
    /// and that the set is closed under adding semigroup elements.
    fn canonical(
        semigroup: Arc<NumericalSemigroup>,
        bound: u64,
        members: &BTreeSet<u64>,
    ) -> SemigroupIdeal {
        // Minimal threshold: one past the largest semigroup member below the
        // bound that is missing from the exponent set.
        let mut threshold = 0;
        for x in (0..bound).rev() {
            if semigroup.contains_u(x) && !members.contains(&x) {
                threshold = x + 1;
                break;
            }
        }
        let sporadic: Vec<u64> = members.iter().copied().filter(|&e| e < threshold).collect();
        SemigroupIdeal { semigroup, sporadic, threshold }
    }

    pub fn unit(semigroup: Arc<NumericalSemigroup>) -> SemigroupIdeal {
        SemigroupIdeal { semigroup, sporadic: Vec::new(), threshold: 0 }
    }

    /// The ideal generated by `exps`, i.e. the exponent set `∪ (e + S)`.
    pub fn from_exponents(
        semigroup: Arc<NumericalSemigroup>,
        exps: &[u64],
    ) -> Result<SemigroupIdeal, SemigroupError> {
        if exps.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        for &e in exps {
            if !semigroup.contains_u(e) {
                return Err(SemigroupError::ExponentNotInRing(e));
            }
        }
        let min = *exps.iter().min().unwrap();
        // Every semigroup member ≥ min + conductor lies in min + S.
        let bound = min + semigroup.conductor();
        let members: BTreeSet<u64> = (0..bound)
            .filter(|&x| {
                exps.iter().any(|&g| x >= g && semigroup.contains_u(x - g))
            })
            .collect();
        Ok(SemigroupIdeal::canonical(semigroup, bound, &members))
    }

    pub fn semigroup(&self) -> &Arc<NumericalSemigroup> {
        &self.semigroup
    }

    pub fn sporadic(&self) -> &[u64] {
        &self.sporadic
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn is_unit(&self) -> bool {
        self.min_exponent() == 0
    }

    pub fn contains(&self, x: u64) -> bool {
        if x >= self.threshold {
            self.semigroup.contains_u(x)
        } else {
            self.sporadic.binary_search(&x).is_ok()
        }
    }

    /// Exponents of the ideal in `[0, bound)`, ascending.
    pub fn elements_below(&self, bound: u64) -> Vec<u64> {
        let mut out: Vec<u64> = self.sporadic.iter().copied().filter(|&e| e < bound).collect();
        for x in self.threshold..bound {
            if self.semigroup.contains_u(x) {
                out.push(x);
            }
        }
        out
    }

    /// Smallest exponent; the valuation of the ideal.
    pub fn min_exponent(&self) -> u64 {
        if let Some(&e) = self.sporadic.first() {
            return e;
        }
        let mut x = self.threshold;
        loop {
            if self.semigroup.contains_u(x) {
                return x;
            }
            x += 1;
        }
    }

    /// The unique minimal generating exponents: members `e` with `e − g`
    /// outside the exponent set for every semigroup generator `g`.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let sg = &self.semigroup;
        let bound = self.threshold + sg.conductor() + sg.multiplicity() + 1;
        self.elements_below(bound)
            .into_iter()
            .filter(|&e| {
                sg.generators()
                    .iter()
                    .all(|&g| e < g || !self.contains(e - g))
            })
            .collect()
    }

    fn same_ring(&self, other: &SemigroupIdeal) -> Result<(), SemigroupError> {
        if self.semigroup == other.semigroup {
            Ok(())
        } else {
            Err(SemigroupError::MixedSemigroups)
        }
    }

    pub fn product(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal, SemigroupError> {
        self.same_ring(other)?;
        let a = self.minimal_generators();
        let b = other.minimal_generators();
        let sums: Vec<u64> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| x + y))
            .collect();
        SemigroupIdeal::from_exponents(Arc::clone(&self.semigroup), &sums)
    }

    /// The colon ideal `(self : other)` in the ring.
    pub fn colon(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal, SemigroupError> {
        self.same_ring(other)?;
        let sg = &self.semigroup;
        let gens = other.minimal_generators();
        // Every semigroup member ≥ threshold(self) already lands in self
        // after adding any exponent of other.
        let bound = self.threshold;
        let members: BTreeSet<u64> = (0..bound)
            .filter(|&s| sg.contains_u(s) && gens.iter().all(|&g| self.contains(s + g)))
            .collect();
        Ok(SemigroupIdeal::canonical(Arc::clone(sg), bound, &members))
    }

    pub fn intersect(&self, other: &SemigroupIdeal) -> Result<SemigroupIdeal, SemigroupError> {
        self.same_ring(other)?;
        let bound = self.threshold.max(other.threshold);
        let members: BTreeSet<u64> = self
            .elements_below(bound)
            .into_iter()
            .filter(|&e| other.contains(e))
            .collect();
        Ok(SemigroupIdeal::canonical(
            Arc::clone(&self.semigroup),
            bound,
            &members,
        ))
    }

    /// True iff `other ⊆ self` as exponent sets.
    pub fn contains_ideal(&self, other: &SemigroupIdeal) -> Result<bool, SemigroupError> {
        self.same_ring(other)?;
        // Exponents of `other` at or above threshold(self) are semigroup
        // members, hence automatically in `self`.
        Ok(other
            .elements_below(self.threshold)
            .into_iter()
            .all(|e| self.contains(e)))
    }

    /// `ℓ(self/other)`, requiring `other ⊆ self`.
    pub fn quotient_length(&self, other: &SemigroupIdeal) -> Result<u64, SemigroupError> {
        if !self.contains_ideal(other)? {
            return Err(SemigroupError::NotContained);
        }
        let bound = self.threshold.max(other.threshold);
        Ok(self
            .elements_below(bound)
            .into_iter()
            .filter(|&e| !other.contains(e))
            .count() as u64)
    }

    /// `ℓ(A/self)`.
    pub fn colength(&self) -> u64 {
        SemigroupIdeal::unit(Arc::clone(&self.semigroup))
            .quotient_length(self)
            .expect("every ideal sits inside the unit ideal")
    }

    /// Integral closure: all semigroup members at or above the valuation.
    pub fn integral_closure(&self) -> SemigroupIdeal {
        let v = self.min_exponent();
        SemigroupIdeal::canonical(Arc::clone(&self.semigroup), v, &BTreeSet::new())
    }

    pub fn is_integrally_closed(&self) -> bool {
        *self == self.integral_closure()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(gens: &[u64]) -> Arc<NumericalSemigroup> {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    fn ideal(s: &Arc<NumericalSemigroup>, exps: &[u64]) -> SemigroupIdeal {
        SemigroupIdeal::from_exponents(Arc::clone(s), exps).unwrap()
    }

    #[test]
    fn full_monoid() {
        let s = sg(&[1]);
        assert_eq!(s.frobenius(), -1);
        assert_eq!(s.conductor(), 0);
        assert!(s.gaps().is_empty());
    }

    #[test]
    fn two_three() {
        let s = sg(&[2, 3]);
        assert_eq!(s.frobenius(), 1);
        assert_eq!(s.gaps(), &[1]);
    }

    #[test]
    fn five_six_sieve() {
        // Frozen from the brute sieve oracle over [0, 60).
        let s = sg(&[5, 6]);
        assert_eq!(s.frobenius(), 19);
        assert_eq!(s.gaps().len(), 10);
        assert_eq!(
            s.gaps(),
            &[1, 2, 3, 4, 7, 8, 9, 13, 14, 19]
        );
    }

    #[test]
    fn redundant_generator_dropped() {
        assert_eq!(sg(&[2, 3, 5]), sg(&[2, 3]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            NumericalSemigroup::from_generators(&[]).unwrap_err(),
            SemigroupError::EmptyGenerators
        );
        assert_eq!(
            NumericalSemigroup::from_generators(&[4, 6]).unwrap_err(),
            SemigroupError::NonCoprime(2)
        );
    }

    #[test]
    fn membership() {
        let s = sg(&[5, 6]);
        assert!(s.contains(0));
        assert!(!s.contains(19));
        assert!(s.contains(24));
        assert!(!s.contains(-3));
    }

    #[test]
    fn unit_ideal_from_zero() {
        let s = sg(&[5, 6]);
        let i = ideal(&s, &[0]);
        assert!(i.is_unit());
        assert_eq!(i, SemigroupIdeal::unit(Arc::clone(&s)));
        assert_eq!(i.threshold(), 0);
    }

    #[test]
    fn example_ideal_misses_24() {
        let s = sg(&[5, 6]);
        let i = ideal(&s, &[10, 11]);
        assert!(!i.contains(24));
        assert!(i.contains(10) && i.contains(11));
        assert_eq!(i.colength(), 6);
        // S \ E below the tail: frozen from enumeration.
        let missing: Vec<u64> = s
            .members_below(i.threshold())
            .into_iter()
            .filter(|&x| !i.contains(x))
            .collect();
        assert_eq!(missing, vec![0, 5, 6, 12, 18, 24]);
    }

    #[test]
    fn exponent_not_in_ring() {
        let s = sg(&[5, 6]);
        assert_eq!(
            SemigroupIdeal::from_exponents(Arc::clone(&s), &[7]).unwrap_err(),
            SemigroupError::ExponentNotInRing(7)
        );
    }

    #[test]
    fn product_examples() {
        let s = sg(&[5, 6]);
        let i = ideal(&s, &[10, 11]);
        let unit = SemigroupIdeal::unit(Arc::clone(&s));
        assert_eq!(i.product(&unit).unwrap(), i);
        let sq = i.product(&i).unwrap();
        assert_eq!(sq.minimal_generators(), vec![20, 21, 22]);
        assert_eq!(i.product(&sq).unwrap(), sq.product(&i).unwrap());
    }

    #[test]
    fn mixed_semigroups_rejected() {
        let a = ideal(&sg(&[5, 6]), &[10]);
        let b = ideal(&sg(&[2, 3]), &[2]);
        assert_eq!(a.product(&b).unwrap_err(), SemigroupError::MixedSemigroups);
    }

    #[test]
    fn colon_examples() {
        let s = sg(&[5, 6]);
        let i = ideal(&s, &[10, 11]);
        let unit = SemigroupIdeal::unit(Arc::clone(&s));
        assert_eq!(i.colon(&i).unwrap(), unit);
        assert_eq!(i.colon(&unit).unwrap(), i);
        // t^24 ∈ (I^4 : I^2).
        let i2 = i.product(&i).unwrap();
        let i4 = i2.product(&i2).unwrap();
        assert!(i4.colon(&i2).unwrap().contains(24));
    }

    #[test]
    fn intersect_examples() {
        let s = sg(&[5, 6]);
        let i = ideal(&s, &[10, 11]);
        let unit = SemigroupIdeal::unit(Arc::clone(&s));
        assert_eq!(i.intersect(&i).unwrap(), i);
        assert_eq!(i.intersect(&unit).unwrap(), i);
        // (10 + S) ∩ (11 + S): frozen from the set-intersection oracle.
        let a = ideal(&s, &[10]);
        let b = ideal(&s, &[11]);
        let both = a.intersect(&b).unwrap();
        let expect: Vec<u64> = (0..42)
            .filter(|&x| {
                x >= 10 && s.contains(x as i64 - 10) && x >= 11 && s.contains(x as i64 - 11)
            })
            .collect();
        assert_eq!(both.elements_below(42), expect);
        // Frozen from the oracle: 16, 21, 22 are the first members.
        assert!(both.contains(16) && both.contains(21) && both.contains(22));
        assert!(!both.contains(15) && !both.contains(10) && !both.contains(11));
    }

    #[test]
    fn lengths() {
        let s = sg(&[5, 6]);
        let i = ideal(&s, &[10, 11]);
        assert_eq!(i.quotient_length(&i).unwrap(), 0);
        let m = ideal(&s, &[5, 6]);
        assert_eq!(m.colength(), 1);
        assert_eq!(
            i.quotient_length(&SemigroupIdeal::unit(Arc::clone(&s))).unwrap_err(),
            SemigroupError::NotContained
        );
    }

    #[test]
    fn integral_closure_examples() {
        let s = sg(&[5, 6]);
        let unit = SemigroupIdeal::unit(Arc::clone(&s));
        assert_eq!(unit.integral_closure(), unit);
        let i = ideal(&s, &[10, 11]);
        let cl = i.integral_closure();
        assert!(cl.contains_ideal(&i).unwrap());
        assert!(cl.contains(12));
        assert!(!i.contains(12));
        assert_eq!(cl.integral_closure(), cl);
        assert_eq!(cl.min_exponent(), i.min_exponent());
    }
}
