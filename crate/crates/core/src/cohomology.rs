//! Dimension-one graded local cohomology length tables and the degree-zero
//! Bockstein bookkeeping.
//!
//! All lengths are exponent counts in subquotients of the ring: the degree-n
//! component of `H^0(L)` is `̃I^{n+1}/I^{n+1}`, the torsion of the associated
//! graded ring is cut out by intersecting with `I^n`, and `H^1(G)` lengths
//! come from the degreewise difference formula
//! `ℓ(H^0(G)_n) − ℓ(H^1(G)_n) = H(n) − e0`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::filtration::FiltrationData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("negative length at degree {degree} in table {table}; inconsistent filtration data")]
    NegativeLength { table: &'static str, degree: i64 },
}

/// Degreewise lengths over a finite window, with closed-form tails: every
/// table vanishes above the window, `h1G` and `bh1` are the constant `e0`
/// below degree zero, and everything else vanishes there too.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTable {
    pub lo: i64,
    pub hi: i64,
    pub h0l: Vec<u64>,
    pub h0g: Vec<u64>,
    pub h0l1: Vec<u64>,
    pub h1g: Vec<u64>,
    pub ker_b0: Vec<u64>,
    pub im_b0: Vec<u64>,
    pub bh0: Vec<u64>,
    pub bh1: Vec<u64>,
    pub e0: u64,
    pub bh0_total: u64,
}

impl CohomologyTable {
    fn idx(&self, n: i64) -> Option<usize> {
        (self.lo..=self.hi).contains(&n).then(|| (n - self.lo) as usize)
    }

    pub fn at(&self, table: &[u64], n: i64) -> u64 {
        self.idx(n).map(|i| table[i]).unwrap_or(0)
    }
}

/// `ℓ(H^0(L)_n) = ℓ(̃I^{n+1}/I^{n+1})`; supported on `[0, amp]`.
pub fn h0l_at(fd: &FiltrationData, n: i64) -> u64 {
    if n < 0 || n >= fd.rr.amp as i64 + 1 {
        return 0;
    }
    let p = n as u32 + 1;
    fd.rr
        .closure(&fd.cache, p)
        .quotient_length(&fd.cache.power(p))
        .expect("I^{n+1} ⊆ its closure")
}

/// `ℓ(H^0(G)_n) = ℓ((̃I^{n+1} ∩ I^n)/I^{n+1})`.
pub fn h0g_at(fd: &FiltrationData, n: i64) -> u64 {
    if n < 0 || n >= fd.rr.amp as i64 + 1 {
        return 0;
    }
    let p = n as u32 + 1;
    let numerator = fd
        .rr
        .closure(&fd.cache, p)
        .intersect(&fd.cache.power(n as u32))
        .expect("same semigroup");
    numerator
        .quotient_length(&fd.cache.power(p))
        .expect("I^{n+1} ⊆ ̃I^{n+1} ∩ I^n")
}

/// `ℓ(H^0(L1)_n) = ℓ((̃I^{n+1} ∩ I^{n−1})/I^{n+1})`, with `I^{−1} = A`.
pub fn h0l1_at(fd: &FiltrationData, n: i64) -> u64 {
    if n < 0 || n >= fd.rr.amp as i64 + 2 {
        return 0;
    }
    let p = n as u32 + 1;
    let lower = if n == 0 { 0 } else { n as u32 - 1 };
    let numerator = fd
        .rr
        .closure(&fd.cache, p)
        .intersect(&fd.cache.power(lower))
        .expect("same semigroup");
    numerator
        .quotient_length(&fd.cache.power(p))
        .expect("I^{n+1} ⊆ numerator")
}

/// `ℓ(H^1(G)_n) = ℓ(H^0(G)_n) + e0 − H(n)`, with the constant tail `e0` in
/// negative degrees.
pub fn h1g_at(fd: &FiltrationData, n: i64) -> Result<u64, CohomologyError> {
    let value = h0g_at(fd, n) as i64 + fd.hilbert.e[0] - fd.hilbert.value(n) as i64;
    u64::try_from(value).map_err(|_| CohomologyError::NegativeLength { table: "h1G", degree: n })
}

/// Assembles the full table over the window `[−5, max(N, amp) + 3]`.
pub fn bockstein_table(fd: &FiltrationData) -> Result<CohomologyTable, CohomologyError> {
    let lo = -5i64;
    let hi = (fd.hilbert.stabilization.max(fd.rr.amp) as i64) + 3;
    let len = (hi - lo + 1) as usize;
    let mut t = CohomologyTable {
        lo,
        hi,
        h0l: vec![0; len],
        h0g: vec![0; len],
        h0l1: vec![0; len],
        h1g: vec![0; len],
        ker_b0: vec![0; len],
        im_b0: vec![0; len],
        bh0: vec![0; len],
        bh1: vec![0; len],
        e0: fd.hilbert.e0(),
        bh0_total: 0,
    };

    let sub = |a: u64, b: u64, table: &'static str, n: i64| {
        a.checked_sub(b)
            .ok_or(CohomologyError::NegativeLength { table, degree: n })
    };

    for i in 0..len {
        let n = lo + i as i64;
        t.h0l[i] = h0l_at(fd, n);
        t.h0g[i] = h0g_at(fd, n);
        t.h0l1[i] = h0l1_at(fd, n);
        t.h1g[i] = h1g_at(fd, n)?;
        t.ker_b0[i] = sub(t.h0l1[i], t.h0g[i], "kerB0", n)?;
        t.im_b0[i] = sub(h0g_at(fd, n - 1), t.ker_b0[i], "imB0", n)?;
        t.bh0[i] = t.ker_b0[i];
        t.bh1[i] = sub(t.h1g[i], t.im_b0[i], "bh1", n)?;
    }
    t.bh0_total = t.ker_b0.iter().sum();
    Ok(t)
}

/// Degreewise vanishing criterion for `BH^0`: the closure of every power is
/// trapped one step down, `̃I^{j+1} ⊆ I^j` for all `j ≥ 1` (degrees beyond
/// the amplitude hold automatically).
pub fn bh0_vanishes(fd: &FiltrationData) -> bool {
    (1..=fd.rr.amp + 1).all(|j| {
        fd.cache
            .power(j)
            .contains_ideal(&fd.rr.closure(&fd.cache, j + 1))
            .expect("same semigroup")
    })
}

/// Depth of the associated graded ring, the stable depth `ξ` and the
/// amplitude of the Ratliff-Rush discrepancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSummary {
    pub depth: u32,
    pub xi: u32,
    pub amp: u32,
}

pub fn depth_xi_amp(fd: &FiltrationData) -> DepthSummary {
    DepthSummary {
        depth: if fd.rr.amp == 0 { 1 } else { 0 },
        // In dimension one the low cohomology of L has finite length and no
        // negative degrees, so the stable depth is the dimension.
        xi: 1,
        amp: fd.rr.amp,
    }
}

/// The position of the first nonvanishing Bockstein cohomology module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BocksteinPattern {
    pub dim: u32,
    pub first_nonzero: u32,
    /// `BH^i = 0` is known for every `i` below `first_nonzero`.
    pub known_zero_below: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("pattern does not certify vanishing below its first nonzero index")]
    UnknownPrefix,
}

/// Adjoining a variable shifts the nonvanishing index up by one; `nvars`
/// applications shift it by `nvars`.
pub fn lift_pattern(p: BocksteinPattern, nvars: u32) -> Result<BocksteinPattern, LiftError> {
    if !p.known_zero_below {
        return Err(LiftError::UnknownPrefix);
    }
    Ok(BocksteinPattern {
        dim: p.dim + nvars,
        first_nonzero: p.first_nonzero + nvars,
        known_zero_below: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::FiltrationData;
    use crate::policy::StabilizationPolicy;
    use crate::semigroup::{NumericalSemigroup, SemigroupIdeal};

    fn analyze(gens: &[u64], exps: &[u64]) -> FiltrationData {
        let sg = NumericalSemigroup::from_generators(gens).unwrap();
        let ideal = SemigroupIdeal::from_exponents(sg, exps).unwrap();
        FiltrationData::analyze(ideal, &StabilizationPolicy::default()).unwrap()
    }

    #[test]
    fn principal_tables_vanish() {
        let fd = analyze(&[5, 6], &[5]);
        for n in -3..8 {
            assert_eq!(h0l_at(&fd, n), 0);
            assert_eq!(h0g_at(&fd, n), 0);
            assert_eq!(h0l1_at(&fd, n), 0);
        }
        // h1G: 5 below degree zero, 0 from degree zero on.
        assert_eq!(h1g_at(&fd, -1).unwrap(), 5);
        assert_eq!(h1g_at(&fd, 0).unwrap(), 0);
        let t = bockstein_table(&fd).unwrap();
        assert_eq!(t.bh0_total, 0);
        assert_eq!(t.ker_b0.iter().sum::<u64>(), 0);
        assert_eq!(t.im_b0.iter().sum::<u64>(), 0);
        assert_eq!(t.bh1, t.h1g);
    }

    #[test]
    fn example_ideal_has_nonzero_bh0() {
        let fd = analyze(&[5, 6], &[10, 11]);
        assert!(h0l_at(&fd, 1) >= 1);
        assert!(h0l1_at(&fd, 1) > h0g_at(&fd, 1));
        let t = bockstein_table(&fd).unwrap();
        assert!(t.bh0_total >= 1);
        assert!(!bh0_vanishes(&fd));
        assert_eq!(depth_xi_amp(&fd).depth, 0);
    }

    #[test]
    fn maximal_ideal_is_clean() {
        let fd = analyze(&[5, 6], &[5, 6]);
        for n in 0..7 {
            assert_eq!(h0l_at(&fd, n), 0);
            assert_eq!(h0g_at(&fd, n), 0);
        }
        // Frozen from e0 − H: (4, 3, 2, 1, 0).
        let h1: Vec<u64> = (0..5).map(|n| h1g_at(&fd, n).unwrap()).collect();
        assert_eq!(h1, vec![4, 3, 2, 1, 0]);
        let t = bockstein_table(&fd).unwrap();
        assert_eq!(t.bh0_total, 0);
        assert_eq!(t.bh1, t.h1g);
        assert!(bh0_vanishes(&fd));
        let d = depth_xi_amp(&fd);
        assert_eq!((d.depth, d.amp), (1, 0));
    }

    #[test]
    fn two_three_h1g() {
        let fd = analyze(&[2, 3], &[2, 3]);
        assert_eq!(h1g_at(&fd, 0).unwrap(), 1);
        assert_eq!(h1g_at(&fd, 1).unwrap(), 0);
        assert_eq!(h1g_at(&fd, 2).unwrap(), 0);
    }

    #[test]
    fn lift_examples() {
        let base = BocksteinPattern { dim: 1, first_nonzero: 0, known_zero_below: true };
        let one = lift_pattern(base, 1).unwrap();
        assert_eq!((one.dim, one.first_nonzero), (2, 1));
        assert_eq!(lift_pattern(base, 0).unwrap(), base);
        let three = lift_pattern(base, 3).unwrap();
        assert_eq!((three.dim, three.first_nonzero), (4, 3));
        // Composition.
        assert_eq!(
            lift_pattern(lift_pattern(base, 2).unwrap(), 3).unwrap(),
            lift_pattern(base, 5).unwrap()
        );
        let unknown = BocksteinPattern { dim: 1, first_nonzero: 1, known_zero_below: false };
        assert_eq!(lift_pattern(unknown, 1).unwrap_err(), LiftError::UnknownPrefix);
    }
}
