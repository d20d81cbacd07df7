//! Brute-force reference implementations used by tests and for generating
//! frozen expected values. Nothing here shares code with the engine paths it
//! checks: semigroup membership is a fresh reachability sieve, ideal powers
//! are literal n-fold generator sums, and Ratliff-Rush closures are literal
//! colon-chain unions with no early termination.

use itertools::Itertools;

/// Explicit caps carried by oracle results.
#[derive(Debug, Clone, Copy)]
pub struct OracleBound {
    /// Exponents are enumerated in `[0, exponent_cap)`.
    pub exponent_cap: u64,
    /// Colon chains run to exactly this index.
    pub chain_cap: u32,
    /// Box side used when enumerating monomials in the polynomial backend.
    pub degree_cap: u32,
}

/// Independent semigroup membership: coin-problem reachability up to `x`.
pub fn sg_member(gens: &[u64], x: u64) -> bool {
    let n = x as usize;
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for v in 1..=n {
        reach[v] = gens.iter().any(|&g| v >= g as usize && reach[v - g as usize]);
    }
    reach[n]
}

/// Exponent set of the ideal generated by `ideal_gens`, as a bitmap below
/// `cap`: `x` is a member iff `x − g` is a semigroup member for some `g`.
fn ideal_members(sg_gens: &[u64], ideal_gens: &[u64], cap: u64) -> Vec<bool> {
    let cap = cap as usize;
    let mut sg = vec![false; cap];
    if cap > 0 {
        sg[0] = true;
    }
    for v in 1..cap {
        sg[v] = sg_gens.iter().any(|&g| v >= g as usize && sg[v - g as usize]);
    }
    (0..cap)
        .map(|x| {
            ideal_gens
                .iter()
                .any(|&g| x >= g as usize && sg[x - g as usize])
        })
        .collect()
}

/// All distinct values of n-fold sums of the ideal generators (the naive
/// generating exponents of the n-th power); `n = 0` yields `{0}`.
pub fn power_generators(ideal_gens: &[u64], n: u32) -> Vec<u64> {
    let mut sums: Vec<u64> = vec![0];
    for _ in 0..n {
        sums = sums
            .iter()
            .cartesian_product(ideal_gens)
            .map(|(&s, &g)| s + g)
            .sorted()
            .dedup()
            .collect();
    }
    sums
}

/// Largest-gap search by direct sieve; `-1` when there is no gap.
pub fn frobenius_by_sieve(sg_gens: &[u64], bound: u64) -> i64 {
    (0..bound)
        .rev()
        .find(|&x| !sg_member(sg_gens, x))
        .map_or(-1, |x| x as i64)
}

/// Members of the Ratliff-Rush union `∪_{i≤M} (I^{n+i} : I^i)` below `cap`,
/// computed literally with no early termination.
pub fn brute_rr(sg_gens: &[u64], ideal_gens: &[u64], n: u32, bound: &OracleBound) -> Vec<u64> {
    let cap = bound.exponent_cap;
    let mut in_union = vec![false; cap as usize];
    for i in 1..=bound.chain_cap {
        let pow_i = power_generators(ideal_gens, i);
        let high_cap = cap + *pow_i.last().unwrap() + ideal_gens.iter().max().unwrap() * n as u64;
        let high = ideal_members(sg_gens, &power_generators(ideal_gens, n + i), high_cap);
        for x in 0..cap {
            if in_union[x as usize] || !sg_member(sg_gens, x) {
                continue;
            }
            if pow_i.iter().all(|&p| high[(x + p) as usize]) {
                in_union[x as usize] = true;
            }
        }
    }
    (0..cap).filter(|&x| in_union[x as usize]).collect()
}

/// `ℓ(I^n/I^{n+1})` by direct exponent enumeration below a conductor bound.
pub fn brute_hilbert(sg_gens: &[u64], ideal_gens: &[u64], n: u32) -> u64 {
    let min = *ideal_gens.iter().min().unwrap();
    let max_gen = *sg_gens.iter().max().unwrap();
    let min_gen = *sg_gens.iter().min().unwrap();
    let conductor_bound = 2 * max_gen * min_gen + max_gen + 1;
    let cap = (n as u64 + 1) * min + conductor_bound;
    let low = ideal_members(sg_gens, &power_generators(ideal_gens, n), cap);
    let high = ideal_members(sg_gens, &power_generators(ideal_gens, n + 1), cap);
    (0..cap as usize).filter(|&x| low[x] && !high[x]).count() as u64
}

/// `ℓ(A/I^{n+1})` from the same enumeration.
pub fn brute_colength(sg_gens: &[u64], ideal_gens: &[u64], power: u32) -> u64 {
    (0..power).map(|n| brute_hilbert(sg_gens, ideal_gens, n)).sum()
}

/// Degree-n torsion length of the associated graded ring, element-wise:
/// exponents in `I^n ∖ I^{n+1}` that land in the closure of the next power,
/// witnessed by `g + I^m ⊆ I^{n+1+m}` for some `m` up to the chain cap.
pub fn brute_h0g(sg_gens: &[u64], ideal_gens: &[u64], n: u32, bound: &OracleBound) -> u64 {
    let min = *ideal_gens.iter().min().unwrap();
    let max_gen = *sg_gens.iter().max().unwrap();
    let min_gen = *sg_gens.iter().min().unwrap();
    let cap = (n as u64 + 1) * min + 2 * max_gen * min_gen + max_gen + 1;
    let low = ideal_members(sg_gens, &power_generators(ideal_gens, n), cap);
    let high = ideal_members(sg_gens, &power_generators(ideal_gens, n + 1), cap);

    let mut count = 0;
    for g in 0..cap {
        if !(low[g as usize] && !high[g as usize]) {
            continue;
        }
        'm: for m in 1..=bound.chain_cap {
            let pow_m = power_generators(ideal_gens, m);
            let deep_cap = g + pow_m.last().unwrap() + 1;
            let deep = ideal_members(sg_gens, &power_generators(ideal_gens, n + 1 + m), deep_cap);
            if pow_m.iter().all(|&p| deep[(g + p) as usize]) {
                count += 1;
                break 'm;
            }
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Polynomial backend: naive monomial-set arithmetic.
// ---------------------------------------------------------------------------

/// Monomial membership: divisibility by some listed generator.
pub fn poly_member(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

/// Naive n-th power: all n-fold generator sums, deduplicated but not
/// minimalized.
pub fn poly_power_gens(gens: &[Vec<u32>], n: u32) -> Vec<Vec<u32>> {
    let nvars = gens[0].len();
    let mut sums: Vec<Vec<u32>> = vec![vec![0; nvars]];
    for _ in 0..n {
        sums = sums
            .iter()
            .cartesian_product(gens)
            .map(|(s, g)| s.iter().zip(g).map(|(a, b)| a + b).collect())
            .sorted()
            .dedup()
            .collect();
    }
    sums
}

/// Minimal monomials of `(J : I)` found by scanning the exponent box
/// `[0, degree_cap]^nvars`.
pub fn poly_colon_gens(
    j_gens: &[Vec<u32>],
    i_gens: &[Vec<u32>],
    degree_cap: u32,
) -> Vec<Vec<u32>> {
    let nvars = j_gens[0].len();
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut point = vec![0u32; nvars];
    loop {
        let in_colon = i_gens.iter().all(|g| {
            let shifted: Vec<u32> = point.iter().zip(g).map(|(a, b)| a + b).collect();
            poly_member(j_gens, &shifted)
        });
        if in_colon {
            members.push(point.clone());
        }
        // odometer over the box
        let mut k = 0;
        loop {
            if k == nvars {
                let mut minimal: Vec<Vec<u32>> = members
                    .iter()
                    .filter(|m| {
                        !members
                            .iter()
                            .any(|o| *o != **m && o.iter().zip(m.iter()).all(|(a, b)| a <= b))
                    })
                    .cloned()
                    .collect();
                minimal.sort();
                return minimal;
            }
            if point[k] < degree_cap {
                point[k] += 1;
                break;
            }
            point[k] = 0;
            k += 1;
        }
    }
}

/// Generators (not minimalized) of the literal union `∪_{i≤M} (I^{n+i}:I^i)`.
pub fn brute_rr_poly(gens: &[Vec<u32>], n: u32, bound: &OracleBound) -> Vec<Vec<u32>> {
    let mut union: Vec<Vec<u32>> = Vec::new();
    for i in 1..=bound.chain_cap {
        let high = poly_power_gens(gens, n + i);
        let low = poly_power_gens(gens, i);
        let mut colon = poly_colon_gens(&high, &low, bound.degree_cap);
        union.append(&mut colon);
    }
    union.sort();
    union.dedup();
    union
}

/// True iff the two generator lists span the same monomial ideal.
pub fn poly_same_ideal(a: &[Vec<u32>], b: &[Vec<u32>]) -> bool {
    a.iter().all(|g| poly_member(b, g)) && b.iter().all(|g| poly_member(a, g))
}
