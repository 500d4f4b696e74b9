//! Quadratic Gauss sums and exact eigenvalue profiles.
//!
//! The factorized candidates `sum q^{j^2 + eps x k^2} u^j v^k` act on the
//! base-algebra regular representation (dimension p^2) with eigenvalues
//! `lambda(s,t) = (sum_j q^{j^2+sj})(sum_k q^{eps x k^2+tk})` — products of
//! quadratic Gauss sums. Up to the global factor `lambda(0,0)` these are
//! p-th roots of unity whose multiplicities depend only on the sign and two
//! Legendre symbols; [`eigenvalue_profile`] holds the closed form and
//! [`spectrum_exact`] is the independent rank oracle that can falsify it.

use std::collections::BTreeMap;

use crate::cyclo::CycNum;
use crate::groups::is_prime;
use crate::linalg::Matrix;
use crate::ttp::Element;
use crate::{Error, Result};

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u32) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = a % p as u64;
    let mut e = (p as u64 - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// `sum_{j=0}^{p-1} q^{a j^2 + s j}`, exact in `Q(zeta_p)`.
pub fn gauss_sum(p: u32, a: u32, s: u32) -> Result<CycNum> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    let mut acc = CycNum::zero(p);
    for j in 0..p as i64 {
        let e = (a as i64 * j * j + s as i64 * j).rem_euclid(p as i64);
        acc = acc.add(&CycNum::root_of_unity(p, e))?;
    }
    Ok(acc)
}

/// Multiset of eigenvalues with multiplicities; total must equal the
/// representation dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenProfile {
    /// sorted by eigenvalue (canonical coefficient order)
    pub entries: Vec<(CycNum, usize)>,
}

impl EigenProfile {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn from_pairs(pairs: Vec<(CycNum, usize)>) -> Self {
        let mut map: BTreeMap<CycNum, usize> = BTreeMap::new();
        for (v, m) in pairs {
            if m > 0 {
                *map.entry(v).or_insert(0) += m;
            }
        }
        EigenProfile {
            entries: map.into_iter().collect(),
        }
    }
}

/// Closed-form profile of the normalized eigenvalues
/// `lambda(s,t)/lambda(0,0)` as p-th roots of unity. Case selection is by
/// the triple `(epsilon, (-1/p), (x/p))`:
///
/// * case 1 — `1` with multiplicity 1 and every nontrivial p-th root with
///   multiplicity `p+1`;
/// * case 2 — `1` with multiplicity `2p-1` and every nontrivial p-th root
///   with multiplicity `p-1`.
pub fn eigenvalue_profile(p: u32, epsilon: i8, x: u32) -> Result<EigenProfile> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if x % p == 0 {
        return Err(Error::InvalidAction("x must be nonzero mod p".into()));
    }
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::InvalidAction("epsilon must be +1 or -1".into()));
    }
    let triple = (epsilon as i32, legendre(-1, p), legendre(x as i64, p));
    const CASE1: [(i32, i32, i32); 4] = [(1, -1, 1), (-1, -1, -1), (1, 1, -1), (-1, 1, -1)];
    const CASE2: [(i32, i32, i32); 4] = [(1, -1, -1), (-1, -1, 1), (1, 1, 1), (-1, 1, 1)];
    let case1 = if CASE1.contains(&triple) {
        true
    } else if CASE2.contains(&triple) {
        false
    } else {
        unreachable!("triple {:?} not in either case table", triple)
    };
    let mut pairs = Vec::new();
    let (one_mult, root_mult) = if case1 {
        (1usize, (p + 1) as usize)
    } else {
        ((2 * p - 1) as usize, (p - 1) as usize)
    };
    pairs.push((CycNum::one(p), one_mult));
    for j in 1..p {
        pairs.push((CycNum::root_of_unity(p, j as i64), root_mult));
    }
    let profile = EigenProfile::from_pairs(pairs);
    debug_assert_eq!(profile.total(), (p * p) as usize);
    Ok(profile)
}

/// Exact spectrum of `x` by rank: for each candidate eigenvalue, the
/// multiplicity is the nullity of `regular_rep(x) - lambda I`. Fails loudly
/// if the candidates do not exhaust the spectrum.
pub fn spectrum_exact(x: &Element, candidates: &[CycNum]) -> Result<EigenProfile> {
    spectrum_exact_matrix(&x.regular_rep()?, candidates)
}

pub fn spectrum_exact_matrix(rep: &Matrix, candidates: &[CycNum]) -> Result<EigenProfile> {
    let dim = rep.rows();
    let m = rep.at(0, 0).modulus();
    // dedup candidate values first so multiplicities are not double-counted
    let mut uniq: Vec<CycNum> = Vec::new();
    for c in candidates {
        let c = c.lift(m)?;
        if !uniq.contains(&c) {
            uniq.push(c);
        }
    }
    let mut pairs = Vec::new();
    let mut found = 0usize;
    for lambda in uniq {
        let mult = rep.shift_diag(&lambda)?.nullity()?;
        if mult > 0 {
            found += mult;
            pairs.push((lambda, mult));
        }
    }
    if found != dim {
        return Err(Error::CandidatesIncomplete { found, dim });
    }
    Ok(EigenProfile::from_pairs(pairs))
}

/// All `p^2` raw eigenvalues `lambda(s,t)` of the factorized candidate, as
/// exact Gauss-sum products.
pub fn factorized_eigenvalues(p: u32, epsilon: i8, x: u32) -> Result<Vec<CycNum>> {
    let a2 = ((epsilon as i64 * x as i64).rem_euclid(p as i64)) as u32;
    let mut values = Vec::with_capacity((p * p) as usize);
    for s in 0..p {
        let gs = gauss_sum(p, 1, s)?;
        for t in 0..p {
            let ht = gauss_sum(p, a2, t)?;
            values.push(gs.mul(&ht)?);
        }
    }
    Ok(values)
}

/// Compare the exact spectrum of the factorized candidate against the
/// closed-form profile, dividing out the global normalizer
/// `lambda(0,0) = g(1,0) g(eps x, 0)`.
pub fn profile_matches_exact(
    p: u32,
    epsilon: i8,
    x: u32,
    exact: &EigenProfile,
) -> Result<bool> {
    let normalizer = gauss_sum(p, 1, 0)?.mul(&gauss_sum(
        p,
        ((epsilon as i64 * x as i64).rem_euclid(p as i64)) as u32,
        0,
    )?)?;
    let closed = eigenvalue_profile(p, epsilon, x)?;
    let mut normalized = Vec::new();
    for (v, mult) in &exact.entries {
        normalized.push((v.div(&normalizer)?, *mult));
    }
    Ok(EigenProfile::from_pairs(normalized) == closed)
}
