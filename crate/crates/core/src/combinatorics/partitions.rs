use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A multiset of positive integers kept in nondecreasing order: a cycle type
/// of a permutation or an integer partition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidCycleType(format!("{parts:?} has a zero part")));
        }
        parts.sort_unstable();
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// Multiplicities `k₁, …, k_r` of the distinct parts.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_default() += 1;
        }
        m.into_values().collect()
    }

    pub fn all_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }

    /// The type with every part doubled.
    pub fn doubled(&self) -> CycleType {
        CycleType { parts: self.parts.iter().map(|p| 2 * p).collect() }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n! / (n₁!⋯n_k!)`, the number of ordered set partitions with these block sizes.
pub fn multinomial(t: &CycleType) -> BigUint {
    let denom = t.parts.iter().fold(BigUint::one(), |acc, &p| acc * factorial(p));
    factorial(t.total()) / denom
}

/// The number of unordered set partitions of `{1..n}` into blocks of the
/// given sizes: the multinomial divided by `k₁!⋯k_r!`.
pub fn set_partition_count(t: &CycleType) -> BigUint {
    let denom = t.multiplicities().into_iter().fold(BigUint::one(), |acc, k| acc * factorial(k));
    multinomial(t) / denom
}

/// Visits every set partition of `{1..n}` as a restricted growth string
/// (`rgs[i]` is the block of element `i + 1`).
pub fn for_each_set_partition(n: usize, mut f: impl FnMut(&[usize])) {
    fn rec(rgs: &mut Vec<usize>, n: usize, blocks: usize, f: &mut dyn FnMut(&[usize])) {
        if rgs.len() == n {
            f(rgs);
            return;
        }
        for b in 0..=blocks {
            rgs.push(b);
            rec(rgs, n, blocks.max(b + 1), f);
            rgs.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), n, 0, &mut f);
}

/// Counts set partitions of `{1..n}` whose block sizes form `t`, by
/// exhaustive enumeration.
pub fn set_partition_count_brute(t: &CycleType) -> u64 {
    let n = t.total();
    let mut count = 0;
    for_each_set_partition(n, |rgs| {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; k];
        for &b in rgs {
            sizes[b] += 1;
        }
        sizes.sort_unstable();
        if sizes == t.parts {
            count += 1;
        }
    });
    count
}

/// All partitions of `m` into parts `≥ min_part`, ordered by number of parts
/// and then lexicographically. `m = 0` yields the empty partition.
pub fn partitions_of(m: usize, min_part: usize) -> Vec<CycleType> {
    fn rec(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min..=rest {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, min_part.max(1), &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter().map(|parts| CycleType { parts }).collect()
}
