use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CycleType;
use crate::error::{Error, Result};

/// A bijection of `{1..n}`, stored in one-line notation with 1-based values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates a one-line image list `[s(1), …, s(n)]`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles; unlisted points
    /// are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x == 0 || x > n || used[x] {
                    return Err(Error::InvalidPermutation(format!("cycles {cycles:?} on {n} points")));
                }
                used[x] = true;
                images[x - 1] = c[(k + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(4,1,8,2,6,7,5,3)` or `(1 2)(3 4)`.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let bad = || Error::InvalidPermutation(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let cycle = inner[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
            rest = inner[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `s(j)` for `1 ≤ j ≤ n`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles, each starting at its smallest element, listed by
    /// increasing first element. Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect()).expect("cycle lengths are positive")
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v != k + 1)
    }

    /// Whether the permutation is a single `n`-cycle.
    pub fn is_cyclic(&self) -> bool {
        self.cycles().len() == 1
    }

    /// Cycle notation, e.g. `(1,2)(3,4)`.
    pub fn cycle_notation(&self) -> String {
        self.cycles().iter().map(|c| format!("({})", c.iter().join(","))).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// One-line notation `[4,1,8,2,6,7,5,3]`; brackets are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
        let images = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<usize>().map_err(|_| Error::InvalidPermutation(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// All of `Sₙ` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n).permutations(n).map(Permutation::from_images_unchecked)
}

/// Sums `f` over `Sₙ`, splitting the work by first image across threads.
/// Integer sums do not depend on the order, so the result is deterministic.
pub(crate) fn par_sum_over_sn<F>(n: usize, f: F) -> i64
where
    F: Fn(&Permutation) -> i64 + Sync,
{
    if n <= 1 {
        return f(&Permutation::identity(n));
    }
    (1..=n)
        .into_par_iter()
        .map(|first| {
            let rest: Vec<usize> = (1..=n).filter(|&x| x != first).collect();
            let mut total = 0i64;
            for tail in rest.iter().copied().permutations(n - 1) {
                let mut images = Vec::with_capacity(n);
                images.push(first);
                images.extend(tail);
                total += f(&Permutation { images });
            }
            total
        })
        .sum()
}

/// Counts permutations in `Sₙ` satisfying a predicate.
pub(crate) fn par_count<F>(n: usize, pred: F) -> u64
where
    F: Fn(&Permutation) -> bool + Sync,
{
    par_sum_over_sn(n, |p| i64::from(pred(p))) as u64
}
