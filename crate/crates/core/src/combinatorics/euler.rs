//! Descent statistics, Euler zigzag numbers, Eulerian numbers and Euler
//! polynomials.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::permutation::{par_count, Permutation};
use crate::error::{Error, Result};

/// `des(h, k)`: 1 when `h > k`, otherwise 0 (including `h = k`).
pub fn des_pair(h: usize, k: usize) -> usize {
    usize::from(h > k)
}

/// Number of positions `ℓ` with `seq[ℓ] > seq[ℓ+1]`.
pub fn des<T: Ord>(seq: &[T]) -> Result<usize> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(seq.windows(2).filter(|w| w[0] > w[1]).count())
}

/// Cyclic descents: `des` of the sequence followed by its first element.
pub fn cdes<T: Ord>(seq: &[T]) -> Result<usize> {
    let d = des(seq)?;
    Ok(d + usize::from(seq[seq.len() - 1] > seq[0]))
}

/// `s(1) > s(2) < s(3) > ⋯`. Permutations of length 0 and 1 count as zigzag.
pub fn is_zigzag(s: &Permutation) -> bool {
    alternates(s.images(), true)
}

/// `s(1) < s(2) > s(3) < ⋯`. Permutations of length 0 and 1 count as zagzig.
pub fn is_zagzig(s: &Permutation) -> bool {
    alternates(s.images(), false)
}

fn alternates(v: &[usize], first_down: bool) -> bool {
    v.windows(2).enumerate().all(|(k, w)| (w[0] > w[1]) == ((k % 2 == 0) == first_down))
}

/// `Aₙ` by enumerating `Sₙ`. Cost grows like `n!`.
pub fn zigzag_count_brute(n: usize) -> u64 {
    par_count(n, is_zigzag)
}

/// `A₀, …, A_max` from the Seidel–Entringer boustrophedon triangle.
pub fn zigzag_numbers(max: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    let mut row = vec![BigUint::one()];
    for n in 1..=max {
        let mut next = vec![BigUint::zero(); n + 1];
        for k in 1..=n {
            next[k] = &next[k - 1] + &row[n - k];
        }
        out.push(next[n].clone());
        row = next;
    }
    out
}

/// `Aₙ` from the boustrophedon triangle.
pub fn zigzag_number(n: usize) -> BigUint {
    zigzag_numbers(n).pop().expect("nonempty")
}

/// Rows `0..=max` of the Eulerian triangle, by
/// `⟨n,j⟩ = (j+1)⟨n−1,j⟩ + (n−j)⟨n−1,j−1⟩`. Row 0 is `[1]`.
pub fn eulerian_triangle(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for n in 1..=max {
        let prev = &rows[n - 1];
        let get = |j: usize| prev.get(j).cloned().unwrap_or_default();
        let row: Vec<BigUint> = (0..n)
            .map(|j| {
                let a = get(j) * BigUint::from(j + 1);
                let b = if j > 0 { get(j - 1) * BigUint::from(n - j) } else { BigUint::zero() };
                a + b
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `⟨n over j⟩`, zero outside `0 ≤ j < n` (except `⟨0 over 0⟩ = 1`).
pub fn eulerian_number(n: usize, j: usize) -> BigUint {
    eulerian_triangle(n).pop().expect("nonempty").get(j).cloned().unwrap_or_default()
}

/// `⟨n over j⟩` by counting permutations with `j` descents in one-line notation.
pub fn eulerian_number_brute(n: usize, j: usize) -> u64 {
    par_count(n, |s| des(s.images()).unwrap_or(0) == j)
}

/// Coefficients of `Sₙ(τ) = Σⱼ ⟨n over j⟩ τʲ`, lowest degree first.
pub fn euler_polynomial(n: usize) -> Vec<BigUint> {
    eulerian_triangle(n).pop().expect("nonempty")
}

/// Number of `s ∈ Sₙ` with `j` cyclic descents, `n·⟨n−1 over j−1⟩` for
/// `0 < j < n` and 0 otherwise. Stated for `n ≥ 2`; for `n = 1` the only
/// permutation has `cdes = 0`.
pub fn cyclic_descent_count(n: usize, j: usize) -> BigUint {
    if n == 1 {
        return if j == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if j == 0 || j >= n {
        return BigUint::zero();
    }
    BigUint::from(n) * eulerian_number(n - 1, j - 1)
}

pub fn cyclic_descent_count_brute(n: usize, j: usize) -> u64 {
    par_count(n, |s| cdes(s.images()).unwrap_or(0) == j)
}

/// Number of `s ∈ Sₙ` with `s(x) < x` for exactly `j` points, by enumeration.
pub fn exceedance_statistic(n: usize, j: usize) -> u64 {
    par_count(n, |s| s.images().iter().enumerate().filter(|&(k, &v)| v < k + 1).count() == j)
}

/// Precomputed zigzag numbers, Eulerian numbers and Euler polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTables {
    pub zigzag: Vec<BigUint>,
    pub eulerian: Vec<Vec<BigUint>>,
}

impl EulerTables {
    pub fn new(max: usize) -> Self {
        EulerTables { zigzag: zigzag_numbers(max), eulerian: eulerian_triangle(max) }
    }

    pub fn max(&self) -> usize {
        self.zigzag.len() - 1
    }

    pub fn zigzag(&self, n: usize) -> &BigUint {
        &self.zigzag[n]
    }

    pub fn eulerian(&self, n: usize, j: usize) -> BigUint {
        self.eulerian[n].get(j).cloned().unwrap_or_default()
    }

    /// Coefficients of `Sₙ(τ)`.
    pub fn euler_poly(&self, n: usize) -> &[BigUint] {
        &self.eulerian[n]
    }
}
