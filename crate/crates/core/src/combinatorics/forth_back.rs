//! Forth-back permutations, the sign `sn`, transits and the equivalence
//! classes that make transit-containing permutations cancel in sign sums.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::euler::{des_pair, zigzag_numbers};
use super::partitions::{set_partition_count, CycleType};
use super::permutation::{par_count, par_sum_over_sn, Permutation};
use crate::error::{Error, Result};

/// `sn(s) = Π (−1)^des(j, s(j))`, the parity of the number of points mapped
/// downwards.
pub fn sign_sn(s: &Permutation) -> i32 {
    let downs: usize = (1..=s.len()).map(|j| des_pair(j, s.apply(j))).sum();
    if downs.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Every point is a peak or a valley of its cycle:
/// `s⁻¹(j) < j > s(j)` or `s⁻¹(j) > j < s(j)`.
pub fn is_forth_back(s: &Permutation) -> bool {
    let inv = s.inverse();
    (1..=s.len()).all(|j| {
        let (p, q) = (inv.apply(j), s.apply(j));
        (p < j && q < j) || (p > j && q > j)
    })
}

/// Number of forth-back permutations in `Sₙ`, by enumeration.
pub fn forth_back_count(n: usize) -> u64 {
    if n % 2 == 1 {
        return 0;
    }
    par_count(n, is_forth_back)
}

/// The bijection from forth-back to zigzag permutations: write each cycle
/// starting from its largest element, order the cycles by increasing first
/// element, and read the concatenation as one-line notation.
pub fn fundamental_transform(s: &Permutation) -> Result<Permutation> {
    if !is_forth_back(s) {
        return Err(Error::NotForthBack(s.to_string()));
    }
    let mut cycles: Vec<Vec<usize>> = s
        .cycles()
        .into_iter()
        .map(|mut c| {
            let top = c.iter().enumerate().max_by_key(|&(_, v)| *v).map(|(k, _)| k).unwrap_or(0);
            c.rotate_left(top);
            c
        })
        .collect();
    cycles.sort_by_key(|c| c[0]);
    Ok(Permutation::from_images_unchecked(cycles.concat()))
}

/// Inverse of [`fundamental_transform`] on all of `Sₙ`: cut the one-line
/// notation before every left-to-right maximum and read the pieces as cycles.
pub fn fundamental_transform_inverse(z: &Permutation) -> Permutation {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut best = 0;
    for &v in z.images() {
        if v > best {
            best = v;
            cycles.push(Vec::new());
        }
        cycles.last_mut().expect("first entry opens a cycle").push(v);
    }
    Permutation::from_cycles(z.len(), &cycles).expect("pieces partition {1..n}")
}

/// The map from cyclic forth-back permutations of `S₂ₘ` to zagzig
/// permutations of `S₂ₘ₋₁`: rotate the cycle so that `2m` comes last and
/// drop it.
pub fn cyclic_forth_back_map(s: &Permutation) -> Result<Permutation> {
    if !is_forth_back(s) {
        return Err(Error::NotForthBack(s.to_string()));
    }
    if !s.is_cyclic() {
        return Err(Error::InvalidPermutation(format!("{s} is not a single cycle")));
    }
    let n = s.len();
    let mut seq = Vec::with_capacity(n - 1);
    let mut x = s.apply(n);
    while x != n {
        seq.push(x);
        x = s.apply(x);
    }
    Ok(Permutation::from_images_unchecked(seq))
}

/// Permutations of `{1..n}` with the given cycle type, by filtering `Sₙ`.
pub fn permutations_of_type(t: &CycleType) -> Vec<Permutation> {
    super::permutation::all_permutations(t.total()).filter(|s| s.cycle_type() == *t).collect()
}

/// Forth-back permutations of cycle type `2m₁, …, 2m_k`, counted as
/// `bbinom(2m; 2m₁,…,2m_k) · Π A_{2mⱼ−1}`. Types with an odd part contain no
/// forth-back permutation and give 0.
pub fn forth_back_count_by_type(t: &CycleType) -> BigUint {
    if !t.all_even() {
        return BigUint::default();
    }
    set_partition_count(t) * product_of_zigzags(t)
}

fn product_of_zigzags(t: &CycleType) -> BigUint {
    let max = t.parts().iter().copied().max().unwrap_or(1);
    let a = zigzag_numbers(max);
    t.parts().iter().fold(BigUint::one(), |acc, &p| acc * &a[p - 1])
}

pub fn forth_back_count_by_type_brute(t: &CycleType) -> u64 {
    let t = t.clone();
    par_count(t.total(), move |s| s.cycle_type() == t && is_forth_back(s))
}

/// `Σ_{s of type t} sn(s)`, which is `(−1)^{n/2} bbinom(n; t) Π A_{nⱼ−1}`
/// when every part is even and 0 otherwise. Parts must be at least 2.
pub fn sign_sum_by_type(t: &CycleType) -> Result<BigInt> {
    if t.parts().iter().any(|&p| p < 2) {
        return Err(Error::InvalidCycleType(format!("{t} has a part below 2")));
    }
    if !t.all_even() {
        return Ok(BigInt::default());
    }
    let v = BigInt::from(set_partition_count(t) * product_of_zigzags(t));
    Ok(if (t.total() / 2).is_multiple_of(2) { v } else { -v })
}

pub fn sign_sum_by_type_brute(t: &CycleType) -> i64 {
    let t = t.clone();
    par_sum_over_sn(t.total(), move |s| if s.cycle_type() == t { i64::from(sign_sn(s)) } else { 0 })
}

/// `Σ_{s fixed-point-free} sn(s)`, equal to `(−1)^{n/2} Aₙ` for even `n`
/// and 0 for odd `n`.
pub fn sign_sum_fixed_point_free(n: usize) -> BigInt {
    if n % 2 == 1 {
        return BigInt::default();
    }
    let a = BigInt::from(zigzag_numbers(n).pop().expect("nonempty"));
    if (n / 2).is_multiple_of(2) {
        a
    } else {
        -a
    }
}

pub fn sign_sum_fixed_point_free_brute(n: usize) -> i64 {
    par_sum_over_sn(n, |s| if s.is_fixed_point_free() { i64::from(sign_sn(s)) } else { 0 })
}

/// Points `h` with `s⁻¹(h) < h < s(h)` or `s⁻¹(h) > h > s(h)`.
pub fn transit_points(s: &Permutation) -> BTreeSet<usize> {
    let inv = s.inverse();
    (1..=s.len())
        .filter(|&h| {
            let (p, q) = (inv.apply(h), s.apply(h));
            (p < h && h < q) || (p > h && h > q)
        })
        .collect()
}

/// The equivalence class of a permutation with a transit: take out its
/// smallest transit `h` and put it back, as a transit, into every gap
/// `x ↦ y` of the shortened cycle that straddles `h`. The result is sorted
/// and contains `s` itself.
pub fn equivalence_class(s: &Permutation) -> Result<Vec<Permutation>> {
    let h = *transit_points(s).iter().next().ok_or_else(|| Error::NoTransit(s.to_string()))?;
    let inv = s.inverse();
    let (before, after) = (inv.apply(h), s.apply(h));
    // the shortened permutation, with h left dangling
    let mut short = s.images().to_vec();
    short[before - 1] = after;
    let mut class = Vec::new();
    let mut x = after;
    loop {
        let y = short[x - 1];
        if (x < h && h < y) || (x > h && h > y) {
            let mut images = short.clone();
            images[x - 1] = h;
            images[h - 1] = y;
            class.push(Permutation::from_images_unchecked(images));
        }
        x = y;
        if x == after {
            break;
        }
    }
    class.sort();
    Ok(class)
}
