//! `wₙ` as an explicit double sum over pairs of permutations, and the inner
//! sums that the closed formula is assembled from.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::{
    all_permutations, des_pair, euler_polynomial, multinomial, sign_sn, CycleType, Permutation,
};
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar};

/// Largest order the oracle runs at by default.
pub const ORACLE_LIMIT: usize = 6;
/// Largest order reachable with the explicit opt-in.
pub const ORACLE_LIMIT_EXTENDED: usize = 8;

fn derangements(n: usize) -> Vec<Permutation> {
    all_permutations(n).filter(Permutation::is_fixed_point_free).collect()
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n <= limit {
        return Ok(());
    }
    let perms: BigUint = (1..=n).fold(BigUint::one(), |a, k| a * BigUint::from(k));
    // subfactorial by D(k) = k·D(k−1) + (−1)^k
    let mut d = BigInt::one();
    for k in 1..=n {
        d = d * BigInt::from(k) + if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    }
    Err(Error::OracleLimit { n, limit, pairs: (BigInt::from(perms) * d).to_string() })
}

/// Folds `Σ_d c_d τᵈ σ₋ⁿ` into `Σ_d c_d σ₊ᵈ σ₋ⁿ⁻ᵈ`.
fn tau_counts_to_scalar(counts: &[i64], n: usize) -> Scalar {
    let mut out = Scalar::zero();
    for (d, &c) in counts.iter().enumerate() {
        if c != 0 {
            out += &Scalar::sigma_minus_tau(GaussianRational::from_int(c), n as u32, d as u32);
        }
    }
    out
}

fn double_sum(n: usize, exponent: impl Fn(&[usize], &[usize], usize) -> usize + Sync) -> Scalar {
    let ss = derangements(n);
    let ls: Vec<Permutation> = all_permutations(n).collect();
    let counts = ss
        .par_iter()
        .map(|s| {
            let sign = i64::from(sign_sn(s));
            let mut local = vec![0i64; n + 1];
            for l in &ls {
                let d: usize = (1..=n).map(|j| exponent(l.images(), s.images(), j)).sum();
                local[d] += sign;
            }
            local
        })
        .reduce(
            || vec![0i64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    tau_counts_to_scalar(&counts, n)
}

/// `wₙ = σ₋ⁿ Σ_{s derangement} sn(s) Σ_{l ∈ Sₙ} Π_j τ^{des(l(j), l(s(j)))}`,
/// refusing orders above [`ORACLE_LIMIT`].
pub fn w_oracle(n: usize) -> Result<Scalar> {
    w_oracle_with_limit(n, ORACLE_LIMIT)
}

/// [`w_oracle`] with a caller-chosen order limit.
pub fn w_oracle_with_limit(n: usize, limit: usize) -> Result<Scalar> {
    check_limit(n, limit)?;
    Ok(double_sum(n, |l, s, j| des_pair(l[j - 1], l[s[j - 1] - 1])))
}

/// The same double sum before relabelling, with the exponent
/// `des(l⁻¹(s⁻¹(j)), l⁻¹(j))`. Kept as a check on the relabelling step; only
/// intended for small `n`.
pub fn w_oracle_presubstitution(n: usize) -> Result<Scalar> {
    check_limit(n, ORACLE_LIMIT)?;
    Ok(double_sum(n, |l, s, j| {
        let (linv, sinv) = (invert(l), invert(s));
        des_pair(linv[sinv[j - 1] - 1], linv[j - 1])
    }))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v - 1] = k + 1;
    }
    inv
}

/// The inner sum `Σ_{l ∈ Sₙ} Π_j τ^{des(l(j), l(s(j)))}` for a fixed `s`, as
/// coefficients of `τ⁰, τ¹, …, τⁿ`.
pub fn inner_sum(s: &Permutation) -> Vec<BigUint> {
    let n = s.len();
    let mut counts = vec![0u64; n + 1];
    for l in all_permutations(n) {
        let d: usize = (1..=n).map(|j| des_pair(l.apply(j), l.apply(s.apply(j)))).sum();
        counts[d] += 1;
    }
    counts.into_iter().map(BigUint::from).collect()
}

/// `n·τ·Sₙ₋₁(τ)`, the inner sum of any `n`-cycle.
pub fn inner_sum_cyclic(n: usize) -> Vec<BigUint> {
    assert!(n >= 1, "a cycle has at least one point");
    let mut out = vec![BigUint::zero()];
    out.extend(euler_polynomial(n - 1).into_iter().map(|c| c * BigUint::from(n)));
    out
}

/// `multinomial(n; n₁,…,n_k) · Π nⱼ τ S_{nⱼ−1}(τ)`, the inner sum of any
/// permutation of cycle type `t`.
pub fn inner_sum_by_type(t: &CycleType) -> Vec<BigUint> {
    let mut acc = vec![multinomial(t)];
    for &p in t.parts() {
        acc = poly_mul(&acc, &inner_sum_cyclic(p));
    }
    acc
}

pub(crate) fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Drops trailing zero coefficients so polynomials compare by value.
pub fn trim_poly(mut p: Vec<BigUint>) -> Vec<BigUint> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}
