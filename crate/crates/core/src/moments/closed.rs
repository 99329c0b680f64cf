//! The closed formula for `w₂ₘ`, the classical-limit moments and the sech
//! series they are compared against.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{euler_polynomial, factorial, partitions_of, zigzag_numbers};
use crate::scalar::{GaussianRational, Scalar};

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `w₂ₘ` as a sum over partitions `m₁ + ⋯ + m_k = m`:
///
/// `(−1)ᵐ (2m)!² Σ σ₋^{2m−k} σ₊ᵏ / (k₁!⋯k_r!) · Π A_{2mⱼ−1} / (2mⱼ (2mⱼ−1)!²) · S_{2mⱼ−1}(τ)`
///
/// with `τ = σ₊/σ₋` cleared against the `σ₋` power, so the result is a
/// polynomial. `m = 0` gives 1.
pub fn w_closed(m: usize) -> Scalar {
    let zig = zigzag_numbers(2 * m);
    let mut out = Scalar::zero();
    for part in partitions_of(m, 1) {
        let k = part.num_parts();
        let mut coef = rat(BigInt::one());
        for km in part.multiplicities() {
            coef /= rat(factorial(km));
        }
        // Π S_{2mⱼ−1}(τ) as integer coefficients in τ
        let mut poly: Vec<BigInt> = vec![BigInt::one()];
        for &mj in part.parts() {
            let len = 2 * mj;
            coef *= rat(zig[len - 1].clone());
            coef /= rat(BigInt::from(len)) * rat(factorial(len - 1)).pow(2);
            let s: Vec<BigInt> = euler_polynomial(len - 1).into_iter().map(BigInt::from).collect();
            let mut next = vec![BigInt::zero(); poly.len() + s.len() - 1];
            for (i, a) in poly.iter().enumerate() {
                for (j, b) in s.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            poly = next;
        }
        let p = (2 * m - k) as u32;
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = Scalar::sigma_minus_tau(GaussianRational::real(&coef * rat(c.clone())), p, d as u32);
            out += &(&term * &Scalar::sigma_plus().pow(k as u32));
        }
    }
    let f = rat(factorial(2 * m)).pow(2);
    let sign = if m.is_multiple_of(2) { f } else { -f };
    out.scale(&GaussianRational::real(sign))
}

/// `((b−a)/2)^{2m} A₂ₘ` for `m = 0, 1, …, m_max`.
pub fn classical_moments(m_max: usize, a: &BigRational, b: &BigRational) -> Vec<BigRational> {
    let zig = zigzag_numbers(2 * m_max);
    let half = (b - a) / rat(2);
    (0..=m_max).map(|m| half.pow(2 * m as i32) * rat(zig[2 * m].clone())).collect()
}

/// Taylor coefficients of `sech z` up to `z^order`, by inverting the cosh
/// series term by term.
pub fn sech_taylor(order: usize) -> Vec<BigRational> {
    let cosh: Vec<BigRational> = (0..=order)
        .map(|k| if k % 2 == 0 { rat(1) / rat(factorial(k)) } else { BigRational::zero() })
        .collect();
    let mut r: Vec<BigRational> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n == 0 {
            r.push(BigRational::one());
            continue;
        }
        let mut acc = BigRational::zero();
        for k in 1..=n {
            acc -= &cosh[k] * &r[n - k];
        }
        r.push(acc);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn closed_low_orders() {
        assert_eq!(w_closed(0), Scalar::one());
        assert_eq!(w_closed(1), "-2 s+ s-".parse().unwrap());
    }

    #[test]
    fn sech_coefficients() {
        let s = sech_taylor(6);
        assert_eq!(s[0], q(1, 1));
        assert_eq!(s[1], q(0, 1));
        assert_eq!(s[2], q(-1, 2));
        assert_eq!(s[4], q(5, 24));
        assert_eq!(s[6], q(-61, 720));
    }

    #[test]
    fn classical_values() {
        let v = classical_moments(4, &q(0, 1), &q(1, 1));
        assert_eq!(v, vec![q(1, 1), q(1, 4), q(5, 16), q(61, 64), q(1385, 256)]);
        assert_eq!(classical_moments(1, &q(0, 1), &q(2, 1))[1], q(1, 1));
    }
}
