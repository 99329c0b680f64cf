//! As σ → ∞ the quantum area moments become the classical ones,
//! ((b−a)/2)^{2m} A_{2m}, the Taylor coefficients of sech.
//!
//! ```text
//! cargo run --example classical_limit
//! ```

use num_rational::BigRational;
use num_traits::One;
use sticky_hopf::combinatorics::factorial;
use sticky_hopf::moments::{classical_moments, moment, sech_taylor, AreaWord, Method, Sigma};

fn main() -> sticky_hopf::Result<()> {
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::one();
    let quantum = AreaWord::normalized_quantum();
    let planar = AreaWord::classical_planar();
    let classical = classical_moments(4, &zero, &one);
    // sech(z/2) = Σ c_k z^k / 2^k
    let sech = sech_taylor(8);

    for m in 1..=4 {
        let n = 2 * m;
        let q = moment(&quantum, n, &zero, &one, &Sigma::Infinity, Method::Closed)?.moment;
        let p = moment(&planar, n, &zero, &one, &Sigma::Infinity, Method::Hopf)?.moment;
        let fact = BigRational::from_integer(factorial(n).into());
        let from_sech = &sech[n] * &fact / BigRational::from_integer((1i64 << n).into());
        let from_sech = if m % 2 == 1 { -from_sech } else { from_sech };
        println!("m = {m}: quantum {q}, planar {p}, classical {}, sech {}", classical[m], from_sech);
    }

    for s in ["1", "3/2", "2", "10", "100"] {
        let r = moment(&quantum, 4, &zero, &one, &s.parse()?, Method::Hopf)?;
        println!("σ = {s:>4}: E[B^4] = {}", r.moment_decimal(8).unwrap());
    }
    Ok(())
}
