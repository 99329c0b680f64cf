//! Moments of the quantum Lévy area, computed four ways.
//!
//! ```text
//! cargo run --release --example levy_moments
//! ```

use num_rational::BigRational;
use sticky_hopf::moments::{moment, w_closed, w_hopf, w_oracle, w_recovery, AreaWord, Method, Sigma};

fn main() -> sticky_hopf::Result<()> {
    let area = AreaWord::normalized_quantum();
    for n in 0..=6 {
        let w = w_hopf(&area, n);
        assert_eq!(w, w_oracle(n)?);
        assert_eq!(w, w_recovery(&area, n));
        if n % 2 == 0 {
            assert_eq!(w, w_closed(n / 2));
        }
        println!("w_{n} = {w}");
    }

    let (a, b) = (BigRational::from_integer(0.into()), BigRational::from_integer(1.into()));
    let sym = moment(&area, 4, &a, &b, &Sigma::Symbolic, Method::Closed)?;
    println!("E[B^4] on [0,1) = {}", sym.moment);

    for s in ["1", "2", "10", "inf"] {
        let sigma: Sigma = s.parse()?;
        let r = moment(&area, 2, &a, &b, &sigma, Method::Hopf)?;
        println!("σ = {s}: second moment {} ≈ {}", r.moment, r.moment_decimal(6).unwrap());
    }

    // The unnormalized pair needs a concrete σ².
    let pq = AreaWord::quantum_pq(BigRational::from_integer(4.into()))?;
    let r = moment(&pq, 2, &a, &b, &Sigma::Infinity, Method::Hopf)?;
    println!("P,Q area with σ² = 4: second moment {}", r.moment);
    println!("{}", serde_json::to_string(&sym.to_json()).unwrap());
    Ok(())
}
