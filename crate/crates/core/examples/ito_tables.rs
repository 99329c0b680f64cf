//! Inspect the built-in Itô tables and build a custom one.
//!
//! ```text
//! cargo run --example ito_tables
//! ```

use num_rational::BigRational;
use sticky_hopf::cli::{cmd_table, Format};
use sticky_hopf::{Builtin, ItoAlgebra, Scalar};

fn main() -> sticky_hopf::Result<()> {
    let sigma_sq = BigRational::from_integer(4.into());
    for b in Builtin::ALL {
        let alg = b.algebra(Some(&sigma_sq))?;
        let note = if b.needs_sigma_squared() { " (σ² = 4)" } else { "" };
        println!("{b}{note}, commutative: {}", alg.is_commutative());
        print!("{}", cmd_table(&alg, Format::Text));
        println!();
    }

    // A table of your own: one noise with a drift-like square.
    let alg = ItoAlgebra::from_table(&["dN", "dT"], "dT", &[("dN", "dN", Scalar::ratio(1, 3))])?;
    let dn = alg.basis("dN")?;
    println!("dN·dN = {}", alg.render(&alg.multiply(&dn, &dn)?));

    // The symbolic table at σ± = 1/2 is the classical complex table.
    let hat = Builtin::QuantumAhat.algebra(None)?;
    let half = sticky_hopf::GaussianRational::ratio(1, 2);
    let limit = hat.evaluate(&half, &half);
    println!("Â table at σ± = 1/2:\n{}", cmd_table(&limit, Format::Text));
    Ok(())
}
