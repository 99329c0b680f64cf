//! Coproduct, counit, antipode and the recovery formula.
//!
//! ```text
//! cargo run --example hopf_structure
//! ```

use std::sync::Arc;

use sticky_hopf::tensor_hopf::{
    antipode, antipode_closed_form, coproduct, counit, iterated_coproduct, multirank_component,
    recover_component, sticky_product, TensorElement,
};
use sticky_hopf::{Builtin, Scalar};

fn main() -> sticky_hopf::Result<()> {
    let alg = Arc::new(Builtin::ClassicalPlanar.algebra(None)?);
    let w = TensorElement::parse(&alg, "{dX*dY}")?;

    let d = coproduct(&w);
    println!("Δ(dX⊗dY) has {} terms:", d.len());
    for (slots, c) in d.terms() {
        let parts: Vec<String> = slots
            .iter()
            .map(|s| TensorElement::monomial(&alg, s.clone(), Scalar::from_int(1)).to_string())
            .collect();
        println!("  {c} · {}", parts.join(" ⊗ "));
    }
    println!("Δ⁽³⁾(dX⊗dY) has {} terms", iterated_coproduct(&w, 3).len());

    let x = TensorElement::parse(&alg, "3 + {dX*dY*dX} - {dT}")?;
    println!("ε(x) = {}", counit(&x));

    // S is fixed by m∘(S⊗Id)∘Δ = η∘ε; stick terms appear as soon as letters repeat.
    let s = antipode(&TensorElement::parse(&alg, "{dX*dX}")?);
    println!("S(dX⊗dX) = {s}");
    assert_eq!(s, antipode_closed_form(&TensorElement::parse(&alg, "{dX*dX}")?));
    let check = d.map_slot(0, |word| antipode(&TensorElement::monomial(&alg, word.clone(), Scalar::from_int(1))))?;
    println!("m(S⊗Id)Δ(dX⊗dY) = {}", check.multiply_out());

    // Multiplicativity of Δ.
    let y = TensorElement::parse(&alg, "{dY} + 2{dX}")?;
    let lhs = coproduct(&sticky_product(&x, &y)?);
    let rhs = sticky_hopf::tensor_hopf::multi_product(&coproduct(&x), &coproduct(&y))?;
    println!("Δ(xy) = Δ(x)Δ(y): {}", lhs == rhs);

    // Recovery: the rank-3 part of x from the (1,1,1) component of Δ⁽³⁾x.
    let c = multirank_component(&iterated_coproduct(&x, 3), &[1, 1, 1])?;
    println!("(Δ⁽³⁾x)₍₁,₁,₁₎ has {} term(s); recovered: {}", c.len(), recover_component(&x, 3));
    Ok(())
}
