//! Sticky shuffle products, the plain shuffle, powers and the text format.
//!
//! ```text
//! cargo run --example sticky_products
//! ```

use std::sync::Arc;

use sticky_hopf::tensor_hopf::{
    power, shuffle_product, sticky_product, sticky_product_subsets, TensorElement,
};
use sticky_hopf::Builtin;

fn main() -> sticky_hopf::Result<()> {
    let c1 = Arc::new(Builtin::Classical1d.algebra(None)?);
    let dx = TensorElement::parse(&c1, "{dX}")?;
    println!("dX · dX = {}", sticky_product(&dx, &dx)?);
    println!("dX³ = {}", power(&dx, 3));

    let planar = Arc::new(Builtin::ClassicalPlanar.algebra(None)?);
    let (x, y) = (TensorElement::parse(&planar, "{dX}")?, TensorElement::parse(&planar, "{dY}")?);
    println!("shuffle dX · dY = {}", shuffle_product(&x, &y)?);
    println!("sticky  dX · dY = {}", sticky_product(&x, &y)?);

    // Over the quantum table the stick term carries σ₊ or σ₋ depending on order.
    let q = Arc::new(Builtin::QuantumAhat.algebra(None)?);
    let a = TensorElement::parse(&q, "{dAhat}")?;
    let ad = TensorElement::parse(&q, "{dAhatDag}")?;
    println!("dÂ · dÂ† = {}", sticky_product(&a, &ad)?);
    println!("dÂ† · dÂ = {}", sticky_product(&ad, &a)?);

    // Two independent implementations of the same product.
    let u = TensorElement::parse(&q, "{dAhat*dAhatDag} - 2 s+{dT}")?;
    let v = TensorElement::parse(&q, "(1 + i){dAhatDag*dAhat*dAhat}")?;
    let dp = sticky_product(&u, &v)?;
    assert_eq!(dp, sticky_product_subsets(&u, &v)?);
    println!("{} terms, e.g. JSON of u: {}", dp.len(), serde_json::to_string(&u.to_json()).unwrap());
    Ok(())
}
