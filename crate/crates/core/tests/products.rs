mod common;

use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sticky_hopf::tensor_hopf::{
    power, shuffle_product, shuffle_product_subsets, sticky_product, sticky_product_subsets,
    component, sticky_product_truncated, TensorElement, Word,
};
use sticky_hopf::{Builtin, ItoAlgebra, Scalar};

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn subsets_agree_with_recursion_on_the_hat_table() {
    let alg = common::algebra(Builtin::QuantumAhat);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..250 {
        let x = common::random_element(&mut rng, &alg, 3, 4);
        let y = common::random_element(&mut rng, &alg, 3, 4);
        assert_eq!(sticky_product(&x, &y).unwrap(), sticky_product_subsets(&x, &y).unwrap(), "{x} · {y}");
        assert_eq!(shuffle_product(&x, &y).unwrap(), shuffle_product_subsets(&x, &y).unwrap(), "{x} ⧢ {y}");
    }
}

#[test]
fn trivial_table_gives_plain_shuffles() {
    let alg = Arc::new(ItoAlgebra::new(&["a", "b", "c", "d", "e", "f", "dT"], "dT").unwrap());
    for m in 0..=3usize {
        for n in 0..=3usize {
            // distinct letters so every shuffle is a distinct word
            let u = Word((0..m).collect());
            let v = Word((3..3 + n).collect());
            let x = TensorElement::monomial(&alg, u, Scalar::one());
            let y = TensorElement::monomial(&alg, v, Scalar::one());
            let p = sticky_product(&x, &y).unwrap();
            assert_eq!(p.len() as u64, binomial((m + n) as u64, m as u64));
            assert_eq!(p, shuffle_product(&x, &y).unwrap());
            assert!(p.terms().all(|(_, c)| *c == Scalar::one()));
        }
    }
}

#[test]
fn worked_products() {
    let c1 = common::algebra(Builtin::Classical1d);
    let dx = TensorElement::parse(&c1, "{dX}").unwrap();
    assert_eq!(sticky_product(&dx, &dx).unwrap().to_string(), "2{dX*dX} + {dT}");
    assert_eq!(power(&dx, 2).to_string(), "2{dX*dX} + {dT}");
    assert_eq!(power(&dx, 0), TensorElement::unit(&c1));

    let hat = common::algebra(Builtin::QuantumAhat);
    let a = TensorElement::parse(&hat, "{dAhat}").unwrap();
    let ad = TensorElement::parse(&hat, "{dAhatDag}").unwrap();
    assert_eq!(
        sticky_product(&a, &ad).unwrap().to_string(),
        "{dAhat*dAhatDag} + {dAhatDag*dAhat} + s+ {dT}"
    );

    let planar = common::algebra(Builtin::ClassicalPlanar);
    let xy = TensorElement::parse(&planar, "{dX*dY}").unwrap();
    assert_eq!(sticky_product(&TensorElement::unit(&planar), &xy).unwrap(), xy);
}

#[test]
fn dx_power_coefficients_count_placements() {
    // Each term of {dX}ⁿ is an ordered set partition of n points into blocks
    // of size one (a dX) or two (a dT), so the coefficients sum to the number
    // of such partitions.
    let c1 = common::algebra(Builtin::Classical1d);
    let dx = TensorElement::parse(&c1, "{dX}").unwrap();
    let mut p = TensorElement::unit(&c1);
    for n in 1..=7usize {
        p = sticky_product(&dx, &p).unwrap();
        let total = p.terms().fold(Scalar::zero(), |acc, (_, c)| &acc + c);
        assert_eq!(total, Scalar::from_int(count_ordered_partitions_12(n)), "n = {n}");
    }
}

/// Ordered set partitions of `{1..n}` into blocks of size one or two: sum
/// over the sequence of block sizes of `n! / 2^(number of pairs)`.
fn count_ordered_partitions_12(n: usize) -> i64 {
    fn go(left: usize, used_sizes: &mut Vec<usize>, n: usize) -> i64 {
        if left == 0 {
            let mut v: i64 = (1..=n as i64).product();
            for &s in used_sizes.iter() {
                v /= if s == 2 { 2 } else { 1 };
            }
            return v;
        }
        let mut total = 0;
        for s in 1..=2.min(left) {
            used_sizes.push(s);
            total += go(left - s, used_sizes, n);
            used_sizes.pop();
        }
        total
    }
    go(n, &mut Vec::new(), n)
}

#[test]
fn truncation_only_drops_high_ranks() {
    let alg = common::algebra(Builtin::QuantumAhat);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let x = common::random_element(&mut rng, &alg, 3, 3);
        let y = common::random_element(&mut rng, &alg, 3, 3);
        let full = sticky_product(&x, &y).unwrap();
        let cut = sticky_product_truncated(&x, &y, 3).unwrap();
        for r in 0..=3 {
            assert_eq!(component(&full, r), component(&cut, r));
        }
        assert!(cut.max_rank().unwrap_or(0) <= 3);
    }
}

#[test]
fn mismatched_algebras_are_rejected() {
    let a = common::algebra(Builtin::Classical1d);
    let b = common::algebra(Builtin::Classical1d);
    let x = TensorElement::parse(&a, "{dX}").unwrap();
    let y = TensorElement::parse(&b, "{dX}").unwrap();
    // equal tables are interchangeable
    assert!(sticky_product(&x, &y).is_ok());
    let z = TensorElement::parse(&common::algebra(Builtin::ClassicalPlanar), "{dX}").unwrap();
    assert_eq!(sticky_product(&x, &z).unwrap_err(), sticky_hopf::Error::AlgebraMismatch);
}

fn any_builtin() -> impl Strategy<Value = Arc<ItoAlgebra>> {
    prop::sample::select(common::builtins())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_agree_and_associate(
        (x, y, z) in any_builtin().prop_flat_map(|alg| (
            common::element_strategy(alg.clone(), 3, 3),
            common::element_strategy(alg.clone(), 3, 3),
            common::element_strategy(alg, 3, 2),
        ))
    ) {
        let xy = sticky_product(&x, &y).unwrap();
        prop_assert_eq!(&xy, &sticky_product_subsets(&x, &y).unwrap());
        prop_assert_eq!(sticky_product(&xy, &z).unwrap(), sticky_product(&x, &sticky_product(&y, &z).unwrap()).unwrap());
        if x.algebra().is_commutative() {
            prop_assert_eq!(xy, sticky_product(&y, &x).unwrap());
        }
    }

    #[test]
    fn text_and_json_round_trip(x in any_builtin().prop_flat_map(|alg| common::element_strategy(alg, 4, 4))) {
        let alg = x.algebra().clone();
        prop_assert_eq!(&TensorElement::parse(&alg, &x.to_string()).unwrap(), &x);
        let json = serde_json::to_string(&x.to_json()).unwrap();
        prop_assert_eq!(&TensorElement::from_json(&alg, &serde_json::from_str(&json).unwrap()).unwrap(), &x);
    }
}
