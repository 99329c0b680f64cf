#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;
use sticky_hopf::tensor_hopf::{TensorElement, Word};
use sticky_hopf::{Builtin, GaussianRational, ItoAlgebra, Scalar};

/// Every built-in table, with σ² = 2 where one is needed.
pub fn builtins() -> Vec<Arc<ItoAlgebra>> {
    let s2 = BigRational::from_integer(2.into());
    Builtin::ALL.iter().map(|b| Arc::new(b.algebra(Some(&s2)).unwrap())).collect()
}

pub fn algebra(b: Builtin) -> Arc<ItoAlgebra> {
    let s2 = BigRational::from_integer(2.into());
    Arc::new(b.algebra(Some(&s2)).unwrap())
}

/// A small coefficient, sometimes complex, sometimes carrying σ±.
pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    let mut c = rng.gen_range(-3i64..=3);
    if c == 0 {
        c = 1;
    }
    let im = if rng.gen_bool(0.2) { rng.gen_range(-2i64..=2) } else { 0 };
    let coef = GaussianRational::new(BigRational::from_integer(c.into()), BigRational::from_integer(im.into()));
    Scalar::monomial(coef, rng.gen_range(0..=1), rng.gen_range(0..=1))
}

pub fn random_word(rng: &mut impl Rng, dim: usize, max_rank: usize) -> Word {
    let len = rng.gen_range(0..=max_rank);
    Word((0..len).map(|_| rng.gen_range(0..dim)).collect())
}

/// Up to `max_terms` random terms of rank at most `max_rank`.
pub fn random_element(rng: &mut impl Rng, alg: &Arc<ItoAlgebra>, max_rank: usize, max_terms: usize) -> TensorElement {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(Word, Scalar)> =
        (0..n).map(|_| (random_word(rng, alg.dim(), max_rank), random_scalar(rng))).collect();
    TensorElement::from_terms(alg, terms).unwrap()
}

/// Proptest strategy for elements with at most `max_terms` terms of rank at most `max_rank`.
pub fn element_strategy(alg: Arc<ItoAlgebra>, max_rank: usize, max_terms: usize) -> impl Strategy<Value = TensorElement> {
    let dim = alg.dim();
    let term = (
        prop::collection::vec(0..dim, 0..=max_rank),
        -3i64..=3,
        -1i64..=1,
        0u32..=1,
        0u32..=1,
    );
    prop::collection::vec(term, 1..=max_terms).prop_map(move |ts| {
        let terms = ts.into_iter().map(|(w, re, im, ep, em)| {
            let c = GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()));
            (Word(w), Scalar::monomial(c, ep, em))
        });
        TensorElement::from_terms(&alg, terms).unwrap()
    })
}
