//! The antipode of the sticky shuffle Hopf algebra.
//!
//! [`antipode`] solves `m∘(S⊗Id)∘Δ = η∘ε` word by word, which pins `S` down
//! uniquely. [`antipode_closed_form`] evaluates the explicit sum over
//! compositions of the word and is checked against it in the tests.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use super::{sticky_product, TensorElement, Word};
use crate::ito_algebra::{Differential, ItoAlgebra};
use crate::scalar::Scalar;

/// The antipode, derived recursively from the Hopf axiom:
/// `S(w) = −Σ_{j<m} S(w₁⋯wⱼ)·{wⱼ₊₁⋯wₘ}` with `S(1) = 1`.
pub fn antipode(x: &TensorElement) -> TensorElement {
    let alg = x.algebra();
    let mut memo: HashMap<Word, TensorElement> = HashMap::new();
    let mut out = TensorElement::zero(alg);
    for (w, c) in x.terms() {
        let s = antipode_word(alg, w, &mut memo);
        out = out.add(&s.scale(c)).expect("same algebra");
    }
    out
}

fn antipode_word(alg: &Arc<ItoAlgebra>, w: &Word, memo: &mut HashMap<Word, TensorElement>) -> TensorElement {
    if let Some(s) = memo.get(w) {
        return s.clone();
    }
    let letters = w.letters();
    let result = if letters.is_empty() {
        TensorElement::unit(alg)
    } else {
        let mut acc = TensorElement::zero(alg);
        for j in 0..letters.len() {
            let head = antipode_word(alg, &Word(letters[..j].to_vec()), memo);
            let tail = TensorElement::monomial(alg, Word(letters[j..].to_vec()), Scalar::one());
            acc = acc.add(&sticky_product(&head, &tail).expect("same algebra")).expect("same algebra");
        }
        acc.scale(&-Scalar::one())
    };
    memo.insert(w.clone(), result.clone());
    result
}

/// The closed formula: `(−1)ᵐ S{L₁⊗⋯⊗Lₘ}` is the sum over all ways of cutting
/// the word into consecutive blocks of the tensor whose factors are the block
/// products `Lₖ₊₁⋯Lₗ`, taken in reverse block order. The single-letter
/// blocks give the reversed word.
pub fn antipode_closed_form(x: &TensorElement) -> TensorElement {
    let alg = x.algebra();
    let mut out = TensorElement::zero(alg);
    for (w, c) in x.terms() {
        let m = w.rank();
        let sign = if m % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let coef = c * &sign;
        if m == 0 {
            out.push_term(Word::empty(), coef);
            continue;
        }
        // each of the m-1 gaps is either a cut or not
        for mask in 0u64..(1u64 << (m - 1)) {
            let mut blocks: Vec<Differential> = Vec::new();
            let mut start = 0;
            for end in 1..=m {
                if end == m || mask >> (end - 1) & 1 == 1 {
                    blocks.push(block_product(alg, &w.letters()[start..end]));
                    start = end;
                }
            }
            let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coef.clone())];
            for b in blocks.iter().rev() {
                partial = partial
                    .into_iter()
                    .flat_map(|(ws, c)| {
                        b.terms().map(move |(k, ck)| {
                            let mut ws2 = ws.clone();
                            ws2.push(k);
                            (ws2, &c * ck)
                        })
                    })
                    .collect();
            }
            for (ws, c) in partial {
                out.push_term(Word(ws), c);
            }
        }
    }
    out
}

fn block_product(alg: &ItoAlgebra, letters: &[usize]) -> Differential {
    let mut acc = Differential::basis(letters[0]);
    for &l in &letters[1..] {
        acc = alg.multiply(&acc, &Differential::basis(l)).expect("letters belong to the algebra");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ito_algebra::builtin_algebra;

    fn alg(name: &str) -> Arc<ItoAlgebra> {
        Arc::new(builtin_algebra(name, None).unwrap())
    }

    #[test]
    fn antipode_of_unit_and_letter() {
        let a = alg("classical1d");
        let one = TensorElement::unit(&a);
        assert_eq!(antipode(&one), one);
        let dx = TensorElement::parse(&a, "{dX}").unwrap();
        assert_eq!(antipode(&dx), dx.scale(&-Scalar::one()));
    }

    #[test]
    fn rank_two_has_sticky_correction() {
        let a = alg("classical1d");
        let x = TensorElement::parse(&a, "{dX*dX}").unwrap();
        assert_eq!(antipode(&x), TensorElement::parse(&a, "{dX*dX} + {dT}").unwrap());
    }

    #[test]
    fn closed_form_matches_recursion() {
        let a = alg("quantumAhat");
        for text in ["{dAhat*dAhatDag}", "{dAhatDag*dAhat*dAhatDag}", "{dAhat*dAhatDag*dT*dAhat}", "{dT*dAhatDag}"] {
            let x = TensorElement::parse(&a, text).unwrap();
            assert_eq!(antipode(&x), antipode_closed_form(&x), "{text}");
        }
    }
}
