//! Tensor powers of `T(L)`: the coproduct, its iterates, the slotwise product
//! and the recovery formula.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::One;

use super::{add_into, same_algebra, word_product, ProductMode, TensorElement, Word};
use crate::error::{Error, Result};
use crate::ito_algebra::ItoAlgebra;
use crate::scalar::Scalar;

/// An element of the `N`-th tensor power of `T(L)`. Arity 0 is allowed and
/// holds a bare scalar under the empty tuple, which is how `Δ⁽⁰⁾ = ε` is
/// represented.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiTensorElement {
    algebra: Arc<ItoAlgebra>,
    arity: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl MultiTensorElement {
    pub fn zero(algebra: &Arc<ItoAlgebra>, arity: usize) -> Self {
        MultiTensorElement { algebra: algebra.clone(), arity, terms: BTreeMap::new() }
    }

    /// `1⊗1⊗⋯⊗1`
    pub fn unit(algebra: &Arc<ItoAlgebra>, arity: usize) -> Self {
        let mut out = Self::zero(algebra, arity);
        out.terms.insert(vec![Word::empty(); arity], Scalar::one());
        out
    }

    /// Pure tensor `x₁⊗x₂⊗⋯⊗x_N` of elements of `T(L)`.
    pub fn tensor(factors: &[&TensorElement]) -> Result<Self> {
        let first = factors.first().ok_or(Error::ArityMismatch(0, 1))?;
        let mut acc: Vec<(Vec<Word>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for f in factors {
            if !same_algebra(first.algebra(), f.algebra()) {
                return Err(Error::AlgebraMismatch);
            }
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, cw) in f.terms() {
                    let mut ws2 = ws.clone();
                    ws2.push(w.clone());
                    next.push((ws2, c * cw));
                }
            }
            acc = next;
        }
        let mut out = Self::zero(first.algebra(), factors.len());
        for (ws, c) in acc {
            add_into(&mut out.terms, ws, c);
        }
        Ok(out)
    }

    pub fn from_terms(
        algebra: &Arc<ItoAlgebra>,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<Word>, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(algebra, arity);
        for (ws, c) in terms {
            if ws.len() != arity {
                return Err(Error::ArityMismatch(ws.len(), arity));
            }
            if let Some(&bad) = ws.iter().flat_map(|w| w.0.iter()).find(|&&l| l >= algebra.dim()) {
                return Err(Error::ForeignIndex(bad));
            }
            add_into(&mut out.terms, ws, c);
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<ItoAlgebra> {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, words: &[Word]) -> Scalar {
        self.terms.get(words).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &MultiTensorElement) -> Result<MultiTensorElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (ws, c) in &other.terms {
            add_into(&mut out.terms, ws.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> MultiTensorElement {
        let mut out = Self::zero(&self.algebra, self.arity);
        for (ws, v) in &self.terms {
            add_into(&mut out.terms, ws.clone(), v * c);
        }
        out
    }

    /// Applies `Δ` to one slot, raising the arity by one.
    pub fn coproduct_at(&self, slot: usize) -> Result<MultiTensorElement> {
        if slot >= self.arity {
            return Err(Error::ArityMismatch(slot + 1, self.arity));
        }
        let mut out = Self::zero(&self.algebra, self.arity + 1);
        for (ws, c) in &self.terms {
            let w = &ws[slot].0;
            for cut in 0..=w.len() {
                let mut ws2 = Vec::with_capacity(self.arity + 1);
                ws2.extend_from_slice(&ws[..slot]);
                ws2.push(Word(w[..cut].to_vec()));
                ws2.push(Word(w[cut..].to_vec()));
                ws2.extend_from_slice(&ws[slot + 1..]);
                add_into(&mut out.terms, ws2, c.clone());
            }
        }
        Ok(out)
    }

    /// Applies a linear map `T(L) → T(L)`, given on words, to one slot.
    pub fn map_slot(&self, slot: usize, f: impl Fn(&Word) -> TensorElement) -> Result<MultiTensorElement> {
        if slot >= self.arity {
            return Err(Error::ArityMismatch(slot + 1, self.arity));
        }
        let mut out = Self::zero(&self.algebra, self.arity);
        let mut cache: HashMap<Word, TensorElement> = HashMap::new();
        for (ws, c) in &self.terms {
            let image = cache.entry(ws[slot].clone()).or_insert_with(|| f(&ws[slot]));
            for (w, cw) in image.terms() {
                let mut ws2 = ws.clone();
                ws2[slot] = w.clone();
                add_into(&mut out.terms, ws2, c * cw);
            }
        }
        Ok(out)
    }

    /// The multiplication map `x₁⊗⋯⊗x_N ↦ x₁x₂⋯x_N` into `T(L)`.
    pub fn multiply_out(&self) -> TensorElement {
        let mut out = TensorElement::zero(&self.algebra);
        for (ws, c) in &self.terms {
            let mut acc = TensorElement::scalar(&self.algebra, c.clone());
            for w in ws {
                let wel = TensorElement::monomial(&self.algebra, w.clone(), Scalar::one());
                acc = super::sticky_product(&acc, &wel).expect("same algebra");
            }
            out = out.add(&acc).expect("same algebra");
        }
        out
    }

    /// Collapses an element whose slots all have rank one into the rank-`N`
    /// tensor obtained by concatenation.
    pub fn concatenate(&self) -> TensorElement {
        let mut out = TensorElement::zero(&self.algebra);
        for (ws, c) in &self.terms {
            let w: Vec<usize> = ws.iter().flat_map(|w| w.0.iter().copied()).collect();
            out.push_term(Word(w), c.clone());
        }
        out
    }

    fn check(&self, other: &MultiTensorElement) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        Ok(())
    }
}

/// `Δ(L₁⊗⋯⊗Lₘ) = Σⱼ {L₁⊗⋯⊗Lⱼ}⊗{Lⱼ₊₁⊗⋯⊗Lₘ}`, deconcatenation.
pub fn coproduct(x: &TensorElement) -> MultiTensorElement {
    iterated_coproduct(x, 2)
}

/// `Δ⁽ᴺ⁾`, built as `(Δ⊗Id)∘Δ⁽ᴺ⁻¹⁾`. `N = 1` is the identity embedding and
/// `N = 0` the counit.
pub fn iterated_coproduct(x: &TensorElement, n: usize) -> MultiTensorElement {
    if n == 0 {
        let mut out = MultiTensorElement::zero(x.algebra(), 0);
        add_into(&mut out.terms, Vec::new(), super::counit(x));
        return out;
    }
    let mut acc = MultiTensorElement::zero(x.algebra(), 1);
    for (w, c) in x.terms() {
        acc.terms.insert(vec![w.clone()], c.clone());
    }
    for _ in 2..=n {
        acc = acc.coproduct_at(0).expect("slot 0 exists");
    }
    acc
}

/// Slotwise sticky product `(a⊗a')(b⊗b') = ab⊗a'b'`.
pub fn multi_product(u: &MultiTensorElement, v: &MultiTensorElement) -> Result<MultiTensorElement> {
    multi_product_truncated(u, v, usize::MAX)
}

/// Slotwise product keeping only slot words of rank `≤ max_rank`. Slot ranks
/// never decrease under multiplication, so this is the exact filter.
pub fn multi_product_truncated(
    u: &MultiTensorElement,
    v: &MultiTensorElement,
    max_rank: usize,
) -> Result<MultiTensorElement> {
    u.check(v)?;
    let alg = &*u.algebra;
    let mut slot_cache: HashMap<(Word, Word), Vec<(Word, Scalar)>> = HashMap::new();
    let mut acc: HashMap<Vec<Word>, Scalar> = HashMap::new();
    for (wu, cu) in &u.terms {
        for (wv, cv) in &v.terms {
            let mut partial: Vec<(Vec<Word>, Scalar)> = vec![(Vec::with_capacity(u.arity), cu * cv)];
            for slot in 0..u.arity {
                let key = (wu[slot].clone(), wv[slot].clone());
                let prods = slot_cache.entry(key).or_insert_with(|| {
                    let mut p: Vec<_> =
                        word_product(alg, &wu[slot].0, &wv[slot].0, ProductMode::Sticky, max_rank).into_iter().collect();
                    p.sort_by(|a, b| a.0.cmp(&b.0));
                    p
                });
                if prods.is_empty() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::with_capacity(partial.len() * prods.len());
                for (ws, c) in &partial {
                    for (w, cw) in prods.iter() {
                        let mut ws2 = ws.clone();
                        ws2.push(w.clone());
                        next.push((ws2, c * cw));
                    }
                }
                partial = next;
            }
            for (ws, c) in partial {
                let e = acc.entry(ws).or_default();
                *e += &c;
            }
        }
    }
    let mut out = MultiTensorElement::zero(&u.algebra, u.arity);
    for (ws, c) in acc {
        add_into(&mut out.terms, ws, c);
    }
    Ok(out)
}

/// Restriction of `u` to the given multirank.
pub fn multirank_component(u: &MultiTensorElement, ranks: &[usize]) -> Result<MultiTensorElement> {
    if ranks.len() != u.arity {
        return Err(Error::ArityMismatch(ranks.len(), u.arity));
    }
    let mut out = MultiTensorElement::zero(&u.algebra, u.arity);
    for (ws, c) in &u.terms {
        if ws.iter().zip(ranks).all(|(w, &r)| w.rank() == r) {
            out.terms.insert(ws.clone(), c.clone());
        }
    }
    Ok(out)
}

/// The recovery formula: the rank-`N` component of `x` read off from the
/// all-ones multirank component of `Δ⁽ᴺ⁾x`.
pub fn recover_component(x: &TensorElement, n: usize) -> TensorElement {
    let d = iterated_coproduct(x, n);
    let ones = multirank_component(&d, &vec![1; n]).expect("arity matches");
    if n == 0 {
        return TensorElement::scalar(x.algebra(), ones.coefficient(&[]));
    }
    ones.concatenate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ito_algebra::builtin_algebra;

    fn alg(name: &str) -> Arc<ItoAlgebra> {
        Arc::new(builtin_algebra(name, None).unwrap())
    }

    fn el(a: &Arc<ItoAlgebra>, text: &str) -> TensorElement {
        TensorElement::parse(a, text).unwrap()
    }

    fn w(a: &ItoAlgebra, labels: &[&str]) -> Word {
        Word(labels.iter().map(|l| a.index_of(l).unwrap()).collect())
    }

    #[test]
    fn coproduct_small_cases() {
        let a = alg("classicalPlanar");
        let one = TensorElement::unit(&a);
        assert_eq!(coproduct(&one), MultiTensorElement::unit(&a, 2));

        let d = coproduct(&el(&a, "{dX}"));
        assert_eq!(d.len(), 2);
        assert_eq!(d.coefficient(&[Word::empty(), w(&a, &["dX"])]), Scalar::one());
        assert_eq!(d.coefficient(&[w(&a, &["dX"]), Word::empty()]), Scalar::one());

        let d = coproduct(&el(&a, "{dX*dY}"));
        assert_eq!(d.len(), 3);
        assert_eq!(d.coefficient(&[w(&a, &["dX"]), w(&a, &["dY"])]), Scalar::one());
    }

    #[test]
    fn iterated_coproduct_counts() {
        let a = alg("classicalPlanar");
        let x = el(&a, "{dX*dY}");
        assert_eq!(iterated_coproduct(&x, 1).len(), 1);
        assert_eq!(iterated_coproduct(&x, 3).len(), 6);
        let y = el(&a, "{dX*dY*dT}");
        let c = multirank_component(&iterated_coproduct(&y, 3), &[1, 1, 1]).unwrap();
        let expected = MultiTensorElement::tensor(&[&el(&a, "{dX}"), &el(&a, "{dY}"), &el(&a, "{dT}")]).unwrap();
        assert_eq!(c, expected);
    }

    #[test]
    fn unit_slots_multiply() {
        let a = alg("classicalPlanar");
        let one = TensorElement::unit(&a);
        let u = MultiTensorElement::tensor(&[&one, &el(&a, "{dX}")]).unwrap();
        let v = MultiTensorElement::tensor(&[&el(&a, "{dY}"), &one]).unwrap();
        let expected = MultiTensorElement::tensor(&[&el(&a, "{dY}"), &el(&a, "{dX}")]).unwrap();
        assert_eq!(multi_product(&u, &v).unwrap(), expected);
    }

    #[test]
    fn arity_mismatch() {
        let a = alg("classical1d");
        let r = multi_product(&MultiTensorElement::unit(&a, 2), &MultiTensorElement::unit(&a, 3));
        assert_eq!(r.unwrap_err(), Error::ArityMismatch(2, 3));
    }

    #[test]
    fn recovery_small() {
        let a = alg("classical1d");
        let x = el(&a, "3 + {dX} - 2{dX*dT} + {dT*dX*dX}");
        for n in 0..=4 {
            assert_eq!(recover_component(&x, n), super::super::component(&x, n), "N = {n}");
        }
    }
}
