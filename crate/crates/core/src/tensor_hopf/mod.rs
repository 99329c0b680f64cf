//! The tensor algebra `T(L)` over an Itô algebra `L`, with the sticky
//! shuffle product and its Hopf structure.
//!
//! Elements are finite linear combinations of [`Word`]s. Products are computed
//! by the three-term recursion on last letters: the last letter of the result
//! comes from the left factor, from the right factor, or from both multiplied
//! through the Itô table. A second, independent implementation sums over the
//! `3^N` ordered pairs of covering subsets and is kept for cross-checking.

mod antipode;
mod multi;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ito_algebra::{Differential, ItoAlgebra};
use crate::scalar::Scalar;

pub use antipode::{antipode, antipode_closed_form};
pub use multi::{
    coproduct, iterated_coproduct, multi_product, multi_product_truncated, multirank_component, recover_component,
    MultiTensorElement,
};
pub use text::{ElementJson, TermJson};

/// A tensor monomial `L₁⊗L₂⊗⋯⊗Lₘ`, stored as label indices. The empty word
/// is the unit direction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    fn pushed(&self, letter: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(letter);
        Word(v)
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

pub(crate) fn same_algebra(a: &Arc<ItoAlgebra>, b: &Arc<ItoAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn add_into<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn add_hashed(map: &mut HashMap<Word, Scalar>, key: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// An element of `T(L)`: a finitely supported map from words to scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    algebra: Arc<ItoAlgebra>,
    terms: BTreeMap<Word, Scalar>,
}

impl TensorElement {
    pub fn zero(algebra: &Arc<ItoAlgebra>) -> Self {
        TensorElement { algebra: algebra.clone(), terms: BTreeMap::new() }
    }

    /// The unit: the empty word with coefficient one.
    pub fn unit(algebra: &Arc<ItoAlgebra>) -> Self {
        Self::scalar(algebra, Scalar::one())
    }

    /// `c · 1`
    pub fn scalar(algebra: &Arc<ItoAlgebra>, c: Scalar) -> Self {
        Self::monomial(algebra, Word::empty(), c)
    }

    pub fn monomial(algebra: &Arc<ItoAlgebra>, word: Word, c: Scalar) -> Self {
        let mut out = Self::zero(algebra);
        add_into(&mut out.terms, word, c);
        out
    }

    /// `{w}` for a word given by label names.
    pub fn word(algebra: &Arc<ItoAlgebra>, labels: &[&str]) -> Result<Self> {
        let w = labels.iter().map(|l| algebra.index_of(l)).collect::<Result<Vec<_>>>()?;
        Ok(Self::monomial(algebra, Word(w), Scalar::one()))
    }

    /// Builds an element, validating every word against the algebra.
    pub fn from_terms(algebra: &Arc<ItoAlgebra>, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Result<Self> {
        let mut out = Self::zero(algebra);
        for (w, c) in terms {
            if let Some(&bad) = w.0.iter().find(|&&l| l >= algebra.dim()) {
                return Err(Error::ForeignIndex(bad));
            }
            add_into(&mut out.terms, w, c);
        }
        Ok(out)
    }

    /// The rank-one element `{d}` for a differential `d`.
    pub fn from_differential(algebra: &Arc<ItoAlgebra>, d: &Differential) -> Result<Self> {
        Self::from_terms(algebra, d.terms().map(|(i, c)| (Word(vec![i]), c.clone())))
    }

    pub fn algebra(&self) -> &Arc<ItoAlgebra> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest rank present, `None` for zero.
    pub fn max_rank(&self) -> Option<usize> {
        self.terms.keys().map(Word::rank).max()
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            add_into(&mut out.terms, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = Self::zero(&self.algebra);
        for (w, v) in &self.terms {
            add_into(&mut out.terms, w.clone(), v * c);
        }
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> TensorElement {
        let mut out = Self::zero(&self.algebra);
        for (w, v) in &self.terms {
            add_into(&mut out.terms, w.clone(), f(v));
        }
        out
    }

    fn check(&self, other: &TensorElement) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub(crate) fn push_term(&mut self, w: Word, c: Scalar) {
        add_into(&mut self.terms, w, c);
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({})", self.render())
    }
}

/// How coinciding letters combine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// Sticky shuffle: coinciding letters multiply through the Itô table.
    Sticky,
    /// Plain shuffle: all letter products are treated as zero.
    Shuffle,
}

/// Product of two words by the last-letter recursion, dropping words longer
/// than `max_rank`. Ranks only grow along the recursion, so the truncation
/// is exact on the surviving words.
pub(crate) fn word_product(
    alg: &ItoAlgebra,
    u: &[usize],
    v: &[usize],
    mode: ProductMode,
    max_rank: usize,
) -> HashMap<Word, Scalar> {
    let n = v.len();
    let prefix = |s: &[usize]| -> HashMap<Word, Scalar> {
        let mut m = HashMap::new();
        if s.len() <= max_rank {
            m.insert(Word(s.to_vec()), Scalar::one());
        }
        m
    };
    // prev[j] = u[..i-1] · v[..j]
    let mut prev: Vec<HashMap<Word, Scalar>> = (0..=n).map(|j| prefix(&v[..j])).collect();
    for i in 1..=u.len() {
        let mut cur: Vec<HashMap<Word, Scalar>> = Vec::with_capacity(n + 1);
        cur.push(prefix(&u[..i]));
        let a = u[i - 1];
        for j in 1..=n {
            let b = v[j - 1];
            let mut cell = HashMap::new();
            for (w, c) in &prev[j] {
                if w.rank() < max_rank {
                    add_hashed(&mut cell, w.pushed(a), c.clone());
                }
            }
            for (w, c) in &cur[j - 1] {
                if w.rank() < max_rank {
                    add_hashed(&mut cell, w.pushed(b), c.clone());
                }
            }
            if mode == ProductMode::Sticky {
                let stick = alg.product(a, b);
                if !stick.is_zero() {
                    for (w, c) in &prev[j - 1] {
                        if w.rank() < max_rank {
                            for (k, ck) in stick.terms() {
                                add_hashed(&mut cell, w.pushed(k), c * ck);
                            }
                        }
                    }
                }
            }
            cur.push(cell);
        }
        prev = cur;
    }
    prev.pop().unwrap_or_default()
}

fn product_impl(x: &TensorElement, y: &TensorElement, mode: ProductMode, max_rank: usize) -> Result<TensorElement> {
    x.check(y)?;
    let mut acc: HashMap<Word, Scalar> = HashMap::new();
    for (wu, cu) in &x.terms {
        for (wv, cv) in &y.terms {
            let coef = cu * cv;
            for (w, c) in word_product(&x.algebra, &wu.0, &wv.0, mode, max_rank) {
                add_hashed(&mut acc, w, &c * &coef);
            }
        }
    }
    Ok(TensorElement { algebra: x.algebra.clone(), terms: acc.into_iter().collect() })
}

/// The sticky shuffle product.
pub fn sticky_product(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    product_impl(x, y, ProductMode::Sticky, usize::MAX)
}

/// The plain (non-sticky) shuffle product.
pub fn shuffle_product(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    product_impl(x, y, ProductMode::Shuffle, usize::MAX)
}

/// Product in either mode.
pub fn product(x: &TensorElement, y: &TensorElement, mode: ProductMode) -> Result<TensorElement> {
    product_impl(x, y, mode, usize::MAX)
}

/// The sticky product restricted to ranks `≤ max_rank`.
pub fn sticky_product_truncated(x: &TensorElement, y: &TensorElement, max_rank: usize) -> Result<TensorElement> {
    product_impl(x, y, ProductMode::Sticky, max_rank)
}

/// The sticky product via the sum over ordered pairs `(A, B)` of subsets
/// with `A ∪ B = {1..N}`; doubly occupied slots multiply through the table.
pub fn sticky_product_subsets(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    subsets_impl(x, y, ProductMode::Sticky)
}

/// The plain shuffle product via the `2^N` disjoint subset pairs.
pub fn shuffle_product_subsets(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    subsets_impl(x, y, ProductMode::Shuffle)
}

fn subsets_impl(x: &TensorElement, y: &TensorElement, mode: ProductMode) -> Result<TensorElement> {
    x.check(y)?;
    let alg = &*x.algebra;
    let mut out = TensorElement::zero(&x.algebra);
    for (wu, cu) in &x.terms {
        for (wv, cv) in &y.terms {
            let coef = cu * cv;
            let (p, q) = (wu.rank(), wv.rank());
            let lo = p.max(q);
            let hi = match mode {
                ProductMode::Sticky => p + q,
                ProductMode::Shuffle => {
                    if p + q < lo {
                        continue;
                    }
                    p + q
                }
            };
            for n in lo..=hi {
                if mode == ProductMode::Shuffle && n != p + q {
                    continue;
                }
                let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
                for a in 0..=full {
                    if a.count_ones() as usize != p {
                        continue;
                    }
                    for b in 0..=full {
                        if b.count_ones() as usize != q || a | b != full {
                            continue;
                        }
                        if mode == ProductMode::Shuffle && a & b != 0 {
                            continue;
                        }
                        // slot-by-slot expansion as a list of (partial word, coefficient)
                        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coef.clone())];
                        let (mut iu, mut iv) = (0, 0);
                        for slot in 0..n {
                            let in_a = a >> slot & 1 == 1;
                            let in_b = b >> slot & 1 == 1;
                            let letter = match (in_a, in_b) {
                                (true, false) => {
                                    iu += 1;
                                    Differential::basis(wu.0[iu - 1])
                                }
                                (false, true) => {
                                    iv += 1;
                                    Differential::basis(wv.0[iv - 1])
                                }
                                _ => {
                                    iu += 1;
                                    iv += 1;
                                    alg.product(wu.0[iu - 1], wv.0[iv - 1]).clone()
                                }
                            };
                            partial = partial
                                .into_iter()
                                .flat_map(|(w, c)| {
                                    letter.terms().map(move |(k, ck)| {
                                        let mut w2 = w.clone();
                                        w2.push(k);
                                        (w2, &c * ck)
                                    })
                                })
                                .collect();
                        }
                        for (w, c) in partial {
                            out.push_term(Word(w), c);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `xⁿ = x · xⁿ⁻¹`, with `x⁰` the unit.
pub fn power(x: &TensorElement, n: usize) -> TensorElement {
    power_truncated(x, n, usize::MAX)
}

/// `xⁿ` restricted to ranks `≤ max_rank`. Since the rank of a product is at
/// least the rank of either factor, the truncated power equals the rank
/// filter of the full power.
pub fn power_truncated(x: &TensorElement, n: usize, max_rank: usize) -> TensorElement {
    let mut acc = component_up_to(&TensorElement::unit(&x.algebra), max_rank);
    let base = component_up_to(x, max_rank);
    for _ in 0..n {
        acc = product_impl(&base, &acc, ProductMode::Sticky, max_rank).expect("same algebra");
    }
    acc
}

/// The homogeneous component of rank `rank`.
pub fn component(x: &TensorElement, rank: usize) -> TensorElement {
    let mut out = TensorElement::zero(&x.algebra);
    for (w, c) in &x.terms {
        if w.rank() == rank {
            out.terms.insert(w.clone(), c.clone());
        }
    }
    out
}

fn component_up_to(x: &TensorElement, max_rank: usize) -> TensorElement {
    let mut out = TensorElement::zero(&x.algebra);
    for (w, c) in &x.terms {
        if w.rank() <= max_rank {
            out.terms.insert(w.clone(), c.clone());
        }
    }
    out
}

/// The counit: the coefficient of the empty word.
pub fn counit(x: &TensorElement) -> Scalar {
    x.coefficient(&Word::empty())
}
