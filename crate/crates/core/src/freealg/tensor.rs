use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::format::{word_json, write_signed_sum};
use super::poly::NcPolynomial;
use super::rewrite::AlgebraPresentation;
use super::word::Word;
use crate::scalars::{Field, RationalScalar};

/// Key of a pure tensor of words, one word per factor.
pub type TensorKey = Vec<Word>;

/// Element of a tensor product of presented algebras, stored as a
/// combination of pure tensors of words.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement<C: Field = RationalScalar> {
    arity: usize,
    terms: BTreeMap<TensorKey, C>,
}

impl<C: Field> TensorElement<C> {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TensorKey, &C)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[Word]) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, key: TensorKey, c: C) {
        assert_eq!(key.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, d) in other.terms.iter() {
            self.add_term(k.clone(), d.mul(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &C::one());
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(other, &C::one().neg());
        r
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut r = Self::zero(self.arity);
        r.add_scaled(self, c);
        r
    }

    /// Outer product of polynomials, one per factor (no reduction).
    pub fn pure(parts: &[NcPolynomial<C>]) -> Self {
        let mut acc = Self { arity: 0, terms: BTreeMap::from([(Vec::new(), C::one())]) };
        for p in parts {
            let mut next = Self::zero(acc.arity + 1);
            for (k, c) in acc.terms.iter() {
                for (w, d) in p.terms() {
                    let mut key = k.clone();
                    key.push(w.clone());
                    next.add_term(key, c.mul(d));
                }
            }
            acc = next;
        }
        acc
    }

    /// Replaces factor `slot` of every pure tensor by `f(word)`, an element
    /// of arity `m`; the result has arity `arity - 1 + m`.
    pub fn expand_slot(&self, slot: usize, f: impl Fn(&Word) -> TensorElement<C>) -> Self {
        let mut cache: BTreeMap<Word, TensorElement<C>> = BTreeMap::new();
        let mut out: Option<Self> = None;
        for (key, c) in self.terms.iter() {
            let image = cache.entry(key[slot].clone()).or_insert_with(|| f(&key[slot]));
            let res = out.get_or_insert_with(|| Self::zero(self.arity - 1 + image.arity));
            for (k2, d) in image.terms.iter() {
                let mut nk = key[..slot].to_vec();
                nk.extend_from_slice(k2);
                nk.extend_from_slice(&key[slot + 1..]);
                res.add_term(nk, c.mul(d));
            }
        }
        out.unwrap_or_else(|| Self::zero(self.arity))
    }

    /// Collapses a single-factor element to a polynomial.
    pub fn into_polynomial(&self) -> NcPolynomial<C> {
        assert_eq!(self.arity, 1);
        NcPolynomial::from_terms(self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())))
    }
}

impl<C: Field> fmt::Display for TensorElement<C> {
    /// Terms like `(q^-1)*[t[1,1] | t[1,2]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        struct Pure<'a>(&'a [Word]);
        impl fmt::Display for Pure<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
                write!(f, "[{}]", parts.join(" | "))
            }
        }
        write_signed_sum(f, self.terms.iter().rev().map(|(k, c)| (Pure(k), c, false)))
    }
}

impl<C: Field> fmt::Debug for TensorElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TensorElement<RationalScalar> {
    /// `[{"coeff": "...", "factors": [word, word, ...]}, ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(k, c)| {
                    json!({
                        "coeff": c.to_string(),
                        "factors": k.iter().map(word_json).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

/// Tensor product of presented algebras: letters of different factors
/// commute, and each factor keeps its own relations.
#[derive(Clone, Copy)]
pub struct TensorAlgebra<'a, C: Field = RationalScalar> {
    factors: &'a [&'a AlgebraPresentation<C>],
}

impl<'a, C: Field> TensorAlgebra<'a, C> {
    pub fn new(factors: &'a [&'a AlgebraPresentation<C>]) -> Self {
        Self { factors }
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, k: usize) -> &AlgebraPresentation<C> {
        self.factors[k]
    }

    pub fn one(&self) -> TensorElement<C> {
        TensorElement::pure(&vec![NcPolynomial::one(); self.arity()])
    }

    /// Pure tensor with every factor reduced to normal form.
    pub fn element(&self, parts: &[NcPolynomial<C>]) -> TensorElement<C> {
        assert_eq!(parts.len(), self.arity(), "tensor arity mismatch");
        let reduced: Vec<_> =
            parts.iter().zip(self.factors).map(|(p, a)| a.normal_form(p)).collect();
        TensorElement::pure(&reduced)
    }

    /// `p` in factor `slot`, `1` elsewhere.
    pub fn embed(&self, slot: usize, p: &NcPolynomial<C>) -> TensorElement<C> {
        let mut parts = vec![NcPolynomial::one(); self.arity()];
        parts[slot] = p.clone();
        self.element(&parts)
    }

    pub fn reduce(&self, e: &TensorElement<C>) -> TensorElement<C> {
        let mut out = TensorElement::zero(self.arity());
        for (k, c) in e.terms() {
            let parts: Vec<_> = k.iter().map(|w| NcPolynomial::word(w.clone())).collect();
            out.add_scaled(&self.element(&parts), c);
        }
        out
    }

    /// Product with the interchange law `(a⊗b)(c⊗d) = ac⊗bd`, each factor
    /// reduced to normal form.
    pub fn multiply(&self, u: &TensorElement<C>, v: &TensorElement<C>) -> TensorElement<C> {
        let mut out = TensorElement::zero(self.arity());
        let mut cache: BTreeMap<(Vec<Word>, Vec<Word>), TensorElement<C>> = BTreeMap::new();
        for (ku, cu) in u.terms() {
            for (kv, cv) in v.terms() {
                let prod = cache.entry((ku.clone(), kv.clone())).or_insert_with(|| {
                    let parts: Vec<_> =
                        ku.iter().zip(kv).map(|(a, b)| NcPolynomial::word(a.concat(b))).collect();
                    self.element(&parts)
                });
                out.add_scaled(prod, &cu.mul(cv));
            }
        }
        out
    }
}
