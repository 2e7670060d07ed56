use std::collections::BTreeMap;

use super::word::{Family, GeneratorId, Word};
use crate::scalars::{Field, RationalScalar};

/// A finite linear combination of words with coefficients in `C`.
///
/// Zero coefficients are never stored. Multiplication is concatenation in the
/// free algebra; reduction modulo relations happens in a presentation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NcPolynomial<C: Field = RationalScalar> {
    terms: BTreeMap<Word, C>,
}

impl<C: Field> Default for NcPolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Field> NcPolynomial<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, C::one())
    }

    pub fn generator(g: GeneratorId) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
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

    /// Terms in increasing degree-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &C)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, C> {
        self.terms
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// The constant term, if the polynomial is a scalar.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&Word::empty()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
        if c.is_zero() {
            return;
        }
        for (w, d) in other.terms.iter() {
            self.add_term(w.clone(), d.mul(c));
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

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, d)| (w.clone(), d.mul(c))).collect() }
    }

    /// Product in the free algebra (no reduction).
    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                r.add_term(a.concat(b), ca.mul(cb));
            }
        }
        r
    }

    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> NcPolynomial<D> {
        NcPolynomial::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Field, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<NcPolynomial<D>, E> {
        let mut out = NcPolynomial::zero();
        for (w, c) in self.terms.iter() {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn map_letters(&self, f: impl Fn(GeneratorId) -> GeneratorId) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.map_letters(&f), c.clone())))
    }

    /// Re-tags every letter to the given family (e.g. `x -> t`).
    pub fn retag(&self, family: Family) -> Self {
        self.map_letters(|g| g.with_family(family))
    }

    /// Extends `image` on letters to an algebra homomorphism of free algebras.
    pub fn substitute(&self, image: impl Fn(GeneratorId) -> NcPolynomial<C>) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms.iter() {
            let mut acc = Self::constant(c.clone());
            for g in w.letters() {
                acc = acc.mul(&image(*g));
            }
            out.add_scaled(&acc, &C::one());
        }
        out
    }

    /// Weight of every term, if they all agree.
    pub fn homogeneous_weight(&self, n: usize) -> Option<Vec<i32>> {
        let mut it = self.terms.keys().map(|w| w.weight(n));
        let first = it.next().unwrap_or_else(|| vec![0; n]);
        it.all(|w| w == first).then_some(first)
    }

    /// Highest term under the natural degree-lexicographic order.
    pub fn leading(&self) -> Option<(&Word, &C)> {
        self.terms.iter().next_back()
    }

    pub fn letters(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.terms.keys().flat_map(|w| w.letters().iter().copied())
    }
}
