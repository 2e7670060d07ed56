//! Dense square matrices over a (possibly noncommutative) ring of entries,
//! and sparse echelon bases over a field.

use std::collections::BTreeMap;

use crate::freealg::NcPolynomial;
use crate::scalars::{Field, RationalScalar};

/// Ring operations needed for matrix arithmetic. Multiplication need not
/// commute; products keep the left-to-right order of factors.
pub trait Entry: Clone + PartialEq {
    fn zero() -> Self;
    fn from_scalar(c: &RationalScalar) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn one() -> Self {
        Self::from_scalar(&RationalScalar::one())
    }
}

impl Entry for RationalScalar {
    fn zero() -> Self {
        RationalScalar::zero()
    }
    fn from_scalar(c: &RationalScalar) -> Self {
        c.clone()
    }
    fn add(&self, other: &Self) -> Self {
        RationalScalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RationalScalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RationalScalar::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        RationalScalar::is_zero(self)
    }
}

impl Entry for NcPolynomial<RationalScalar> {
    fn zero() -> Self {
        NcPolynomial::zero()
    }
    fn from_scalar(c: &RationalScalar) -> Self {
        NcPolynomial::constant(c.clone())
    }
    fn add(&self, other: &Self) -> Self {
        NcPolynomial::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        NcPolynomial::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        NcPolynomial::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        NcPolynomial::is_zero(self)
    }
}

/// Row-major square matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    size: usize,
    data: Vec<T>,
}

impl<T: Entry> Matrix<T> {
    pub fn zeros(size: usize) -> Self {
        Self { size, data: vec![T::zero(); size * size] }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                data.push(f(r, c));
            }
        }
        Self { size, data }
    }

    /// From nested rows; panics unless square.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "matrix must be square");
        Self { size, data: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.size + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.size + c] = v;
    }

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { size: self.size, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.size, |r, c| self.get(r, c).add(other.get(r, c)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.size, |r, c| self.get(r, c).sub(other.get(r, c)))
    }

    pub fn scale(&self, c: &RationalScalar) -> Self {
        let s = T::from_scalar(c);
        self.map(|v| s.mul(v))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * n + c;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other` with lexicographic pair indexing.
    /// Entry products are taken as `self_entry * other_entry`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.size, other.size);
        Self::from_fn(a * b, |r, c| self.get(r / b, c / b).mul(other.get(r % b, c % b)))
    }

    /// Nonzero entries as `(row, col, value)` in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k / self.size, k % self.size, v))
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }
}

/// A subspace of a coordinate space with basis indexed by `K`, kept in
/// row-echelon form. Each stored row has its largest key as pivot with
/// coefficient 1.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord + Clone, C: Field> {
    rows: BTreeMap<K, BTreeMap<K, C>>,
}

impl<K: Ord + Clone, C: Field> Default for EchelonBasis<K, C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, C: Field> EchelonBasis<K, C> {
    pub fn new() -> Self {
        Self { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> + '_ {
        self.rows.keys()
    }

    /// Subtracts basis rows until no key of `v` is a pivot.
    pub fn reduce(&self, mut v: BTreeMap<K, C>) -> BTreeMap<K, C> {
        let mut bound: Option<K> = None;
        loop {
            let next = match &bound {
                None => v.keys().next_back().cloned(),
                Some(b) => v.range(..b.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = v[&k].clone();
                for (rk, rc) in row.iter() {
                    let delta = rc.mul(&c).neg();
                    add_entry(&mut v, rk.clone(), delta);
                }
            }
            bound = Some(k);
        }
        v
    }

    pub fn contains(&self, v: BTreeMap<K, C>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: BTreeMap<K, C>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lc)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lc.inv().expect("nonzero pivot");
        let row = r.into_iter().map(|(k, c)| (k, c.mul(&inv))).collect();
        self.rows.insert(pivot, row);
        true
    }

    /// The unique reduced row-echelon basis: no pivot key occurs in any
    /// other row. Rows ordered by increasing pivot.
    pub fn reduced_rows(&self) -> Vec<BTreeMap<K, C>> {
        let mut done: EchelonBasis<K, C> = EchelonBasis::new();
        for (pivot, row) in self.rows.iter() {
            let mut tail = row.clone();
            tail.remove(pivot);
            let mut reduced = done.reduce(tail);
            reduced.insert(pivot.clone(), C::one());
            done.rows.insert(pivot.clone(), reduced);
        }
        // Lower pivots were fixed first; clear later pivots from earlier rows.
        let pivots: Vec<K> = done.rows.keys().cloned().collect();
        let mut out = Vec::with_capacity(pivots.len());
        for p in pivots.iter() {
            let mut row = done.rows[p].clone();
            row.remove(p);
            let mut others = done.clone();
            others.rows.remove(p);
            let mut r = others.reduce(row);
            r.insert(p.clone(), C::one());
            out.push(r);
        }
        out
    }
}

pub(crate) fn add_entry<K: Ord, C: Field>(m: &mut BTreeMap<K, C>, k: K, c: C) {
    if c.is_zero() {
        return;
    }
    match m.entry(k) {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> BTreeMap<u32, RationalScalar> {
        entries.iter().map(|(k, c)| (*k, RationalScalar::from_int(*c))).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(v(&[(1, 1), (2, 1)])));
        assert!(b.insert(v(&[(2, 1), (3, 1)])));
        assert!(!b.insert(v(&[(1, 1), (3, 1), (2, 2)])));
        assert_eq!(b.rank(), 2);
        assert!(b.contains(v(&[(1, -1), (3, 1)])));
        assert!(!b.contains(v(&[(1, 1)])));
    }

    #[test]
    fn reduced_rows_are_canonical() {
        let mut a = EchelonBasis::new();
        a.insert(v(&[(1, 1), (2, 1)]));
        a.insert(v(&[(2, 1), (3, 1)]));
        let mut b = EchelonBasis::new();
        b.insert(v(&[(1, -1), (3, 1)]));
        b.insert(v(&[(1, 2), (2, 2)]));
        assert_eq!(a.reduced_rows(), b.reduced_rows());
    }

    #[test]
    fn kron_layout() {
        let a: Matrix<RationalScalar> = Matrix::from_fn(2, |r, c| RationalScalar::from_int((2 * r + c) as i64));
        let i = Matrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), a.get(1, 0));
        assert!(k.get(0, 1).is_zero());
        assert_eq!(i.kron(&a).get(1, 1), a.get(1, 1));
    }
}
