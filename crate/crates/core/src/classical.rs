//! The classical limit `q = 1`: commutative polynomials over Q and exact
//! Hilbert and weight tables of commutative quotients, computed by dense
//! Gaussian elimination on monomial coordinates. Shares no rewriting or
//! elimination code with the quantum side.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::freealg::{AlgebraPresentation, GeneratorId, NcPolynomial, RewriteRule};
use crate::quotients::{CentralQuotient, HilbertTable, QuotientTables, Weight, WeightTable};

/// Exponent vector over a fixed list of variables.
pub type Exponents = Vec<u32>;

/// Commutative polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CommPolynomial {
    pub terms: BTreeMap<Exponents, BigRational>,
}

impl CommPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    /// Product with a monomial.
    pub fn shift(&self, e: &[u32]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        Self { terms }
    }
}

/// `q = 1` image of a noncommutative polynomial in commuting variables
/// `vars`. Fails with not-in-K when a coefficient has a pole at `q = 1`.
pub fn abelianize(p: &NcPolynomial, vars: &[GeneratorId]) -> Result<CommPolynomial> {
    let index: BTreeMap<GeneratorId, usize> = vars.iter().enumerate().map(|(k, g)| (*g, k)).collect();
    let mut out = CommPolynomial::default();
    for (w, c) in p.terms() {
        let mut e = vec![0u32; vars.len()];
        for g in w.letters() {
            e[index[g]] += 1;
        }
        out.add_term(e, c.specialize_at_one()?);
    }
    Ok(out)
}

/// Relations of a presentation specialized at `q = 1` and abelianized;
/// a presentation of a commutative deformation gives only zeros here.
pub fn specialized_relations(a: &AlgebraPresentation) -> Result<Vec<CommPolynomial>> {
    a.rules().iter().map(|r: &RewriteRule| abelianize(&r.relation(), a.generators())).collect()
}

/// Every relation becomes a sum of commutators at `q = 1`.
pub fn specializes_to_commutative(a: &AlgebraPresentation) -> Result<bool> {
    Ok(specialized_relations(a)?.iter().all(CommPolynomial::is_zero))
}

fn monomials(m: usize, d: usize) -> Vec<Exponents> {
    if m == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(m - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn weight_of(e: &[u32], vars: &[GeneratorId], n: usize) -> Weight {
    let mut w = vec![0; n];
    for (k, g) in vars.iter().enumerate() {
        for (acc, d) in w.iter_mut().zip(g.weight(n)) {
            *acc += d * e[k] as i32;
        }
    }
    w
}

/// Rank of a list of sparse rows, by dense elimination over Q.
fn rank(rows: &[BTreeMap<usize, BigRational>], width: usize) -> usize {
    let mut dense: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![BigRational::zero(); width];
            for (k, c) in r {
                v[*k] = c.clone();
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..dense.len()).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(rank, pivot);
        let inv = BigRational::one() / dense[rank][col].clone();
        for c in col..width {
            let v = &dense[rank][c] * &inv;
            dense[rank][c] = v;
        }
        for r in 0..dense.len() {
            if r != rank && !dense[r][col].is_zero() {
                let f = dense[r][col].clone();
                for c in col..width {
                    let v = &dense[rank][c] * &f;
                    dense[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Commutative quotient `Q[vars] / (g_1 - c_1, …)`.
#[derive(Clone, Debug)]
pub struct ClassicalQuotient {
    n: usize,
    vars: Vec<GeneratorId>,
    generators: Vec<CommPolynomial>,
}

impl ClassicalQuotient {
    /// Specializes a quantum quotient at `q = 1`.
    pub fn from_quantum(qt: &CentralQuotient) -> Result<Self> {
        let vars = qt.algebra.generators().to_vec();
        let generators = qt
            .generators
            .iter()
            .map(|(g, c)| abelianize(&g.sub(&NcPolynomial::constant(c.clone())), &vars))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n: qt.n(), vars, generators })
    }

    pub fn new(n: usize, vars: Vec<GeneratorId>, generators: Vec<CommPolynomial>) -> Self {
        Self { n, vars, generators }
    }

    /// Tables of `gr(Q[vars]/I)` through degree `max_deg`, using the ideal
    /// truncation `span{(g - c)·m : deg m + deg g ≤ d}`.
    pub fn tables(&self, max_deg: usize) -> QuotientTables {
        let m = self.vars.len();
        let all: Vec<Vec<Exponents>> = (0..=max_deg).map(|d| monomials(m, d)).collect();
        let mut blocks: BTreeMap<Weight, Vec<Exponents>> = BTreeMap::new();
        for layer in all.iter() {
            for e in layer {
                blocks.entry(weight_of(e, &self.vars, self.n)).or_default().push(e.clone());
            }
        }
        let mut prev: BTreeMap<Weight, usize> = BTreeMap::new();
        let mut dims = Vec::new();
        let mut weights = Vec::new();
        for d in 0..=max_deg {
            let mut table = WeightTable::default();
            let mut current = BTreeMap::new();
            for (wt, monos) in blocks.iter() {
                let cols: Vec<&Exponents> = monos.iter().filter(|e| e.iter().sum::<u32>() as usize <= d).collect();
                if cols.is_empty() {
                    continue;
                }
                let col_index: BTreeMap<&Exponents, usize> = cols.iter().enumerate().map(|(k, e)| (*e, k)).collect();
                let mut rows = Vec::new();
                for g in self.generators.iter() {
                    let dg = g.degree();
                    if dg > d {
                        continue;
                    }
                    for k in 0..=(d - dg) {
                        for e in all[k].iter() {
                            if weight_of(e, &self.vars, self.n) != *wt {
                                continue;
                            }
                            let prod = g.shift(e);
                            let row: BTreeMap<usize, BigRational> =
                                prod.terms.iter().map(|(k, c)| (col_index[k], c.clone())).collect();
                            rows.push(row);
                        }
                    }
                }
                let q = cols.len() - rank(&rows, cols.len());
                current.insert(wt.clone(), q);
                let mult = q.saturating_sub(prev.get(wt).copied().unwrap_or(0));
                if mult > 0 {
                    table.mult.insert(wt.clone(), mult);
                }
            }
            dims.push(table.total());
            weights.push(table);
            prev = current;
        }
        QuotientTables { hilbert: HilbertTable { dims }, weights }
    }
}

/// Hilbert and weight tables of the `q = 1` specialization of `qt`.
pub fn classical_oracle(qt: &CentralQuotient, max_deg: usize) -> Result<QuotientTables> {
    Ok(ClassicalQuotient::from_quantum(qt)?.tables(max_deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> BigRational {
        BigRational::from_integer(k.into())
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(4, 2).len(), 10);
        assert_eq!(monomials(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn dense_rank() {
        let rows = vec![
            BTreeMap::from([(0, int(1)), (1, int(2))]),
            BTreeMap::from([(0, int(2)), (1, int(4))]),
            BTreeMap::from([(2, int(1))]),
        ];
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn plane_curve_hilbert() {
        // Q[x, y] / (x*y - 1): dims 1, 2, 2, 2, ...
        let vars = vec![GeneratorId::x(1, 1), GeneratorId::x(2, 2)];
        let mut g = CommPolynomial::default();
        g.add_term(vec![1, 1], int(1));
        g.add_term(vec![0, 0], int(-1));
        let qt = ClassicalQuotient::new(2, vars, vec![g]);
        assert_eq!(qt.tables(4).hilbert.dims, vec![1, 2, 2, 2, 2]);
    }
}
