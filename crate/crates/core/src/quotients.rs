//! Quotients of `L_q(M)` by ideals generated by central elements minus
//! constants: degree-truncated ideal spans in the filtered algebra, exact
//! Hilbert functions and weight tables.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::braided::{check_central, phi_tau1, phi_tau2, trace_power, ReaPresentation};
use crate::error::{Error, Result};
use crate::freealg::{AlgebraPresentation, NcPolynomial, Word};
use crate::matrix::EchelonBasis;
use crate::quantum_matrices::{tau_at_xi, XiSpec};
use crate::scalars::RationalScalar;

/// Weight vector in `Z^n`.
pub type Weight = Vec<i32>;

/// `L_q(M) / (g_1 - c_1, …, g_k - c_k)` with every `g_i` central.
#[derive(Clone, Debug)]
pub struct CentralQuotient {
    pub algebra: AlgebraPresentation,
    pub generators: Vec<(NcPolynomial, RationalScalar)>,
}

impl CentralQuotient {
    /// Fails unless every generator is central in `algebra`.
    pub fn new(algebra: AlgebraPresentation, generators: Vec<(NcPolynomial, RationalScalar)>) -> Result<Self> {
        for (g, _) in generators.iter() {
            let check = check_central(g, &algebra);
            if !check.central {
                return Err(Error::InvalidParameter(format!("{g} is not central")));
            }
        }
        let generators = generators.into_iter().map(|(g, c)| (algebra.normal_form(&g), c)).collect();
        Ok(Self { algebra, generators })
    }

    pub fn n(&self) -> usize {
        self.algebra.n()
    }
}

/// The quantum nilpotent cone: `(Tr_q(L^d), 0)` for `d = 1..n`.
pub fn nilcone(rea: &ReaPresentation) -> Result<CentralQuotient> {
    let a = &rea.algebra;
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidParameter("the nilpotent cone quotient needs n >= 2".into()));
    }
    let gens = (1..=n)
        .map(|d| Ok((trace_power(d, a)?, RationalScalar::zero())))
        .collect::<Result<Vec<_>>>()?;
    CentralQuotient::new(a.clone(), gens)
}

/// `n = 2` orbit quotient: `(Tr_q(L), τ₁(ξ))` and `(Φ(τ₂), τ₂(ξ))`.
pub fn orbit_quotient_n2(rea: &ReaPresentation, xi: &XiSpec) -> Result<CentralQuotient> {
    let a = &rea.algebra;
    if a.n() != 2 || xi.n != 2 {
        return Err(Error::InvalidXi("orbit quotients are available for n = 2 only".into()));
    }
    let c1 = tau_at_xi(1, xi)?;
    let c2 = tau_at_xi(2, xi)?;
    CentralQuotient::new(a.clone(), vec![(phi_tau1(a), c1), (phi_tau2(a)?, c2)])
}

/// Which side the ideal generators multiply on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Left,
    Right,
}

/// The span of `(g - c)·w` (or `w·(g - c)`) over normal words `w` with
/// `deg w + deg g ≤ cap`, kept as one echelon basis per weight block.
#[derive(Clone, Debug)]
pub struct IdealSpan {
    n: usize,
    blocks: BTreeMap<Weight, EchelonBasis<Word, RationalScalar>>,
    /// `ranks[d][weight]`: rank of the block after all products of total
    /// degree at most `d` were added.
    ranks: Vec<BTreeMap<Weight, usize>>,
}

impl IdealSpan {
    pub fn build(a: &AlgebraPresentation, generators: &[(NcPolynomial, RationalScalar)], cap: usize) -> Self {
        Self::build_sided(a, generators, cap, Side::Right)
    }

    pub fn build_sided(
        a: &AlgebraPresentation,
        generators: &[(NcPolynomial, RationalScalar)],
        cap: usize,
        side: Side,
    ) -> Self {
        let n = a.n();
        let mut span = Self { n, blocks: BTreeMap::new(), ranks: Vec::new() };
        let shifted: Vec<(usize, NcPolynomial)> = generators
            .iter()
            .map(|(g, c)| (g.degree().unwrap_or(0), g.sub(&NcPolynomial::constant(c.clone()))))
            .collect();
        for d in 0..=cap {
            for (deg_g, h) in shifted.iter() {
                if *deg_g > d {
                    continue;
                }
                for w in a.normal_words(d - deg_g) {
                    let wp = NcPolynomial::word(w.clone());
                    let prod = match side {
                        Side::Right => h.mul(&wp),
                        Side::Left => wp.mul(h),
                    };
                    span.insert(a.normal_form(&prod));
                }
            }
            span.ranks.push(span.blocks.iter().map(|(k, b)| (k.clone(), b.rank())).collect());
        }
        span
    }

    fn split(&self, p: &NcPolynomial) -> BTreeMap<Weight, BTreeMap<Word, RationalScalar>> {
        let mut out: BTreeMap<Weight, BTreeMap<Word, RationalScalar>> = BTreeMap::new();
        for (w, c) in p.terms() {
            out.entry(w.weight(self.n)).or_default().insert(w.clone(), c.clone());
        }
        out
    }

    fn insert(&mut self, p: NcPolynomial) {
        for (wt, v) in self.split(&p) {
            self.blocks.entry(wt).or_default().insert(v);
        }
    }

    /// Whether the normal-form polynomial `p` lies in the span.
    pub fn contains(&self, p: &NcPolynomial) -> bool {
        self.split(p).into_iter().all(|(wt, v)| match self.blocks.get(&wt) {
            Some(b) => b.contains(v),
            None => v.is_empty(),
        })
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| b.rank()).sum()
    }

    /// Rank per weight after adding all products of degree at most `d`.
    pub fn rank_at(&self, d: usize) -> &BTreeMap<Weight, usize> {
        &self.ranks[d]
    }

    /// Basis elements of `self` that do not lie in `other`.
    pub fn missing_from(&self, other: &IdealSpan) -> Vec<NcPolynomial> {
        let mut out = Vec::new();
        for b in self.blocks.values() {
            for row in b.reduced_rows() {
                let p = NcPolynomial::from_terms(row);
                if !other.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Graded dimensions of the associated graded quotient, degrees `0..=D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertTable {
    pub dims: Vec<usize>,
}

impl HilbertTable {
    pub fn to_json(&self) -> Value {
        json!({ "dims": self.dims })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,dim\n");
        for (d, v) in self.dims.iter().enumerate() {
            s.push_str(&format!("{d},{v}\n"));
        }
        s
    }
}

/// Multiplicity of each weight in one degree of the quotient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WeightTable {
    pub mult: BTreeMap<Weight, usize>,
}

impl WeightTable {
    pub fn total(&self) -> usize {
        self.mult.values().sum()
    }

    /// `[{"weight": [..], "mult": m}, ...]`, weights in decreasing order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.mult
                .iter()
                .rev()
                .map(|(w, m)| json!({ "weight": w, "mult": m }))
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,mult\n");
        for (w, m) in self.mult.iter().rev() {
            let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("\"({})\",{m}\n", ws.join(",")));
        }
        s
    }
}

/// Hilbert and weight tables of a quotient, degrees `0..=D`.
#[derive(Clone, Debug)]
pub struct QuotientTables {
    pub hilbert: HilbertTable,
    pub weights: Vec<WeightTable>,
}

/// `dim F_{≤d}(weight) - rank(S_d ∩ weight)` for every degree, then
/// successive differences.
pub fn quotient_tables(qt: &CentralQuotient, max_deg: usize) -> QuotientTables {
    let a = &qt.algebra;
    let span = IdealSpan::build(a, &qt.generators, max_deg);
    let mut filtered_words: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut prev: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut dims = Vec::new();
    let mut weights = Vec::new();
    for d in 0..=max_deg {
        for w in a.normal_words(d) {
            *filtered_words.entry(w.weight(a.n())).or_insert(0) += 1;
        }
        let ranks = span.rank_at(d);
        let mut table = WeightTable::default();
        let mut current = BTreeMap::new();
        for (wt, count) in filtered_words.iter() {
            let q = count - ranks.get(wt).copied().unwrap_or(0);
            current.insert(wt.clone(), q);
            let m = q.saturating_sub(prev.get(wt).copied().unwrap_or(0));
            if m > 0 {
                table.mult.insert(wt.clone(), m);
            }
        }
        dims.push(table.total());
        weights.push(table);
        prev = current;
    }
    QuotientTables { hilbert: HilbertTable { dims }, weights }
}

pub fn hilbert(qt: &CentralQuotient, max_deg: usize) -> HilbertTable {
    quotient_tables(qt, max_deg).hilbert
}

pub fn weight_table(qt: &CentralQuotient, d: usize) -> WeightTable {
    quotient_tables(qt, d).weights.pop().expect("degree 0 is always present")
}

/// Whether `p` lies in the ideal span truncated at degree `cap`.
pub fn member(p: &NcPolynomial, qt: &CentralQuotient, cap: usize) -> bool {
    let span = IdealSpan::build(&qt.algebra, &qt.generators, cap);
    span.contains(&qt.algebra.normal_form(p))
}

/// Left and right truncated spans coincide.
pub fn two_sided_at(qt: &CentralQuotient, cap: usize) -> bool {
    let right = IdealSpan::build_sided(&qt.algebra, &qt.generators, cap, Side::Right);
    let left = IdealSpan::build_sided(&qt.algebra, &qt.generators, cap, Side::Left);
    right.missing_from(&left).is_empty() && left.missing_from(&right).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::rea_presentation;

    fn p(s: &str) -> NcPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn nilcone2_small_degrees() {
        let rea = rea_presentation(2).unwrap();
        let qt = nilcone(&rea).unwrap();
        let t = quotient_tables(&qt, 2);
        assert_eq!(t.hilbert.dims, vec![1, 3, 5]);
        let w1: Vec<_> = t.weights[1].mult.iter().map(|(k, v)| (k.clone(), *v)).collect();
        assert_eq!(w1, vec![(vec![-1, 1], 1), (vec![0, 0], 1), (vec![1, -1], 1)]);
        assert_eq!(t.weights[0].mult, BTreeMap::from([(vec![0, 0], 1)]));
    }

    #[test]
    fn membership() {
        let rea = rea_presentation(2).unwrap();
        let qt = nilcone(&rea).unwrap();
        let tr = trace_power(1, &rea.algebra).unwrap();
        assert!(member(&tr.mul(&p("l[1,2]")), &qt, 2));
        assert!(!member(&NcPolynomial::one(), &qt, 3));
        assert!(!member(&p("l[1,1]"), &qt, 2));
        assert!(two_sided_at(&qt, 3));
    }

    #[test]
    fn non_central_generators_are_rejected() {
        let rea = rea_presentation(2).unwrap();
        let r = CentralQuotient::new(rea.algebra.clone(), vec![(p("l[1,2]"), RationalScalar::zero())]);
        assert!(matches!(r, Err(Error::InvalidParameter(_))));
    }
}
