//! The Hopf algebra `F_q(G)`, `G = SL(n)`: the FRT relations on `t[i,j]`
//! together with `det_q = 1`, its antipode, and the adjoint coactions on
//! `F_q(M)` and on the reflection equation algebra.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::freealg::{
    AlgebraPresentation, CompletionReport, Family, GeneratorId, NcPolynomial, TensorAlgebra, TensorElement, Word,
};
use crate::quantum_matrices::{comultiply, counit, coproduct_word, quantum_determinant, quantum_minor};
use crate::report::IdentityReport;
use crate::scalars::RationalScalar;

/// `F_q(G)` together with how it was obtained.
#[derive(Clone, Debug)]
pub struct SlPresentation {
    pub algebra: AlgebraPresentation,
    /// Completion of the FRT rules plus the oriented `det_q - 1`.
    pub completion: CompletionReport,
}

/// Degree cap used to close the `det_q - 1` rule against the FRT rules.
pub const SL_COMPLETION_CAP: usize = 4;

pub fn sl_presentation(n: usize) -> Result<SlPresentation> {
    sl_presentation_to(n, SL_COMPLETION_CAP)
}

/// `F_q(SL_n)` with overlaps resolved up to degree `cap`. For `n = 3` the
/// completion does not terminate, so normal forms are unique only through
/// the chosen degree.
pub fn sl_presentation_to(n: usize, cap: usize) -> Result<SlPresentation> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("the special linear group needs n >= 2, got {n}")));
    }
    let frt = crate::quantum_matrices::frt_presentation_in(Family::T, n)?;
    let det_rel = quantum_determinant(Family::T, n).sub(&NcPolynomial::one());
    let with_det = frt.with_relations([det_rel])?;
    let (algebra, completion) = with_det.complete(cap)?;
    Ok(SlPresentation { algebra, completion })
}

/// `S(t^i_j) = (-q)^{i-j} det_q({1..n}∖{j}, {1..n}∖{i})`, unreduced.
pub fn antipode_generator(i: usize, j: usize, n: usize) -> NcPolynomial {
    if n == 1 {
        return NcPolynomial::one();
    }
    let rows: Vec<usize> = (1..=n).filter(|&k| k != j).collect();
    let cols: Vec<usize> = (1..=n).filter(|&k| k != i).collect();
    quantum_minor(Family::T, &rows, &cols)
        .expect("valid index sets")
        .scale(&RationalScalar::neg_q_pow(i as i32 - j as i32))
}

/// The antipode on `F_q(G)`, the anti-homomorphism extending
/// [`antipode_generator`].
pub struct Antipode<'a> {
    g: &'a AlgebraPresentation,
    images: HashMap<GeneratorId, NcPolynomial>,
}

impl<'a> Antipode<'a> {
    pub fn new(g: &'a AlgebraPresentation) -> Self {
        let n = g.n();
        let images = g
            .generators()
            .iter()
            .map(|t| (*t, g.normal_form(&antipode_generator(t.row(), t.col(), n))))
            .collect();
        Self { g, images }
    }

    /// `S(g_1 ⋯ g_k) = S(g_k) ⋯ S(g_1)`, unreduced.
    pub fn apply_word_free(&self, w: &Word) -> NcPolynomial {
        let mut acc = NcPolynomial::one();
        for g in w.letters().iter().rev() {
            acc = acc.mul(&self.images[g]);
        }
        acc
    }

    pub fn apply(&self, p: &NcPolynomial) -> NcPolynomial {
        let mut raw = NcPolynomial::zero();
        for (w, c) in p.terms() {
            raw.add_scaled(&self.apply_word_free(w), c);
        }
        self.g.normal_form(&raw)
    }
}

pub fn antipode(p: &NcPolynomial, g: &AlgebraPresentation) -> NcPolynomial {
    Antipode::new(g).apply(p)
}

fn t(i: usize, j: usize) -> NcPolynomial {
    NcPolynomial::generator(GeneratorId::t(i, j))
}

fn delta(i: usize, j: usize) -> NcPolynomial {
    if i == j {
        NcPolynomial::one()
    } else {
        NcPolynomial::zero()
    }
}

/// Antipode, coassociativity and counit axioms on every generator.
pub fn verify_hopf(sl: &SlPresentation) -> Vec<IdentityReport> {
    let g = &sl.algebra;
    let n = g.n();
    let s = Antipode::new(g);
    let mut out = Vec::new();
    let ggg = [g, g, g];
    let three = TensorAlgebra::new(&ggg);
    for i in 1..=n {
        for j in 1..=n {
            let mut left = NcPolynomial::zero();
            let mut right = NcPolynomial::zero();
            for k in 1..=n {
                left = left.add(&s.apply(&t(i, k)).mul(&t(k, j)));
                right = right.add(&t(i, k).mul(&s.apply(&t(k, j))));
            }
            out.push(IdentityReport::from_polynomial(
                format!("sum_s S(t[{i},s])*t[s,{j}] = delta({i},{j})"),
                &g.normal_form(&left.sub(&delta(i, j))),
            ));
            out.push(IdentityReport::from_polynomial(
                format!("sum_s t[{i},s]*S(t[s,{j}]) = delta({i},{j})"),
                &g.normal_form(&right.sub(&delta(i, j))),
            ));

            let d = comultiply(&t(i, j), g);
            let lhs = three.reduce(&d.expand_slot(0, |w| coproduct_word(w, n)));
            let rhs = three.reduce(&d.expand_slot(1, |w| coproduct_word(w, n)));
            out.push(IdentityReport::from_tensor(
                format!("(Delta x id)Delta(t[{i},{j}]) = (id x Delta)Delta(t[{i},{j}])"),
                &lhs.sub(&rhs),
            ));

            let counit_left = d.expand_slot(0, |w| scalar_tensor(counit(&NcPolynomial::word(w.clone()))));
            let counit_right = d.expand_slot(1, |w| scalar_tensor(counit(&NcPolynomial::word(w.clone()))));
            let res = counit_left
                .into_polynomial()
                .sub(&t(i, j))
                .add(&counit_right.into_polynomial().sub(&t(i, j)));
            out.push(IdentityReport::from_polynomial(
                format!("(eps x id)Delta(t[{i},{j}]) = (id x eps)Delta(t[{i},{j}]) = t[{i},{j}]"),
                &g.normal_form(&res),
            ));

            let eps_s = counit(&s.apply(&t(i, j))).sub(&counit(&t(i, j)));
            out.push(IdentityReport::from_polynomial(
                format!("eps(S(t[{i},{j}])) = eps(t[{i},{j}])"),
                &NcPolynomial::constant(eps_s),
            ));
        }
    }
    out
}

/// A scalar as an element of arity 0.
fn scalar_tensor(c: RationalScalar) -> TensorElement {
    TensorElement::pure(&[]).scale(&c)
}

/// The adjoint coaction `β: L_q(M) → L_q(M) ⊗ F_q(G)`, the algebra map with
/// `β(l^i_j) = Σ_{a,b} l^a_b ⊗ S(t^i_a) t^b_j`.
pub struct ReaCoaction<'a> {
    l: &'a AlgebraPresentation,
    g: &'a AlgebraPresentation,
    images: HashMap<GeneratorId, TensorElement>,
}

impl<'a> ReaCoaction<'a> {
    pub fn new(l: &'a AlgebraPresentation, g: &'a AlgebraPresentation) -> Self {
        let n = l.n();
        let s = Antipode::new(g);
        let mut images = HashMap::new();
        for gen in l.generators() {
            let (i, j) = (gen.row(), gen.col());
            let mut img = TensorElement::zero(2);
            for a in 1..=n {
                for b in 1..=n {
                    let right = g.normal_form(&s.apply(&t(i, a)).mul(&t(b, j)));
                    let left = NcPolynomial::generator(GeneratorId::l(a, b));
                    img = img.add(&TensorElement::pure(&[left, right]));
                }
            }
            images.insert(*gen, img);
        }
        Self { l, g, images }
    }

    pub fn apply_word(&self, w: &Word) -> TensorElement {
        let factors = [self.l, self.g];
        let ta = TensorAlgebra::new(&factors);
        let mut acc = ta.one();
        for gen in w.letters() {
            acc = ta.multiply(&acc, &self.images[gen]);
        }
        acc
    }

    pub fn apply(&self, p: &NcPolynomial) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (w, c) in p.terms() {
            out.add_scaled(&self.apply_word(w), c);
        }
        out
    }

    pub fn source(&self) -> &AlgebraPresentation {
        self.l
    }

    pub fn group(&self) -> &AlgebraPresentation {
        self.g
    }
}

/// The adjoint coaction on `F_q(M)`:
/// `β(x) = Σ x_(2) ⊗ S(π(x_(1))) π(x_(3))` with `π: x ↦ t`.
pub fn fqm_adjoint_coaction(p: &NcPolynomial, m: &AlgebraPresentation, g: &AlgebraPresentation) -> TensorElement {
    let n = m.n();
    let s = Antipode::new(g);
    // Group right factors by the normal word of the middle factor.
    let mut by_left: BTreeMap<Word, NcPolynomial> = BTreeMap::new();
    let mut middle_cache: HashMap<Word, NcPolynomial> = HashMap::new();
    for (w, c) in p.terms() {
        let k = w.len();
        let letters = w.letters();
        let total = n.pow(2 * k as u32);
        for idx in 0..total {
            let mut rest = idx;
            let mut a = Vec::with_capacity(k);
            let mut b = Vec::with_capacity(k);
            for _ in 0..k {
                a.push(rest % n + 1);
                rest /= n;
                b.push(rest % n + 1);
                rest /= n;
            }
            let middle = Word::from_letters((0..k).map(|m| GeneratorId::x(a[m], b[m])));
            let left = middle_cache
                .entry(middle.clone())
                .or_insert_with(|| m.normal_form_word(&middle))
                .clone();
            let first = Word::from_letters((0..k).map(|m| GeneratorId::t(letters[m].row(), a[m])));
            let third = Word::from_letters((0..k).map(|m| GeneratorId::t(b[m], letters[m].col())));
            let right = s.apply_word_free(&first).mul(&NcPolynomial::word(third));
            for (lw, lc) in left.terms() {
                by_left.entry(lw.clone()).or_default().add_scaled(&right, &lc.mul(c));
            }
        }
    }
    let mut out = TensorElement::zero(2);
    for (lw, right) in by_left {
        for (rw, rc) in g.normal_form(&right).terms() {
            out.add_term(vec![lw.clone(), rw.clone()], rc.clone());
        }
    }
    out
}

/// Coaction axioms on generators of the source algebra:
/// `(β⊗id)β = (id⊗Δ)β` and `(id⊗ε)β = id`.
pub fn check_coaction_axioms(beta: &ReaCoaction<'_>) -> Vec<IdentityReport> {
    let (l, g) = (beta.source(), beta.group());
    let factors = [l, g, g];
    let three = TensorAlgebra::new(&factors);
    let mut out = Vec::new();
    for gen in l.generators() {
        let b = beta.apply(&NcPolynomial::generator(*gen));
        let lhs = three.reduce(&b.expand_slot(0, |w| beta.apply_word(w)));
        let rhs = three.reduce(&b.expand_slot(1, |w| coproduct_word(w, l.n())));
        out.push(IdentityReport::from_tensor(format!("(beta x id)beta({gen}) = (id x Delta)beta({gen})"), &lhs.sub(&rhs)));
        let collapsed = b
            .expand_slot(1, |w| scalar_tensor(counit(&NcPolynomial::word(w.clone()))))
            .into_polynomial();
        out.push(IdentityReport::from_polynomial(
            format!("(id x eps)beta({gen}) = {gen}"),
            &l.normal_form(&collapsed.sub(&NcPolynomial::generator(*gen))),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NcPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn sl2_rules_and_antipode() {
        let sl = sl_presentation(2).unwrap();
        let g = &sl.algebra;
        assert_eq!(g.normal_form(&p("t[1,2]*t[2,1]")), p("(q^-1)*t[1,1]*t[2,2] - (q^-1)"));
        assert_eq!(g.irreducible_word_count(1), 4);
        assert_eq!(antipode(&p("t[1,1]"), g), p("t[2,2]"));
        assert_eq!(antipode(&p("t[1,2]"), g), p("-(q^-1)*t[1,2]"));
        assert_eq!(antipode(&p("t[2,1]"), g), p("-q*t[2,1]"));
        assert_eq!(antipode(&p("t[2,2]"), g), p("t[1,1]"));
        let det = quantum_determinant(Family::T, 2);
        assert_eq!(antipode(&det, g), NcPolynomial::one());
        let prod = antipode(&p("t[1,1]*t[1,2]"), g);
        assert_eq!(prod, g.multiply(&antipode(&p("t[1,2]"), g), &antipode(&p("t[1,1]"), g)));
    }

    #[test]
    fn sl_needs_n_at_least_two() {
        assert!(matches!(sl_presentation(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn raw_frt_relations_hold_in_sl() {
        let sl = sl_presentation(2).unwrap();
        for r in crate::quantum_matrices::frt_raw_relations(Family::T, 2) {
            assert!(sl.algebra.normal_form(&r).is_zero());
        }
    }
}
