//! The FRT bialgebra `F_q(M)` of quantum `n×n` matrices: relations from
//! `R̂`, quantum minors, the coinvariants `τ_d`, the coalgebra structure and
//! evaluation at constant matrices.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freealg::{
    matrix_generators, AlgebraPresentation, Family, GeneratorId, MonomialOrder, NcPolynomial, TensorAlgebra,
    TensorElement, Word,
};
use crate::matrix::Matrix;
use crate::rmatrix::frt_residual;
use crate::scalars::RationalScalar;

/// The matrix `[g^i_j]` of generators of one family.
pub fn generator_matrix(family: Family, n: usize) -> Matrix<NcPolynomial> {
    Matrix::from_fn(n, |r, c| NcPolynomial::generator(GeneratorId::new(family, r + 1, c + 1)))
}

/// Nonzero entries of `R̂(X⊗I)(I⊗X) - (X⊗I)(I⊗X)R̂` over the free algebra.
pub fn frt_raw_relations(family: Family, n: usize) -> Vec<NcPolynomial> {
    frt_residual(&generator_matrix(family, n))
        .entries()
        .iter()
        .filter(|p| !p.is_zero())
        .cloned()
        .collect()
}

/// `F_q(M)` on generators of the given family, degree-lexicographic with
/// row-major precedence.
pub fn frt_presentation_in(family: Family, n: usize) -> Result<AlgebraPresentation> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("matrix size n must be at least 1, got {n}")));
    }
    let order = MonomialOrder::new(matrix_generators(family, n))?;
    AlgebraPresentation::from_relations(n, order, frt_raw_relations(family, n))
}

/// `F_q(M)` on the generators `x[i,j]`.
pub fn frt_presentation(n: usize) -> Result<AlgebraPresentation> {
    frt_presentation_in(Family::X, n)
}

fn inversions(seq: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                count += 1;
            }
        }
    }
    count
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// `det_q(I,J) = Σ_σ (-q)^{ℓ(σ)} g^{i_1}_{σ(i_1)} ⋯ g^{i_k}_{σ(i_k)}`, rows
/// increasing left to right, over bijections `σ: I → J`. Unreduced.
pub fn quantum_minor(family: Family, rows: &[usize], cols: &[usize]) -> Result<NcPolynomial> {
    let rs: BTreeSet<usize> = rows.iter().copied().collect();
    let cs: BTreeSet<usize> = cols.iter().copied().collect();
    if rs.is_empty() || rs.len() != rows.len() || cs.len() != cols.len() || rs.len() != cs.len() {
        return Err(Error::InvalidParameter(format!(
            "quantum minor needs two index sets of equal positive size, got {rows:?} and {cols:?}"
        )));
    }
    if rs.contains(&0) || cs.contains(&0) {
        return Err(Error::InvalidParameter("indices start at 1".into()));
    }
    let rows: Vec<usize> = rs.into_iter().collect();
    let cols: Vec<usize> = cs.into_iter().collect();
    let mut out = NcPolynomial::zero();
    for image in permutations(&cols) {
        let word = Word::from_letters(rows.iter().zip(&image).map(|(r, c)| GeneratorId::new(family, *r, *c)));
        out.add_term(word, RationalScalar::neg_q_pow(inversions(&image) as i32));
    }
    Ok(out)
}

/// The full quantum determinant of the `n×n` generator matrix.
pub fn quantum_determinant(family: Family, n: usize) -> NcPolynomial {
    let all: Vec<usize> = (1..=n).collect();
    quantum_minor(family, &all, &all).expect("valid index sets")
}

fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    if n < d {
        return Vec::new();
    }
    let mut out = subsets(n - 1, d);
    for mut s in subsets(n - 1, d - 1) {
        s.push(n);
        out.push(s);
    }
    out
}

/// `τ_d = Σ_{|I|=d} q^{d(n+1) - 2ΣI} det_q(I,I)`, reduced in `a`.
pub fn tau(d: usize, a: &AlgebraPresentation) -> Result<NcPolynomial> {
    tau_in(Family::X, d, a)
}

pub fn tau_in(family: Family, d: usize, a: &AlgebraPresentation) -> Result<NcPolynomial> {
    let n = a.n();
    if d < 1 || d > n {
        return Err(Error::InvalidParameter(format!("tau_d needs 1 <= d <= n = {n}, got d = {d}")));
    }
    let mut out = NcPolynomial::zero();
    for set in subsets(n, d) {
        let exp = (d * (n + 1)) as i32 - 2 * set.iter().sum::<usize>() as i32;
        out.add_scaled(&quantum_minor(family, &set, &set)?, &RationalScalar::q_pow(exp));
    }
    Ok(a.normal_form(&out))
}

/// `Δ` applied letter by letter to a word of `n×n` generators,
/// `Δ(g^i_j) = Σ_s g^i_s ⊗ g^s_j`, as an unreduced element of arity 2.
pub fn coproduct_word(w: &Word, n: usize) -> TensorElement {
    let family = w.letters().first().map_or(Family::X, |g| g.family);
    coproduct_word_n(w, family, n)
}

fn coproduct_word_n(w: &Word, family: Family, n: usize) -> TensorElement {
    let mut acc = vec![(Word::empty(), Word::empty())];
    for g in w.letters() {
        let mut next = Vec::with_capacity(acc.len() * n);
        for (l, r) in acc.iter() {
            for s in 1..=n {
                let mut l2 = l.clone();
                l2.0.push(GeneratorId::new(family, g.row(), s));
                let mut r2 = r.clone();
                r2.0.push(GeneratorId::new(family, s, g.col()));
                next.push((l2, r2));
            }
        }
        acc = next;
    }
    let mut out = TensorElement::zero(2);
    for (l, r) in acc {
        out.add_term(vec![l, r], RationalScalar::one());
    }
    out
}

/// `Δ(p)` in `a ⊗ a`, both factors in normal form.
pub fn comultiply(p: &NcPolynomial, a: &AlgebraPresentation) -> TensorElement {
    let factors = [a, a];
    let t = TensorAlgebra::new(&factors);
    let family = a.generators()[0].family;
    let mut raw = TensorElement::zero(2);
    for (w, c) in p.terms() {
        raw.add_scaled(&coproduct_word_n(w, family, a.n()), c);
    }
    t.reduce(&raw)
}

/// `ε(g^i_j) = δ^i_j`, extended multiplicatively.
pub fn counit(p: &NcPolynomial) -> RationalScalar {
    let mut out = RationalScalar::zero();
    for (w, c) in p.terms() {
        if w.letters().iter().all(|g| g.row == g.col) {
            out = out.add(c);
        }
    }
    out
}

/// A point of the set of admissible Jordan types: one nilpotent block of
/// size `r` and `n - r` distinct nonzero eigenvalues.
#[derive(Clone, PartialEq, Debug)]
pub struct XiSpec {
    pub n: usize,
    pub r: usize,
    pub eigenvalues: Vec<RationalScalar>,
}

impl XiSpec {
    pub fn new(n: usize, r: usize, eigenvalues: Vec<RationalScalar>) -> Result<Self> {
        if n < 1 || r > n {
            return Err(Error::InvalidXi(format!("need 1 <= n and 0 <= r <= n, got n = {n}, r = {r}")));
        }
        if eigenvalues.len() != n - r {
            return Err(Error::InvalidXi(format!(
                "expected {} eigenvalues, got {}",
                n - r,
                eigenvalues.len()
            )));
        }
        for (k, a) in eigenvalues.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::InvalidXi("eigenvalues must be nonzero".into()));
            }
            if eigenvalues[..k].contains(a) {
                return Err(Error::InvalidXi(format!("eigenvalue {a} repeated")));
            }
        }
        Ok(Self { n, r, eigenvalues })
    }

    /// `J(ξ) = diag(J_r, λ_1, …, λ_{n-r})` with `J_r` the nilpotent Jordan
    /// block (ones on the superdiagonal).
    pub fn jordan_matrix(&self) -> Matrix<RationalScalar> {
        let r = self.r;
        Matrix::from_fn(self.n, |i, j| {
            if i < r && j < r {
                if j == i + 1 {
                    RationalScalar::one()
                } else {
                    RationalScalar::zero()
                }
            } else if i == j {
                self.eigenvalues[i - r].clone()
            } else {
                RationalScalar::zero()
            }
        })
    }

    /// `{"n": .., "r": .., "eigenvalues": ["..", ..]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| Error::InvalidXi(format!("missing field '{k}'")));
        let n = field("n")?.as_u64().ok_or_else(|| Error::InvalidXi("n must be an integer".into()))?;
        let r = field("r")?.as_u64().ok_or_else(|| Error::InvalidXi("r must be an integer".into()))?;
        let eig = field("eigenvalues")?
            .as_array()
            .ok_or_else(|| Error::InvalidXi("eigenvalues must be a list".into()))?
            .iter()
            .map(|e| match e {
                Value::String(s) => s.parse(),
                Value::Number(x) => x.to_string().parse(),
                _ => Err(Error::InvalidXi("eigenvalue must be a scalar string".into())),
            })
            .collect::<Result<Vec<RationalScalar>>>()?;
        Self::new(n as usize, r as usize, eig)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "r": self.r,
            "eigenvalues": self.eigenvalues.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// The algebra map `F_q(M) → Q(q)` sending `x[i,j]` to `B[i,j]`, available
/// only once every defining relation vanishes at `B`.
#[derive(Clone, Debug)]
pub struct Character {
    matrix: Matrix<RationalScalar>,
}

/// Value of `p` under `g^i_j ↦ B[i,j]` for letters of any matrix family.
pub fn substitute_matrix(p: &NcPolynomial, b: &Matrix<RationalScalar>) -> RationalScalar {
    let mut out = RationalScalar::zero();
    for (w, c) in p.terms() {
        let mut term = c.clone();
        for g in w.letters() {
            term = term.mul(b.get(g.row() - 1, g.col() - 1));
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term);
    }
    out
}

impl Character {
    pub fn new(b: Matrix<RationalScalar>) -> Result<Self> {
        let n = b.size();
        for rel in frt_raw_relations(Family::X, n) {
            let v = substitute_matrix(&rel, &b);
            if !v.is_zero() {
                return Err(Error::RelationViolation { relation: rel.to_string(), value: v.to_string() });
            }
        }
        Ok(Self { matrix: b })
    }

    pub fn matrix(&self) -> &Matrix<RationalScalar> {
        &self.matrix
    }

    pub fn evaluate(&self, p: &NcPolynomial) -> RationalScalar {
        substitute_matrix(p, &self.matrix)
    }
}

/// `ev_B(p)`, after checking that `B` defines a character.
pub fn evaluate_character(p: &NcPolynomial, b: &Matrix<RationalScalar>) -> Result<RationalScalar> {
    Ok(Character::new(b.clone())?.evaluate(p))
}

/// `τ_d(ξ) = ev_ξ(τ_d)`.
pub fn tau_at_xi(d: usize, xi: &XiSpec) -> Result<RationalScalar> {
    let a = frt_presentation(xi.n)?;
    let t = tau(d, &a)?;
    evaluate_character(&t, &xi.jordan_matrix())
}
