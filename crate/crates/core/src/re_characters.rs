//! Constant solutions of the reflection equation: exact per-matrix checks
//! and symbolic residuals for parametric families.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freealg::write_signed_sum;
use crate::matrix::{Entry, Matrix};
use crate::rmatrix::{reflection_residual, TensorOperator};
use crate::scalars::RationalScalar;
use crate::text::{parse_expr, ExprTarget};

/// A monomial in named commuting parameters, `name -> exponent`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub BTreeMap<String, u32>);

impl Monomial {
    fn mul(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, e) in other.0.iter() {
            *m.entry(k.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    fn degree(&self) -> u32 {
        self.0.values().sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, e)| if *e == 1 { k.clone() } else { format!("{k}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Polynomial in named parameters with coefficients in `Q(q)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ParamPolynomial {
    terms: BTreeMap<Monomial, RationalScalar>,
}

impl ParamPolynomial {
    pub fn constant(c: RationalScalar) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::default(), c);
        p
    }

    pub fn variable(name: &str) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial(BTreeMap::from([(name.to_string(), 1)])), RationalScalar::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: RationalScalar) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.get(&m).map_or(c.clone(), |d| d.add(&c));
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.is_empty())
    }

    pub fn as_constant(&self) -> Option<RationalScalar> {
        self.is_constant()
            .then(|| self.terms.get(&Monomial::default()).cloned().unwrap_or_else(RationalScalar::zero))
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self.terms.keys().flat_map(|m| m.0.keys().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RationalScalar)> + '_ {
        self.terms.iter()
    }

    /// Value at the given parameter values; missing parameters count as 0.
    pub fn evaluate(&self, values: &BTreeMap<String, RationalScalar>) -> RationalScalar {
        let mut out = RationalScalar::zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (k, e) in m.0.iter() {
                let v = values.get(k).cloned().unwrap_or_else(RationalScalar::zero);
                for _ in 0..*e {
                    t = RationalScalar::mul(&t, &v);
                }
            }
            out = RationalScalar::add(&out, &t);
        }
        out
    }

    fn scale(&self, c: &RationalScalar) -> Self {
        let mut out = Self::default();
        for (m, d) in self.terms.iter() {
            out.add_term(m.clone(), d.mul(c));
        }
        out
    }
}

impl Entry for ParamPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn from_scalar(c: &RationalScalar) -> Self {
        Self::constant(c.clone())
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RationalScalar::from_int(-1)))
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (a, ca) in self.terms.iter() {
            for (b, cb) in other.terms.iter() {
                out.add_term(a.mul(b), ca.mul(cb));
            }
        }
        out
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for ParamPolynomial {
    /// Highest total degree first, e.g. `(q-q^-1)*a*b - 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        write_signed_sum(f, items.into_iter().map(|(m, c)| (m, c, m.0.is_empty())))
    }
}

impl ExprTarget for ParamPolynomial {
    fn from_int(n: BigInt) -> Self {
        Self::constant(<RationalScalar as ExprTarget>::from_int(n))
    }
    fn q() -> Self {
        Self::constant(RationalScalar::q())
    }
    fn ident(name: &str, indices: Option<Vec<i64>>, at: usize) -> Result<Self> {
        if indices.is_some() {
            return Err(Error::Parse { offset: at, message: format!("parameter '{name}' takes no indices") });
        }
        Ok(Self::variable(name))
    }
    fn add(self, o: Self) -> Self {
        Entry::add(&self, &o)
    }
    fn sub(self, o: Self) -> Self {
        Entry::sub(&self, &o)
    }
    fn mul(self, o: Self) -> Self {
        Entry::mul(&self, &o)
    }
    fn neg(self) -> Self {
        self.scale(&RationalScalar::from_int(-1))
    }
    fn div(self, o: Self, at: usize) -> Result<Self> {
        let c = o
            .as_constant()
            .ok_or_else(|| Error::Parse { offset: at, message: "division by a parameter".into() })?;
        let inv = c.inv().ok_or_else(|| Error::Parse { offset: at, message: "division by zero".into() })?;
        Ok(self.scale(&inv))
    }
    fn pow(self, e: i64, at: usize) -> Result<Self> {
        if e < 0 {
            let c = self.as_constant().ok_or_else(|| Error::Parse {
                offset: at,
                message: "negative power of a parameter".into(),
            })?;
            return Ok(Self::constant(<RationalScalar as ExprTarget>::pow(c, e, at)?));
        }
        let mut acc = Self::constant(RationalScalar::one());
        for _ in 0..e {
            acc = Entry::mul(&acc, &self);
        }
        Ok(acc)
    }
}

impl std::str::FromStr for ParamPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

/// Parses `[[e11, e12, …], …]`; entries are numbers or strings in the
/// scalar syntax, optionally with parameter symbols.
pub fn parse_candidate(v: &Value) -> Result<Matrix<ParamPolynomial>> {
    let bad = |m: &str| Error::InvalidParameter(format!("candidate matrix: {m}"));
    let rows = v.as_array().ok_or_else(|| bad("expected a list of rows"))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("each row must be a list"))?
                .iter()
                .map(|e| match e {
                    Value::Number(x) => x.to_string().parse(),
                    Value::String(s) => s.parse(),
                    _ => Err(bad("entries must be numbers or strings")),
                })
                .collect::<Result<Vec<ParamPolynomial>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() || parsed.iter().any(|r| r.len() != parsed.len()) {
        return Err(bad("matrix must be square and nonempty"));
    }
    Ok(Matrix::from_rows(parsed))
}

/// The matrix with constant entries, if it has no parameters.
pub fn constant_matrix(b: &Matrix<ParamPolynomial>) -> Option<Matrix<RationalScalar>> {
    let entries: Option<Vec<RationalScalar>> = b.entries().iter().map(ParamPolynomial::as_constant).collect();
    let entries = entries?;
    let n = b.size();
    Some(Matrix::from_fn(n, |r, c| entries[r * n + c].clone()))
}

/// `R̂(I⊗B)R̂(I⊗B) - (I⊗B)R̂(I⊗B)R̂` for a constant matrix.
#[derive(Clone, Debug)]
pub struct ReCheck {
    pub solution: bool,
    pub residual: TensorOperator,
}

pub fn is_re_solution(b: &Matrix<RationalScalar>) -> ReCheck {
    let residual = TensorOperator { n: b.size(), matrix: reflection_residual(b) };
    ReCheck { solution: residual.is_zero(), residual }
}

/// One nonzero entry `(i,s),(j,t)` of the residual of a parametric family.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyResidual {
    pub i: usize,
    pub s: usize,
    pub j: usize,
    pub t: usize,
    pub value: ParamPolynomial,
}

/// All nonzero residual entries; their common zero set is the solution locus.
pub fn scan_family(b: &Matrix<ParamPolynomial>) -> Vec<FamilyResidual> {
    let n = b.size();
    let res = reflection_residual(b);
    let mut out = Vec::new();
    for r in 0..n * n {
        for c in 0..n * n {
            let v = res.get(r, c);
            if !v.is_zero() {
                out.push(FamilyResidual { i: r / n + 1, s: r % n + 1, j: c / n + 1, t: c % n + 1, value: v.clone() });
            }
        }
    }
    out
}

pub fn residuals_json(res: &[FamilyResidual]) -> Value {
    Value::Array(
        res.iter()
            .map(|r| json!({"i": r.i, "s": r.s, "j": r.j, "t": r.t, "value": r.value.to_string()}))
            .collect(),
    )
}

/// Whether every residual entry vanishes at `q = 1`.
pub fn residual_vanishes_at_one(b: &Matrix<RationalScalar>) -> Result<bool> {
    let check = is_re_solution(b);
    for v in check.residual.matrix.entries() {
        if !v.specialize_at_one()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> RationalScalar {
        t.parse().unwrap()
    }

    fn m(rows: &[&[&str]]) -> Matrix<RationalScalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|e| s(e)).collect()).collect())
    }

    #[test]
    fn identity_and_jordan_block() {
        assert!(is_re_solution(&Matrix::identity(2)).solution);
        assert!(is_re_solution(&Matrix::identity(3)).solution);
        // Every 2x2 matrix with vanishing (2,2) entry solves the equation.
        assert!(is_re_solution(&m(&[&["0", "1"], &["0", "0"]])).solution);
        assert!(is_re_solution(&m(&[&["3", "q"], &["-1", "0"]])).solution);
        let j3 = m(&[&["0", "1", "0"], &["0", "0", "1"], &["0", "0", "0"]]);
        let check = is_re_solution(&j3);
        assert!(!check.solution);
        assert_eq!(check.residual.entry(1, 1, 1, 3).to_string(), "1-q^-2");
        assert!(residual_vanishes_at_one(&j3).unwrap());
    }

    #[test]
    fn diagonal_locus() {
        let b = parse_candidate(&json!([["a", 0], [0, "b"]])).unwrap();
        let res = scan_family(&b);
        assert!(!res.is_empty());
        let expected: ParamPolynomial = "(q-q^-1)*(a*b - b^2)".parse().unwrap();
        assert!(res.iter().all(|r| r.value == expected || r.value == Entry::sub(&Entry::zero(), &expected)));
    }

    #[test]
    fn scalar_family_has_no_residual() {
        let b = parse_candidate(&json!([["c", 0], [0, "c"]])).unwrap();
        assert!(scan_family(&b).is_empty());
    }

    #[test]
    fn parametric_parse_and_print() {
        let p: ParamPolynomial = "(q-q^-1)*a*b - 2 + a^2".parse().unwrap();
        assert_eq!(p.to_string(), "a^2 + (q-q^-1)*a*b - 2");
        assert_eq!(p.variables(), vec!["a".to_string(), "b".to_string()]);
        let vals = BTreeMap::from([("a".to_string(), s("1")), ("b".to_string(), s("0"))]);
        assert_eq!(p.evaluate(&vals), s("-1"));
        assert!(parse_candidate(&json!([[1, 2]])).is_err());
    }
}
