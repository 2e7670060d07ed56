//! The standard R-matrix of `GL(n)` type, `R̂ = flip ∘ R`, and exact
//! checks of the Hecke and braid identities.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Entry, Matrix};
use crate::scalars::RationalScalar;

/// An operator on `(k^n)^{⊗m}`; rows and columns are indexed by tuples in
/// lexicographic order, so the pair `(i,s)` (1-based) sits at
/// `(i-1)*n + (s-1)`.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorOperator {
    pub n: usize,
    pub matrix: Matrix<RationalScalar>,
}

impl TensorOperator {
    pub fn pair_index(&self, i: usize, s: usize) -> usize {
        (i - 1) * self.n + (s - 1)
    }

    /// The entry `A^{is}_{jt}`, row pair `(i,s)`, column pair `(j,t)`.
    pub fn entry(&self, i: usize, s: usize, j: usize, t: usize) -> &RationalScalar {
        self.matrix.get(self.pair_index(i, s), self.pair_index(j, t))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Nonzero entries of a two-fold operator as `(i, s, j, t, value)`.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize, usize, usize, RationalScalar)> {
        let n = self.n;
        self.matrix
            .nonzero_entries()
            .map(|(r, c, v)| (r / n + 1, r % n + 1, c / n + 1, c % n + 1, v.clone()))
            .collect()
    }

    /// `[{"i":..,"s":..,"j":..,"t":..,"value":"..."}, ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.nonzero_pairs()
                .into_iter()
                .map(|(i, s, j, t, v)| json!({"i": i, "s": s, "j": j, "t": t, "value": v.to_string()}))
                .collect(),
        )
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("matrix size n must be at least 1, got {n}")));
    }
    Ok(())
}

/// `R^{is}_{jt}`: `q` if `i=j=s=t`; `1` if `i=j`, `s=t`, `i≠s`;
/// `q-q^-1` if `i>j`, `i=t`, `j=s`; `0` otherwise.
pub fn r_entry(i: usize, s: usize, j: usize, t: usize) -> RationalScalar {
    if i == j && s == t {
        if i == s {
            RationalScalar::q()
        } else {
            RationalScalar::one()
        }
    } else if i > j && i == t && j == s {
        RationalScalar::q_minus_inv()
    } else {
        RationalScalar::zero()
    }
}

fn pair_operator(n: usize, f: impl Fn(usize, usize, usize, usize) -> RationalScalar) -> TensorOperator {
    let matrix = Matrix::from_fn(n * n, |r, c| f(r / n + 1, r % n + 1, c / n + 1, c % n + 1));
    TensorOperator { n, matrix }
}

pub fn build_r(n: usize) -> Result<TensorOperator> {
    check_n(n)?;
    Ok(pair_operator(n, r_entry))
}

/// `R̂^{is}_{jt} = R^{si}_{jt}`.
pub fn build_r_hat(n: usize) -> Result<TensorOperator> {
    check_n(n)?;
    Ok(pair_operator(n, |i, s, j, t| r_entry(s, i, j, t)))
}

/// Outcome of an exact operator identity check.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub holds: bool,
    pub residual: TensorOperator,
}

/// `(R̂ - q)(R̂ + q^-1) = 0`.
pub fn check_hecke(n: usize) -> Result<IdentityCheck> {
    let rh = build_r_hat(n)?;
    let id = Matrix::<RationalScalar>::identity(n * n);
    let a = rh.matrix.sub(&id.scale(&RationalScalar::q()));
    let b = rh.matrix.add(&id.scale(&RationalScalar::q_pow(-1)));
    let residual = TensorOperator { n, matrix: a.mul(&b) };
    Ok(IdentityCheck { holds: residual.is_zero(), residual })
}

/// `(R̂⊗I)(I⊗R̂)(R̂⊗I) = (I⊗R̂)(R̂⊗I)(I⊗R̂)` on the triple tensor power.
pub fn check_braid(n: usize) -> Result<IdentityCheck> {
    let rh = build_r_hat(n)?.matrix;
    let id = Matrix::<RationalScalar>::identity(n);
    let r12 = rh.kron(&id);
    let r23 = id.kron(&rh);
    let lhs = r12.mul(&r23).mul(&r12);
    let rhs = r23.mul(&r12).mul(&r23);
    let residual = TensorOperator { n, matrix: lhs.sub(&rhs) };
    Ok(IdentityCheck { holds: residual.is_zero(), residual })
}

/// `R̂(X⊗I)(I⊗X) - (X⊗I)(I⊗X)R̂` for a matrix `X` over any entry ring;
/// each entry is one defining relation of the FRT bialgebra.
pub fn frt_residual<T: Entry>(x: &Matrix<T>) -> Matrix<T> {
    let n = x.size();
    let rh = build_r_hat(n).expect("n >= 1").matrix.map(T::from_scalar);
    let id = Matrix::<T>::identity(n);
    let x1 = x.kron(&id);
    let x2 = id.kron(x);
    let prod = x1.mul(&x2);
    rh.mul(&prod).sub(&prod.mul(&rh))
}

/// `R̂(I⊗L)R̂(I⊗L) - (I⊗L)R̂(I⊗L)R̂`; each entry is one instance of the
/// reflection equation.
pub fn reflection_residual<T: Entry>(l: &Matrix<T>) -> Matrix<T> {
    let n = l.size();
    let rh = build_r_hat(n).expect("n >= 1").matrix.map(T::from_scalar);
    let l2 = Matrix::<T>::identity(n).kron(l);
    let lhs = rh.mul(&l2).mul(&rh).mul(&l2);
    let rhs = l2.mul(&rh).mul(&l2).mul(&rh);
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> RationalScalar {
        text.parse().unwrap()
    }

    #[test]
    fn n1_is_q() {
        let r = build_r(1).unwrap();
        assert_eq!(r.entry(1, 1, 1, 1), &RationalScalar::q());
        assert_eq!(build_r_hat(1).unwrap(), r);
        assert!(matches!(build_r(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn r_hat_on_basis_vectors() {
        let rh = build_r_hat(2).unwrap();
        // Column (1,2) of R̂ is the image of e1⊗e2.
        let col = rh.pair_index(1, 2);
        let image: Vec<_> = (0..4).map(|r| rh.matrix.get(r, col).clone()).collect();
        assert_eq!(image, vec![s("0"), s("q-q^-1"), s("1"), s("0")]);
        assert_eq!(rh.entry(1, 1, 1, 1), &s("q"));
    }

    #[test]
    fn json_dump_lists_nonzero_entries() {
        let j = build_r(2).unwrap().to_json();
        assert_eq!(j.as_array().unwrap().len(), 5);
        assert_eq!(j[0], json!({"i":1,"s":1,"j":1,"t":1,"value":"q"}));
    }
}
