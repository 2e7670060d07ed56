//! Free associative algebras on matrix-indexed generators, oriented rewriting
//! systems with normal forms and degree-capped overlap completion, and tensor
//! products of presented algebras.

mod format;
mod poly;
mod rewrite;
mod tensor;
mod word;

pub use poly::NcPolynomial;
pub use rewrite::{AlgebraPresentation, CompletionReport, MonomialOrder, RewriteRule};
pub use tensor::{TensorAlgebra, TensorElement, TensorKey};
pub use word::{matrix_generators, Family, GeneratorId, Word};

pub(crate) use format::write_signed_sum;

/// `C(m + d - 1, d)`, the number of degree-`d` monomials in `m` commuting
/// variables.
pub fn commutative_count(m: usize, d: usize) -> usize {
    if m == 0 {
        return usize::from(d == 0);
    }
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = acc * (m as u128 - 1 + k) / k;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::RationalScalar;

    fn x(i: usize, j: usize) -> NcPolynomial {
        NcPolynomial::generator(GeneratorId::x(i, j))
    }

    fn toy() -> AlgebraPresentation {
        // q-plane: x12 x11 = q^-1 x11 x12 on two letters.
        let order = MonomialOrder::new(vec![GeneratorId::x(1, 1), GeneratorId::x(1, 2)]).unwrap();
        let rel = x(1, 2).mul(&x(1, 1)).sub(&x(1, 1).mul(&x(1, 2)).scale(&RationalScalar::q_pow(-1)));
        AlgebraPresentation::from_relations(1, order, [rel]).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(commutative_count(4, 2), 10);
        assert_eq!(commutative_count(9, 2), 45);
        assert_eq!(commutative_count(9, 0), 1);
        assert_eq!(commutative_count(0, 3), 0);
    }

    #[test]
    fn quantum_plane_normal_form() {
        let a = toy();
        let w = x(1, 2).mul(&x(1, 2)).mul(&x(1, 1));
        let expected = x(1, 1).mul(&x(1, 2)).mul(&x(1, 2)).scale(&RationalScalar::q_pow(-2));
        assert_eq!(a.normal_form(&w), expected);
        for d in 0..6 {
            assert_eq!(a.irreducible_word_count(d), d + 1);
            assert_eq!(a.normal_words(d).len(), d + 1);
        }
        let (c, report) = a.complete(4).unwrap();
        assert!(report.added.is_empty());
        assert_eq!(c.num_rules(), 1);
    }

    #[test]
    fn empty_rule_set_completes_unchanged() {
        let order = MonomialOrder::new(vec![GeneratorId::x(1, 1)]).unwrap();
        let a: AlgebraPresentation = AlgebraPresentation::free(1, order);
        let (c, report) = a.complete(3).unwrap();
        assert!(report.added.is_empty());
        assert_eq!(c.num_rules(), 0);
        assert_eq!(c.irreducible_word_count(0), 1);
    }

    #[test]
    fn inconsistent_relations_fail_to_orient() {
        let order = MonomialOrder::new(vec![GeneratorId::x(1, 1), GeneratorId::x(1, 2)]).unwrap();
        // x11 = 1 and x11 = 2 force 1 = 0.
        let r1 = x(1, 1).sub(&NcPolynomial::one());
        let r2 = x(1, 1).sub(&NcPolynomial::constant(RationalScalar::from_int(2)));
        let e = AlgebraPresentation::from_relations(1, order, [r1, r2]).unwrap_err();
        assert!(matches!(e, crate::Error::OrientationFailure(_)));
    }

    #[test]
    fn completion_adds_missing_rules() {
        // ab = a, ba = b: the overlap aba gives aa - a (idempotent letters).
        let (a, b) = (x(1, 1), x(1, 2));
        let order = MonomialOrder::new(vec![GeneratorId::x(1, 1), GeneratorId::x(1, 2)]).unwrap();
        let pres = AlgebraPresentation::from_relations(
            1,
            order,
            [a.mul(&b).sub(&a), b.mul(&a).sub(&b)],
        )
        .unwrap();
        let (done, report) = pres.complete(4).unwrap();
        assert!(!report.added.is_empty());
        assert!(done.is_confluent_up_to(4));
        assert_eq!(done.normal_form(&a.mul(&a)), a);
    }

    #[test]
    fn tensor_interchange() {
        let a = toy();
        let factors = [&a, &a];
        let t = TensorAlgebra::new(&factors);
        let u = t.embed(1, &x(1, 2));
        let v = t.embed(1, &x(1, 1));
        let expected = t.embed(1, &x(1, 1).mul(&x(1, 2)).scale(&RationalScalar::q_pow(-1)));
        assert_eq!(t.multiply(&u, &v), expected);
        let left = t.embed(0, &x(1, 1));
        let prod = t.multiply(&u, &left);
        assert_eq!(prod, t.element(&[x(1, 1), x(1, 2)]));
    }
}
