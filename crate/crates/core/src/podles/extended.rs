use std::fmt;

use num_rational::BigRational;

use crate::error::Result;
use crate::freealg::write_signed_sum;
use crate::scalars::{Field, RationalScalar};

/// `(q + q⁻¹)⁻¹`, the square of the adjoined root `s`.
fn sigma() -> RationalScalar {
    RationalScalar::q().add(&RationalScalar::q_pow(-1)).inv().expect("q + q^-1 is nonzero")
}

/// `u + v·s` in `Q(q)(s)`.
#[derive(Clone)]
struct RootPair(RationalScalar, RationalScalar);

impl RootPair {
    fn add(&self, o: &Self) -> Self {
        RootPair(self.0.add(&o.0), self.1.add(&o.1))
    }
    fn sub(&self, o: &Self) -> Self {
        RootPair(self.0.sub(&o.0), self.1.sub(&o.1))
    }
    fn mul(&self, o: &Self) -> Self {
        RootPair(
            self.0.mul(&o.0).add(&sigma().mul(&self.1.mul(&o.1))),
            self.0.mul(&o.1).add(&self.1.mul(&o.0)),
        )
    }
    fn neg(&self) -> Self {
        RootPair(self.0.neg(), self.1.neg())
    }
    fn inv(&self) -> Option<Self> {
        let norm = self.0.mul(&self.0).sub(&sigma().mul(&self.1.mul(&self.1)));
        let n = norm.inv()?;
        Some(RootPair(self.0.mul(&n), self.1.neg().mul(&n)))
    }
}

/// An element `a + b·i + c·s + d·i·s` of `Q(q)(i, s)`, where `i² = -1` and
/// `s² = (q + q⁻¹)⁻¹`. Both square roots are missing from `Q(q)`, so this
/// is a field of degree 4 over it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtendedScalar {
    coords: [RationalScalar; 4],
}

impl ExtendedScalar {
    pub fn new(a: RationalScalar, b: RationalScalar, c: RationalScalar, d: RationalScalar) -> Self {
        Self { coords: [a, b, c, d] }
    }

    pub fn from_rational(a: RationalScalar) -> Self {
        let z = RationalScalar::zero();
        Self::new(a, z.clone(), z.clone(), z)
    }

    pub fn i() -> Self {
        let (z, o) = (RationalScalar::zero(), RationalScalar::one());
        Self::new(z.clone(), o, z.clone(), z)
    }

    pub fn s() -> Self {
        let (z, o) = (RationalScalar::zero(), RationalScalar::one());
        Self::new(z.clone(), z.clone(), o, z)
    }

    /// Coordinates in the basis `1, i, s, i·s`.
    pub fn coords(&self) -> &[RationalScalar; 4] {
        &self.coords
    }

    /// The rational part, when the other three coordinates vanish.
    pub fn as_rational(&self) -> Option<RationalScalar> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| self.coords[0].clone())
    }

    /// Coordinates at `q = 1`, where `s² = 1/2`.
    pub fn specialize_at_one(&self) -> Result<[BigRational; 4]> {
        let [a, b, c, d] = &self.coords;
        Ok([a.specialize_at_one()?, b.specialize_at_one()?, c.specialize_at_one()?, d.specialize_at_one()?])
    }

    fn split(&self) -> (RootPair, RootPair) {
        let [a, b, c, d] = self.coords.clone();
        (RootPair(a, c), RootPair(b, d))
    }

    fn join(re: RootPair, im: RootPair) -> Self {
        Self::new(re.0, im.0, re.1, im.1)
    }
}

impl Field for ExtendedScalar {
    fn zero() -> Self {
        Self::from_rational(RationalScalar::zero())
    }
    fn one() -> Self {
        Self::from_rational(RationalScalar::one())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
    fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|c| Field::is_one(&c))
    }
    fn add(&self, o: &Self) -> Self {
        let c = |k: usize| self.coords[k].add(&o.coords[k]);
        Self::new(c(0), c(1), c(2), c(3))
    }
    fn sub(&self, o: &Self) -> Self {
        let c = |k: usize| self.coords[k].sub(&o.coords[k]);
        Self::new(c(0), c(1), c(2), c(3))
    }
    fn mul(&self, o: &Self) -> Self {
        let ((a, b), (c, d)) = (self.split(), o.split());
        Self::join(a.mul(&c).sub(&b.mul(&d)), a.mul(&d).add(&b.mul(&c)))
    }
    fn neg(&self) -> Self {
        let c = |k: usize| self.coords[k].neg();
        Self::new(c(0), c(1), c(2), c(3))
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let (a, b) = self.split();
        let n = a.mul(&a).add(&b.mul(&b)).inv()?;
        Some(Self::join(a.mul(&n), b.neg().mul(&n)))
    }
    fn from_i64(n: i64) -> Self {
        Self::from_rational(RationalScalar::from_int(n))
    }
    fn is_negative_display(&self) -> bool {
        let first = self.coords.iter().find(|c| !c.is_zero());
        first.is_some_and(|c| c.is_negative_display()) && self.coords.iter().filter(|c| !c.is_zero()).count() == 1
    }
}

impl From<RationalScalar> for ExtendedScalar {
    fn from(c: RationalScalar) -> Self {
        Self::from_rational(c)
    }
}

impl fmt::Display for ExtendedScalar {
    /// E.g. `(q^-1)*s`, `2 - i*s`, `(q+1)*i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_rational() {
            return write!(f, "{c}");
        }
        let labels = ["1", "i", "s", "i*s"];
        let items = self
            .coords
            .iter()
            .zip(labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| (l, c, l == "1"));
        write_signed_sum(f, items)
    }
}

impl fmt::Debug for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RationalScalar {
        s.parse().unwrap()
    }

    #[test]
    fn square_roots() {
        let i = ExtendedScalar::i();
        let s = ExtendedScalar::s();
        assert_eq!(i.mul(&i), ExtendedScalar::from_i64(-1));
        assert_eq!(s.mul(&s), ExtendedScalar::from(r("1/(q+q^-1)")));
        assert_eq!(s.to_string(), "s");
        assert_eq!(i.mul(&s).neg().to_string(), "-i*s");
    }

    #[test]
    fn inverses() {
        let z = ExtendedScalar::new(r("q"), r("2"), r("-1"), r("q^-1+3"));
        let w = z.inv().unwrap();
        assert_eq!(z.mul(&w), ExtendedScalar::one());
        assert!(ExtendedScalar::zero().inv().is_none());
        let t = ExtendedScalar::new(r("1"), r("0"), r("0"), r("1"));
        assert_eq!(t.mul(&t.inv().unwrap()), ExtendedScalar::one());
    }
}
