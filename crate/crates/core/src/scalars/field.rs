use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Exact field arithmetic, by reference. Implemented by the coefficient
/// types the algebra engine is generic over.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn from_i64(n: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.add(&one);
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    /// Whether the printed form needs a leading minus pulled out when used as
    /// a term coefficient.
    fn is_negative_display(&self) -> bool {
        false
    }
}
