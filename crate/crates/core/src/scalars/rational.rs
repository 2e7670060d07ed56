use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::laurent::{LaurentPolynomial, Poly};
use crate::error::{Error, Result};

/// An element of the rational function field Q(q).
///
/// Canonical form: `numerator / denominator` with the numerator a Laurent
/// polynomial, the denominator an ordinary polynomial with nonzero constant
/// term and leading coefficient 1, and the two coprime. Every value has
/// exactly one such representation, so derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalScalar {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalScalar {
    /// Reduces an arbitrary numerator/denominator pair to canonical form.
    pub fn normalize(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidScalar(format!("({num})/0 has a zero denominator")));
        }
        Ok(Self::normalize_unchecked(num, den))
    }

    fn normalize_unchecked(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // q^k is a unit, so move the denominator's lowest power into the numerator.
        let shift = den.low_exp();
        let (num_low, num_poly) = num.shift(-shift).strip_low();
        let (_, den_poly) = den.strip_low();
        if den_poly.is_constant() {
            let c = den_poly.lc().clone();
            let num = LaurentPolynomial::from_poly(num_low, num_poly).scale(&(BigRational::one() / c));
            return Self { num, den: LaurentPolynomial::one() };
        }
        let g = Poly::gcd(&num_poly, &den_poly);
        let (num_poly, den_poly) = if g.is_constant() {
            (num_poly, den_poly)
        } else {
            (num_poly.exact_div(&g), den_poly.exact_div(&g))
        };
        let lc_inv = BigRational::one() / den_poly.lc().clone();
        let num = LaurentPolynomial::from_poly(num_low, num_poly).scale(&lc_inv);
        let den = LaurentPolynomial::from_poly(0, den_poly).scale(&lc_inv);
        Self { num, den }
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        Self { num: p, den: LaurentPolynomial::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPolynomial::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_laurent(LaurentPolynomial::constant(c))
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::from_laurent(LaurentPolynomial::q_pow(k))
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q - q^-1`.
    pub fn q_minus_inv() -> Self {
        Self::q().sub(&Self::q_pow(-1))
    }

    /// `(-q)^k` for any integer `k`.
    pub fn neg_q_pow(k: i32) -> Self {
        let p = Self::q_pow(k);
        if k.rem_euclid(2) == 1 {
            p.neg()
        } else {
            p
        }
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    /// True when the value lies in the Laurent polynomial ring.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn zero() -> Self {
        Self { num: LaurentPolynomial::zero(), den: LaurentPolynomial::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `q = 1`. Fails with [`Error::NotInK`] when the reduced
    /// denominator vanishes there, i.e. the element is outside the local ring K.
    pub fn specialize_at_one(&self) -> Result<BigRational> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(Error::NotInK(self.to_string()));
        }
        Ok(self.num.eval_at_one() / d)
    }

    /// Whether `specialize_at_one` succeeds.
    pub fn is_regular_at_one(&self) -> bool {
        !self.den.eval_at_one().is_zero()
    }

    /// Value at a rational point, `None` at a pole.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(at)? / d)
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self::normalize_unchecked(self.num.invert_variable(), self.den.invert_variable())
    }

    pub fn pow(&self, e: i32) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Numerator and denominator scaled to coprime integer coefficients, the
    /// denominator with positive leading coefficient.
    fn integral_parts(&self) -> (LaurentPolynomial, LaurentPolynomial) {
        let l = self.num.coeff_denominator_lcm().lcm(&self.den.coeff_denominator_lcm());
        let scale = BigRational::from_integer(l);
        let n = self.num.scale(&scale);
        let d = self.den.scale(&scale);
        let g = n.integer_content().gcd(&d.integer_content());
        if g.is_zero() || g.is_one() {
            (n, d)
        } else {
            let inv = BigRational::new(BigInt::one(), g);
            (n.scale(&inv), d.scale(&inv))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::normalize_unchecked(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalize_unchecked(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(self.num.mul(&other.num));
        }
        if other.num.is_monomial() && other.den.is_one() {
            return Self { num: self.num.mul(&other.num), den: self.den.clone() };
        }
        if self.num.is_monomial() && self.den.is_one() {
            return Self { num: self.num.mul(&other.num), den: other.den.clone() };
        }
        Self::normalize_unchecked(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.num.is_monomial() {
            let c = self.num.leading_coeff();
            let k = self.num.low_exp();
            let num = self.den.shift(-k).scale(&(BigRational::one() / c));
            return Some(Self { num, den: LaurentPolynomial::one() });
        }
        Some(Self::normalize_unchecked(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        let inv = other
            .inv()
            .ok_or_else(|| Error::InvalidScalar(format!("division of {self} by zero")))?;
        Ok(self.mul(&inv))
    }
}

impl Field for RationalScalar {
    fn zero() -> Self {
        RationalScalar::zero()
    }
    fn one() -> Self {
        RationalScalar::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
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
    fn neg(&self) -> Self {
        RationalScalar::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RationalScalar::inv(self)
    }
    fn from_i64(n: i64) -> Self {
        RationalScalar::from_int(n)
    }
    fn is_negative_display(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }
}

impl Default for RationalScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for RationalScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<LaurentPolynomial> for RationalScalar {
    fn from(p: LaurentPolynomial) -> Self {
        Self::from_laurent(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&RationalScalar> for &RationalScalar {
            type Output = RationalScalar;
            fn $method(self, rhs: &RationalScalar) -> RationalScalar {
                RationalScalar::$inner(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Div<&RationalScalar> for &RationalScalar {
    type Output = RationalScalar;
    /// Panics on division by zero; use [`RationalScalar::checked_div`] otherwise.
    fn div(self, rhs: &RationalScalar) -> RationalScalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &RationalScalar {
    type Output = RationalScalar;
    fn neg(self) -> RationalScalar {
        RationalScalar::neg(self)
    }
}


impl fmt::Display for RationalScalar {
    /// Integer-coefficient text form, e.g. `q-q^-1`, `1/(q-1)`, `(q^2+1)/(2*q^2+3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (n, d) = self.integral_parts();
        if d.is_one() {
            return write!(f, "{n}");
        }
        let wrap = |p: &LaurentPolynomial| {
            let s = p.to_string();
            if p.is_monomial() {
                s
            } else {
                format!("({s})")
            }
        };
        write!(f, "{}/{}", wrap(&n), wrap(&d))
    }
}

impl fmt::Debug for RationalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RationalScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_expr::<RationalScalar>(s)
    }
}

impl crate::text::ExprTarget for RationalScalar {
    fn from_int(n: BigInt) -> Self {
        RationalScalar::from_rational(BigRational::from_integer(n))
    }
    fn q() -> Self {
        RationalScalar::q()
    }
    fn ident(name: &str, indices: Option<Vec<i64>>, at: usize) -> Result<Self> {
        Err(Error::Parse {
            offset: at,
            message: format!(
                "unexpected symbol '{name}{}' in a scalar",
                indices.map(|i| format!("{i:?}")).unwrap_or_default()
            ),
        })
    }
    fn add(self, o: Self) -> Self {
        RationalScalar::add(&self, &o)
    }
    fn sub(self, o: Self) -> Self {
        RationalScalar::sub(&self, &o)
    }
    fn mul(self, o: Self) -> Self {
        RationalScalar::mul(&self, &o)
    }
    fn neg(self) -> Self {
        RationalScalar::neg(&self)
    }
    fn div(self, o: Self, at: usize) -> Result<Self> {
        self.checked_div(&o).map_err(|_| Error::Parse { offset: at, message: "division by zero".into() })
    }
    fn pow(self, e: i64, at: usize) -> Result<Self> {
        RationalScalar::pow(&self, e as i32)
            .ok_or_else(|| Error::Parse { offset: at, message: "negative power of zero".into() })
    }
}
