use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial in `q` with exact rational coefficients.
///
/// Stored densely as `coeffs[k]` = coefficient of `q^(low + k)`. The vector
/// never has a zero at either end, and the zero polynomial is the empty
/// vector with `low == 0`, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    low: i32,
    coeffs: Vec<BigRational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigRational, exp: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { low: exp, coeffs: vec![c] }
        }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i32) -> Self {
        Self::monomial(BigRational::one(), exp)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|(e, _)| *e).min().unwrap();
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    fn from_dense(low: i32, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self { low: low + lead_zeros as i32, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for a single term `c * q^k`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exp(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (`low - 1` when zero).
    pub fn high_exp(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms, highest exponent first.
    pub fn terms_desc(&self) -> impl Iterator<Item = (i32, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: self.low, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high_exp().max(other.high_exp());
        let mut coeffs = vec![BigRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + k] += c;
        }
        Self::from_dense(low, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_dense(self.low + other.low, coeffs)
    }

    /// Value at a nonzero rational point, or at zero when no negative powers occur.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        if at.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        if self.low >= 0 {
            Some(acc * pow_rat(at, self.low as u32))
        } else {
            Some(acc / pow_rat(at, (-self.low) as u32))
        }
    }

    /// Value at `q = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.high_exp(), coeffs }
    }

    /// The polynomial `q^-low * self`, which has a nonzero constant term.
    pub(crate) fn strip_low(&self) -> (i32, Poly) {
        (self.low, Poly(self.coeffs.clone()))
    }

    pub(crate) fn from_poly(low: i32, p: Poly) -> Self {
        Self::from_dense(low, p.0)
    }

    /// Least common multiple of the denominators of all coefficients.
    pub fn coeff_denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators of all coefficients (assumes integral coefficients).
    pub fn integer_content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

fn pow_rat(a: &BigRational, e: u32) -> BigRational {
    num_traits::pow(a.clone(), e as usize)
}

impl Default for LaurentPolynomial {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPolynomial {
    /// Highest power first, e.g. `3*q^2-q+1/2-q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms_desc() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{e}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial with `0[k]` the coefficient of `q^k`; used
/// internally for gcd computations. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly(pub Vec<BigRational>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn lc(&self) -> &BigRational {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    pub fn monic(&self) -> Poly {
        let lc = self.lc().clone();
        Poly(self.0.iter().map(|c| c / &lc).collect())
    }

    /// Euclidean division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        let lc = divisor.lc().clone();
        if rem.len() < divisor.0.len() {
            return (Poly(Vec::new()), Poly(rem).trim());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly(quot).trim(), Poly(rem).trim())
    }

    /// Monic gcd.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone().trim(), b.clone().trim());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.monic() };
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPolynomial {
    /// Arbitrary but total structural order (used only for deterministic sorting).
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}
