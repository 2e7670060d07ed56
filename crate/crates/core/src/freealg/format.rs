use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::poly::NcPolynomial;
use super::word::{Family, GeneratorId, Word};
use crate::error::{Error, Result};
use crate::scalars::{Field, RationalScalar};
use crate::text::{parse_expr, ExprTarget};

/// Coefficient text, parenthesized unless it is a bare nonnegative integer.
pub(crate) fn coeff_text<C: Field>(c: &C) -> String {
    let s = c.to_string();
    if s.bytes().all(|b| b.is_ascii_digit()) {
        s
    } else {
        format!("({s})")
    }
}

/// Writes `sum c_k * item_k` with signs pulled out of the coefficients.
/// `items` must come in display order.
pub(crate) fn write_signed_sum<'a, C: Field + 'a, T: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = (T, &'a C, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (item, c, is_unit) in items {
        let negative = c.is_negative_display();
        let c = if negative { c.neg() } else { c.clone() };
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        first = false;
        if is_unit {
            write!(f, "{}", coeff_text(&c))?;
        } else if c.is_one() {
            write!(f, "{item}")?;
        } else {
            write!(f, "{}*{item}", coeff_text(&c))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<C: Field> fmt::Display for NcPolynomial<C> {
    /// Terms in decreasing degree-lexicographic order, e.g.
    /// `(q^-1)*x[1,1]*x[1,2] - x[2,2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_sum(f, self.terms().rev().map(|(w, c)| (w, c, w.is_empty())))
    }
}

impl<C: Field> fmt::Debug for NcPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl ExprTarget for NcPolynomial<RationalScalar> {
    fn from_int(n: BigInt) -> Self {
        Self::constant(<RationalScalar as ExprTarget>::from_int(n))
    }
    fn q() -> Self {
        Self::constant(RationalScalar::q())
    }
    fn ident(name: &str, indices: Option<Vec<i64>>, at: usize) -> Result<Self> {
        let err = |m: String| Error::Parse { offset: at, message: m };
        let family = match name {
            "x" => Family::X,
            "t" => Family::T,
            "l" => Family::L,
            _ => return Err(err(format!("unknown generator family '{name}'"))),
        };
        let idx = indices.ok_or_else(|| err(format!("generator '{name}' needs indices")))?;
        match idx.as_slice() {
            [k] if family == Family::X && (-1..=1).contains(k) => {
                Ok(Self::generator(GeneratorId::sphere(*k as i8)))
            }
            [i, j] if (1..=i8::MAX as i64).contains(i) && (1..=i8::MAX as i64).contains(j) => {
                Ok(Self::generator(GeneratorId::new(family, *i as usize, *j as usize)))
            }
            _ => Err(err(format!("bad indices {idx:?} for '{name}'"))),
        }
    }
    fn add(self, o: Self) -> Self {
        NcPolynomial::add(&self, &o)
    }
    fn sub(self, o: Self) -> Self {
        NcPolynomial::sub(&self, &o)
    }
    fn mul(self, o: Self) -> Self {
        NcPolynomial::mul(&self, &o)
    }
    fn neg(self) -> Self {
        NcPolynomial::neg(&self)
    }
    fn div(self, o: Self, at: usize) -> Result<Self> {
        let c = o
            .as_constant()
            .ok_or_else(|| Error::Parse { offset: at, message: "division by a non-scalar".into() })?;
        let inv = c
            .inv()
            .ok_or_else(|| Error::Parse { offset: at, message: "division by zero".into() })?;
        Ok(self.scale(&inv))
    }
    fn pow(self, e: i64, at: usize) -> Result<Self> {
        if e < 0 {
            let c = self.as_constant().ok_or_else(|| Error::Parse {
                offset: at,
                message: "negative power of a non-scalar".into(),
            })?;
            let p = <RationalScalar as ExprTarget>::pow(c, e, at)?;
            return Ok(Self::constant(p));
        }
        let mut acc = Self::one();
        for _ in 0..e {
            acc = NcPolynomial::mul(&acc, &self);
        }
        Ok(acc)
    }
}

impl FromStr for NcPolynomial<RationalScalar> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

pub(crate) fn letter_json(g: &GeneratorId) -> Value {
    match g.family {
        Family::Sphere => json!(["x", g.row]),
        fam => json!([fam.tag(), g.row, g.col]),
    }
}

pub(crate) fn word_json(w: &Word) -> Value {
    Value::Array(w.letters().iter().map(letter_json).collect())
}

fn bad_json(m: &str) -> Error {
    Error::Parse { offset: 0, message: format!("invalid polynomial JSON: {m}") }
}

pub(crate) fn letter_from_json(v: &Value) -> Result<GeneratorId> {
    let a = v.as_array().ok_or_else(|| bad_json("letter is not an array"))?;
    let tag = a.first().and_then(Value::as_str).ok_or_else(|| bad_json("missing family tag"))?;
    let ints: Vec<i64> = a[1..].iter().filter_map(Value::as_i64).collect();
    if ints.len() != a.len() - 1 {
        return Err(bad_json("non-integer index"));
    }
    let indices = ints.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
    let p: NcPolynomial<RationalScalar> = format!("{tag}[{indices}]").parse()?;
    let (w, _) = p.leading().ok_or_else(|| bad_json("empty letter"))?;
    Ok(w.letters()[0])
}

impl NcPolynomial<RationalScalar> {
    /// `[{"coeff": "...", "word": [[family, i, j], ...]}, ...]`, terms
    /// in decreasing order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .rev()
                .map(|(w, c)| json!({ "coeff": c.to_string(), "word": word_json(w) }))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let items = v.as_array().ok_or_else(|| bad_json("expected a list of terms"))?;
        let mut p = Self::zero();
        for item in items {
            let c: RationalScalar = item
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| bad_json("term without a coeff string"))?
                .parse()?;
            let letters = item
                .get("word")
                .and_then(Value::as_array)
                .ok_or_else(|| bad_json("term without a word list"))?
                .iter()
                .map(letter_from_json)
                .collect::<Result<Vec<_>>>()?;
            p.add_term(Word::from_letters(letters), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> NcPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn display_matches_text_format() {
        let x = p("(q^-1)*x[1,1]*x[1,2] - x[2,2]");
        assert_eq!(x.to_string(), "(q^-1)*x[1,1]*x[1,2] - x[2,2]");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-l[1,2] + 2").to_string(), "-l[1,2] + 2");
        assert_eq!(p("(1-q)*t[1,1]").to_string(), "-(q-1)*t[1,1]");
        assert_eq!(p("x[-1]*x[1]").to_string(), "x[-1]*x[1]");
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in [
            "l[1,2]*l[2,1] + (q^-2-1)*l[2,2]*l[2,2] - (q^-2-1)*l[2,2]*l[1,1]",
            "x[1,1]*x[2,2] - q*x[1,2]*x[2,1] - 1",
            "(q/(q^2+1))*x[0]*x[0] + x[-1]",
        ] {
            let a = p(s);
            let b = p(&a.to_string());
            assert_eq!(a, b);
            assert_eq!(NcPolynomial::from_json(&a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("y[1,1]".parse::<NcPolynomial>(), Err(Error::Parse { .. })));
        assert!(matches!("x[1,1]/x[1,2]".parse::<NcPolynomial>(), Err(Error::Parse { .. })));
        assert!(matches!("x[1,1".parse::<NcPolynomial>(), Err(Error::Parse { .. })));
    }
}
