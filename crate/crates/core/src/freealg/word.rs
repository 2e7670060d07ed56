use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Which matrix of generators a letter belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    /// `x[i,j]`, entries of the FRT quantum matrix.
    X,
    /// `t[i,j]`, images of the `x[i,j]` in the quantum special linear group.
    T,
    /// `l[i,j]`, entries of the braided matrix of the reflection equation algebra.
    L,
    /// `x[k]`, `k in {-1, 0, 1}`, the coordinates of a quantum sphere.
    Sphere,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::X | Family::Sphere => "x",
            Family::T => "t",
            Family::L => "l",
        }
    }
}

/// A generator `family[row,col]`; sphere generators use `row` for the index
/// in `{-1, 0, 1}` and `col = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub family: Family,
    pub row: i8,
    pub col: i8,
}

impl GeneratorId {
    pub fn new(family: Family, row: usize, col: usize) -> Self {
        Self { family, row: row as i8, col: col as i8 }
    }

    pub fn x(row: usize, col: usize) -> Self {
        Self::new(Family::X, row, col)
    }

    pub fn t(row: usize, col: usize) -> Self {
        Self::new(Family::T, row, col)
    }

    pub fn l(row: usize, col: usize) -> Self {
        Self::new(Family::L, row, col)
    }

    pub fn sphere(k: i8) -> Self {
        Self { family: Family::Sphere, row: k, col: 0 }
    }

    pub fn row(&self) -> usize {
        self.row as usize
    }

    pub fn col(&self) -> usize {
        self.col as usize
    }

    pub fn with_family(self, family: Family) -> Self {
        Self { family, ..self }
    }

    /// Torus weight `e_row - e_col` in Z^n; sphere generator `x[k]` has
    /// weight `k * (e_1 - e_2)`.
    pub fn weight(&self, n: usize) -> Vec<i32> {
        let mut w = vec![0; n];
        match self.family {
            Family::Sphere => {
                if n >= 2 {
                    w[0] += self.row as i32;
                    w[1] -= self.row as i32;
                }
            }
            _ => {
                w[self.row() - 1] += 1;
                w[self.col() - 1] -= 1;
            }
        }
        w
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sphere => write!(f, "x[{}]", self.row),
            fam => write!(f, "{}[{},{}]", fam.tag(), self.row, self.col),
        }
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A monomial in the free algebra; the empty word is the unit.
///
/// Ordered degree-lexicographically using the natural order of
/// [`GeneratorId`] (row-major within a family). Presentations with a
/// different generator precedence compare through their own order keys.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[GeneratorId; 6]>);

impl Word {
    pub fn empty() -> Self {
        Self(SmallVec::new())
    }

    pub fn letter(g: GeneratorId) -> Self {
        Self(smallvec::smallvec![g])
    }

    pub fn from_letters<I: IntoIterator<Item = GeneratorId>>(it: I) -> Self {
        Self(it.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Sum of letter weights (see [`GeneratorId::weight`]).
    pub fn weight(&self, n: usize) -> Vec<i32> {
        let mut w = vec![0; n];
        for g in self.0.iter() {
            for (acc, d) in w.iter_mut().zip(g.weight(n)) {
                *acc += d;
            }
        }
        w
    }

    pub fn map_letters(&self, f: impl Fn(GeneratorId) -> GeneratorId) -> Word {
        Word(self.0.iter().map(|g| f(*g)).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The `n*n` generators of a matrix family in row-major order.
pub fn matrix_generators(family: Family, n: usize) -> Vec<GeneratorId> {
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| GeneratorId::new(family, i, j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(Word::letter(GeneratorId::l(1, 2)).weight(2), vec![1, -1]);
        assert_eq!(Word::empty().weight(3), vec![0, 0, 0]);
        let w = Word::from_letters([GeneratorId::l(1, 2), GeneratorId::l(2, 1)]);
        assert_eq!(w.weight(2), vec![0, 0]);
    }

    #[test]
    fn deg_lex_order() {
        let a = Word::from_letters([GeneratorId::x(2, 2)]);
        let b = Word::from_letters([GeneratorId::x(1, 1), GeneratorId::x(1, 1)]);
        assert!(a < b);
        let c = Word::from_letters([GeneratorId::x(1, 2), GeneratorId::x(1, 1)]);
        assert!(b < c);
    }
}
