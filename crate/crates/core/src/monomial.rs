use std::cmp::Ordering;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u64; 8]>;

/// A power product `x_1^a_1 ... x_n^a_n` with 64-bit exponents.
///
/// All arithmetic producing exponents is checked; overflow surfaces as
/// [`Error::DegreeOverflow`] instead of wrapping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u64]) -> Result<Self> {
        let mut degree = 0u64;
        for &e in exps {
            degree = degree
                .checked_add(e)
                .ok_or_else(|| Error::overflow("monomial degree"))?;
        }
        Ok(Self {
            exps: SmallVec::from_slice(exps),
            degree,
        })
    }

    #[inline]
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut exps = self.exps.clone();
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a
                .checked_add(*b)
                .ok_or_else(|| Error::overflow("monomial product"))?;
        }
        let degree = self
            .degree
            .checked_add(other.degree)
            .ok_or_else(|| Error::overflow("monomial product"))?;
        Ok(Self { exps, degree })
    }

    /// Scales every exponent by `factor` (the effect of `m -> m^factor`).
    pub fn scale(&self, factor: u64) -> Result<Self> {
        let mut exps = self.exps.clone();
        for a in exps.iter_mut() {
            *a = a
                .checked_mul(factor)
                .ok_or_else(|| Error::overflow("monomial power"))?;
        }
        let degree = self
            .degree
            .checked_mul(factor)
            .ok_or_else(|| Error::overflow("monomial power"))?;
        Ok(Self { exps, degree })
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        let exps: Exponents = other
            .exps
            .iter()
            .zip(self.exps.iter())
            .map(|(b, a)| b - a)
            .collect();
        Self {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of the variables occurring in the monomial (first 64 only).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// Inserts `count` zero exponents in front (used for auxiliary variables).
    pub fn prepend_zeros(&self, count: usize) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, count);
        exps.extend_from_slice(&self.exps);
        Self {
            exps,
            degree: self.degree,
        }
    }

    /// Drops the first `count` exponents; caller guarantees they are zero.
    pub fn drop_front(&self, count: usize) -> Self {
        debug_assert!(self.exps[..count].iter().all(|&e| e == 0));
        Self {
            exps: SmallVec::from_slice(&self.exps[count..]),
            degree: self.degree,
        }
    }
}

/// Monomial orders supported by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Block order eliminating the first `k` variables: compares the
    /// degree in the first block, then grevlex inside the first block,
    /// then grevlex on the remaining variables.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grevlex => {
                a.degree.cmp(&b.degree).then_with(|| revlex(&a.exps, &b.exps))
            }
            MonomialOrder::Elimination(k) => {
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                let da: u64 = a1.iter().sum();
                let db: u64 = b1.iter().sum();
                da.cmp(&db)
                    .then_with(|| revlex(a1, b1))
                    .then_with(|| (a.degree - da).cmp(&(b.degree - db)))
                    .then_with(|| revlex(a2, b2))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Elimination(k) => format!("elim{k}"),
        }
    }
}

/// Reverse-lexicographic tie break for equal-degree monomials: the one
/// with the smaller exponent in the last differing variable is larger.
#[inline]
fn revlex(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        // x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        // x*y > y^2
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        // x^2 z < x y^2 in grevlex
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[1, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_basics() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 3])), Ordering::Less);
    }

    #[test]
    fn elimination_puts_first_block_on_top() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn overflow_is_reported() {
        let big = m(&[u64::MAX - 1, 0]);
        assert!(big.mul(&m(&[5, 0])).is_err());
        assert!(m(&[3, 1]).scale(u64::MAX / 2).is_err());
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[3, 1, 4]);
        assert!(a.divides(&b));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 4]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[2, 3, 1]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 1])));
    }
}
