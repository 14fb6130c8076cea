//! Sparse multivariate polynomials over `F_p`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::{ensure_same, PolyRing, RingRef};

pub type Term = (Monomial, u64);

/// A polynomial in canonical form: terms strictly decreasing in the ring's
/// monomial order, no zero coefficients. The zero polynomial has no terms.
#[derive(Clone)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &RingRef, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(ring.one_monomial(), c)]
        };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        Self {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), index), 1)],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: u64) -> Self {
        let c = c % ring.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<Term>) -> Self {
        let order = ring.order();
        let field = *ring.field();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Self {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Trusts that `terms` is already canonical for `ring`.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.terms.first().map_or(0, |t| t.1)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> u64 {
        self.terms
            .iter()
            .find(|t| t.0.is_one())
            .map_or(0, |t| t.1)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(first) => self.terms.iter().all(|t| t.0.degree() == first.0.degree()),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) {
            Ok(())
        } else {
            ensure_same(&self.ring, &other.ring)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, 1))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other, self.ring.field().neg(1)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.mul_unchecked(other)
    }

    /// `self + c * other` by merging the sorted term lists.
    pub(crate) fn add_unchecked(&self, other: &Self, c: u64) -> Self {
        let terms = merge_scaled(&self.ring, &self.terms, &other.terms, c, None);
        Self {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ring.field().neg(1))
    }

    pub fn scale(&self, c: u64) -> Self {
        let field = self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(*a, c))).collect(),
        }
    }

    /// Multiplies by the term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u64) -> Result<Self> {
        let field = self.ring.field();
        let c = c % field.characteristic();
        if c == 0 {
            return Ok(Self::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (tm, a) in &self.terms {
            terms.push((tm.mul(m)?, field.mul(*a, c)));
        }
        // multiplication by a monomial preserves the order
        Ok(Self {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &small.terms {
            let part = large.mul_term(m, *c)?;
            acc = acc.add_unchecked(&part, 1);
        }
        Ok(acc)
    }

    pub fn pow(&self, mut exp: u64) -> Result<Self> {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base)?;
            }
        }
        Ok(acc)
    }

    /// `self^(p^e)`, computed termwise: over `F_p` the Frobenius map is
    /// additive and fixes every coefficient.
    pub fn frobenius(&self, e: u32) -> Result<Self> {
        let q = self
            .ring
            .characteristic()
            .checked_pow(e)
            .ok_or_else(|| Error::overflow(format!("p^{e}")))?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.scale(q)?, *c));
        }
        // scaling exponents uniformly preserves all supported orders
        Ok(Self {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if *c == 1 => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c)),
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let field = *self.ring.field();
        let p = field.characteristic();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e % p == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            let nm = Monomial::from_exponents(&exps).expect("degree decreases");
            terms.push((nm, field.mul(*c, e % p)));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Re-expresses the polynomial in `target`, which must have the same
    /// variables after `offset` auxiliary front variables.
    pub fn embed_front(&self, target: &RingRef, offset: usize) -> Self {
        debug_assert_eq!(target.nvars(), self.ring.nvars() + offset);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.prepend_zeros(offset), *c))
            .collect();
        Self::from_terms(target, terms)
    }

    /// Inverse of [`Poly::embed_front`] for polynomials free of the first
    /// `offset` variables.
    pub fn restrict_front(&self, target: &RingRef, offset: usize) -> Option<Self> {
        if self
            .terms
            .iter()
            .any(|(m, _)| m.exponents()[..offset].iter().any(|&e| e != 0))
        {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.drop_front(offset), *c))
            .collect();
        Some(Self::from_terms(target, terms))
    }

    /// Same polynomial viewed in a ring with identical variables but a
    /// possibly different order.
    pub fn reorder(&self, target: &RingRef) -> Self {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        Self::from_terms(target, self.terms.clone())
    }

    /// True when no variable among the first `k` occurs.
    pub fn free_of_front(&self, k: usize) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0))
    }
}

/// Computes `a + c * shift * b` where `shift` is an optional monomial
/// multiplier. Both inputs must be sorted for `ring`.
pub(crate) fn merge_scaled(
    ring: &PolyRing,
    a: &[Term],
    b: &[Term],
    c: u64,
    shift: Option<&Monomial>,
) -> Vec<Term> {
    let order = ring.order();
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| -> Term {
        let m = match shift {
            Some(s) => t.0.mul(s).expect("shift overflow checked by caller"),
            None => t.0.clone(),
        };
        (m, field.mul(t.1, c))
    };
    let mut pending: Option<Term> = None;
    loop {
        if pending.is_none() && j < b.len() {
            pending = Some(shifted(&b[j]));
            j += 1;
        }
        match (a.get(i), pending.as_ref()) {
            (None, None) => break,
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let y = pending.take().unwrap();
                if y.1 != 0 {
                    out.push(y);
                }
            }
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let y = pending.take().unwrap();
                    if y.1 != 0 {
                        out.push(y);
                    }
                }
                Ordering::Equal => {
                    let s = field.add(x.1, y.1);
                    if s != 0 {
                        out.push((x.0.clone(), s));
                    }
                    i += 1;
                    pending = None;
                }
            },
        }
    }
    out
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else if s < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = &self.ring.names()[i];
                    if e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn ring(p: u64) -> RingRef {
        PolyRing::new(p, &["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring(3);
        let x = r.var(0);
        let y = r.var(1);
        let s = x.try_add(&y).unwrap();
        let sq = s.pow(2).unwrap();
        assert_eq!(sq.to_string(), "x^2 - x*y + y^2");
        let cube = s.pow(3).unwrap();
        // freshman's dream in characteristic 3
        assert_eq!(cube, x.pow(3).unwrap().try_add(&y.pow(3).unwrap()).unwrap());
        assert_eq!(cube, s.frobenius(1).unwrap());
        assert!(s.try_sub(&s).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch() {
        let a = ring(3).var(0);
        let b = ring(5).var(0);
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn derivative_in_char_p() {
        let r = ring(3);
        let x = r.var(0);
        let f = x.pow(3).unwrap().try_add(&x.pow(2).unwrap()).unwrap();
        // d/dx (x^3 + x^2) = 2x in F_3
        assert_eq!(f.derivative(0), x.scale(2));
    }

    #[test]
    fn constant_and_degree() {
        let r = ring(2);
        let f = Poly::from_terms(
            &r,
            vec![
                (Monomial::one(2), 1),
                (Monomial::from_exponents(&[1, 2]).unwrap(), 1),
                (Monomial::one(2), 1),
            ],
        );
        assert_eq!(f.constant_term(), 0);
        assert_eq!(f.degree(), Some(3));
        assert!(f.is_homogeneous());
    }
}
