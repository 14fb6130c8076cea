//! Ideals of the ambient polynomial ring with a lazily cached reduced
//! Gröbner basis, and the classical operations built on elimination.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{self, divide_exact};
use crate::linalg::Echelon;
use crate::monomial::Monomial;
use crate::monomial_ideal::MonomialIdeal;
use crate::par;
use crate::poly::Poly;
use crate::ring::{ensure_same, RingRef};

/// Default bound on enumerated standard monomials.
pub const STANDARD_MONOMIAL_CAP: usize = 1 << 20;

/// An ideal given by generators. Equality is equality of reduced
/// Gröbner bases, so it does not depend on the generating set.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.gb() == other.gb()
    }
}

impl Eq for Ideal {}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.gb().iter().map(|g| g.to_string()))
    }
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Result<Self> {
        for g in &gens {
            ensure_same(ring, g.ring())?;
        }
        Ok(Self::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &RingRef, gens: Vec<Poly>) -> Self {
        Self {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    /// Wraps a list already known to be the reduced basis.
    pub(crate) fn from_reduced(ring: &RingRef, gb: Vec<Poly>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        Self {
            ring: ring.clone(),
            gens: gb,
            gb: cell,
        }
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self::from_reduced(ring, Vec::new())
    }

    pub fn unit(ring: &RingRef) -> Self {
        Self::from_reduced(ring, vec![Poly::one(ring)])
    }

    /// `m = (x_1, ..., x_n)`.
    pub fn maximal(ring: &RingRef) -> Self {
        Self::from_gens(ring, ring.vars())
    }

    pub fn principal(f: &Poly) -> Self {
        Self::from_gens(f.ring(), vec![f.clone()])
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Reduced Gröbner basis, computed on first use.
    pub fn gb(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner::buchberger(&self.ring, &self.gens))
    }

    /// The same ideal presented by its reduced basis.
    pub fn canonical(&self) -> Self {
        Self::from_reduced(&self.ring, self.gb().to_vec())
    }

    pub fn is_unit(&self) -> bool {
        self.gb().first().is_some_and(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gb().is_empty()
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        ensure_same(&self.ring, f.ring())?;
        Ok(groebner::reduce(f.clone(), self.gb()))
    }

    pub fn contains_poly(&self, f: &Poly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        ensure_same(&self.ring, &other.ring)?;
        for g in &other.gens {
            if !groebner::reduce(g.clone(), self.gb()).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        ensure_same(&self.ring, &other.ring)?;
        Ok(self.gb() == other.gb())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_gens(&self.ring, gens))
    }

    pub fn add_polys(&self, polys: &[Poly]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        for f in polys {
            ensure_same(&self.ring, f.ring())?;
            gens.push(f.clone());
        }
        Ok(Self::from_gens(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in self.gb() {
            for b in other.gb() {
                gens.push(a.mul_unchecked(b)?);
            }
        }
        Ok(Self::from_gens(&self.ring, gens))
    }

    pub fn power(&self, n: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self)?.canonical();
        }
        Ok(acc)
    }

    /// `I ∩ J` via `(t·I + (1 − t)·J) ∩ P`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.canonical());
        }
        if other.is_unit() {
            return Ok(self.canonical());
        }
        let big = self.ring.with_front_block(&["@t".to_string()]);
        let t = Poly::var(&big, 0);
        let one_minus_t = Poly::one(&big).add_unchecked(&t, big.field().neg(1));
        let mut gens = Vec::new();
        for g in self.gb() {
            gens.push(t.mul_unchecked(&g.embed_front(&big, 1))?);
        }
        for g in other.gb() {
            gens.push(one_minus_t.mul_unchecked(&g.embed_front(&big, 1))?);
        }
        Ok(eliminate(&self.ring, &big, 1, &gens))
    }

    /// `I : (f)`.
    pub fn colon_poly(&self, f: &Poly) -> Result<Ideal> {
        ensure_same(&self.ring, f.ring())?;
        if f.is_zero() || self.is_unit() {
            return Ok(Ideal::unit(&self.ring));
        }
        let fi = Ideal::principal(f);
        let cap = self.intersect(&fi)?;
        let mut gens = Vec::with_capacity(cap.gb().len());
        for g in cap.gb() {
            gens.push(divide_exact(g, f).expect("generator of I ∩ (f) is a multiple of f"));
        }
        Ok(Ideal::from_gens(&self.ring, gens).canonical())
    }

    /// `I : J`, intersected over the generators of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        ensure_same(&self.ring, &other.ring)?;
        let gens: Vec<Poly> = other.gb().to_vec();
        if gens.is_empty() {
            return Ok(Ideal::unit(&self.ring));
        }
        let parts = par::map(&gens, |f| self.colon_poly(f));
        let mut acc: Option<Ideal> = None;
        for part in parts {
            let part = part?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        Ok(acc.expect("nonempty"))
    }

    /// `I : f^∞ = (I + (1 − t f)) ∩ P`.
    pub fn saturate_poly(&self, f: &Poly) -> Result<Ideal> {
        ensure_same(&self.ring, f.ring())?;
        if f.is_zero() || self.is_unit() {
            return Ok(Ideal::unit(&self.ring));
        }
        if f.is_constant() {
            return Ok(self.canonical());
        }
        let big = self.ring.with_front_block(&["@t".to_string()]);
        let t = Poly::var(&big, 0);
        let tf = t.mul_unchecked(&f.embed_front(&big, 1))?;
        let mut gens: Vec<Poly> = self.gb().iter().map(|g| g.embed_front(&big, 1)).collect();
        gens.push(Poly::one(&big).add_unchecked(&tf, big.field().neg(1)));
        Ok(eliminate(&self.ring, &big, 1, &gens))
    }

    /// `I : J^∞` together with the number of colon steps of the chain
    /// `I ⊆ I:J ⊆ (I:J):J ⊆ …` needed to observe two equal terms.
    pub fn saturate(&self, other: &Ideal) -> Result<Saturation> {
        ensure_same(&self.ring, &other.ring)?;
        let gens: Vec<Poly> = other.gb().to_vec();
        if gens.is_empty() {
            let steps = if self.is_unit() { 1 } else { 2 };
            return Ok(Saturation {
                ideal: Ideal::unit(&self.ring),
                steps,
            });
        }
        let parts = par::map(&gens, |f| self.saturate_poly(f));
        let mut acc: Option<Ideal> = None;
        for part in parts {
            let part = part?;
            acc = Some(match acc {
                None => part,
                Some(a) => a.intersect(&part)?,
            });
        }
        let ideal = acc.expect("nonempty");
        let n = self.annihilating_power(&ideal, other)?;
        Ok(Saturation { ideal, steps: n + 1 })
    }

    /// Least `N` with `J^N · S ⊆ I` (`self` is `I`), found level by level:
    /// level `k` is an echelon basis of the span of `J^k · S` modulo `I`.
    /// The caller guarantees `S ⊆ I : J^∞`, so the loop terminates.
    pub fn annihilating_power(&self, s: &Ideal, j: &Ideal) -> Result<usize> {
        ensure_same(&self.ring, &s.ring)?;
        ensure_same(&self.ring, &j.ring)?;
        let jgens: Vec<Poly> = j.gb().to_vec();
        let mut level = Echelon::new(&self.ring, 0);
        for g in s.gb() {
            level.push(&groebner::reduce(g.clone(), self.gb()));
        }
        let mut n = 0usize;
        while level.rank() > 0 {
            let rows: Vec<Poly> = level.rows().collect();
            let products = par::map(&rows, |r| {
                jgens
                    .iter()
                    .map(|h| Ok(groebner::reduce(r.mul_unchecked(h)?, self.gb())))
                    .collect::<Result<Vec<Poly>>>()
            });
            let mut next = Echelon::new(&self.ring, 0);
            for batch in products {
                for p in batch? {
                    if !p.is_zero() {
                        next.push(&p);
                    }
                }
            }
            level = next;
            n += 1;
        }
        Ok(n)
    }

    pub fn leading_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.ring.nvars(),
            self.gb()
                .iter()
                .map(|g| g.leading_monomial().expect("nonzero").clone())
                .collect(),
        )
    }

    /// All reduced-basis elements are monomials.
    pub fn is_monomial(&self) -> bool {
        self.gb().iter().all(|g| g.is_monomial())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gb().iter().all(|g| g.is_homogeneous())
    }

    /// Krull dimension of `P/I`; `None` stands for the empty variety
    /// (the unit ideal).
    pub fn dimension(&self) -> Option<usize> {
        self.leading_ideal().dimension()
    }

    /// Standard monomials of a zero-dimensional ideal, in increasing
    /// order. Fails for positive-dimensional or oversized quotients.
    pub fn standard_monomials(&self, cap: usize) -> Result<Vec<Monomial>> {
        let lead = self.leading_ideal();
        match lead.dimension() {
            None => return Ok(Vec::new()),
            Some(0) => {}
            Some(d) => {
                return Err(Error::precondition(format!(
                    "quotient has dimension {d}, standard monomials are infinite"
                )))
            }
        }
        let n = self.ring.nvars();
        let start = Monomial::one(n);
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut stack = vec![start.clone()];
        seen.insert(start);
        while let Some(m) = stack.pop() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i))?;
                if !lead.contains(&next) && seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::SizeCap(format!(
                            "more than {cap} standard monomials"
                        )));
                    }
                    stack.push(next);
                }
            }
        }
        let order = self.ring.order();
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        out.sort_by(|a, b| order.cmp(a, b));
        Ok(out)
    }

    /// `dim_k(self / sub)` for `sub ⊆ self` with finite-length quotient:
    /// the number of monomials in `LT(self)` outside `LT(sub)`.
    pub fn quotient_length(&self, sub: &Ideal, cap: usize) -> Result<usize> {
        ensure_same(&self.ring, &sub.ring)?;
        let big = self.leading_ideal();
        let small = sub.leading_ideal();
        let n = self.ring.nvars();
        let mut seen: HashSet<Monomial> = HashSet::new();
        let mut stack: Vec<Monomial> = Vec::new();
        for g in big.generators() {
            if !small.contains(g) && seen.insert(g.clone()) {
                stack.push(g.clone());
            }
        }
        while let Some(m) = stack.pop() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i))?;
                if !small.contains(&next) && seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::SizeCap(format!(
                            "quotient length exceeds {cap}; is the quotient of finite length?"
                        )));
                    }
                    stack.push(next);
                }
            }
        }
        Ok(seen.len())
    }
}

/// Result of [`Ideal::saturate`].
#[derive(Debug, Clone, Serialize)]
pub struct Saturation {
    pub ideal: Ideal,
    pub steps: usize,
}

/// Intersects the ideal generated by `gens` (in `big`, whose first `k`
/// variables form an elimination block) with the subring `target`.
pub(crate) fn eliminate(target: &RingRef, big: &RingRef, k: usize, gens: &[Poly]) -> Ideal {
    let gb = groebner::buchberger(big, gens);
    let kept: Vec<Poly> = gb
        .iter()
        .filter(|g| g.free_of_front(k))
        .map(|g| g.restrict_front(target, k).expect("free of block"))
        .collect();
    Ideal::from_gens(target, kept).canonical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::ring::PolyRing;

    fn ring(p: u64, names: &[&str]) -> RingRef {
        PolyRing::new(p, names, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &RingRef, gens: Vec<Poly>) -> Ideal {
        Ideal::new(r, gens).unwrap()
    }

    fn mono(r: &RingRef, e: &[u64]) -> Poly {
        Poly::monomial(r, Monomial::from_exponents(e).unwrap(), 1)
    }

    #[test]
    fn membership_and_equality() {
        let r = ring(2, &["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let i = ideal(&r, vec![x.clone(), y.clone()]);
        assert!(i.contains_poly(&x).unwrap());
        assert!(!i.contains_poly(&Poly::one(&r)).unwrap());
        let j = ideal(&r, vec![y.clone(), x.try_add(&y).unwrap()]);
        assert_eq!(i, j);
        assert_ne!(ideal(&r, vec![mono(&r, &[2, 0])]), ideal(&r, vec![x.clone()]));
    }

    #[test]
    fn intersections() {
        let r = ring(2, &["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let xi = ideal(&r, vec![x.clone()]);
        let yi = ideal(&r, vec![y.clone()]);
        assert_eq!(xi.intersect(&yi).unwrap(), ideal(&r, vec![mono(&r, &[1, 1])]));
        assert_eq!(xi.intersect(&xi).unwrap(), xi);

        let s = ring(2, &["T1", "T2", "T3"]);
        let a = ideal(&s, vec![mono(&s, &[2, 0, 0])]);
        let b = ideal(&s, vec![s.var(1), s.var(2)]);
        let expected = ideal(&s, vec![mono(&s, &[2, 1, 0]), mono(&s, &[2, 0, 1])]);
        assert_eq!(a.intersect(&b).unwrap(), expected);
    }

    #[test]
    fn colons() {
        let r = ring(2, &["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let x2 = ideal(&r, vec![mono(&r, &[2, 0])]);
        assert_eq!(x2.colon_poly(&x).unwrap(), ideal(&r, vec![x.clone()]));
        let xi = ideal(&r, vec![x.clone()]);
        assert_eq!(xi.colon_poly(&y).unwrap(), xi);
        assert!(xi.colon(&Ideal::zero(&r)).unwrap().is_unit());
    }

    #[test]
    fn saturations() {
        let r = ring(2, &["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let x2 = ideal(&r, vec![mono(&r, &[2, 0])]);
        let sat = x2.saturate(&ideal(&r, vec![x.clone()])).unwrap();
        assert!(sat.ideal.is_unit());
        assert_eq!(sat.steps, 3);
        let xi = ideal(&r, vec![x.clone()]);
        let sat = xi.saturate(&ideal(&r, vec![y.clone()])).unwrap();
        assert_eq!(sat.ideal, xi);
        assert_eq!(sat.steps, 1);
    }

    #[test]
    fn dimensions() {
        let r = ring(2, &["x", "y", "z"]);
        assert_eq!(Ideal::zero(&r).dimension(), Some(3));
        assert_eq!(Ideal::maximal(&r).dimension(), Some(0));
        assert_eq!(Ideal::unit(&r).dimension(), None);
        let s = ring(2, &["T1", "T2", "T3"]);
        let a = ideal(&s, vec![mono(&s, &[2, 1, 0]), mono(&s, &[2, 0, 1])]);
        assert_eq!(a.dimension(), Some(2));
    }

    #[test]
    fn standard_monomials_and_lengths() {
        let r = ring(3, &["x", "y"]);
        let i = ideal(&r, vec![mono(&r, &[2, 0]), mono(&r, &[0, 3])]);
        assert_eq!(i.standard_monomials(100).unwrap().len(), 6);
        assert!(Ideal::zero(&r).standard_monomials(100).is_err());
        let m = Ideal::maximal(&r);
        assert_eq!(m.quotient_length(&i, 100).unwrap(), 5);
    }
}
