//! The working ring `R = P/A` and the structural questions asked about it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius;
use crate::ideal::{Ideal, STANDARD_MONOMIAL_CAP};
use crate::poly::Poly;
use crate::ring::{ensure_same, RingRef};

/// Three-valued answer for properties the engine cannot always decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

/// `R = F_p[x_1..x_n]/A` with `m = (x_1..x_n)`. The defining ideal must lie
/// in `m`, so that `R` models a local ring at the origin.
#[derive(Debug, Clone)]
pub struct RingSpec {
    ring: RingRef,
    defining: Ideal,
    assume_equidimensional: bool,
    assume_reduced: bool,
    nilradical: Option<Ideal>,
}

impl RingSpec {
    pub fn new(ring: &RingRef, defining: Vec<Poly>) -> Result<Self> {
        let a = Ideal::new(ring, defining)?;
        for g in a.generators() {
            if g.constant_term() != 0 {
                return Err(Error::InvalidRing(format!(
                    "defining polynomial {g} does not vanish at the origin"
                )));
            }
        }
        Ok(Self {
            ring: ring.clone(),
            defining: a.canonical(),
            assume_equidimensional: false,
            assume_reduced: false,
            nilradical: None,
        })
    }

    /// The polynomial ring itself (`A = 0`).
    pub fn polynomial(ring: &RingRef) -> Self {
        Self {
            ring: ring.clone(),
            defining: Ideal::zero(ring),
            assume_equidimensional: false,
            assume_reduced: false,
            nilradical: None,
        }
    }

    pub fn assume_equidimensional(mut self, yes: bool) -> Self {
        self.assume_equidimensional = yes;
        self
    }

    pub fn assume_reduced(mut self, yes: bool) -> Self {
        self.assume_reduced = yes;
        self
    }

    /// Supplies `√A`, which must contain `A`.
    pub fn with_nilradical(mut self, nil: Ideal) -> Result<Self> {
        ensure_same(&self.ring, nil.ring())?;
        if !nil.contains(&self.defining)? {
            return Err(Error::precondition("supplied nilradical does not contain the defining ideal"));
        }
        self.nilradical = Some(nil.canonical());
        Ok(self)
    }

    #[inline]
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    pub fn characteristic(&self) -> u64 {
        self.ring.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn maximal_ideal(&self) -> Ideal {
        Ideal::maximal(&self.ring)
    }

    /// `dim R`; `None` if `A` is the unit ideal (never, since `A ⊆ m`).
    pub fn dimension(&self) -> Option<usize> {
        self.defining.dimension()
    }

    /// Lift of an ideal of `R`: `I + A`.
    pub fn extend(&self, i: &Ideal) -> Result<Ideal> {
        Ok(i.sum(&self.defining)?.canonical())
    }

    pub fn ideal(&self, gens: Vec<Poly>) -> Result<Ideal> {
        Ideal::new(&self.ring, gens)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.defining.is_homogeneous()
    }

    /// Default Frobenius exponent cap: 4 for `p ∈ {2, 3}`, else 2.
    pub fn default_emax(&self) -> u32 {
        if self.characteristic() <= 3 {
            4
        } else {
            2
        }
    }

    fn principal_generator(&self) -> Option<&Poly> {
        match self.defining.gb() {
            [f] => Some(f),
            _ => None,
        }
    }

    pub fn is_equidimensional(&self) -> Tri {
        if self.assume_equidimensional
            || self.defining.is_zero()
            || self.principal_generator().is_some()
            || self.dimension() == Some(0)
        {
            return Tri::Yes;
        }
        if self.defining.is_monomial() {
            return Tri::from_bool(self.defining.leading_ideal().is_equidimensional());
        }
        Tri::Unknown
    }

    pub fn is_reduced(&self) -> Tri {
        if self.assume_reduced || self.defining.is_zero() {
            return Tri::Yes;
        }
        if self.defining.is_monomial() {
            return Tri::from_bool(self.defining.leading_ideal().is_squarefree());
        }
        if let Some(nil) = &self.nilradical {
            return Tri::from_bool(*nil == self.defining);
        }
        if self.dimension() == Some(0) {
            return match self.zero_dim_radical() {
                Ok(r) => Tri::from_bool(r == self.defining),
                Err(_) => Tri::Unknown,
            };
        }
        if let Some(f) = self.principal_generator() {
            // f is squarefree iff its singular locus has codimension >= 2
            let mut gens = vec![f.clone()];
            gens.extend((0..self.nvars()).map(|i| f.derivative(i)));
            let sing = Ideal::from_gens(&self.ring, gens);
            let n = self.nvars();
            return Tri::from_bool(sing.dimension().is_none_or(|d| d + 2 <= n));
        }
        Tri::Unknown
    }

    fn zero_dim_radical(&self) -> Result<Ideal> {
        let len = self.defining.standard_monomials(STANDARD_MONOMIAL_CAP)?.len() as u64;
        let p = self.characteristic();
        let mut e = 0u32;
        let mut q = 1u64;
        while q < len {
            q = q.checked_mul(p).ok_or_else(|| Error::overflow("radical exponent"))?;
            e += 1;
        }
        frobenius::contraction(&self.defining, None, Some(&self.defining), e)
    }

    /// `√A` when it can be determined.
    pub fn nilradical(&self) -> Result<Option<Ideal>> {
        if let Some(nil) = &self.nilradical {
            return Ok(Some(nil.clone()));
        }
        if self.is_reduced() == Tri::Yes {
            return Ok(Some(self.defining.clone()));
        }
        if self.defining.is_monomial() {
            let rad = self.defining.leading_ideal().radical();
            let gens = rad
                .generators()
                .iter()
                .map(|m| Poly::monomial(&self.ring, m.clone(), 1))
                .collect();
            return Ok(Some(Ideal::from_gens(&self.ring, gens).canonical()));
        }
        if self.dimension() == Some(0) {
            return self.zero_dim_radical().map(Some);
        }
        Ok(None)
    }

    /// `R_red = P/√A`, when the nilradical is known.
    pub fn reduced_model(&self) -> Result<Option<RingSpec>> {
        Ok(self.nilradical()?.map(|nil| RingSpec {
            ring: self.ring.clone(),
            defining: nil.clone(),
            assume_equidimensional: self.assume_equidimensional,
            assume_reduced: true,
            nilradical: Some(nil),
        }))
    }

    /// Whether `c` avoids every minimal prime of `R`.
    pub fn in_r_circ(&self, c: &Poly) -> Result<Tri> {
        ensure_same(&self.ring, c.ring())?;
        if self.defining.contains_poly(c)? {
            return Ok(Tri::No);
        }
        if self.defining.is_zero() {
            return Ok(Tri::Yes);
        }
        if self.defining.is_monomial() {
            let primes = self.defining.leading_ideal().minimal_primes();
            let avoids = primes.iter().all(|vars| !vanishes_on(c, vars));
            return Ok(Tri::from_bool(avoids));
        }
        if self.is_equidimensional() == Tri::Yes {
            let cut = self.defining.add_polys(std::slice::from_ref(c))?;
            return Ok(Tri::from_bool(cut.dimension() < self.dimension()));
        }
        Ok(Tri::Unknown)
    }

    /// Human form such as `F2[x,y]/(x^2)`.
    pub fn describe(&self) -> String {
        let base = self.ring.describe();
        if self.defining.is_zero() {
            base
        } else {
            let gens: Vec<String> = self.defining.gb().iter().map(|g| g.to_string()).collect();
            format!("{base}/({})", gens.join(", "))
        }
    }
}

/// True when `c` lies in the prime generated by the given variables.
fn vanishes_on(c: &Poly, vars: &[usize]) -> bool {
    c.terms()
        .iter()
        .all(|(m, _)| vars.iter().any(|&v| m.exponents()[v] > 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{Monomial, MonomialOrder};
    use crate::ring::PolyRing;

    fn example() -> RingSpec {
        let r = PolyRing::new(2, &["T1", "T2", "T3"], MonomialOrder::Grevlex).unwrap();
        let m = |e: &[u64]| Poly::monomial(&r, Monomial::from_exponents(e).unwrap(), 1);
        RingSpec::new(&r, vec![m(&[2, 1, 0]), m(&[2, 0, 1])]).unwrap()
    }

    #[test]
    fn example_ring_structure() {
        let s = example();
        assert_eq!(s.dimension(), Some(2));
        // components (T1) and (T2, T3) have dimensions 2 and 1
        assert_eq!(s.is_equidimensional(), Tri::No);
        assert_eq!(s.is_reduced(), Tri::No);
        let t1 = s.ring().var(0);
        assert_eq!(s.in_r_circ(&t1).unwrap(), Tri::No);
        let x = t1.try_add(&s.ring().var(1)).unwrap();
        assert_eq!(s.in_r_circ(&x).unwrap(), Tri::Yes);
        assert_eq!(s.in_r_circ(&Poly::zero(s.ring())).unwrap(), Tri::No);
    }

    #[test]
    fn defining_ideal_must_lie_in_m() {
        let r = PolyRing::new(2, &["x"], MonomialOrder::Grevlex).unwrap();
        let f = r.var(0).try_add(&Poly::one(&r)).unwrap();
        assert!(RingSpec::new(&r, vec![f]).is_err());
    }

    #[test]
    fn radicals() {
        let r = PolyRing::new(2, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let x2 = x.pow(2).unwrap();
        let y3 = y.pow(3).unwrap();
        let extra = x.try_mul(&y).unwrap().try_add(&y.pow(2).unwrap()).unwrap();
        let s = RingSpec::new(&r, vec![x2, y3, extra]).unwrap();
        assert_eq!(s.dimension(), Some(0));
        let nil = s.nilradical().unwrap().unwrap();
        assert_eq!(nil, Ideal::maximal(&r));
        assert_eq!(s.is_reduced(), Tri::No);

        let cusp = x.pow(2).unwrap().try_add(&y.pow(3).unwrap()).unwrap();
        let h = RingSpec::new(&r, vec![cusp]).unwrap();
        assert_eq!(h.is_reduced(), Tri::Yes);
        let double = RingSpec::new(&r, vec![x.try_add(&y).unwrap().pow(2).unwrap()]).unwrap();
        assert_eq!(double.is_reduced(), Tri::No);
    }
}
