//! Brute-force verifiers for small fixtures.
//!
//! Nothing here reuses the Frobenius machinery of the engine: powers are
//! formed by repeated multiplication in an explicit multiplication table
//! and subspaces are handled by a separate dense elimination.

use crate::error::{Error, Result};
use crate::frobenius::bracket_power;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::par;
use crate::poly::Poly;
use crate::quotient::{RingSpec, Tri};
use crate::ring::{PolyRing, RingRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest basis accepted by [`ArtinianModel::new`].
pub const MODEL_BASIS_CAP: usize = 4096;
/// Largest number of elements [`enumerate_frobenius_closure`] will visit.
pub const ENUMERATION_CAP: u64 = 1 << 20;
/// Largest number of candidate generators [`minimal_root_oracle`] builds.
pub const ROOT_CANDIDATE_CAP: usize = 4096;

/// `R = P/A` for zero-dimensional `A`, as coordinates on the standard
/// monomials together with the full multiplication table.
#[derive(Debug, Clone)]
pub struct ArtinianModel {
    spec: RingSpec,
    basis: Vec<Monomial>,
    table: Vec<Vec<u64>>,
    p: u64,
}

impl ArtinianModel {
    pub fn new(spec: &RingSpec) -> Result<Self> {
        if spec.dimension() != Some(0) {
            return Err(Error::precondition("the model needs a zero-dimensional ring"));
        }
        let basis = spec.defining().standard_monomials(MODEL_BASIS_CAP)?;
        let d = basis.len();
        let ring = spec.ring();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
        let entries = par::map(&pairs, |&(i, j)| -> Result<Vec<u64>> {
            let prod = Poly::monomial(ring, basis[i].mul(&basis[j])?, 1);
            let nf = spec.defining().reduce(&prod)?;
            Ok(coordinates(&basis, &nf))
        });
        let table = entries.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(Self {
            spec: spec.clone(),
            basis,
            table,
            p: spec.characteristic(),
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `p^dim`, or `None` when it does not fit in 64 bits.
    pub fn element_count(&self) -> Option<u64> {
        self.p.checked_pow(self.dim() as u32)
    }

    pub fn coords(&self, f: &Poly) -> Result<Vec<u64>> {
        let nf = self.spec.defining().reduce(f)?;
        Ok(coordinates(&self.basis, &nf))
    }

    pub fn lift(&self, v: &[u64]) -> Poly {
        let terms = v
            .iter()
            .zip(self.basis.iter())
            .filter(|(a, _)| **a != 0)
            .map(|(a, m)| (m.clone(), *a))
            .collect();
        Poly::from_terms(self.spec.ring(), terms)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let d = self.dim();
        let p = self.p;
        let mut acc = vec![0u64; d];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let c = x * y % p;
                for (k, &t) in self.table[i * d + j].iter().enumerate() {
                    if t != 0 {
                        acc[k] = (acc[k] + c * t) % p;
                    }
                }
            }
        }
        acc
    }

    pub fn pow(&self, a: &[u64], mut k: u64) -> Vec<u64> {
        let mut acc = self.coords(&Poly::one(self.spec.ring())).expect("same ring");
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The `index`-th element in the fixed enumeration order (base-`p`
    /// digits, first basis coordinate least significant).
    pub fn element(&self, mut index: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.dim()];
        for c in v.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        v
    }

    /// The ideal `J R` as a subspace: spanned by basis multiples of the
    /// generators.
    pub fn ideal_subspace(&self, gens: &[Vec<u64>]) -> Subspace {
        let mut sub = Subspace::new(self.dim(), self.p);
        for g in gens {
            for i in 0..self.dim() {
                let mut unit = vec![0u64; self.dim()];
                unit[i] = 1;
                sub.insert(&self.mul(&unit, g));
            }
        }
        sub
    }
}

fn coordinates(basis: &[Monomial], f: &Poly) -> Vec<u64> {
    let mut v = vec![0u64; basis.len()];
    for (m, c) in f.terms() {
        let k = basis.iter().position(|b| b == m).expect("normal form is supported on standard monomials");
        v[k] = *c;
    }
    v
}

/// Dense row echelon form over `F_p`.
#[derive(Debug, Clone)]
pub struct Subspace {
    dim: usize,
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Subspace {
    pub fn new(dim: usize, p: u64) -> Self {
        Self { dim, p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn inv(&self, a: u64) -> u64 {
        // a^(p-2) by square and multiply
        let (mut base, mut e, mut acc) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut w = v.to_vec();
        for (piv, row) in &self.rows {
            let c = w[*piv];
            if c != 0 {
                for k in 0..self.dim {
                    w[k] = (w[k] + (p - c) * row[k]) % p;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut w = self.reduce(v);
        let Some(piv) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = self.inv(w[piv]);
        for c in w.iter_mut() {
            *c = *c * inv % self.p;
        }
        let p = self.p;
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for k in 0..self.dim {
                    row[k] = (row[k] + (p - c) * w[k]) % p;
                }
            }
        }
        self.rows.push((piv, w));
        true
    }
}

fn check_enumerable(model: &ArtinianModel) -> Result<u64> {
    match model.element_count() {
        Some(n) if n <= ENUMERATION_CAP => Ok(n),
        _ => Err(Error::SizeCap(format!(
            "{}^{} elements exceed the enumeration cap of {ENUMERATION_CAP}",
            model.p,
            model.dim()
        ))),
    }
}

/// `{x ∈ R : x^(p^e) ∈ I^[p^e] R for some e ≤ e_max}`, listed in
/// enumeration order.
pub fn enumerate_frobenius_closure(i: &Ideal, model: &ArtinianModel, e_max: u32) -> Result<Vec<Vec<u64>>> {
    let count = check_enumerable(model)?;
    let gens = i
        .generators()
        .iter()
        .map(|g| model.coords(g))
        .collect::<Result<Vec<_>>>()?;
    let p = model.p;
    let mut targets = Vec::new();
    let mut q = 1u64;
    for _ in 0..=e_max {
        let powered: Vec<Vec<u64>> = gens.iter().map(|g| model.pow(g, q)).collect();
        targets.push((q, model.ideal_subspace(&powered)));
        q *= p;
    }
    let hits = par::map_range(count as usize, |idx| {
        let x = model.element(idx as u64);
        targets
            .iter()
            .any(|(q, sub)| sub.contains(&model.pow(&x, *q)))
            .then_some(x)
    });
    Ok(hits.into_iter().flatten().collect())
}

/// Nilpotent elements of `R`, by enumeration (`x^dim = 0`).
pub fn enumerate_nilradical(model: &ArtinianModel) -> Result<Vec<Vec<u64>>> {
    let count = check_enumerable(model)?;
    let d = model.dim() as u64;
    let hits = par::map_range(count as usize, |idx| {
        let x = model.element(idx as u64);
        model.pow(&x, d.max(1)).iter().all(|&c| c == 0).then_some(x)
    });
    Ok(hits.into_iter().flatten().collect())
}

/// True when `elements` is exactly the image of `ideal` (which must
/// contain `A`) in the model.
pub fn matches_ideal(model: &ArtinianModel, elements: &[Vec<u64>], ideal: &Ideal) -> Result<bool> {
    let mut span = Subspace::new(model.dim(), model.p);
    for v in elements {
        span.insert(v);
    }
    let size = model.p.checked_pow(span.rank() as u32);
    if size != Some(elements.len() as u64) {
        return Ok(false);
    }
    let gens = ideal
        .gb()
        .iter()
        .map(|g| model.coords(g))
        .collect::<Result<Vec<_>>>()?;
    let engine = model.ideal_subspace(&gens);
    if engine.rank() != span.rank() {
        return Ok(false);
    }
    Ok(span.rows.iter().all(|(_, r)| engine.contains(r)))
}

/// Smallest ideal `J` with `f ∈ J^[p^e]`, searched among ideals generated
/// by at most two polynomials of degree `≤ degree_cap` with monic leading
/// term.
pub fn minimal_root_oracle(f: &Poly, e: u32, degree_cap: u64) -> Result<Ideal> {
    let ring = f.ring();
    let n = ring.nvars();
    let p = ring.characteristic();
    let mut monos = vec![Monomial::one(n)];
    let mut frontier = monos.clone();
    for _ in 0..degree_cap {
        let mut next = Vec::new();
        for m in &frontier {
            for v in 0..n {
                let mv = m.mul(&Monomial::var(n, v))?;
                if !next.contains(&mv) {
                    next.push(mv);
                }
            }
        }
        monos.extend(next.iter().cloned());
        frontier = next;
    }
    let count = (p as u128).checked_pow(monos.len() as u32).unwrap_or(u128::MAX);
    if count > ROOT_CANDIDATE_CAP as u128 * p as u128 {
        return Err(Error::SizeCap(format!("{count} candidate polynomials")));
    }
    let mut cands: Vec<Poly> = Vec::new();
    for idx in 1..count {
        let mut k = idx;
        let mut terms = Vec::new();
        for m in &monos {
            let c = (k % p as u128) as u64;
            k /= p as u128;
            if c != 0 {
                terms.push((m.clone(), c));
            }
        }
        let g = Poly::from_terms(ring, terms);
        if g.leading_coeff() == 1 && !g.is_constant() {
            cands.push(g);
        }
    }
    let mut sets: Vec<Vec<usize>> = (0..cands.len()).map(|i| vec![i]).collect();
    for i in 0..cands.len() {
        for j in i + 1..cands.len() {
            sets.push(vec![i, j]);
        }
    }
    let qualifying = par::map(&sets, |s| -> Result<Option<Ideal>> {
        let j = Ideal::new(ring, s.iter().map(|&k| cands[k].clone()).collect())?;
        Ok(bracket_power(&j, e)?.contains_poly(f)?.then_some(j))
    });
    let qualifying: Vec<Ideal> = qualifying
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let unit = Ideal::unit(ring);
    let mut best = unit.clone();
    for j in &qualifying {
        if best.contains(j)? {
            best = j.clone();
        }
    }
    for j in &qualifying {
        if !j.contains(&best)? {
            return Err(Error::SizeCap("no least candidate within the degree cap".into()));
        }
    }
    if !bracket_power(&best, e)?.contains_poly(f)? {
        return Err(Error::SizeCap("no candidate within the degree cap".into()));
    }
    Ok(best.canonical())
}

/// First monomial `c` of degree `≤ degrees` (by degree, then decreasing
/// in the monomial order) with `c ∈ R°` and `c f^(p^e) ∈ I^[p^e] + A` for
/// every `e` in `e_list`.
pub fn multiplier_search(f: &Poly, i: &Ideal, spec: &RingSpec, degrees: u64, e_list: &[u32]) -> Result<Option<Poly>> {
    let ring = spec.ring();
    let n = ring.nvars();
    let order = ring.order();
    let targets = e_list
        .iter()
        .map(|&e| -> Result<(Ideal, Poly)> {
            Ok((spec.extend(&bracket_power(i, e)?)?, f.frobenius(e)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut level = vec![Monomial::one(n)];
    for deg in 0..=degrees {
        level.sort_by(|a, b| order.cmp(b, a));
        for m in &level {
            let c = Poly::monomial(ring, m.clone(), 1);
            if spec.in_r_circ(&c)? != Tri::Yes {
                continue;
            }
            let mut ok = true;
            for (k, fq) in &targets {
                if !k.contains_poly(&c.mul_unchecked(fq)?)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(c));
            }
        }
        if deg < degrees {
            let mut next: Vec<Monomial> = Vec::new();
            for m in &level {
                for v in 0..n {
                    let mv = m.mul(&Monomial::var(n, v))?;
                    if !next.contains(&mv) {
                        next.push(mv);
                    }
                }
            }
            level = next;
        }
    }
    Ok(None)
}

/// A seeded zero-dimensional ring together with an ideal of it.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub spec: RingSpec,
    pub ideal: Ideal,
}

/// Deterministic random fixture over `F_p` in two or three variables
/// whose quotient has at most `max_dim` standard monomials.
///
/// `A` contains a pure power of every variable plus up to two random
/// polynomials without constant term; `I` is generated by up to two
/// random polynomials of degree `≤ 2` in `m`.
pub fn random_fixture(p: u64, seed: u64, max_dim: usize) -> Result<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(2..=3usize);
        let names: Vec<String> = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
        let ring = PolyRing::with_names(p, names, MonomialOrder::Grevlex)?;
        let mut gens = Vec::new();
        for v in 0..n {
            let a = rng.gen_range(2..=4u64);
            gens.push(ring.var(v).pow(a)?);
        }
        for _ in 0..rng.gen_range(0..=2) {
            gens.push(random_in_m(&ring, &mut rng, 3));
        }
        let spec = RingSpec::new(&ring, gens)?;
        if spec.defining().standard_monomials(MODEL_BASIS_CAP)?.len() > max_dim {
            continue;
        }
        let igens = (0..rng.gen_range(1..=2)).map(|_| random_in_m(&ring, &mut rng, 2)).collect();
        let ideal = Ideal::new(&ring, igens)?;
        return Ok(Fixture { spec, ideal });
    }
}

fn random_in_m(ring: &RingRef, rng: &mut ChaCha8Rng, max_deg: u64) -> Poly {
    let n = ring.nvars();
    let p = ring.characteristic();
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| {
            let deg = rng.gen_range(1..=max_deg);
            let mut e = vec![0u64; n];
            for _ in 0..deg {
                e[rng.gen_range(0..n)] += 1;
            }
            let m = Monomial::from_exponents(&e).expect("small exponents");
            (m, rng.gen_range(1..p))
        })
        .collect();
    Poly::from_terms(ring, terms)
}
