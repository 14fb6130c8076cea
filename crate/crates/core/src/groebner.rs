//! Multivariate division and Buchberger's algorithm.
//!
//! Pair selection uses the sugar strategy; useless pairs are discarded with
//! the Gebauer–Möller installation of Buchberger's product and chain
//! criteria. The output is always the reduced Gröbner basis, sorted by
//! decreasing leading monomial, so two ideals are equal exactly when their
//! outputs agree termwise.

use std::cmp::Ordering;

use crate::error::Result;
use crate::monomial::Monomial;
use crate::poly::{merge_scaled, Poly, Term};
use crate::ring::{ensure_same, RingRef};

/// Precomputed leading data of a divisor, for fast divisibility screens.
struct Divisor<'a> {
    poly: &'a Poly,
    lead: &'a Monomial,
    mask: u64,
    inv_lc: u64,
}

fn divisors<'a>(basis: impl Iterator<Item = &'a Poly>) -> Vec<Divisor<'a>> {
    basis
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (lead, lc) = g.leading_term().expect("nonzero");
            Divisor {
                poly: g,
                lead,
                mask: lead.support_mask(),
                inv_lc: g.ring().field().inv(*lc),
            }
        })
        .collect()
}

#[inline]
fn find_divisor<'a, 'b>(divs: &'b [Divisor<'a>], m: &Monomial) -> Option<&'b Divisor<'a>> {
    let mask = m.support_mask();
    divs.iter()
        .find(|d| d.mask & !mask == 0 && d.lead.divides(m))
}

/// Full normal form of `f` with respect to `basis` (remainder of the
/// multivariate division algorithm, divisors tried in list order).
pub fn normal_form(f: &Poly, basis: &[Poly]) -> Result<Poly> {
    for g in basis {
        ensure_same(f.ring(), g.ring())?;
    }
    let divs = divisors(basis.iter());
    Ok(reduce_with(f.clone(), &divs))
}

pub(crate) fn reduce(f: Poly, basis: &[Poly]) -> Poly {
    let divs = divisors(basis.iter());
    reduce_with(f, &divs)
}

fn reduce_with(f: Poly, divs: &[Divisor<'_>]) -> Poly {
    if divs.is_empty() || f.is_zero() {
        return f;
    }
    let ring = f.ring().clone();
    let field = *ring.field();
    let mut work: Vec<Term> = f.into_terms();
    let mut pos = 0usize;
    let mut rem: Vec<Term> = Vec::new();
    while pos < work.len() {
        let (m, c) = &work[pos];
        match find_divisor(divs, m) {
            Some(d) => {
                let shift = d.lead.quotient_of(m);
                let factor = field.neg(field.mul(*c, d.inv_lc));
                let tail = &d.poly.terms()[1..];
                work = merge_scaled(&ring, &work[pos + 1..], tail, factor, Some(&shift));
                pos = 0;
            }
            None => {
                rem.push(work[pos].clone());
                pos += 1;
            }
        }
    }
    Poly::from_sorted(&ring, rem)
}

/// Reduces only until the leading term is irreducible.
fn top_reduce_with(f: Poly, divs: &[Divisor<'_>]) -> Poly {
    let ring = f.ring().clone();
    let field = *ring.field();
    let mut work: Vec<Term> = f.into_terms();
    loop {
        let Some((m, c)) = work.first() else {
            break;
        };
        match find_divisor(divs, m) {
            Some(d) => {
                let shift = d.lead.quotient_of(m);
                let factor = field.neg(field.mul(*c, d.inv_lc));
                let tail = &d.poly.terms()[1..];
                work = merge_scaled(&ring, &work[1..], tail, factor, Some(&shift));
            }
            None => break,
        }
    }
    Poly::from_sorted(&ring, work)
}

/// Exact quotient `f / g` when `g` divides `f`, else `None`.
pub fn divide_exact(f: &Poly, g: &Poly) -> Option<Poly> {
    if g.is_zero() {
        return None;
    }
    let ring = f.ring().clone();
    let field = *ring.field();
    let (glead, glc) = g.leading_term().expect("nonzero");
    let inv = field.inv(*glc);
    let mut work = f.clone();
    let mut quotient: Vec<Term> = Vec::new();
    while let Some((m, c)) = work.leading_term().cloned() {
        if !glead.divides(&m) {
            return None;
        }
        let shift = glead.quotient_of(&m);
        let coef = field.mul(c, inv);
        let terms = merge_scaled(&ring, &work.terms()[1..], &g.terms()[1..], field.neg(coef), Some(&shift));
        work = Poly::from_sorted(&ring, terms);
        quotient.push((shift, coef));
    }
    Some(Poly::from_terms(&ring, quotient))
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

fn s_polynomial(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let ring = f.ring();
    let field = ring.field();
    let (fl, fc) = f.leading_term().expect("nonzero");
    let (gl, gc) = g.leading_term().expect("nonzero");
    let uf = fl.quotient_of(lcm);
    let ug = gl.quotient_of(lcm);
    let a = Poly::from_sorted(ring, f.terms()[1..].to_vec())
        .mul_term(&uf, field.inv(*fc))
        .expect("lcm bounded");
    let factor = field.neg(field.inv(*gc));
    let terms = merge_scaled(ring, a.terms(), &g.terms()[1..], factor, Some(&ug));
    Poly::from_sorted(ring, terms)
}

struct Engine {
    ring: RingRef,
    basis: Vec<Poly>,
    sugar: Vec<u64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn lead(&self, i: usize) -> &Monomial {
        self.basis[i].leading_monomial().expect("nonzero")
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u64 {
        let si = self.sugar[i] + lcm.degree() - self.lead(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lead(j).degree();
        si.max(sj)
    }

    /// Inserts `h` and updates the pair set (Becker–Weispfenning UPDATE).
    fn insert(&mut self, h: Poly, sugar: u64) {
        let k = self.basis.len();
        self.basis.push(h);
        self.sugar.push(sugar);
        let hl = self.lead(k).clone();

        let cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, hl.lcm(self.lead(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g1, l1)) in cands.iter().enumerate() {
            let coprime = hl.is_coprime(self.lead(*g1));
            let dominated_later = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l1));
            let dominated_kept = kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime || (!dominated_later && !dominated_kept) {
                kept.push((*g1, l1.clone()));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hl.is_coprime(self.lead(*g)))
            .map(|(g, lcm)| Pair {
                i: g,
                j: k,
                sugar: self.pair_sugar(g, k, &lcm),
                lcm,
            })
            .collect();

        let basis = &self.basis;
        let lead = |i: usize| basis[i].leading_monomial().expect("nonzero");
        self.pairs.retain(|p| {
            !hl.divides(&p.lcm)
                || hl.lcm(lead(p.i)) == p.lcm
                || hl.lcm(lead(p.j)) == p.lcm
        });
        self.pairs.extend(new_pairs);

        let keep_active: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|&g| !hl.divides(lead(g)))
            .collect();
        self.active = keep_active;
        self.active.push(k);
    }

    fn pick_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ring.order();
        let mut best = 0;
        for idx in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[idx], &self.pairs[best]);
            let better = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| order.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
                == Ordering::Less;
            if better {
                best = idx;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// The zero ideal yields an empty basis and the unit ideal yields `[1]`.
pub fn groebner_basis(gens: &[Poly]) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    for g in gens {
        ensure_same(first.ring(), g.ring())?;
    }
    Ok(buchberger(first.ring(), gens))
}

pub(crate) fn buchberger(ring: &RingRef, gens: &[Poly]) -> Vec<Poly> {
    let mut input: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.is_empty() {
        return Vec::new();
    }
    if input.iter().any(|g| g.is_constant()) {
        return vec![Poly::one(ring)];
    }
    let order = ring.order();
    // small leading monomials first keeps early reductions cheap
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    input.dedup();

    let mut eng = Engine {
        ring: ring.clone(),
        basis: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    for g in input {
        let reduced = {
            let divs = divisors(eng.active.iter().map(|&i| &eng.basis[i]));
            reduce_with(g.clone(), &divs)
        };
        if reduced.is_zero() {
            continue;
        }
        if reduced.is_constant() {
            return vec![Poly::one(ring)];
        }
        let sugar = g.degree().unwrap_or(0);
        eng.insert(reduced.monic(), sugar);
    }

    while let Some(pair) = eng.pick_pair() {
        let s = s_polynomial(&eng.basis[pair.i], &eng.basis[pair.j], &pair.lcm);
        if s.is_zero() {
            continue;
        }
        let h = {
            let divs = divisors(eng.active.iter().map(|&i| &eng.basis[i]));
            let top = top_reduce_with(s, &divs);
            if top.is_zero() {
                continue;
            }
            reduce_with(top, &divs)
        };
        if h.is_constant() {
            return vec![Poly::one(ring)];
        }
        eng.insert(h.monic(), pair.sugar);
    }

    interreduce(ring, eng.active.iter().map(|&i| eng.basis[i].clone()).collect())
}

/// Turns a Gröbner basis into the reduced one, sorted by decreasing
/// leading monomial.
fn interreduce(ring: &RingRef, mut basis: Vec<Poly>) -> Vec<Poly> {
    let order = ring.order();
    basis.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Poly> = Vec::with_capacity(basis.len());
    for (i, g) in basis.iter().enumerate() {
        let gl = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hl = h.leading_monomial().unwrap();
            j != i && hl.divides(gl) && (hl != gl || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others = divisors(minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g));
        let (lead, lc) = minimal[i].leading_term().unwrap().clone();
        let tail = Poly::from_sorted(ring, minimal[i].terms()[1..].to_vec());
        let tail = reduce_with(tail, &others);
        let mut terms = vec![(lead, lc)];
        terms.extend(tail.into_terms());
        out.push(Poly::from_sorted(ring, terms).monic());
    }
    out
}

/// True when `basis` is a Gröbner basis (every S-polynomial reduces to 0).
pub fn is_groebner(basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let (a, b) = (&basis[i], &basis[j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let lcm = a.leading_monomial().unwrap().lcm(b.leading_monomial().unwrap());
            if !reduce(s_polynomial(a, b, &lcm), basis).is_zero() {
                return false;
            }
        }
    }
    true
}
