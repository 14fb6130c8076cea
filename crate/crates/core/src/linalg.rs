//! Sparse Gaussian elimination over `F_p` on polynomial term lists.

use std::collections::HashMap;

use crate::monomial::Monomial;
use crate::poly::{merge_scaled, Poly, Term};
use crate::ring::RingRef;

/// Row echelon form of a set of polynomials viewed as vectors indexed by
/// monomials. Each row is monic with a distinct leading monomial (pivot).
/// Optionally tracks, per row, the combination of inputs it came from.
pub(crate) struct Echelon {
    ring: RingRef,
    rows: Vec<Vec<Term>>,
    combos: Vec<Vec<u64>>,
    pivots: HashMap<Monomial, usize>,
    width: usize,
}

impl Echelon {
    pub fn new(ring: &RingRef, width: usize) -> Self {
        Self {
            ring: ring.clone(),
            rows: Vec::new(),
            combos: Vec::new(),
            pivots: HashMap::new(),
            width,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` (and its combination vector) against the current rows.
    fn reduce(&self, v: Vec<Term>, mut combo: Vec<u64>) -> (Vec<Term>, Vec<u64>) {
        let field = *self.ring.field();
        let mut work = v;
        let mut rem: Vec<Term> = Vec::new();
        let mut pos = 0;
        while pos < work.len() {
            let (m, c) = &work[pos];
            if let Some(&r) = self.pivots.get(m) {
                let factor = field.neg(*c);
                for (k, a) in self.combos[r].iter().enumerate() {
                    if *a != 0 {
                        combo[k] = field.add(combo[k], field.mul(factor, *a));
                    }
                }
                work = merge_scaled(&self.ring, &work[pos + 1..], &self.rows[r][1..], factor, None);
                pos = 0;
            } else {
                rem.push(work[pos].clone());
                pos += 1;
            }
        }
        (rem, combo)
    }

    /// Inserts `v`; returns the combination vector when `v` was dependent.
    pub fn insert(&mut self, v: &Poly, combo: Vec<u64>) -> Option<Vec<u64>> {
        debug_assert_eq!(combo.len(), self.width);
        let (rem, combo) = self.reduce(v.terms().to_vec(), combo);
        if rem.is_empty() {
            return Some(combo);
        }
        let field = *self.ring.field();
        let inv = field.inv(rem[0].1);
        let row: Vec<Term> = rem.into_iter().map(|(m, c)| (m, field.mul(c, inv))).collect();
        let combo = combo.into_iter().map(|c| field.mul(c, inv)).collect();
        self.pivots.insert(row[0].0.clone(), self.rows.len());
        self.rows.push(row);
        self.combos.push(combo);
        None
    }

    /// Inserts without tracking; returns true when `v` was independent.
    pub fn push(&mut self, v: &Poly) -> bool {
        self.insert(v, vec![0; self.width]).is_none()
    }

    pub fn rows(&self) -> impl Iterator<Item = Poly> + '_ {
        self.rows.iter().map(|r| Poly::from_sorted(&self.ring, r.clone()))
    }
}

/// Kernel of the linear map sending the `i`-th source basis vector to
/// `images[i]`, as coefficient vectors over the source basis.
pub(crate) fn kernel(ring: &RingRef, images: &[Poly]) -> Vec<Vec<u64>> {
    let d = images.len();
    let mut ech = Echelon::new(ring, d);
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut unit = vec![0u64; d];
        unit[i] = 1;
        if let Some(v) = ech.insert(img, unit) {
            out.push(v);
        }
    }
    out
}
