//! Monomial ideals: membership, minimal primes and radicals.
//!
//! The minimal primes of a monomial ideal are generated by the minimal
//! vertex covers of the hypergraph whose edges are the supports of the
//! minimal generators, so everything here is combinatorial.

use crate::monomial::Monomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal, keeping only minimal generators (input order kept).
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        let mut min: Vec<Monomial> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let dominated = gens
                .iter()
                .enumerate()
                .any(|(j, h)| h.divides(g) && (h != g || j < i));
            if !dominated {
                min.push(g.clone());
            }
        }
        Self { nvars, gens: min }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    fn supports(&self) -> Vec<Vec<usize>> {
        self.gens
            .iter()
            .map(|g| {
                g.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect()
    }

    /// Size of a smallest set of variables meeting every generator's
    /// support; `None` for the unit ideal.
    pub fn min_cover_size(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let edges = self.supports();
        let mut best = self.nvars;
        let mut chosen = vec![false; self.nvars];
        min_cover(&edges, &mut chosen, 0, &mut best);
        Some(best)
    }

    /// Krull dimension of `k[x]/I`, or `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        self.min_cover_size().map(|c| self.nvars - c)
    }

    /// Minimal primes as sorted variable index sets, in lexicographic order.
    pub fn minimal_primes(&self) -> Vec<Vec<usize>> {
        if self.is_unit() {
            return Vec::new();
        }
        let edges = self.supports();
        let mut covers: Vec<Vec<usize>> = Vec::new();
        let mut chosen = vec![false; self.nvars];
        all_covers(&edges, &mut chosen, &mut covers);
        covers.sort();
        covers.dedup();
        let minimal: Vec<Vec<usize>> = covers
            .iter()
            .filter(|c| {
                !covers
                    .iter()
                    .any(|d| d.len() < c.len() && d.iter().all(|v| c.contains(v)))
            })
            .cloned()
            .collect();
        minimal
    }

    pub fn radical(&self) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let exps: Vec<u64> = g.exponents().iter().map(|&e| e.min(1)).collect();
                Monomial::from_exponents(&exps).expect("squarefree")
            })
            .collect();
        MonomialIdeal::new(self.nvars, gens)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.exponents().iter().all(|&e| e <= 1))
    }

    /// All minimal primes have the same dimension.
    pub fn is_equidimensional(&self) -> bool {
        let primes = self.minimal_primes();
        primes.windows(2).all(|w| w[0].len() == w[1].len())
    }
}

fn first_uncovered<'a>(edges: &'a [Vec<usize>], chosen: &[bool]) -> Option<&'a Vec<usize>> {
    edges.iter().find(|e| !e.iter().any(|&v| chosen[v]))
}

fn min_cover(edges: &[Vec<usize>], chosen: &mut [bool], size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    match first_uncovered(edges, chosen) {
        None => *best = size,
        Some(edge) => {
            for &v in edge {
                chosen[v] = true;
                min_cover(edges, chosen, size + 1, best);
                chosen[v] = false;
            }
        }
    }
}

fn all_covers(edges: &[Vec<usize>], chosen: &mut [bool], out: &mut Vec<Vec<usize>>) {
    match first_uncovered(edges, chosen) {
        None => out.push(
            chosen
                .iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .map(|(i, _)| i)
                .collect(),
        ),
        Some(edge) => {
            for &v in edge {
                chosen[v] = true;
                all_covers(edges, chosen, out);
                chosen[v] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn two_component_example() {
        // (T1^2 T2, T1^2 T3) = (T1^2) ∩ (T2, T3)
        let i = MonomialIdeal::new(3, vec![m(&[2, 1, 0]), m(&[2, 0, 1])]);
        assert_eq!(i.dimension(), Some(2));
        assert_eq!(i.minimal_primes(), vec![vec![0], vec![1, 2]]);
        assert!(!i.is_equidimensional());
        assert_eq!(i.radical().generators(), &[m(&[1, 1, 0]), m(&[1, 0, 1])]);
    }

    #[test]
    fn dims() {
        assert_eq!(MonomialIdeal::new(3, vec![]).dimension(), Some(3));
        let max = MonomialIdeal::new(3, vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]);
        assert_eq!(max.dimension(), Some(0));
        assert_eq!(MonomialIdeal::new(2, vec![m(&[0, 0])]).dimension(), None);
    }

    #[test]
    fn minimalization() {
        let i = MonomialIdeal::new(2, vec![m(&[2, 1]), m(&[1, 0]), m(&[1, 0])]);
        assert_eq!(i.generators(), &[m(&[1, 0])]);
    }
}
