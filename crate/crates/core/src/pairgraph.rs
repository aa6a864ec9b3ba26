//! Vanishing-pair graphs and canonical subspace search over them.
//!
//! Vertex `a != 0` is joined to `b` when the second derivative in directions
//! `a, b` vanishes identically. Because
//! `D_{a+b} D_c = D_a D_c(. + b) + D_b D_c`, a subspace is vanishing exactly
//! when its basis vectors are pairwise joined, so the search only ever looks
//! at basis pairs.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{pivot, Subspace};

/// Largest ambient dimension for which the dense adjacency matrix is built.
pub const MAX_GRAPH_N: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PairGraph {
    n: usize,
    row_words: usize,
    bits: Vec<u64>,
}

impl PairGraph {
    /// Evaluates `vanishes(a, b)` once per 2-dimensional subspace.
    pub fn build(n: usize, vanishes: impl Fn(u32, u32) -> bool + Sync) -> Result<PairGraph> {
        if n > MAX_GRAPH_N {
            return Err(Error::UnsupportedDimension {
                n,
                max: MAX_GRAPH_N,
            });
        }
        let size = 1u32 << n;
        let row_words = (size as usize).div_ceil(64);
        // {a, b, a^b} is represented once by a < b < a^b
        let pairs: Vec<(u32, u32)> = (1..size)
            .into_par_iter()
            .flat_map_iter(|a| {
                let vanishes = &vanishes;
                (a + 1..size)
                    .filter(move |&b| (a ^ b) > b)
                    .filter(move |&b| vanishes(a, b))
                    .map(move |b| (a, b))
            })
            .collect();
        let mut g = PairGraph {
            n,
            row_words,
            bits: vec![0; row_words * size as usize],
        };
        for (a, b) in pairs {
            let c = a ^ b;
            g.set(a, b);
            g.set(a, c);
            g.set(b, c);
        }
        Ok(g)
    }

    fn set(&mut self, a: u32, b: u32) {
        let rw = self.row_words;
        self.bits[a as usize * rw + b as usize / 64] |= 1 << (b % 64);
        self.bits[b as usize * rw + a as usize / 64] |= 1 << (a % 64);
    }

    #[cfg(test)]
    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.bits[a as usize * self.row_words + b as usize / 64] >> (b % 64) & 1 == 1
    }

    fn row(&self, a: u32) -> &[u64] {
        let start = a as usize * self.row_words;
        &self.bits[start..start + self.row_words]
    }

    /// Edge set intersection.
    pub fn intersect(&self, other: &PairGraph) -> PairGraph {
        assert_eq!(self.n, other.n);
        PairGraph {
            n: self.n,
            row_words: self.row_words,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    /// Some edge `(a, b)` with `a < b`, if any.
    #[cfg(test)]
    fn any_edge(&self) -> Option<(u32, u32)> {
        let size = 1u32 << self.n;
        (1..size).find_map(|a| {
            if self.row(a).iter().all(|&w| w == 0) {
                return None;
            }
            (a + 1..size).find(|&b| self.adjacent(a, b)).map(|b| (a, b))
        })
    }

    /// Number of unordered edges.
    #[cfg(test)]
    fn edge_count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum::<u64>() / 2
    }

    /// Every `r`-dimensional subspace whose basis is pairwise joined, in
    /// lexicographic order of canonical bases. With `limit`, stops after that
    /// many hits (searching sequentially).
    pub fn subspaces(&self, r: usize, limit: Option<usize>) -> Vec<Subspace> {
        if r == 0 {
            return vec![Subspace::zero(self.n)];
        }
        if r > self.n {
            return Vec::new();
        }
        let all = vec![u64::MAX; self.row_words];
        let roots: Vec<u32> = (1..1u32 << self.n).collect();
        match limit {
            Some(k) => {
                let mut out = Vec::new();
                let mut basis = Vec::with_capacity(r);
                for &v in &roots {
                    if out.len() >= k {
                        break;
                    }
                    self.root(v, r, &all, &mut basis, &mut out, k);
                }
                out.truncate(k);
                out
            }
            None => {
                let mut out: Vec<Subspace> = roots
                    .par_iter()
                    .flat_map_iter(|&v| {
                        let mut out = Vec::new();
                        let mut basis = Vec::with_capacity(r);
                        self.root(v, r, &all, &mut basis, &mut out, usize::MAX);
                        out
                    })
                    .collect();
                out.sort();
                out
            }
        }
    }

    fn root(
        &self,
        v: u32,
        r: usize,
        common: &[u64],
        basis: &mut Vec<u32>,
        out: &mut Vec<Subspace>,
        limit: usize,
    ) {
        // the first vector has no RREF constraints beyond leaving room below
        // its pivot for the remaining r - 1 pivots
        if (pivot(v) as usize) < r - 1 {
            return;
        }
        basis.push(v);
        let next: Vec<u64> = common.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
        self.extend(r, &next, basis, out, limit);
        basis.pop();
    }

    fn extend(
        &self,
        r: usize,
        common: &[u64],
        basis: &mut Vec<u32>,
        out: &mut Vec<Subspace>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if basis.len() == r {
            out.push(Subspace::from_canonical(self.n, basis.clone()));
            return;
        }
        let last_pivot = pivot(*basis.last().expect("non-empty basis"));
        let pivots: u32 = basis.iter().fold(0, |acc, &b| acc | 1 << pivot(b));
        let used: u32 = basis.iter().fold(0, |acc, &b| acc | b);
        let remaining = r - basis.len() - 1;
        let bound = 1u32 << last_pivot;
        for w in 0..(bound as usize).div_ceil(64) {
            let mut bits = common[w];
            if (w + 1) * 64 > bound as usize {
                bits &= (1u64 << (bound as usize - w * 64)) - 1;
            }
            while bits != 0 {
                let v = (w as u32) * 64 + bits.trailing_zeros();
                bits &= bits - 1;
                if v & pivots != 0 {
                    continue;
                }
                let p = pivot(v);
                if basis.iter().any(|&b| b >> p & 1 == 1) {
                    continue;
                }
                let free = (((1u32 << p) - 1) & !(used | v)).count_ones() as usize;
                if free < remaining {
                    continue;
                }
                basis.push(v);
                let next: Vec<u64> = common.iter().zip(self.row(v)).map(|(a, b)| a & b).collect();
                self.extend(r, &next, basis, out, limit);
                basis.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{enumerate_subspaces, gaussian_binomial};

    #[test]
    fn complete_graph_yields_every_subspace() {
        let g = PairGraph::build(5, |_, _| true).unwrap();
        for r in 0..=5 {
            let got = g.subspaces(r, None);
            assert_eq!(got.len() as u128, gaussian_binomial(5, r));
            let expected: Vec<_> = enumerate_subspaces(5, r).unwrap().collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn empty_graph_yields_only_lines() {
        let g = PairGraph::build(4, |_, _| false).unwrap();
        assert_eq!(g.subspaces(1, None).len(), 15);
        assert!(g.subspaces(2, None).is_empty());
        assert_eq!(g.any_edge(), None);
    }

    #[test]
    fn limit_and_first_edge() {
        let g = PairGraph::build(4, |a, b| (a | b) < 4).unwrap();
        assert_eq!(g.any_edge(), Some((1, 2)));
        assert_eq!(g.subspaces(2, Some(1)).len(), 1);
        assert_eq!(g.subspaces(2, None).len(), 1);
        assert_eq!(g.edge_count(), 3);
    }
}
