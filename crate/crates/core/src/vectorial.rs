//! Vectorial functions `F: F_2^m -> F_2^m` and their differential properties.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::{self, dot, span, Subspace};
use crate::pairgraph::PairGraph;

/// A map `F_2^m -> F_2^m` given by its value table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorialFunction {
    m: usize,
    table: Vec<u32>,
}

impl VectorialFunction {
    pub fn new(m: usize, table: Vec<u32>) -> Result<Self> {
        gf2::check_n(m)?;
        if table.len() != 1 << m {
            return Err(Error::DimensionMismatch {
                expected: 1 << m,
                found: table.len(),
            });
        }
        for &v in &table {
            gf2::check_vector(v, m)?;
        }
        Ok(VectorialFunction { m, table })
    }

    pub fn identity(m: usize) -> Result<Self> {
        gf2::check_n(m)?;
        Ok(VectorialFunction {
            m,
            table: (0..1u32 << m).collect(),
        })
    }

    pub fn from_fn(m: usize, f: impl Fn(u32) -> u32) -> Result<Self> {
        gf2::check_n(m)?;
        Self::new(m, (0..1u32 << m).map(f).collect())
    }

    /// Assembles `F` from its coordinates; bit `j - 1` of `F(y)` is `coords[j - 1](y)`.
    pub fn from_coordinates(coords: &[BooleanFunction]) -> Result<Self> {
        let m = coords.len();
        gf2::check_n(m)?;
        for c in coords {
            if c.n() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: c.n(),
                });
            }
        }
        Self::from_fn(m, |y| {
            coords
                .iter()
                .enumerate()
                .fold(0, |acc, (j, c)| acc | (c.get(y) as u32) << j)
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, y: u32) -> u32 {
        self.table[y as usize]
    }

    /// Coordinate `j` (0-based): `y -> bit j of F(y)`.
    pub fn coordinate(&self, j: usize) -> BooleanFunction {
        BooleanFunction::from_fn(self.m, |y| self.apply(y) >> j & 1 == 1).expect("valid m")
    }

    pub fn coordinates(&self) -> Vec<BooleanFunction> {
        (0..self.m).map(|j| self.coordinate(j)).collect()
    }

    /// Component function `y -> b . F(y)`.
    pub fn component(&self, b: u32) -> Result<BooleanFunction> {
        gf2::check_vector(b, self.m)?;
        BooleanFunction::from_fn(self.m, |y| dot(b, self.apply(y)))
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }

    pub fn inverse(&self) -> Option<VectorialFunction> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0u32; self.table.len()];
        for (y, &v) in self.table.iter().enumerate() {
            inv[v as usize] = y as u32;
        }
        Some(VectorialFunction {
            m: self.m,
            table: inv,
        })
    }

    /// `y -> self(other(y))`.
    pub fn compose(&self, other: &VectorialFunction) -> Result<VectorialFunction> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        Self::from_fn(self.m, |y| self.apply(other.apply(y)))
    }

    /// Maximum algebraic degree of the coordinates.
    pub fn algebraic_degree(&self) -> usize {
        self.coordinates()
            .iter()
            .map(|c| c.algebraic_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_affine(&self) -> bool {
        self.algebraic_degree() <= 1
    }

    #[inline]
    fn second_derivative_at(&self, a: u32, b: u32, y: u32) -> u32 {
        self.apply(y) ^ self.apply(y ^ a) ^ self.apply(y ^ b) ^ self.apply(y ^ a ^ b)
    }

    /// True iff `D_a D_b F` is identically `0_m`.
    pub fn second_derivative_vanishes(&self, a: u32, b: u32) -> bool {
        (0..1u32 << self.m).all(|y| self.second_derivative_at(a, b, y) == 0)
    }

    pub(crate) fn pair_graph(&self) -> Result<PairGraph> {
        if self.algebraic_degree() <= 2 {
            // D_a D_b F is constant for quadratic F
            PairGraph::build(self.m, |a, b| self.second_derivative_at(a, b, 0) == 0)
        } else {
            PairGraph::build(self.m, |a, b| self.second_derivative_vanishes(a, b))
        }
    }

    /// True iff `F(x + a) + F(x) = b` has 0 or 2 solutions for all `a != 0`.
    pub fn is_apn(&self) -> bool {
        let size = 1usize << self.m;
        let mut count = vec![0u8; size];
        (1..size as u32).all(|a| {
            count.iter_mut().for_each(|c| *c = 0);
            (0..size as u32).all(|x| {
                let d = (self.apply(x) ^ self.apply(x ^ a)) as usize;
                count[d] += 1;
                count[d] <= 2
            })
        })
    }

    /// Number of 2-dimensional flats `{x1, x2, x3, x4}` on which `F` sums to zero.
    pub fn vanishing_flats_count(&self) -> u64 {
        let size = 1u32 << self.m;
        let mut total = 0u64;
        for a in 1..size {
            for b in a + 1..size {
                if (a ^ b) < b {
                    continue;
                }
                total += (0..size)
                    .filter(|&y| self.second_derivative_at(a, b, y) == 0)
                    .count() as u64;
            }
        }
        // each flat y + <a, b> is seen once per element
        total / 4
    }

    /// All `s` (including 0) with `D_s F` constant.
    pub fn linear_structures(&self) -> Vec<u32> {
        (0..1u32 << self.m)
            .filter(|&s| {
                let d0 = self.apply(0) ^ self.apply(s);
                (0..1u32 << self.m).all(|y| self.apply(y) ^ self.apply(y ^ s) == d0)
            })
            .collect()
    }

    /// All `r`-dimensional `S` with `D_a D_b F = 0_m` for all `a, b` in `S`.
    pub fn vanishing_subspaces(&self, r: usize) -> Result<Vec<Subspace>> {
        if r == 0 || r > self.m {
            return Err(Error::RankTooLarge { r, n: self.m });
        }
        Ok(self.pair_graph()?.subspaces(r, None))
    }

    /// A 2-dimensional subspace on which the second derivative vanishes, or
    /// `None` when `F` has the P1 property.
    pub fn p1_violation(&self) -> Option<Subspace> {
        let size = 1u32 << self.m;
        let quadratic = self.algebraic_degree() <= 2;
        for a in 1..size {
            for b in a + 1..size {
                if (a ^ b) < b {
                    continue;
                }
                let vanishes = if quadratic {
                    self.second_derivative_at(a, b, 0) == 0
                } else {
                    self.second_derivative_vanishes(a, b)
                };
                if vanishes {
                    return Some(span(&[a, b], self.m).expect("vectors in range"));
                }
            }
        }
        None
    }

    /// True iff `D_v D_w F != 0_m` for all linearly independent `v, w`.
    pub fn has_p1(&self) -> bool {
        self.p1_violation().is_none()
    }

    /// `{u : u . D_a F(y) = 0 for all a in S, y}`.
    pub fn annihilator(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient_dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: s.ambient_dim(),
            });
        }
        // D_a F for basis vectors suffices: D_{a+b}F(y) = D_aF(y+b) + D_bF(y)
        let mut image = Vec::new();
        for &a in s.basis() {
            for y in 0..1u32 << self.m {
                image.push(self.apply(y) ^ self.apply(y ^ a));
            }
        }
        Ok(span(&image, self.m)?.orthogonal_complement())
    }

    /// Evaluates the P2 property for every vanishing subspace.
    pub fn check_p2(&self) -> Result<P2Report> {
        if !self.is_permutation() {
            return Err(Error::NotPermutation);
        }
        if self.is_affine() {
            return Err(Error::AffineInput);
        }
        let graph = self.pair_graph()?;
        let mut per_subspace = Vec::new();
        let mut max_dim = 0;
        let mut hyperplane = false;
        for r in 1..self.m {
            let found = graph.subspaces(r, None);
            if found.is_empty() {
                break;
            }
            max_dim = r;
            if r == self.m - 1 {
                hyperplane = true;
                break;
            }
            for s in found {
                let u = self.annihilator(&s)?;
                let k = self.m - r;
                per_subspace.push(P2Entry {
                    ok: u.dim() < k,
                    dim_us: u.dim(),
                    k,
                    subspace: s,
                });
            }
        }
        Ok(P2Report {
            fully_satisfies: !hyperplane && per_subspace.iter().all(|e| e.ok),
            per_subspace,
            max_vanishing_dim: max_dim,
        })
    }
}

impl fmt::Debug for VectorialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorialFunction(m={}, {:?})", self.m, self.table)
    }
}

/// One vanishing subspace examined by [`VectorialFunction::check_p2`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P2Entry {
    pub subspace: Subspace,
    /// `m - dim(S)`.
    pub k: usize,
    /// Dimension of `U_S = {u : u . D_a F(y) = 0 for all a in S, y}`.
    pub dim_us: usize,
    /// `dim_us < k`.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct P2Report {
    pub fully_satisfies: bool,
    pub per_subspace: Vec<P2Entry>,
    pub max_vanishing_dim: usize,
}
