//! Linear algebra over F_2.
//!
//! Vectors of F_2^n are `u32` bit-masks where bit `j - 1` holds coordinate
//! `x_j`. A [`Subspace`] is stored by its reduced row-echelon basis with
//! pivots taken from the most significant bit downward, so two subspaces are
//! equal as sets exactly when their bases compare equal.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted anywhere in the crate.
pub const MAX_N: usize = 20;

/// Dot product `u . v` over F_2.
#[inline]
pub fn dot(u: u32, v: u32) -> bool {
    (u & v).count_ones() & 1 == 1
}

#[inline]
pub(crate) fn pivot(v: u32) -> u32 {
    31 - v.leading_zeros()
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::UnsupportedDimension { n, max: MAX_N });
    }
    Ok(())
}

pub(crate) fn check_vector(v: u32, n: usize) -> Result<()> {
    if n < 32 && v >> n != 0 {
        return Err(Error::VectorOutOfRange { value: v, n });
    }
    Ok(())
}

/// Number of `r`-dimensional subspaces of F_2^n.
pub fn gaussian_binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= (1u128 << (n - i)) - 1;
        den *= (1u128 << (i + 1)) - 1;
    }
    num / den
}

/// A linear subspace of F_2^n in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr")]
pub struct Subspace {
    n: usize,
    basis: Vec<u32>,
}

impl Subspace {
    /// The zero subspace of F_2^n.
    pub fn zero(n: usize) -> Self {
        Subspace {
            n,
            basis: Vec::new(),
        }
    }

    /// All of F_2^n.
    pub fn full(n: usize) -> Self {
        Subspace {
            n,
            basis: (0..n).rev().map(|i| 1u32 << i).collect(),
        }
    }

    /// Wraps a basis that is already in canonical form.
    pub(crate) fn from_canonical(n: usize, basis: Vec<u32>) -> Self {
        debug_assert!(is_canonical(&basis));
        Subspace { n, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical basis, pivots strictly decreasing.
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// Reduces `v` against the basis; zero iff `v` lies in the subspace.
    pub fn reduce(&self, mut v: u32) -> u32 {
        for &b in &self.basis {
            if v >> pivot(b) & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// Iterates over all `2^dim` elements, starting with zero.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        (0u32..1 << self.basis.len()).map(move |mask| {
            self.basis
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &b)| acc ^ b)
        })
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.n == other.n && self.basis.iter().all(|&b| other.contains(b))
    }

    /// `{u : u . a = 0 for all a}`.
    pub fn orthogonal_complement(&self) -> Subspace {
        let pivots: u32 = self.basis.iter().fold(0, |acc, &b| acc | 1 << pivot(b));
        let vectors: Vec<u32> = (0..self.n as u32)
            .filter(|j| pivots >> j & 1 == 0)
            .map(|j| {
                self.basis
                    .iter()
                    .filter(|&&b| b >> j & 1 == 1)
                    .fold(1u32 << j, |acc, &b| acc | 1 << pivot(b))
            })
            .collect();
        canonical_span(self.n, &vectors)
    }

    /// `A + B`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        same_ambient(self, other)?;
        let mut all = self.basis.clone();
        all.extend_from_slice(&other.basis);
        Ok(canonical_span(self.n, &all))
    }

    /// `A ∩ B`, computed as `(A^⊥ + B^⊥)^⊥`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        same_ambient(self, other)?;
        let perp = self
            .orthogonal_complement()
            .sum(&other.orthogonal_complement())?;
        Ok(perp.orthogonal_complement())
    }

    /// Bit-mask over F_2^n (as `u64` words) of the nonzero elements.
    pub(crate) fn punctured_mask(&self) -> Vec<u64> {
        let words = (1usize << self.n).div_ceil(64);
        let mut mask = vec![0u64; words];
        for e in self.elements().skip(1) {
            mask[e as usize / 64] |= 1 << (e % 64);
        }
        mask
    }

    /// Embeds into a larger space by shifting every vector left by `offset`.
    pub fn shifted(&self, offset: usize, new_n: usize) -> Subspace {
        let vs: Vec<u32> = self.basis.iter().map(|&b| b << offset).collect();
        canonical_span(new_n, &vs)
    }
}

#[derive(Deserialize)]
struct SubspaceRepr {
    n: usize,
    basis: Vec<u32>,
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = Error;

    fn try_from(r: SubspaceRepr) -> Result<Subspace> {
        let s = span(&r.basis, r.n)?;
        if s.basis != r.basis {
            return Err(Error::Parse {
                pos: 0,
                msg: "basis is not in canonical form".into(),
            });
        }
        Ok(s)
    }
}

fn same_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(())
}

fn is_canonical(basis: &[u32]) -> bool {
    let pivots: u32 = basis.iter().fold(0, |acc, &b| acc | 1 << pivot(b));
    basis.windows(2).all(|w| pivot(w[0]) > pivot(w[1]))
        && basis
            .iter()
            .all(|&b| b != 0 && (b & pivots) == 1 << pivot(b))
}

fn canonical_span(n: usize, vectors: &[u32]) -> Subspace {
    // slot[p] holds the basis vector with pivot p
    let mut slot = [0u32; 32];
    for &v in vectors {
        let mut v = v;
        while v != 0 {
            let p = pivot(v) as usize;
            if slot[p] == 0 {
                slot[p] = v;
                break;
            }
            v ^= slot[p];
        }
    }
    for p in 0..32 {
        if slot[p] == 0 {
            continue;
        }
        for q in p + 1..32 {
            if slot[q] >> p & 1 == 1 {
                slot[q] ^= slot[p];
            }
        }
    }
    let basis = (0..32).rev().map(|p| slot[p]).filter(|&v| v != 0).collect();
    Subspace { n, basis }
}

/// Canonical subspace spanned by `vectors` inside F_2^n.
pub fn span(vectors: &[u32], n: usize) -> Result<Subspace> {
    check_n(n)?;
    for &v in vectors {
        check_vector(v, n)?;
    }
    Ok(canonical_span(n, vectors))
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, &b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", bit_string(b, self.n))?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, {})", self.n, self)
    }
}

/// Coordinate string `x_1 x_2 ... x_n` of a vector.
pub fn bit_string(v: u32, n: usize) -> String {
    (0..n)
        .map(|j| if v >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Lazily enumerates every `r`-dimensional subspace of F_2^n, each exactly
/// once, in lexicographic order of the canonical basis.
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    n: usize,
    r: usize,
    basis: Vec<u32>,
    // next candidate to try at the current depth
    cursor: u32,
    first_limit: Option<u32>,
    done: bool,
}

/// Enumerates the `r`-dimensional subspaces of F_2^n.
pub fn enumerate_subspaces(n: usize, r: usize) -> Result<SubspaceIter> {
    check_n(n)?;
    if r > n {
        return Err(Error::RankTooLarge { r, n });
    }
    Ok(SubspaceIter {
        n,
        r,
        basis: Vec::with_capacity(r),
        cursor: 1,
        first_limit: None,
        done: false,
    })
}

impl SubspaceIter {
    /// Restricts the stream to subspaces whose first canonical basis vector
    /// is `first`; partitions of the full stream for parallel consumers.
    pub fn with_first_vector(n: usize, r: usize, first: u32) -> Result<SubspaceIter> {
        let mut it = enumerate_subspaces(n, r)?;
        check_vector(first, n)?;
        if r == 0 || first == 0 {
            it.done = true;
            return Ok(it);
        }
        it.cursor = first;
        it.first_limit = Some(first);
        Ok(it)
    }

    fn upper_bound(&self) -> u32 {
        match self.basis.last() {
            Some(&b) => 1 << pivot(b),
            None => match self.first_limit {
                Some(f) => f + 1,
                None => {
                    if self.n >= 32 {
                        u32::MAX
                    } else {
                        1 << self.n
                    }
                }
            },
        }
    }

    fn admissible(&self, v: u32) -> bool {
        let pivots: u32 = self.basis.iter().fold(0, |acc, &b| acc | 1 << pivot(b));
        if v & pivots != 0 {
            return false;
        }
        let p = pivot(v);
        if self.basis.iter().any(|&b| b >> p & 1 == 1) {
            return false;
        }
        // enough free positions below p for the remaining pivots
        let used = self.basis.iter().fold(v, |acc, &b| acc | b);
        let below = (1u32 << p) - 1;
        let free = (below & !used).count_ones() as usize;
        free >= self.r - self.basis.len() - 1
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        if self.r == 0 {
            self.done = true;
            return Some(Subspace::zero(self.n));
        }
        loop {
            let limit = self.upper_bound();
            let mut found = None;
            let mut v = self.cursor;
            while v < limit {
                if self.admissible(v) {
                    found = Some(v);
                    break;
                }
                v += 1;
            }
            match found {
                Some(v) => {
                    self.basis.push(v);
                    if self.basis.len() == self.r {
                        let out = Subspace {
                            n: self.n,
                            basis: self.basis.clone(),
                        };
                        self.cursor = v + 1;
                        self.basis.pop();
                        return Some(out);
                    }
                    self.cursor = 1;
                }
                None => match self.basis.pop() {
                    Some(b) => self.cursor = b + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    #[test]
    fn span_examples() {
        assert_eq!(span(&[], 4).unwrap().dim(), 0);
        let s = span(&[0b0001, 0b0011], 4).unwrap();
        assert_eq!(s.basis(), &[0b0010, 0b0001]);
        assert!(span(&[0b10000], 4).is_err());
    }

    #[test]
    fn canonical_form_is_rref() {
        let s = span(&[0b1011, 0b0110, 0b1101], 4).unwrap();
        assert!(is_canonical(s.basis()));
        assert_eq!(s, span(&[0b1101, 0b1011 ^ 0b0110, 0b0110], 4).unwrap());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2), 35);
        assert_eq!(gaussian_binomial(8, 4), 200787);
        assert_eq!(gaussian_binomial(6, 3), 1395);
        assert_eq!(gaussian_binomial(5, 0), 1);
    }

    #[test]
    fn enumeration_counts_and_uniqueness() {
        for n in 1..=8 {
            for r in 0..=n {
                let all: Vec<Subspace> = enumerate_subspaces(n, r).unwrap().collect();
                assert_eq!(all.len() as u128, gaussian_binomial(n, r), "n={n} r={r}");
                assert!(
                    all.windows(2).all(|w| w[0].basis < w[1].basis),
                    "order n={n} r={r}"
                );
                for s in &all {
                    assert!(is_canonical(&s.basis));
                    assert_eq!(&span(s.basis(), n).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn enumeration_rank_zero_and_errors() {
        let all: Vec<_> = enumerate_subspaces(5, 0).unwrap().collect();
        assert_eq!(all, vec![Subspace::zero(5)]);
        assert!(enumerate_subspaces(3, 4).is_err());
    }

    #[test]
    fn prefix_partition_covers_stream() {
        let n = 6;
        let r = 3;
        let total: usize = (1u32..1 << n)
            .map(|v| SubspaceIter::with_first_vector(n, r, v).unwrap().count())
            .sum();
        assert_eq!(total as u128, gaussian_binomial(n, r));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Subspace::zero(3).orthogonal_complement(), Subspace::full(3));
        let c = span(&[0b001], 3).unwrap().orthogonal_complement();
        assert_eq!(c.dim(), 2);
        assert!(c.elements().all(|u| u & 1 == 0));
    }

    #[test]
    fn intersect_examples() {
        let a = span(&[0b01], 2).unwrap();
        let b = span(&[0b10], 2).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subspace::zero(2));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.intersect(&Subspace::zero(3)).is_err());
    }

    fn random_subspace(rng: &mut ChaCha8Rng, n: usize) -> Subspace {
        let k = rng.gen_range(0..=n);
        let vs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..1u32 << n)).collect();
        span(&vs, n).unwrap()
    }

    #[test]
    fn random_intersections_match_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let a = random_subspace(&mut rng, 6);
            let b = random_subspace(&mut rng, 6);
            let sa: BTreeSet<u32> = a.elements().collect();
            let sb: BTreeSet<u32> = b.elements().collect();
            let expected: Vec<u32> = sa.intersection(&sb).copied().collect();
            let got = a.intersect(&b).unwrap();
            let got_set: BTreeSet<u32> = got.elements().collect();
            assert_eq!(got_set.into_iter().collect::<Vec<_>>(), expected);
            // rank-nullity
            assert_eq!(got.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
            // double complement
            assert_eq!(a.orthogonal_complement().orthogonal_complement(), a);
            assert_eq!(a.orthogonal_complement().dim(), 6 - a.dim());
        }
    }
}
