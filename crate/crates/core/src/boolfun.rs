//! Boolean functions stored as packed truth tables.

use std::fmt;
use std::ops::{Add, Not};

use crate::anf::AnfPoly;
use crate::error::{Error, Result};
use crate::gf2::{self, dot};

// MASK_LO[j] selects the bit positions whose index has bit j clear.
const MASK_LO: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// A Boolean function `f: F_2^n -> F_2`.
///
/// Entry `i` of the table is `f(x)` for the vector `x` whose bit `j - 1`
/// is the coordinate `x_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl BooleanFunction {
    /// The zero function on `n` variables.
    pub fn zero(n: usize) -> Result<Self> {
        gf2::check_n(n)?;
        Ok(BooleanFunction {
            n,
            words: vec![0; word_count(n)],
        })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        let f = Self::zero(n)?;
        Ok(if value { !f } else { f })
    }

    /// Builds a function by evaluating `g` on every input.
    pub fn from_fn(n: usize, mut g: impl FnMut(u32) -> bool) -> Result<Self> {
        let mut f = Self::zero(n)?;
        for x in 0..(1u32 << n) {
            if g(x) {
                f.words[x as usize >> 6] |= 1 << (x & 63);
            }
        }
        Ok(f)
    }

    /// Builds a function from one `bool` per input.
    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let n = bits.len().trailing_zeros() as usize;
        if !bits.len().is_power_of_two() || n == 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("table length {} is not a power of two >= 2", bits.len()),
            });
        }
        Self::from_fn(n, |x| bits[x as usize])
    }

    /// Wraps packed 64-bit words (bit `i % 64` of word `i / 64` is `f(i)`).
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        gf2::check_n(n)?;
        if words.len() != word_count(n) {
            return Err(Error::DimensionMismatch {
                expected: word_count(n),
                found: words.len(),
            });
        }
        if n < 6 && words[0] & !tail_mask(n) != 0 {
            return Err(Error::Parse {
                pos: 0,
                msg: "bits set beyond the table length".into(),
            });
        }
        Ok(BooleanFunction { n, words })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of table entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        self.words[x as usize >> 6] >> (x & 63) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..1u32 << self.n).map(move |x| self.get(x))
    }

    /// Hamming weight of the table.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (!self.clone()).is_zero()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() == 1 << (self.n - 1)
    }

    fn check_same(&self, other: &BooleanFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn try_add(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        self.check_same(other)?;
        Ok(BooleanFunction {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// `x -> f(x + b)`.
    pub fn translate(&self, b: u32) -> Result<BooleanFunction> {
        gf2::check_vector(b, self.n)?;
        Ok(self.translate_unchecked(b))
    }

    pub(crate) fn translate_unchecked(&self, b: u32) -> BooleanFunction {
        let high = (b >> 6) as usize;
        let mut words: Vec<u64> = (0..self.words.len())
            .map(|w| self.words[w ^ high])
            .collect();
        for (j, &m) in MASK_LO.iter().enumerate() {
            if b >> j & 1 == 1 {
                let s = 1 << j;
                for w in &mut words {
                    *w = ((*w & m) << s) | ((*w >> s) & m);
                }
            }
        }
        if self.n < 6 {
            words[0] &= tail_mask(self.n);
        }
        BooleanFunction { n: self.n, words }
    }

    /// `x -> f(x) + a . x`.
    pub fn add_linear(&self, a: u32) -> Result<BooleanFunction> {
        gf2::check_vector(a, self.n)?;
        let lin = BooleanFunction::from_fn(self.n, |x| dot(a, x))?;
        self.try_add(&lin)
    }

    /// First-order derivative `D_a f(x) = f(x + a) + f(x)`.
    pub fn derivative(&self, a: u32) -> Result<BooleanFunction> {
        gf2::check_vector(a, self.n)?;
        Ok(self.derivative_unchecked(a))
    }

    pub(crate) fn derivative_unchecked(&self, a: u32) -> BooleanFunction {
        let t = self.translate_unchecked(a);
        BooleanFunction {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&t.words)
                .map(|(x, y)| x ^ y)
                .collect(),
        }
    }

    /// `D_a D_b f(x) = f(x) + f(x + a) + f(x + b) + f(x + a + b)`.
    pub fn second_derivative(&self, a: u32, b: u32) -> Result<BooleanFunction> {
        gf2::check_vector(a, self.n)?;
        gf2::check_vector(b, self.n)?;
        Ok(self.derivative_unchecked(a).derivative_unchecked(b))
    }

    /// True iff `D_a D_b f` is identically zero.
    pub(crate) fn second_derivative_vanishes(&self, a: u32, b: u32) -> bool {
        // D_a D_b f is constant on cosets of <a, b>, but a direct scan with
        // early exit is cheap enough and avoids coset bookkeeping
        (0..1u32 << self.n)
            .all(|x| !(self.get(x) ^ self.get(x ^ a) ^ self.get(x ^ b) ^ self.get(x ^ a ^ b)))
    }

    /// All `a` (including 0) for which `D_a f` is constant, in increasing order.
    pub fn linear_structures(&self) -> Vec<u32> {
        (0..1u32 << self.n)
            .filter(|&a| self.derivative_unchecked(a).is_constant())
            .collect()
    }

    /// Algebraic normal form via the binary Möbius transform.
    pub fn to_anf(&self) -> AnfPoly {
        let mut words = self.words.clone();
        moebius_in_place(self.n, &mut words);
        let monomials =
            (0..1u32 << self.n).filter(|&u| words[u as usize >> 6] >> (u & 63) & 1 == 1);
        AnfPoly::from_sorted_unchecked(self.n, monomials.collect())
    }

    /// Evaluates an ANF into its truth table.
    pub fn from_anf(poly: &AnfPoly) -> Result<BooleanFunction> {
        let n = poly.n();
        let mut f = Self::zero(n)?;
        for &u in poly.monomials() {
            gf2::check_vector(u, n)?;
            f.words[u as usize >> 6] |= 1 << (u & 63);
        }
        moebius_in_place(n, &mut f.words);
        Ok(f)
    }

    pub fn algebraic_degree(&self) -> usize {
        self.to_anf().degree()
    }

    /// Walsh–Hadamard spectrum, computed exactly by the butterfly.
    pub fn walsh(&self) -> WalshSpectrum {
        let mut v: Vec<i32> = self.bits().map(|b| if b { -1 } else { 1 }).collect();
        fwht(&mut v);
        WalshSpectrum {
            n: self.n,
            values: v,
        }
    }

    pub fn is_bent(&self) -> bool {
        self.n.is_multiple_of(2) && self.walsh().is_bent()
    }

    /// The dual `f*` with `W_f(u) = 2^{n/2} (-1)^{f*(u)}`.
    pub fn dual(&self) -> Result<BooleanFunction> {
        let w = self.walsh();
        if !self.n.is_multiple_of(2) || !w.is_bent() {
            return Err(Error::NotBent);
        }
        BooleanFunction::from_fn(self.n, |u| w.values[u as usize] < 0)
    }

    /// `x -> f(M x + c)` where `columns[j]` is the image of `e_{j+1}`.
    pub fn compose_affine(&self, columns: &[u32], c: u32) -> Result<BooleanFunction> {
        if columns.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: columns.len(),
            });
        }
        for &col in columns {
            gf2::check_vector(col, self.n)?;
        }
        gf2::check_vector(c, self.n)?;
        BooleanFunction::from_fn(self.n, |x| {
            let y = columns
                .iter()
                .enumerate()
                .filter(|(j, _)| x >> j & 1 == 1)
                .fold(c, |acc, (_, &col)| acc ^ col);
            self.get(y)
        })
    }

    /// Reorders variables: variable `i` of the result is variable `perm[i]`
    /// of `self` (both 0-based).
    pub fn permute_variables(&self, perm: &[usize]) -> Result<BooleanFunction> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::Hypothesis(
                "not a permutation of the variables".into(),
            ));
        }
        let columns: Vec<u32> = perm.iter().map(|&p| 1u32 << p).collect();
        self.compose_affine(&columns, 0)
    }

    /// Extends to `n + k` variables; the new variables are dummies.
    pub fn extend(&self, k: usize) -> Result<BooleanFunction> {
        let mask = (1u32 << self.n) - 1;
        BooleanFunction::from_fn(self.n + k, |x| self.get(x & mask))
    }
}

pub(crate) fn moebius_in_place(n: usize, words: &mut [u64]) {
    for (j, &m) in MASK_LO.iter().enumerate().take(n.min(6)) {
        let s = 1 << j;
        for w in words.iter_mut() {
            *w ^= (*w & m) << s;
        }
    }
    for j in 6..n {
        let step = 1 << (j - 6);
        for w in 0..words.len() {
            if w & step != 0 {
                words[w] ^= words[w ^ step];
            }
        }
    }
}

pub(crate) fn fwht(v: &mut [i32]) {
    let mut h = 1;
    while h < v.len() {
        for i in (0..v.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

impl Not for BooleanFunction {
    type Output = BooleanFunction;
    fn not(mut self) -> BooleanFunction {
        for w in &mut self.words {
            *w = !*w;
        }
        if self.n < 6 {
            self.words[0] &= tail_mask(self.n);
        }
        self
    }
}

impl Add for &BooleanFunction {
    type Output = BooleanFunction;
    /// Panics on mismatched `n`; use [`BooleanFunction::try_add`] to handle it.
    fn add(self, rhs: &BooleanFunction) -> BooleanFunction {
        self.try_add(rhs)
            .expect("adding functions with different n")
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction({})", crate::format::tt_to_string(self))
    }
}

/// The Walsh–Hadamard spectrum `W_f(a)` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i32>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn get(&self, a: u32) -> i32 {
        self.values[a as usize]
    }

    /// True iff `n` is even and every entry is `±2^{n/2}`.
    pub fn is_bent(&self) -> bool {
        if !self.n.is_multiple_of(2) {
            return false;
        }
        let r = 1i32 << (self.n / 2);
        self.values.iter().all(|&v| v == r || v == -r)
    }

    /// Sum of squared entries; equals `2^{2n}` for every function.
    pub fn energy(&self) -> u64 {
        self.values
            .iter()
            .map(|&v| (v as i64 * v as i64) as u64)
            .sum()
    }

    /// Recovers `f` from the spectrum by the inverse transform.
    pub fn inverse(&self) -> BooleanFunction {
        let mut v = self.values.clone();
        fwht(&mut v);
        let scale = 1i32 << self.n;
        BooleanFunction::from_fn(self.n, |x| v[x as usize] / scale < 0)
            .expect("spectrum has a valid n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
        BooleanFunction::from_fn(n, |_| rng.gen()).unwrap()
    }

    #[test]
    fn anf_examples() {
        let f = BooleanFunction::zero(3).unwrap();
        assert!(f.to_anf().is_empty());
        let one = BooleanFunction::from_anf(&AnfPoly::new(3, [0]).unwrap()).unwrap();
        assert_eq!(one.weight(), 8);
        let and = BooleanFunction::from_bits(&[false, false, false, true]).unwrap();
        assert_eq!(
            and.to_anf().monomials().copied().collect::<Vec<_>>(),
            vec![0b11]
        );
    }

    #[test]
    fn moebius_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=9 {
            for _ in 0..20 {
                let f = random(&mut rng, n);
                assert_eq!(BooleanFunction::from_anf(&f.to_anf()).unwrap(), f);
            }
        }
    }

    #[test]
    fn translate_matches_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=8 {
            let f = random(&mut rng, n);
            for b in 0..1u32 << n {
                let t = f.translate(b).unwrap();
                assert!((0..1u32 << n).all(|x| t.get(x) == f.get(x ^ b)));
            }
        }
    }

    #[test]
    fn walsh_examples() {
        let zero = BooleanFunction::zero(4).unwrap();
        let w = zero.walsh();
        assert_eq!(w.get(0), 16);
        assert!(w.values()[1..].iter().all(|&v| v == 0));
        let and = BooleanFunction::from_fn(2, |x| x == 3).unwrap();
        assert!(and.walsh().values().iter().all(|&v| v.abs() == 2));
        let ip = BooleanFunction::from_fn(4, |x| dot(x & 3, x >> 2)).unwrap();
        assert!(ip.is_bent());
        assert!(!zero.is_bent());
        assert!(!BooleanFunction::zero(3).unwrap().is_bent());
    }

    #[test]
    fn dual_of_inner_product_is_itself() {
        let f = BooleanFunction::from_fn(6, |x| dot(x & 7, x >> 3)).unwrap();
        assert_eq!(f.dual().unwrap(), f);
        assert_eq!(
            BooleanFunction::zero(4).unwrap().dual(),
            Err(Error::NotBent)
        );
    }

    #[test]
    fn derivative_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random(&mut rng, 5);
        assert!(f.derivative(0).unwrap().is_zero());
        let lin = BooleanFunction::from_fn(5, |x| dot(0b10110, x)).unwrap();
        let d = lin.derivative(0b00110).unwrap();
        assert!(d.is_constant() && d.get(0) == dot(0b10110, 0b00110));
        assert!(f.derivative(32).is_err());
        assert!(f.second_derivative(7, 7).unwrap().is_zero());
        assert_eq!(lin.linear_structures().len(), 32);
    }

    #[test]
    fn quadratic_second_derivatives_are_constant() {
        let f = BooleanFunction::from_anf(
            &AnfPoly::new(5, [0b00011, 0b01100, 0b10001, 0b00100]).unwrap(),
        )
        .unwrap();
        for a in 0..32 {
            for b in 0..32 {
                assert!(f.second_derivative(a, b).unwrap().is_constant());
            }
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(
            BooleanFunction::constant(4, true)
                .unwrap()
                .algebraic_degree(),
            0
        );
        let delta0 = BooleanFunction::from_fn(5, |x| x == 0).unwrap();
        assert_eq!(delta0.algebraic_degree(), 5);
    }

    #[test]
    fn bent_functions_have_no_linear_structures() {
        let f = BooleanFunction::from_fn(6, |x| dot(x & 7, x >> 3) ^ (x >> 3 == 5)).unwrap();
        assert!(f.is_bent());
        assert_eq!(f.linear_structures(), vec![0]);
    }

    #[test]
    fn inverse_transform_recovers_function() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = random(&mut rng, 7);
        assert_eq!(f.walsh().inverse(), f);
    }

    #[test]
    fn permute_variables_moves_monomials() {
        let f = BooleanFunction::from_anf(&AnfPoly::new(3, [0b001]).unwrap()).unwrap();
        // new variable 2 is old variable 0
        let g = f.permute_variables(&[1, 2, 0]).unwrap();
        assert_eq!(
            g.to_anf().monomials().copied().collect::<Vec<_>>(),
            vec![0b100]
        );
    }
}
