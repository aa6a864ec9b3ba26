//! Partial spread membership, the completed-class sweep over translations
//! and affine offsets, and the Desarguesian construction.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::{enumerate_subspaces, span, Subspace};
use crate::gf2m::Field;

/// Largest `n` accepted by the partial spread routines.
pub const MAX_PS_N: usize = 10;
/// Largest `n` for which a subspace mask table is built.
pub const MAX_TABLE_N: usize = 8;
/// Number of `(b, a)` pairs between sweep checkpoints.
pub const CHECKPOINT_INTERVAL: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subclass {
    /// `2^{n/2-1} + 1` subspaces, `f(0) = 1`.
    PsPlus,
    /// `2^{n/2-1}` subspaces with the origin removed, `f(0) = 0`.
    PsMinus,
}

impl Subclass {
    pub fn spread_size(self, n: usize) -> usize {
        let half = 1usize << (n / 2 - 1);
        match self {
            Subclass::PsPlus => half + 1,
            Subclass::PsMinus => half,
        }
    }

    fn weight(self, n: usize) -> u64 {
        let (big, small) = (1u64 << (n - 1), 1u64 << (n / 2 - 1));
        match self {
            Subclass::PsPlus => big + small,
            Subclass::PsMinus => big - small,
        }
    }
}

/// `n/2`-dimensional subspaces, pairwise meeting only in 0, whose indicator
/// sum is the certified function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialSpreadWitness {
    pub subclass: Subclass,
    pub subspaces: Vec<Subspace>,
}

impl PartialSpreadWitness {
    /// Sum of indicators; for `PsMinus` the origin is excluded from each.
    pub fn reconstruct(&self) -> Result<BooleanFunction> {
        let n = self
            .subspaces
            .first()
            .map(Subspace::ambient_dim)
            .ok_or_else(|| Error::Hypothesis("empty partial spread".into()))?;
        let mut bits = vec![false; 1 << n];
        for u in &self.subspaces {
            if u.ambient_dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: u.ambient_dim(),
                });
            }
            for e in u.elements().skip(1) {
                bits[e as usize] ^= true;
            }
        }
        bits[0] = (self.subclass == Subclass::PsPlus) & (self.subspaces.len() % 2 == 1);
        BooleanFunction::from_bits(&bits)
    }

    /// Checks the count, dimensions, trivial intersections and reconstruction.
    pub fn certifies(&self, f: &BooleanFunction) -> bool {
        let n = f.n();
        if !n.is_multiple_of(2) || self.subspaces.len() != self.subclass.spread_size(n) {
            return false;
        }
        if self
            .subspaces
            .iter()
            .any(|u| u.ambient_dim() != n || u.dim() != n / 2)
        {
            return false;
        }
        for (i, u) in self.subspaces.iter().enumerate() {
            for w in &self.subspaces[i + 1..] {
                if u.intersect(w).map_or(true, |x| x.dim() != 0) {
                    return false;
                }
            }
        }
        self.reconstruct().is_ok_and(|g| g == *f)
    }
}

/// `g(x) = f(x + shift) + linear . x + constant` lies in the partial spread
/// class, certified by `inner`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsSharpWitness {
    pub shift: u32,
    pub linear: u32,
    pub constant: bool,
    pub inner: PartialSpreadWitness,
}

impl PsSharpWitness {
    pub fn transformed(&self, f: &BooleanFunction) -> Result<BooleanFunction> {
        let g = f.translate(self.shift)?.add_linear(self.linear)?;
        Ok(if self.constant { !g } else { g })
    }

    pub fn certifies(&self, f: &BooleanFunction) -> bool {
        self.transformed(f).is_ok_and(|g| self.inner.certifies(&g))
    }
}

/// Nonzero-element masks of every `n/2`-dimensional subspace of F_2^n.
pub struct SubspaceMaskTable {
    n: usize,
    stride: usize,
    masks: Vec<u64>,
    subspaces: Vec<Subspace>,
}

impl SubspaceMaskTable {
    pub fn new(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        if n == 0 || n > MAX_TABLE_N {
            return Err(Error::UnsupportedDimension {
                n,
                max: MAX_TABLE_N,
            });
        }
        let stride = (1usize << n).div_ceil(64);
        let subspaces: Vec<Subspace> = enumerate_subspaces(n, n / 2)?.collect();
        let mut masks = Vec::with_capacity(subspaces.len() * stride);
        for u in &subspaces {
            masks.extend(u.punctured_mask());
        }
        Ok(SubspaceMaskTable {
            n,
            stride,
            masks,
            subspaces,
        })
    }

    /// Process-wide table for `n`, built on first use.
    pub fn shared(n: usize) -> Result<&'static SubspaceMaskTable> {
        static TABLES: [OnceLock<SubspaceMaskTable>; MAX_TABLE_N / 2] =
            [const { OnceLock::new() }; MAX_TABLE_N / 2];
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        if n == 0 || n > MAX_TABLE_N {
            return Err(Error::UnsupportedDimension {
                n,
                max: MAX_TABLE_N,
            });
        }
        let slot = &TABLES[n / 2 - 1];
        if let Some(t) = slot.get() {
            return Ok(t);
        }
        let t = SubspaceMaskTable::new(n)?;
        Ok(slot.get_or_init(|| t))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// Indices of subspaces whose nonzero elements all lie in `support`.
    fn inside(&self, support: &[u64]) -> Vec<usize> {
        self.masks
            .chunks_exact(self.stride)
            .enumerate()
            .filter(|(_, m)| m.iter().zip(support).all(|(m, s)| m & !s == 0))
            .map(|(i, _)| i)
            .collect()
    }
}

/// How candidate subspaces inside the support are found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateMethod {
    /// Scan the precomputed mask table (`n <= 8`).
    MaskTable,
    /// Depth-first search over bases drawn from the support.
    Search,
}

impl CandidateMethod {
    fn default_for(n: usize) -> Self {
        if n <= MAX_TABLE_N {
            CandidateMethod::MaskTable
        } else {
            CandidateMethod::Search
        }
    }
}

fn check_ps_n(n: usize) -> Result<()> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    if n > MAX_PS_N {
        return Err(Error::UnsupportedDimension { n, max: MAX_PS_N });
    }
    Ok(())
}

/// Support of `f` without the origin, as `u64` words.
fn punctured_support(f: &BooleanFunction) -> Vec<u64> {
    let mut s = f.words().to_vec();
    s[0] &= !1;
    s
}

fn bit(words: &[u64], x: u32) -> bool {
    words[x as usize / 64] >> (x % 64) & 1 == 1
}

/// Subspaces of dimension `r` with every nonzero element in `support`.
///
/// Bases are built in increasing order; each subspace is kept only when the
/// generating sequence is its greedy basis (each vector the least element
/// outside the span of the previous ones), so it is produced exactly once.
fn search_inside(n: usize, r: usize, support: &[u64]) -> Vec<Subspace> {
    fn rec(
        n: usize,
        r: usize,
        support: &[u64],
        basis: &mut Vec<u32>,
        elems: &mut Vec<u32>,
        out: &mut Vec<Subspace>,
    ) {
        if basis.len() == r {
            let mut sorted = elems.clone();
            sorted.sort_unstable();
            let mut greedy: Vec<u32> = Vec::with_capacity(r);
            let mut span_set = vec![0u32];
            for &e in &sorted[1..] {
                if !span_set.contains(&e) {
                    greedy.push(e);
                    let extra: Vec<u32> = span_set.iter().map(|x| x ^ e).collect();
                    span_set.extend(extra);
                }
            }
            if greedy == *basis {
                out.push(span(basis, n).expect("independent vectors"));
            }
            return;
        }
        let start = basis.last().map_or(1, |&v| v + 1);
        for v in start..1u32 << n {
            // v must be the least element of its coset and close up inside the support
            if elems.iter().skip(1).any(|&x| x ^ v < v) {
                continue;
            }
            if !elems.iter().all(|&x| bit(support, x ^ v)) {
                continue;
            }
            let len = elems.len();
            for i in 0..len {
                let e = elems[i] ^ v;
                elems.push(e);
            }
            basis.push(v);
            rec(n, r, support, basis, elems, out);
            basis.pop();
            elems.truncate(len);
        }
    }
    let mut out = Vec::new();
    rec(n, r, support, &mut Vec::new(), &mut vec![0], &mut out);
    out.sort();
    out
}

/// All `n/2`-dimensional subspaces `U` with `U \ {0}` inside the support of
/// `f`, sorted.
pub fn spread_candidates(f: &BooleanFunction, method: CandidateMethod) -> Result<Vec<Subspace>> {
    let n = f.n();
    check_ps_n(n)?;
    let support = punctured_support(f);
    Ok(match method {
        CandidateMethod::MaskTable => {
            let table = SubspaceMaskTable::shared(n)?;
            table
                .inside(&support)
                .into_iter()
                .map(|i| table.subspaces[i].clone())
                .collect()
        }
        CandidateMethod::Search => search_inside(n, n / 2, &support),
    })
}

/// Exact cover of `universe` by pairwise disjoint candidate masks, choosing
/// at each step the uncovered point with the fewest live candidates.
fn exact_cover(masks: &[Vec<u64>], universe: Vec<u64>, need: usize) -> Option<Vec<usize>> {
    fn rec(
        masks: &[Vec<u64>],
        uncovered: &[u64],
        live: &[usize],
        need: usize,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if uncovered.iter().all(|&w| w == 0) {
            return chosen.len() == need;
        }
        if chosen.len() == need || live.len() < need - chosen.len() {
            return false;
        }
        let mut best: Option<(usize, u32)> = None;
        for (wi, &w) in uncovered.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                let count = live.iter().filter(|&&c| masks[c][wi] >> b & 1 == 1).count();
                if best.is_none_or(|(c, _)| count < c) {
                    best = Some((count, (wi * 64) as u32 + b));
                }
                if count == 0 {
                    return false;
                }
            }
        }
        let p = best.expect("uncovered point").1;
        let (pw, pb) = (p as usize / 64, p % 64);
        for &c in live.iter().filter(|&&c| masks[c][pw] >> pb & 1 == 1) {
            let m = &masks[c];
            let next: Vec<usize> = live
                .iter()
                .copied()
                .filter(|&d| masks[d].iter().zip(m).all(|(x, y)| x & y == 0))
                .collect();
            let rest: Vec<u64> = uncovered.iter().zip(m).map(|(u, y)| u & !y).collect();
            chosen.push(c);
            if rec(masks, &rest, &next, need, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let live: Vec<usize> = (0..masks.len()).collect();
    let mut chosen = Vec::new();
    rec(masks, &universe, &live, need, &mut chosen).then_some(chosen)
}

fn partial_spread_with(
    f: &BooleanFunction,
    method: CandidateMethod,
) -> Result<Option<PartialSpreadWitness>> {
    let n = f.n();
    let subclass = if f.get(0) {
        Subclass::PsPlus
    } else {
        Subclass::PsMinus
    };
    if f.weight() != subclass.weight(n) {
        return Ok(None);
    }
    let candidates = spread_candidates(f, method)?;
    let need = subclass.spread_size(n);
    if candidates.len() < need {
        return Ok(None);
    }
    let masks: Vec<Vec<u64>> = candidates.iter().map(Subspace::punctured_mask).collect();
    Ok(
        exact_cover(&masks, punctured_support(f), need).map(|idx| PartialSpreadWitness {
            subclass,
            subspaces: idx.into_iter().map(|i| candidates[i].clone()).collect(),
        }),
    )
}

/// Partial spread membership: the subclass follows from `f(0)`, candidates
/// are the `n/2`-subspaces inside the support, and a witness is a set of
/// `s` candidates meeting pairwise only in 0.
pub fn is_partial_spread(f: &BooleanFunction) -> Result<Option<PartialSpreadWitness>> {
    check_ps_n(f.n())?;
    if !f.is_bent() {
        return Err(Error::NotBent);
    }
    partial_spread_with(f, CandidateMethod::default_for(f.n()))
}

/// Hex SHA-256 of the function's truth-table text.
pub fn function_digest(f: &BooleanFunction) -> String {
    hex::encode(Sha256::digest(crate::format::tt_to_string(f).as_bytes()))
}

/// Resumable state of a completed-class sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCheckpoint {
    pub digest: String,
    pub n: usize,
    /// Next `(b, a)` pair index, `b * 2^n + a`.
    pub next: u64,
    pub total: u64,
    pub complete: bool,
    pub witness: Option<PsSharpWitness>,
}

impl SweepCheckpoint {
    pub fn start(f: &BooleanFunction) -> Self {
        SweepCheckpoint {
            digest: function_digest(f),
            n: f.n(),
            next: 0,
            total: 1u64 << (2 * f.n()),
            complete: false,
            witness: None,
        }
    }
}

fn try_pair(f: &BooleanFunction, k: u64, method: CandidateMethod) -> Option<PsSharpWitness> {
    let n = f.n();
    let shift = (k >> n) as u32;
    let linear = (k & ((1 << n) - 1)) as u32;
    let g = f
        .translate_unchecked(shift)
        .add_linear(linear)
        .expect("vector in range");
    for constant in [false, true] {
        let h = if constant { !g.clone() } else { g.clone() };
        if let Some(inner) = partial_spread_with(&h, method).expect("validated dimension") {
            return Some(PsSharpWitness {
                shift,
                linear,
                constant,
                inner,
            });
        }
    }
    None
}

/// Sweeps `g(x) = f(x + b) + a . x + c` over all `b` (outer) and `a` (inner),
/// trying both constants, and reports the first partial spread witness.
///
/// `on_checkpoint` is called every [`CHECKPOINT_INTERVAL`] pairs and once
/// at the end. A `resume` state must carry the digest of `f`.
pub fn ps_sharp_sweep(
    f: &BooleanFunction,
    resume: Option<SweepCheckpoint>,
    mut on_checkpoint: impl FnMut(&SweepCheckpoint),
) -> Result<SweepCheckpoint> {
    check_ps_n(f.n())?;
    if !f.is_bent() {
        return Err(Error::NotBent);
    }
    let mut state = match resume {
        Some(s) => {
            if s.digest != function_digest(f) || s.n != f.n() {
                return Err(Error::CheckpointMismatch);
            }
            s
        }
        None => SweepCheckpoint::start(f),
    };
    let method = CandidateMethod::default_for(f.n());
    if method == CandidateMethod::MaskTable {
        SubspaceMaskTable::shared(f.n())?;
    }
    while !state.complete {
        let end = (state.next + CHECKPOINT_INTERVAL).min(state.total);
        let found = (state.next..end)
            .into_par_iter()
            .find_map_first(|k| try_pair(f, k, method));
        state.next = end;
        if found.is_some() || end == state.total {
            state.complete = true;
            state.witness = found;
        }
        on_checkpoint(&state);
    }
    Ok(state)
}

/// Membership in the completed partial spread class.
pub fn is_in_ps_sharp(f: &BooleanFunction) -> Result<Option<PsSharpWitness>> {
    Ok(ps_sharp_sweep(f, None, |_| {})?.witness)
}

/// `f(x, y) = h(x / y)` on GF(2^m) x GF(2^m) with `x / 0 = 0`, input index
/// `x + 2^m y`, over the default field.
pub fn ps_ap(m: usize, h: &BooleanFunction) -> Result<BooleanFunction> {
    let field = Field::new(m)?;
    if h.n() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: h.n(),
        });
    }
    if !h.is_balanced() {
        return Err(Error::Unbalanced);
    }
    if h.get(0) {
        return Err(Error::NonzeroAtOrigin);
    }
    let mask = (1u32 << m) - 1;
    BooleanFunction::from_fn(2 * m, |z| {
        let (x, y) = (z & mask, z >> m);
        h.get(field.inv(y).map_or(0, |yi| field.mul(x, yi)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace_fn(m: usize) -> BooleanFunction {
        let field = Field::new(m).unwrap();
        BooleanFunction::from_fn(m, |x| field.trace(x)).unwrap()
    }

    fn inner_product4() -> BooleanFunction {
        BooleanFunction::from_fn(4, |x| crate::gf2::dot(x & 3, x >> 2)).unwrap()
    }

    #[test]
    fn ps_ap_is_ps_minus() {
        let f = ps_ap(3, &trace_fn(3)).unwrap();
        assert!(f.is_bent());
        assert_eq!(f.weight(), 32 - 4);
        let w = is_partial_spread(&f).unwrap().unwrap();
        assert_eq!(w.subclass, Subclass::PsMinus);
        assert_eq!(w.subspaces.len(), 4);
        assert!(w.certifies(&f));
    }

    #[test]
    fn complement_of_ps_ap_is_ps_plus() {
        let f = !ps_ap(2, &trace_fn(2)).unwrap();
        let w = is_partial_spread(&f).unwrap().unwrap();
        assert_eq!(w.subclass, Subclass::PsPlus);
        assert_eq!(w.subspaces.len(), 3);
        assert!(w.certifies(&f));
    }

    #[test]
    fn ps_ap_rejects_bad_h() {
        let unbalanced = BooleanFunction::from_fn(3, |x| x == 1).unwrap();
        assert_eq!(ps_ap(3, &unbalanced), Err(Error::Unbalanced));
        assert_eq!(ps_ap(3, &!trace_fn(3)), Err(Error::NonzeroAtOrigin));
    }

    #[test]
    fn not_bent_is_rejected() {
        let f = BooleanFunction::constant(4, true).unwrap();
        assert_eq!(is_partial_spread(&f), Err(Error::NotBent));
        assert_eq!(is_in_ps_sharp(&f), Err(Error::NotBent));
        let odd = BooleanFunction::zero(5).unwrap();
        assert_eq!(is_partial_spread(&odd), Err(Error::OddDimension(5)));
    }

    #[test]
    fn table_and_search_agree() {
        for n in [4usize, 6] {
            let f = ps_ap(n / 2, &trace_fn(n / 2)).unwrap();
            for b in [0u32, 3, 5] {
                let g = f.translate(b).unwrap();
                assert_eq!(
                    spread_candidates(&g, CandidateMethod::MaskTable).unwrap(),
                    spread_candidates(&g, CandidateMethod::Search).unwrap()
                );
            }
        }
        assert_eq!(SubspaceMaskTable::shared(6).unwrap().len(), 1395);
    }

    #[test]
    fn sharp_witness_for_ps_function_is_trivial() {
        let f = ps_ap(2, &trace_fn(2)).unwrap();
        let w = is_in_ps_sharp(&f).unwrap().unwrap();
        assert_eq!((w.shift, w.linear, w.constant), (0, 0, false));
        // every bent function on four variables lies in the completed class
        let g = inner_product4();
        let w = is_in_ps_sharp(&g).unwrap().unwrap();
        assert!(w.certifies(&g));
    }

    #[test]
    fn sweep_resumes() {
        let f = inner_product4();
        let full = ps_sharp_sweep(&f, None, |_| {}).unwrap();
        let mut partial = SweepCheckpoint::start(&f);
        partial.next = full.next.saturating_sub(1);
        let resumed = ps_sharp_sweep(&f, Some(partial.clone()), |_| {}).unwrap();
        assert!(resumed.complete);
        let other = BooleanFunction::from_fn(4, |x| x.count_ones() >= 3 || x == 3).unwrap();
        partial.digest = function_digest(&other);
        assert_eq!(
            ps_sharp_sweep(&f, Some(partial), |_| {}),
            Err(Error::CheckpointMismatch)
        );
    }
}
