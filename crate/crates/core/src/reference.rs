//! Brute-force versions of the main algorithms, written for clarity rather
//! than speed. Tests compare the optimized routines against these.

use crate::boolfun::BooleanFunction;
use crate::gf2::{dot, enumerate_subspaces, span, Subspace};
use crate::vectorial::VectorialFunction;

/// `W_f(a) = sum_x (-1)^{f(x) + a.x}` by direct summation.
pub fn walsh(f: &BooleanFunction) -> Vec<i32> {
    let size = 1u32 << f.n();
    (0..size)
        .map(|a| {
            (0..size)
                .map(|x| if f.get(x) ^ dot(a, x) { -1 } else { 1 })
                .sum()
        })
        .collect()
}

/// ANF coefficients `c_u = sum_{x subset of u} f(x)`.
pub fn anf_coefficients(f: &BooleanFunction) -> Vec<bool> {
    let size = 1u32 << f.n();
    (0..size)
        .map(|u| {
            (0..size)
                .filter(|&x| x & u == x)
                .fold(false, |acc, x| acc ^ f.get(x))
        })
        .collect()
}

/// `D_a D_b f(x)` evaluated from its definition.
pub fn second_derivative(f: &BooleanFunction, a: u32, b: u32) -> BooleanFunction {
    BooleanFunction::from_fn(f.n(), |x| {
        f.get(x) ^ f.get(x ^ a) ^ f.get(x ^ b) ^ f.get(x ^ a ^ b)
    })
    .expect("same n")
}

/// Tests `D_a D_b f = 0` for every pair of elements of `v`.
pub fn is_msubspace_all_pairs(f: &BooleanFunction, v: &Subspace) -> bool {
    let elems: Vec<u32> = v.elements().collect();
    elems
        .iter()
        .all(|&a| elems.iter().all(|&b| second_derivative(f, a, b).is_zero()))
}

/// Every `r`-subspace of F_2^n, filtered by [`is_msubspace_all_pairs`].
pub fn msubspaces(f: &BooleanFunction, r: usize) -> Vec<Subspace> {
    enumerate_subspaces(f.n(), r)
        .expect("valid rank")
        .filter(|v| is_msubspace_all_pairs(f, v))
        .collect()
}

/// Number of 4-element sets `{x1, x2, x3, x4}` with `x1 + x2 + x3 + x4 = 0`
/// and `F(x1) + F(x2) + F(x3) + F(x4) = 0`.
pub fn vanishing_flats(f: &VectorialFunction) -> u64 {
    let size = 1u32 << f.m();
    let mut count = 0;
    for x1 in 0..size {
        for x2 in x1 + 1..size {
            for x3 in x2 + 1..size {
                let x4 = x1 ^ x2 ^ x3;
                if x4 > x3 && f.apply(x1) ^ f.apply(x2) ^ f.apply(x3) ^ f.apply(x4) == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Largest number of solutions of `F(x) + F(x + a) = b` over `a != 0`.
pub fn differential_uniformity(f: &VectorialFunction) -> usize {
    let size = 1u32 << f.m();
    let mut best = 0;
    for a in 1..size {
        let mut counts = vec![0usize; size as usize];
        for x in 0..size {
            counts[(f.apply(x) ^ f.apply(x ^ a)) as usize] += 1;
        }
        best = best.max(counts.into_iter().max().unwrap_or(0));
    }
    best
}

/// All cliques of size `k` in the graph on `vertices` given by `adj`, each
/// listed once with increasing vertex order.
fn cliques(vertices: &[u32], k: usize, adj: &dyn Fn(u32, u32) -> bool) -> Vec<Vec<u32>> {
    fn rec(
        cand: &[u32],
        k: usize,
        adj: &dyn Fn(u32, u32) -> bool,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            if cand.len() - i < k - cur.len() {
                break;
            }
            let next: Vec<u32> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&w| adj(v, w))
                .collect();
            cur.push(v);
            rec(&next, k, adj, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vertices, k, adj, &mut Vec::new(), &mut out);
    out
}

/// Outcome of the literal clique-based partial spread test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralPartialSpread {
    /// Cliques of size `2^{n/2}` in the support graph that are subspaces.
    pub candidates: Vec<Subspace>,
    pub member: bool,
}

/// Partial spread test by cliques of the support graph: vertices are the
/// support of `f` (with 0 added when `f(0) = 0`), `x ~ y` iff
/// `f(x + y) = 1`; cliques of size `2^{n/2}` that are subspaces become
/// vertices of a second graph joined when they meet only in 0, which must
/// contain a clique of the subclass size.
pub fn partial_spread_literal(f: &BooleanFunction) -> LiteralPartialSpread {
    let n = f.n();
    let half = 1usize << (n / 2 - 1);
    let s = if f.get(0) { half + 1 } else { half };
    let vertices: Vec<u32> = (0..1u32 << n).filter(|&x| x == 0 || f.get(x)).collect();
    let big = cliques(&vertices, 1 << (n / 2), &|x, y| f.get(x ^ y));
    let mut candidates: Vec<Subspace> = big
        .into_iter()
        .filter(|c| c.iter().all(|&x| c.iter().all(|&y| c.contains(&(x ^ y)))))
        .map(|c| span(&c, n).expect("vectors in range"))
        .collect();
    candidates.sort();
    let member = if candidates.len() < s {
        false
    } else {
        let idx: Vec<u32> = (0..candidates.len() as u32).collect();
        let trivial = |i: u32, j: u32| {
            candidates[i as usize]
                .intersect(&candidates[j as usize])
                .expect("same n")
                .dim()
                == 0
        };
        !cliques(&idx, s, &trivial).is_empty()
    };
    LiteralPartialSpread { candidates, member }
}
