//! Bent constructions: Maiorana–McFarland, 4-concatenation, permutation
//! extension, and certificates for lying outside the completed
//! Maiorana–McFarland class.

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::{dot, span, Subspace};
use crate::msub::{self, is_msubspace};
use crate::pairgraph::PairGraph;
use crate::vectorial::VectorialFunction;

fn require_permutation(f: &VectorialFunction) -> Result<()> {
    if f.is_permutation() {
        Ok(())
    } else {
        Err(Error::NotPermutation)
    }
}

fn require_n(f: &BooleanFunction, n: usize) -> Result<()> {
    if f.n() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        })
    }
}

/// `f(x, y) = x . pi(y) + h(y)` on `2m` variables, input index `x + 2^m y`.
pub fn mm_bent(pi: &VectorialFunction, h: &BooleanFunction) -> Result<BooleanFunction> {
    require_permutation(pi)?;
    let m = pi.m();
    require_n(h, m)?;
    let mask = (1u32 << m) - 1;
    BooleanFunction::from_fn(2 * m, |z| {
        let (x, y) = (z & mask, z >> m);
        dot(x, pi.apply(y)) ^ h.get(y)
    })
}

/// `f(x, y) = y . sigma(x) + h(x)`, same index convention as [`mm_bent`].
pub fn mm_bent_transposed(
    sigma: &VectorialFunction,
    h: &BooleanFunction,
) -> Result<BooleanFunction> {
    require_permutation(sigma)?;
    let m = sigma.m();
    require_n(h, m)?;
    let mask = (1u32 << m) - 1;
    BooleanFunction::from_fn(2 * m, |z| {
        let (x, y) = (z & mask, z >> m);
        dot(y, sigma.apply(x)) ^ h.get(x)
    })
}

/// The canonical M-subspace `F_2^m x {0_m}` inside F_2^{2m}.
pub fn canonical_subspace(m: usize) -> Result<Subspace> {
    span(&(0..m).map(|i| 1u32 << i).collect::<Vec<_>>(), 2 * m)
}

/// Four functions on the same number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcatQuadruple {
    f: [BooleanFunction; 4],
}

impl ConcatQuadruple {
    pub fn new(
        f1: BooleanFunction,
        f2: BooleanFunction,
        f3: BooleanFunction,
        f4: BooleanFunction,
    ) -> Result<Self> {
        let n = f1.n();
        for g in [&f2, &f3, &f4] {
            require_n(g, n)?;
        }
        Ok(ConcatQuadruple {
            f: [f1, f2, f3, f4],
        })
    }

    /// Recovers the quadruple from a function on `n + 2` variables.
    pub fn split(f: &BooleanFunction) -> Result<Self> {
        if f.n() < 3 {
            return Err(Error::UnsupportedDimension {
                n: f.n(),
                max: crate::gf2::MAX_N,
            });
        }
        let n = f.n() - 2;
        let part =
            |y1: u32, y2: u32| BooleanFunction::from_fn(n, |x| f.get(x | y1 << n | y2 << (n + 1)));
        Self::new(part(0, 0)?, part(0, 1)?, part(1, 0)?, part(1, 1)?)
    }

    pub fn n(&self) -> usize {
        self.f[0].n()
    }

    /// Member `i` for `i` in `1..=4`.
    pub fn get(&self, i: usize) -> &BooleanFunction {
        &self.f[i - 1]
    }

    pub fn members(&self) -> &[BooleanFunction; 4] {
        &self.f
    }

    /// `f_{i_1} + ... + f_{i_k}` for 1-based indices.
    pub fn sum(&self, idx: &[usize]) -> BooleanFunction {
        let mut acc = BooleanFunction::zero(self.n()).expect("valid n");
        for &i in idx {
            acc = &acc + self.get(i);
        }
        acc
    }
}

/// `f = f1 || f2 || f3 || f4` on `n + 2` variables.
///
/// The input index is `x + 2^n y_1 + 2^{n+1} y_2`, so `y_1` is variable
/// `n + 1` and `y_2` is variable `n + 2`, and
/// `f = f1 + y_1 (f1 + f3) + y_2 (f1 + f2) + y_1 y_2 (f1 + f2 + f3 + f4)`.
pub fn concat4(q: &ConcatQuadruple) -> Result<BooleanFunction> {
    let n = q.n();
    let mask = (1u32 << n) - 1;
    BooleanFunction::from_fn(n + 2, |z| {
        let (y1, y2) = (z >> n & 1, z >> (n + 1) & 1);
        q.f[(2 * y1 + y2) as usize].get(z & mask)
    })
}

/// True iff `f1* + f2* + f3* + f4* = 1`.
pub fn dual_bent_condition(q: &ConcatQuadruple) -> Result<bool> {
    let mut acc = BooleanFunction::zero(q.n())?;
    for (i, f) in q.f.iter().enumerate() {
        let d = f
            .dual()
            .map_err(|_| Error::QuadrupleMemberNotBent { index: i + 1 })?;
        acc = &acc + &d;
    }
    Ok(!acc.clone() == BooleanFunction::zero(q.n())?)
}

/// `D_a D_b f` for `f = concat4(q)`, assembled term by term from the
/// members' derivatives rather than from the concatenated table.
pub fn second_derivative_concat(q: &ConcatQuadruple, a: u32, b: u32) -> Result<BooleanFunction> {
    let n = q.n();
    crate::gf2::check_vector(a, n + 2)?;
    crate::gf2::check_vector(b, n + 2)?;
    let mask = (1u32 << n) - 1;
    let (ap, a1, a2) = (a & mask, a >> n & 1 == 1, a >> (n + 1) & 1 == 1);
    let (bp, b1, b2) = (b & mask, b >> n & 1 == 1, b >> (n + 1) & 1 == 1);
    let f1 = q.sum(&[1]);
    let f12 = q.sum(&[1, 2]);
    let f13 = q.sum(&[1, 3]);
    let f1234 = q.sum(&[1, 2, 3, 4]);
    let d = |g: &BooleanFunction, u: u32, x: u32| g.get(x) ^ g.get(x ^ u);
    let dd = |g: &BooleanFunction, u: u32, w: u32, x: u32| d(g, u, x) ^ d(g, u, x ^ w);
    BooleanFunction::from_fn(n + 2, |z| {
        let x = z & mask;
        let (y1, y2) = (z >> n & 1 == 1, z >> (n + 1) & 1 == 1);
        let mut v = dd(&f1, ap, bp, x);
        v ^= y1 & dd(&f13, ap, bp, x);
        v ^= y2 & dd(&f12, ap, bp, x);
        v ^= y1 & y2 & dd(&f1234, ap, bp, x);
        v ^= a1 & d(&f13, bp, x ^ ap);
        v ^= b1 & d(&f13, ap, x ^ bp);
        v ^= a2 & d(&f12, bp, x ^ ap);
        v ^= b2 & d(&f12, ap, x ^ bp);
        v ^= ((a1 & y2) ^ (a2 & y1) ^ (a1 & a2)) & d(&f1234, bp, x ^ ap);
        v ^= ((b1 & y2) ^ (b2 & y1) ^ (b1 & b2)) & d(&f1234, ap, x ^ bp);
        v ^= ((a1 & b2) ^ (b1 & a2)) & f1234.get(x ^ ap ^ bp);
        v
    })
}

/// Which structural feature of `pi` the second M-subspace is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A nonzero `s` with `D_s pi` constant.
    LinearStructure,
    /// An `(m-1)`-dimensional subspace on which `D_a D_b pi` vanishes.
    Hyperplane,
}

/// A non-canonical `m`-dimensional M-subspace of `x . pi(y)`, verified
/// before it is returned.
pub fn witness_second_msubspace(pi: &VectorialFunction, kind: WitnessKind) -> Result<Subspace> {
    require_permutation(pi)?;
    let m = pi.m();
    let vectors: Vec<u32> = match kind {
        WitnessKind::LinearStructure => {
            let s = *pi
                .linear_structures()
                .iter()
                .find(|&&s| s != 0)
                .ok_or(Error::NoLinearStructure)?;
            let v = pi.apply(0) ^ pi.apply(s);
            let w = span(&[v], m)?.orthogonal_complement();
            let mut vs: Vec<u32> = w.basis().to_vec();
            vs.push(s << m);
            vs
        }
        WitnessKind::Hyperplane => {
            if m < 2 {
                return Err(Error::NoVanishingHyperplane);
            }
            let s = pi
                .vanishing_subspaces(m - 1)?
                .into_iter()
                .next()
                .ok_or(Error::NoVanishingHyperplane)?;
            let normal = s.orthogonal_complement().basis()[0];
            let c = (1..1u32 << m)
                .find(|&c| {
                    let offset = dot(c, pi.apply(0)) ^ dot(normal, 0);
                    (0..1u32 << m).all(|y| dot(c, pi.apply(y)) ^ dot(normal, y) == offset)
                })
                .ok_or(Error::WitnessRejected)?;
            let mut vs = vec![c];
            vs.extend(s.basis().iter().map(|&b| b << m));
            vs
        }
    };
    let v = span(&vectors, 2 * m)?;
    let f = mm_bent(pi, &BooleanFunction::zero(m)?)?;
    if v.dim() != m || v == canonical_subspace(m)? || !is_msubspace(&f, &v)? {
        return Err(Error::WitnessRejected);
    }
    Ok(v)
}

/// `pi(y, y_{m+1}) = (sigma1(y) + y_{m+1}(sigma1(y) + sigma2(y)), y_{m+1})`.
///
/// Requires `D_a D_b sigma1 != D_a D_b sigma2` (as functions) for every
/// 2-dimensional `<a, b>`; the offending subspace is returned otherwise.
pub fn extend_permutation(
    sigma1: &VectorialFunction,
    sigma2: &VectorialFunction,
) -> Result<VectorialFunction> {
    require_permutation(sigma1)?;
    require_permutation(sigma2)?;
    let m = sigma1.m();
    if sigma2.m() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: sigma2.m(),
        });
    }
    let size = 1u32 << m;
    let dd = |s: &VectorialFunction, a: u32, b: u32, y: u32| {
        s.apply(y) ^ s.apply(y ^ a) ^ s.apply(y ^ b) ^ s.apply(y ^ a ^ b)
    };
    for a in 1..size {
        for b in a + 1..size {
            if (a ^ b) < b {
                continue;
            }
            if (0..size).all(|y| dd(sigma1, a, b, y) == dd(sigma2, a, b, y)) {
                return Err(Error::EqualSecondDerivatives {
                    witness: span(&[a, b], m)?,
                });
            }
        }
    }
    VectorialFunction::from_fn(m + 1, |z| {
        let (y, t) = (z & (size - 1), z >> m);
        let v = if t == 1 {
            sigma2.apply(y)
        } else {
            sigma1.apply(y)
        };
        v | t << m
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    OutsideMmSharp,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateReason {
    /// The members share no vanishing subspace of dimension `n/2 - 1`.
    NoSharedSmallMsubspace,
    /// The members share one `n/2`-dimensional M-subspace and the
    /// derivative conditions hold for every shared `(n/2 - 1)`-subspace.
    SharingConditionsHold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Exhaustive search for common vanishing subspaces of `dim`.
    SharedSearch { dim: usize, found: usize },
    /// A common vanishing subspace (listed up to a cap).
    Shared { subspace: Subspace },
    /// The unique common `n/2`-dimensional M-subspace.
    CommonMsubspace { subspace: Subspace },
    /// Condition `condition` (1..=3) has no valid `u` for this `V` and shift.
    ConditionFailed {
        subspace: Subspace,
        shift: u32,
        condition: u8,
    },
    /// Number of `(V, v)` pairs examined and number that failed.
    ConditionSummary {
        subspaces: usize,
        shifts: usize,
        failures: usize,
        only_zero_shift_fails: bool,
    },
    /// A 2-dimensional `S` inside the common M-subspace meeting the
    /// conditions for all nonzero `u` in `S`.
    ConditionSubspace { subspace: Subspace },
}

/// Result of an outside-the-class test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutsideCertificate {
    pub verdict: Verdict,
    pub reason: CertificateReason,
    pub evidence: Vec<Evidence>,
}

impl OutsideCertificate {
    pub fn is_outside(&self) -> bool {
        self.verdict == Verdict::OutsideMmSharp
    }
}

const EVIDENCE_CAP: usize = 16;

fn check_members_bent(q: &ConcatQuadruple) -> Result<()> {
    for (i, f) in q.f.iter().enumerate() {
        if !f.is_bent() {
            return Err(Error::QuadrupleMemberNotBent { index: i + 1 });
        }
    }
    Ok(())
}

fn common_graph(q: &ConcatQuadruple) -> Result<PairGraph> {
    let mut g = msub::pair_graph(&q.f[0])?;
    for f in &q.f[1..] {
        g = g.intersect(&msub::pair_graph(f)?);
    }
    Ok(g)
}

/// Certifies `concat4(q)` outside the completed MM class when the members
/// share no vanishing subspace of dimension `n/2 - 1`.
pub fn theorem53_certify(q: &ConcatQuadruple) -> Result<OutsideCertificate> {
    let n = q.n();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    if !concat4(q)?.is_bent() {
        return Err(Error::ConcatenationNotBent);
    }
    let dim = n / 2 - 1;
    let shared = common_graph(q)?.subspaces(dim, None);
    let mut evidence = vec![Evidence::SharedSearch {
        dim,
        found: shared.len(),
    }];
    evidence.extend(shared.iter().take(EVIDENCE_CAP).map(|s| Evidence::Shared {
        subspace: s.clone(),
    }));
    Ok(OutsideCertificate {
        verdict: if shared.is_empty() {
            Verdict::OutsideMmSharp
        } else {
            Verdict::Inconclusive
        },
        reason: CertificateReason::NoSharedSmallMsubspace,
        evidence,
    })
}

/// Builds `f1 = f2 = x . pi(y) + h1(y)`, `f3 = y . sigma(x) + h2(x)`,
/// `f4 = f3 + 1` and returns the concatenation with its certificate.
///
/// `pi` must have the P1 property. For `m >= 4`, `sigma` must have no
/// vanishing subspace of dimension `m - 2`; for `m <= 3` that condition is
/// unsatisfiable, and the certificate rests on the exhaustive shared-subspace
/// search alone.
pub fn theorem55_construct(
    pi: &VectorialFunction,
    sigma: &VectorialFunction,
    h1: &BooleanFunction,
    h2: &BooleanFunction,
) -> Result<(BooleanFunction, OutsideCertificate)> {
    require_permutation(pi)?;
    require_permutation(sigma)?;
    let m = pi.m();
    if sigma.m() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: sigma.m(),
        });
    }
    if let Some(witness) = pi.p1_violation() {
        return Err(Error::NotP1 { witness });
    }
    if m >= 4 {
        if let Some(witness) = sigma.vanishing_subspaces(m - 2)?.into_iter().next() {
            return Err(Error::VanishingSubspace { witness });
        }
    }
    let q = theorem55_quadruple(pi, sigma, h1, h2)?;
    let cert = theorem53_certify(&q)?;
    Ok((concat4(&q)?, cert))
}

/// The quadruple used by [`theorem55_construct`], without hypothesis checks.
pub fn theorem55_quadruple(
    pi: &VectorialFunction,
    sigma: &VectorialFunction,
    h1: &BooleanFunction,
    h2: &BooleanFunction,
) -> Result<ConcatQuadruple> {
    let f1 = mm_bent(pi, h1)?;
    let f3 = mm_bent_transposed(sigma, h2)?;
    ConcatQuadruple::new(f1.clone(), f1, f3.clone(), !f3)
}

/// Prerequisites shared by the sharing-subspace tests; returns the common
/// `n/2`-dimensional M-subspace and the common `(n/2 - 1)`-subspaces.
fn sharing_prerequisites(q: &ConcatQuadruple) -> Result<(Subspace, Vec<Subspace>)> {
    let n = q.n();
    if !n.is_multiple_of(2) {
        return Err(Error::OddDimension(n));
    }
    check_members_bent(q)?;
    let m = n / 2;
    let mut common: Option<Vec<Subspace>> = None;
    for f in &q.f {
        let ms = msub::msubspaces(f, m)?;
        common = Some(match common {
            None => ms,
            Some(prev) => prev
                .into_iter()
                .filter(|s| ms.binary_search(s).is_ok())
                .collect(),
        });
    }
    let common = common.expect("four members");
    if common.len() != 1 {
        return Err(Error::SharedSubspaceNotUnique {
            count: common.len(),
            dim: m,
        });
    }
    if !concat4(q)?.is_bent() {
        return Err(Error::ConcatenationNotBent);
    }
    let vs = common_graph(q)?.subspaces(m - 1, None);
    Ok((common.into_iter().next().expect("one subspace"), vs))
}

/// `(i, j)` pairs, 1-based: `D_u f_i(x) + D_u f_j(x + v)` must be nonzero.
type Condition = &'static [(usize, usize)];

const THEOREM_CONDITIONS: [Condition; 3] =
    [&[(1, 2), (3, 4)], &[(1, 3), (2, 4)], &[(2, 3), (1, 4)]];
const COROLLARY_CONDITIONS: [Condition; 3] = [&[(1, 2)], &[(1, 3)], &[(2, 3)]];

struct Derivatives {
    // d[i][k] = D_{u_k} f_{i+1} for the listed directions u_k
    d: Vec<Vec<BooleanFunction>>,
}

impl Derivatives {
    fn new(q: &ConcatQuadruple, dirs: &[u32]) -> Self {
        Derivatives {
            d: q.f
                .iter()
                .map(|f| dirs.iter().map(|&u| f.derivative_unchecked(u)).collect())
                .collect(),
        }
    }

    /// Whether `D_u f_i(x) + D_u f_j(x + v)` is not identically zero for
    /// direction index `k`.
    fn nonzero(&self, i: usize, j: usize, k: usize, v: u32) -> bool {
        self.d[i - 1][k] != self.d[j - 1][k].translate_unchecked(v)
    }

    fn holds(&self, cond: Condition, k: usize, v: u32) -> bool {
        cond.iter().any(|&(i, j)| self.nonzero(i, j, k, v))
    }
}

fn run_conditions(
    q: &ConcatQuadruple,
    u: Subspace,
    vs: &[Subspace],
    conditions: &[Condition; 3],
) -> OutsideCertificate {
    let n = q.n();
    let mut evidence = vec![Evidence::CommonMsubspace { subspace: u }];
    let mut failures = Vec::new();
    for v_space in vs {
        let dirs: Vec<u32> = v_space.elements().skip(1).collect();
        let ders = Derivatives::new(q, &dirs);
        for shift in 0..1u32 << n {
            for (c, cond) in conditions.iter().enumerate() {
                if !(0..dirs.len()).any(|k| ders.holds(cond, k, shift)) {
                    failures.push((v_space.clone(), shift, c as u8 + 1));
                }
            }
        }
    }
    evidence.push(Evidence::ConditionSummary {
        subspaces: vs.len(),
        shifts: 1 << n,
        failures: failures.len(),
        only_zero_shift_fails: !failures.is_empty() && failures.iter().all(|f| f.1 == 0),
    });
    let verdict = if failures.is_empty() {
        Verdict::OutsideMmSharp
    } else {
        Verdict::Inconclusive
    };
    evidence.extend(
        failures
            .into_iter()
            .take(EVIDENCE_CAP)
            .map(|(subspace, shift, condition)| Evidence::ConditionFailed {
                subspace,
                shift,
                condition,
            }),
    );
    OutsideCertificate {
        verdict,
        reason: CertificateReason::SharingConditionsHold,
        evidence,
    }
}

/// For members sharing exactly one `n/2`-dimensional M-subspace: checks the
/// three derivative conditions for every common `(n/2 - 1)`-dimensional
/// vanishing `V` and every shift `v` in F_2^n. "Nonzero" means not
/// identically zero as a function of `x`.
pub fn theorem57_check(q: &ConcatQuadruple) -> Result<OutsideCertificate> {
    let (u, vs) = sharing_prerequisites(q)?;
    Ok(run_conditions(q, u, &vs, &THEOREM_CONDITIONS))
}

fn require_sum_relation(q: &ConcatQuadruple) -> Result<()> {
    if *q.get(4) != q.sum(&[1, 2, 3]) {
        return Err(Error::Hypothesis("f4 must equal f1 + f2 + f3".into()));
    }
    Ok(())
}

/// The special case `f4 = f1 + f2 + f3`, where each condition keeps only its
/// first alternative.
pub fn theorem57_corollary_check(q: &ConcatQuadruple) -> Result<OutsideCertificate> {
    require_sum_relation(q)?;
    let (u, vs) = sharing_prerequisites(q)?;
    Ok(run_conditions(q, u, &vs, &COROLLARY_CONDITIONS))
}

/// Sufficient condition for `f4 = f1 + f2 + f3` when every common
/// `(n/2 - 1)`-subspace lies in the common M-subspace `U`: searches for a
/// 2-dimensional `S` in `U` such that the three corollary conditions hold
/// for every nonzero `u` in `S` and every shift.
pub fn theorem57_subspace_condition(q: &ConcatQuadruple) -> Result<OutsideCertificate> {
    require_sum_relation(q)?;
    let (u, vs) = sharing_prerequisites(q)?;
    if let Some(v) = vs.iter().find(|v| !v.is_subspace_of(&u)) {
        return Err(Error::Hypothesis(format!(
            "common vanishing subspace {v} is not contained in {u}"
        )));
    }
    let n = q.n();
    let u_basis = u.basis().to_vec();
    // 2-dimensional subspaces of U, via coordinates in its basis
    let candidates = crate::gf2::enumerate_subspaces(u.dim(), 2)?.map(|c| {
        let lift = |w: u32| {
            u_basis
                .iter()
                .enumerate()
                .filter(|(i, _)| w >> i & 1 == 1)
                .fold(0, |acc, (_, &b)| acc ^ b)
        };
        span(&c.basis().iter().map(|&w| lift(w)).collect::<Vec<_>>(), n).expect("vectors of U")
    });
    let mut evidence = vec![Evidence::CommonMsubspace {
        subspace: u.clone(),
    }];
    for s in candidates {
        let dirs: Vec<u32> = s.elements().skip(1).collect();
        let ders = Derivatives::new(q, &dirs);
        let good = (0..1u32 << n).all(|shift| {
            COROLLARY_CONDITIONS
                .iter()
                .all(|cond| (0..dirs.len()).all(|k| ders.holds(cond, k, shift)))
        });
        if good {
            evidence.push(Evidence::ConditionSubspace { subspace: s });
            return Ok(OutsideCertificate {
                verdict: Verdict::OutsideMmSharp,
                reason: CertificateReason::SharingConditionsHold,
                evidence,
            });
        }
    }
    Ok(OutsideCertificate {
        verdict: Verdict::Inconclusive,
        reason: CertificateReason::SharingConditionsHold,
        evidence,
    })
}
