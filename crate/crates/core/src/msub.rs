//! M-subspaces: vanishing subspaces of second-order derivatives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::Subspace;
use crate::pairgraph::PairGraph;

/// Vanishing-pair graph of a Boolean function.
pub(crate) fn pair_graph(f: &BooleanFunction) -> Result<PairGraph> {
    if f.algebraic_degree() <= 2 {
        // second derivatives of a quadratic function are constant
        PairGraph::build(f.n(), |a, b| {
            !(f.get(0) ^ f.get(a) ^ f.get(b) ^ f.get(a ^ b))
        })
    } else {
        PairGraph::build(f.n(), |a, b| f.second_derivative_vanishes(a, b))
    }
}

fn check_ambient(f: &BooleanFunction, v: &Subspace) -> Result<()> {
    if v.ambient_dim() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            found: v.ambient_dim(),
        });
    }
    Ok(())
}

/// True iff `D_a D_b f = 0` for all `a, b` in `V` (tested on basis pairs).
pub fn is_msubspace(f: &BooleanFunction, v: &Subspace) -> Result<bool> {
    check_ambient(f, v)?;
    let b = v.basis();
    Ok((0..b.len()).all(|i| (i + 1..b.len()).all(|j| f.second_derivative_vanishes(b[i], b[j]))))
}

/// All `r`-dimensional M-subspaces of `f`, canonical and sorted.
pub fn msubspaces(f: &BooleanFunction, r: usize) -> Result<Vec<Subspace>> {
    if r > f.n() {
        return Err(Error::RankTooLarge { r, n: f.n() });
    }
    Ok(pair_graph(f)?.subspaces(r, None))
}

/// Number of M-subspaces per dimension `2..=n/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MSubspaceProfile {
    pub n: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl MSubspaceProfile {
    pub fn count(&self, r: usize) -> u64 {
        self.counts.get(&r).copied().unwrap_or(0)
    }
}

pub fn msubspace_profile(f: &BooleanFunction) -> Result<MSubspaceProfile> {
    let g = pair_graph(f)?;
    let counts = (2..=f.n() / 2)
        .map(|r| (r, g.subspaces(r, None).len() as u64))
        .collect();
    Ok(MSubspaceProfile { n: f.n(), counts })
}

/// An `n/2`-dimensional M-subspace if `f` lies in the completed
/// Maiorana–McFarland class, found by Dillon's criterion.
pub fn is_in_mm_sharp(f: &BooleanFunction) -> Result<Option<Subspace>> {
    if !f.is_bent() {
        return Err(Error::NotBent);
    }
    Ok(pair_graph(f)?
        .subspaces(f.n() / 2, Some(1))
        .into_iter()
        .next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{dot, span};

    #[test]
    fn lines_are_always_msubspaces() {
        let f = BooleanFunction::from_fn(4, |x| x % 3 == 0).unwrap();
        for v in 1..16 {
            assert!(is_msubspace(&f, &span(&[v], 4).unwrap()).unwrap());
        }
        assert!(is_msubspace(&f, &Subspace::zero(5)).is_err());
    }

    #[test]
    fn quadratic_count_equals_bound() {
        let f = BooleanFunction::from_fn(6, |x| dot(x & 7, x >> 3)).unwrap();
        assert_eq!(msubspaces(&f, 3).unwrap().len(), 135);
        assert!(is_in_mm_sharp(&f).unwrap().is_some());
        assert!(msubspaces(&f, 4).unwrap().is_empty());
    }

    #[test]
    fn not_bent_is_rejected() {
        let f = BooleanFunction::zero(4).unwrap();
        assert_eq!(is_in_mm_sharp(&f), Err(Error::NotBent));
    }
}
