//! Aggregated class report for a single function.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2::Subspace;
use crate::msub::{msubspace_profile, MSubspaceProfile};
use crate::pairgraph::MAX_GRAPH_N;
use crate::psclass::{self, PsSharpWitness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: usize,
    pub is_bent: bool,
    pub degree: usize,
    pub weight: u64,
    /// Absent when `n` exceeds the M-subspace search limit.
    pub msubspace_profile: Option<MSubspaceProfile>,
    /// An `n/2`-dimensional M-subspace of a bent function.
    pub mm_sharp: Option<Subspace>,
    /// Whether the completed partial spread sweep was run.
    pub ps_sharp_checked: bool,
    pub ps_sharp: Option<PsSharpWitness>,
    /// Stage name to elapsed milliseconds.
    pub timings: BTreeMap<String, u64>,
}

impl ClassReport {
    /// Copy with timings cleared, for comparing reports.
    pub fn without_timings(&self) -> ClassReport {
        ClassReport {
            timings: BTreeMap::new(),
            ..self.clone()
        }
    }

    /// Pretty-printed JSON; [`ClassReport::from_json`] reads it back.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<ClassReport> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            pos: line_col_offset(text, e.line(), e.column()),
            msg: e.to_string(),
        })
    }
}

fn line_col_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

struct Timer(BTreeMap<String, u64>);

impl Timer {
    fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0
            .insert(name.into(), start.elapsed().as_millis() as u64);
        out
    }
}

/// Runs every analysis; the completed partial spread sweep only with `sharp`.
pub fn analyze(f: &BooleanFunction, sharp: bool) -> Result<ClassReport> {
    analyze_with(f, sharp, &mut |g| psclass::is_in_ps_sharp(g))
}

/// Like [`analyze`], with the partial spread sweep supplied by the caller
/// (for checkpointing).
pub fn analyze_with(
    f: &BooleanFunction,
    sharp: bool,
    sweep: &mut dyn FnMut(&BooleanFunction) -> Result<Option<PsSharpWitness>>,
) -> Result<ClassReport> {
    let n = f.n();
    let mut timer = Timer(BTreeMap::new());
    let is_bent = timer.stage("walsh", || f.is_bent());
    if sharp {
        if !n.is_multiple_of(2) {
            return Err(Error::OddDimension(n));
        }
        if !is_bent {
            return Err(Error::NotBent);
        }
        if n > psclass::MAX_PS_N {
            return Err(Error::UnsupportedDimension {
                n,
                max: psclass::MAX_PS_N,
            });
        }
    }
    let degree = timer.stage("anf", || f.algebraic_degree());
    let msubspace_profile = if n <= MAX_GRAPH_N {
        Some(timer.stage("msubspaces", || msubspace_profile(f))?)
    } else {
        None
    };
    let mm_sharp = if is_bent && n <= MAX_GRAPH_N {
        timer.stage("mm_sharp", || crate::msub::is_in_mm_sharp(f))?
    } else {
        None
    };
    let ps_sharp = if sharp {
        timer.stage("ps_sharp", || sweep(f))?
    } else {
        None
    };
    Ok(ClassReport {
        n,
        is_bent,
        degree,
        weight: f.weight(),
        msubspace_profile,
        mm_sharp,
        ps_sharp_checked: sharp,
        ps_sharp,
        timings: timer.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::AnfPoly;

    #[test]
    fn quadratic_report() {
        let f = BooleanFunction::from_anf(&AnfPoly::parse("x1*x2 + x3*x4", None).unwrap()).unwrap();
        let r = analyze(&f, true).unwrap();
        assert!(r.is_bent);
        assert_eq!(r.degree, 2);
        assert!(r.mm_sharp.is_some());
        assert!(r.msubspace_profile.as_ref().unwrap().count(2) > 0);
        assert!(r.ps_sharp.as_ref().unwrap().certifies(&f));
        let json = r.to_json();
        let back = ClassReport::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn json_errors_carry_offsets() {
        let err = ClassReport::from_json("{\n  \"n\": x").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 9, .. }), "{err:?}");
        assert!(ClassReport::from_json("").is_err());
    }

    #[test]
    fn sharp_requires_bent_even() {
        let f = BooleanFunction::zero(4).unwrap();
        assert_eq!(analyze(&f, true), Err(Error::NotBent));
        assert_eq!(
            analyze(&BooleanFunction::zero(3).unwrap(), true),
            Err(Error::OddDimension(3))
        );
        assert!(!analyze(&f, false).unwrap().is_bent);
    }
}
