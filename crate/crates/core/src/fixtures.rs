//! Reference data shipped with the crate, stored as text in `fixtures/`.
//!
//! The eight-variable functions come with the quadruples they are built
//! from. Two of them only match their stored ANF after an adjustment, kept
//! here as data: [`DELTA0_RELABEL`] and
//! [`FixtureSet::transposed_quadruple_matching`].

use std::collections::BTreeMap;
use std::path::Path;

use crate::anf::AnfPoly;
use crate::boolfun::BooleanFunction;
use crate::construct::{concat4, mm_bent, mm_bent_transposed, ConcatQuadruple};
use crate::error::{Error, Result};
use crate::format::{parse_subspace, parse_vf};
use crate::gf2::Subspace;
use crate::vectorial::VectorialFunction;

/// File names and built-in contents of every fixture.
pub const FILES: [(&str, &str); 13] = [
    ("apn_perm_3.vf", include_str!("../fixtures/apn_perm_3.vf")),
    (
        "apn_perm_3_alt.vf",
        include_str!("../fixtures/apn_perm_3_alt.vf"),
    ),
    (
        "two_msubspaces_perm_5.vf",
        include_str!("../fixtures/two_msubspaces_perm_5.vf"),
    ),
    (
        "two_msubspaces_extra_10.subspace",
        include_str!("../fixtures/two_msubspaces_extra_10.subspace"),
    ),
    (
        "p2_plane_perm_5.vf",
        include_str!("../fixtures/p2_plane_perm_5.vf"),
    ),
    (
        "p2_plane_5.subspace",
        include_str!("../fixtures/p2_plane_5.subspace"),
    ),
    (
        "p2_solid_perm_5.vf",
        include_str!("../fixtures/p2_solid_perm_5.vf"),
    ),
    (
        "p2_solid_5.subspace",
        include_str!("../fixtures/p2_solid_5.subspace"),
    ),
    (
        "delta0_concat_8.anf",
        include_str!("../fixtures/delta0_concat_8.anf"),
    ),
    (
        "transposed_concat_8.anf",
        include_str!("../fixtures/transposed_concat_8.anf"),
    ),
    (
        "transposed_concat_h.anf",
        include_str!("../fixtures/transposed_concat_h.anf"),
    ),
    (
        "frobenius_members_6.anf",
        include_str!("../fixtures/frobenius_members_6.anf"),
    ),
    (
        "frobenius_concat_8.anf",
        include_str!("../fixtures/frobenius_concat_8.anf"),
    ),
];

/// Variable relabeling (new variable `i` is old variable `DELTA0_RELABEL[i]`)
/// that maps `concat4` of the delta-0 quadruple onto `delta0_concat_8.anf`.
pub const DELTA0_RELABEL: [usize; 8] = [0, 1, 2, 5, 3, 4, 6, 7];

/// Non-comment lines of a multi-line fixture.
fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn anf_lines(text: &str, n: usize) -> Result<Vec<BooleanFunction>> {
    lines(text)
        .map(|l| BooleanFunction::from_anf(&AnfPoly::parse(l, Some(n))?))
        .collect()
}

fn anf8(text: &str) -> Result<AnfPoly> {
    AnfPoly::parse(text, Some(8))
}

/// `delta_0(x)` on the first `m` of `2m` variables: 1 iff `x = 0`.
pub fn delta0(m: usize) -> Result<BooleanFunction> {
    BooleanFunction::from_fn(2 * m, |z| z & ((1 << m) - 1) == 0)
}

/// A named eight-variable function: as built from its quadruple and as
/// stored.
pub struct ConcatFixture {
    pub name: &'static str,
    pub built: BooleanFunction,
    pub stored: AnfPoly,
}

/// Fixture texts keyed by file name.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    texts: BTreeMap<&'static str, String>,
}

impl Default for FixtureSet {
    fn default() -> Self {
        Self::builtin()
    }
}

impl FixtureSet {
    pub fn builtin() -> Self {
        FixtureSet {
            texts: FILES.iter().map(|&(k, v)| (k, v.to_string())).collect(),
        }
    }

    /// Built-in texts, replaced by same-named files found in `dir`.
    pub fn with_overrides(dir: &Path) -> std::io::Result<Self> {
        let mut set = Self::builtin();
        for (name, text) in set.texts.iter_mut() {
            let path = dir.join(name);
            if path.exists() {
                *text = std::fs::read_to_string(path)?;
            }
        }
        Ok(set)
    }

    pub fn text(&self, name: &str) -> Result<&str> {
        self.texts
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::Hypothesis(format!("unknown fixture {name}")))
    }

    pub fn apn_perm_3(&self) -> Result<VectorialFunction> {
        parse_vf(self.text("apn_perm_3.vf")?)
    }

    pub fn apn_perm_3_alt(&self) -> Result<VectorialFunction> {
        parse_vf(self.text("apn_perm_3_alt.vf")?)
    }

    pub fn two_msubspaces_perm(&self) -> Result<VectorialFunction> {
        parse_vf(self.text("two_msubspaces_perm_5.vf")?)
    }

    pub fn two_msubspaces_extra(&self) -> Result<Subspace> {
        parse_subspace(self.text("two_msubspaces_extra_10.subspace")?, Some(10))
    }

    pub fn p2_plane_perm(&self) -> Result<VectorialFunction> {
        parse_vf(self.text("p2_plane_perm_5.vf")?)
    }

    pub fn p2_plane(&self) -> Result<Subspace> {
        parse_subspace(self.text("p2_plane_5.subspace")?, Some(5))
    }

    pub fn p2_solid_perm(&self) -> Result<VectorialFunction> {
        parse_vf(self.text("p2_solid_perm_5.vf")?)
    }

    pub fn p2_solid(&self) -> Result<Subspace> {
        parse_subspace(self.text("p2_solid_5.subspace")?, Some(5))
    }

    pub fn delta0_stored(&self) -> Result<AnfPoly> {
        anf8(self.text("delta0_concat_8.anf")?)
    }

    pub fn transposed_stored(&self) -> Result<AnfPoly> {
        anf8(self.text("transposed_concat_8.anf")?)
    }

    pub fn frobenius_stored(&self) -> Result<AnfPoly> {
        anf8(self.text("frobenius_concat_8.anf")?)
    }

    /// `x.y + delta_0(x)`, `x.pi(y) + delta_0(x)`, `x.y`, `x.pi(y) + 1`.
    pub fn delta0_quadruple(&self) -> Result<ConcatQuadruple> {
        let pi = self.apn_perm_3()?;
        let id = VectorialFunction::identity(3)?;
        let zero = BooleanFunction::zero(3)?;
        let d = delta0(3)?;
        let xy = mm_bent(&id, &zero)?;
        let xpi = mm_bent(&pi, &zero)?;
        ConcatQuadruple::new(&xy + &d, &xpi + &d, xy, !xpi)
    }

    /// `concat4` of the delta-0 quadruple, relabeled by [`DELTA0_RELABEL`].
    pub fn delta0_concat(&self) -> Result<BooleanFunction> {
        concat4(&self.delta0_quadruple()?)?.permute_variables(&DELTA0_RELABEL)
    }

    /// `(h1, h2)` on three variables.
    pub fn transposed_h(&self) -> Result<(BooleanFunction, BooleanFunction)> {
        let hs = anf_lines(self.text("transposed_concat_h.anf")?, 3)?;
        match <[BooleanFunction; 2]>::try_from(hs) {
            Ok([h1, h2]) => Ok((h1, h2)),
            Err(v) => Err(Error::Hypothesis(format!(
                "expected 2 functions, found {}",
                v.len()
            ))),
        }
    }

    /// `f1 = f2 = x.pi(y) + h1(y)`, `f3 = f4 + 1 = y.sigma(x) + h2(x)` with
    /// `pi` from `apn_perm_3.vf` and `sigma` from `apn_perm_3_alt.vf`.
    pub fn transposed_quadruple(&self) -> Result<ConcatQuadruple> {
        let (h1, h2) = self.transposed_h()?;
        crate::construct::theorem55_quadruple(
            &self.apn_perm_3()?,
            &self.apn_perm_3_alt()?,
            &h1,
            &h2,
        )
    }

    /// The quadruple that reproduces `transposed_concat_8.anf`: `sigma` is
    /// taken equal to `pi` and the roles of `f3` and `f4` are exchanged, so
    /// `f3 = y.pi(x) + h2(x) + 1` and `f4 = y.pi(x) + h2(x)`.
    pub fn transposed_quadruple_matching(&self) -> Result<ConcatQuadruple> {
        let (h1, h2) = self.transposed_h()?;
        let pi = self.apn_perm_3()?;
        let f1 = mm_bent(&pi, &h1)?;
        let f4 = mm_bent_transposed(&pi, &h2)?;
        ConcatQuadruple::new(f1.clone(), f1, !f4.clone(), f4)
    }

    pub fn frobenius_quadruple(&self) -> Result<ConcatQuadruple> {
        let fs = anf_lines(self.text("frobenius_members_6.anf")?, 6)?;
        match <[BooleanFunction; 4]>::try_from(fs) {
            Ok([f1, f2, f3, f4]) => ConcatQuadruple::new(f1, f2, f3, f4),
            Err(v) => Err(Error::Hypothesis(format!(
                "expected 4 functions, found {}",
                v.len()
            ))),
        }
    }

    /// The three eight-variable functions, built with the adjustments that
    /// make them match, next to their stored ANF.
    pub fn concat_fixtures(&self) -> Result<Vec<ConcatFixture>> {
        Ok(vec![
            ConcatFixture {
                name: "delta0_concat",
                built: self.delta0_concat()?,
                stored: self.delta0_stored()?,
            },
            ConcatFixture {
                name: "transposed_concat",
                built: concat4(&self.transposed_quadruple_matching()?)?,
                stored: self.transposed_stored()?,
            },
            ConcatFixture {
                name: "frobenius_concat",
                built: concat4(&self.frobenius_quadruple()?)?,
                stored: self.frobenius_stored()?,
            },
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_parse() {
        let fx = FixtureSet::builtin();
        assert_eq!(fx.apn_perm_3().unwrap().m(), 3);
        assert_eq!(fx.apn_perm_3_alt().unwrap().m(), 3);
        assert_eq!(fx.two_msubspaces_perm().unwrap().m(), 5);
        assert_eq!(fx.two_msubspaces_extra().unwrap().dim(), 5);
        assert_eq!(fx.p2_plane().unwrap().dim(), 2);
        assert_eq!(fx.p2_solid().unwrap().dim(), 3);
        assert!(fx.p2_plane_perm().unwrap().is_permutation());
        assert!(fx.p2_solid_perm().unwrap().is_permutation());
        assert_eq!(fx.delta0_stored().unwrap().len(), 26);
        assert_eq!(fx.transposed_stored().unwrap().len(), 39);
        assert_eq!(fx.frobenius_stored().unwrap().len(), 39);
    }

    #[test]
    fn built_functions_match_stored() {
        for c in FixtureSet::builtin().concat_fixtures().unwrap() {
            assert_eq!(c.built.to_anf(), c.stored, "{}", c.name);
        }
    }

    #[test]
    fn transposed_as_listed_does_not_match() {
        let fx = FixtureSet::builtin();
        let f = concat4(&fx.transposed_quadruple().unwrap()).unwrap();
        assert_ne!(f.to_anf(), fx.transposed_stored().unwrap());
        assert_eq!(
            fx.apn_perm_3_alt().unwrap(),
            fx.apn_perm_3().unwrap().inverse().unwrap()
        );
    }
}
