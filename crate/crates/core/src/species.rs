//! Reality of lines, tritangent planes and double-sixes under a complex conjugation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::blowup::{labeled_lines, CubicSurface, LabeledLines, SixPoints};
use crate::config::group::{AutomorphismGroup, Perm};
use crate::config::{Configurations, DoubleSix, Trio};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement as Fe};
use crate::forms::tritangent_plane;
use crate::projgeom::ProjPoint;

/// `Q(i)`, the field of the non-rational fixtures.
pub fn gaussian_field() -> FieldDescriptor {
    FieldDescriptor::rationals()
        .extend(vec![Fe::one(), Fe::zero(), Fe::one()], "i")
        .expect("x² + 1 is irreducible")
}

pub fn gaussian(k: &FieldDescriptor, re: i64, im: i64) -> Fe {
    Fe::from_coeffs(k, vec![Fe::from_i64(re), Fe::from_i64(im)])
}

#[derive(Clone, Debug)]
pub struct ConjugationAction {
    /// The quadratic level being conjugated, `None` for the identity on `Q`.
    pub level: Option<FieldDescriptor>,
    pub perm: Perm,
    /// Image of each blow-up point under conjugation.
    pub point_perm: [usize; 6],
}

impl ConjugationAction {
    pub fn conj(&self, x: &Fe) -> Fe {
        match &self.level {
            Some(l) => x.conjugate(l),
            None => x.clone(),
        }
    }
}

pub fn conjugation_action(surface: &CubicSurface, lines: &LabeledLines) -> Result<ConjugationAction> {
    let field = surface.field();
    let level = match field.depth() {
        0 => None,
        1 if field.level_degree() == 2 => Some(field.clone()),
        _ => return Err(Error::InvalidInput("conjugation needs Q or a quadratic extension".into())),
    };
    let conj = |x: &Fe| match &level {
        Some(l) => x.conjugate(l),
        None => x.clone(),
    };
    let pts = &surface.source.points;
    let mut point_perm = [0; 6];
    for (i, p) in pts.iter().enumerate() {
        let q = p.map(conj);
        point_perm[i] = pts.iter().position(|r| *r == q).ok_or(Error::NotStable)?;
    }
    let mut perm = [0u8; 27];
    for (k, l) in lines.lines.iter().enumerate() {
        let m = l.map(conj);
        let hits: Vec<usize> = (0..27).filter(|&j| lines.line(j) == &m).collect();
        match hits.as_slice() {
            [j] => perm[k] = *j as u8,
            _ => return Err(Error::NotStable),
        }
    }
    let perm = Perm(perm);
    if !perm.is_involution() && !perm.is_identity() || !perm.preserves_incidence() {
        return Err(Error::NotStable);
    }
    Ok(ConjugationAction { level, perm, point_perm })
}

/// Reality of one double-six under an involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DoubleSixReality {
    /// Both sixes fixed setwise; `(fixed lines, swapped pairs)` of each six.
    RealSixes([(usize, usize); 2]),
    /// The two sixes are exchanged.
    ConjugateSixes,
    NotFixed,
}

pub fn six_structure(six: &[u8; 6], g: &Perm) -> Option<(usize, usize)> {
    if !six.iter().all(|&l| six.contains(&g.apply(l))) {
        return None;
    }
    let fixed = six.iter().filter(|&&l| g.apply(l) == l).count();
    Some((fixed, (6 - fixed) / 2))
}

pub fn double_six_reality(ds: &DoubleSix, g: &Perm) -> DoubleSixReality {
    let img = ds.map(g);
    if img != *ds {
        return DoubleSixReality::NotFixed;
    }
    match (six_structure(&ds.first, g), six_structure(&ds.second, g)) {
        (Some(a), Some(b)) => DoubleSixReality::RealSixes([a.min(b), a.max(b)]),
        _ => DoubleSixReality::ConjugateSixes,
    }
}

/// Counts of each reality type over the 36 double-sixes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DoubleSixProfile {
    /// Keyed by the structure of the two sixes.
    pub real_sixes: BTreeMap<String, usize>,
    pub conjugate_sixes: usize,
    pub not_fixed: usize,
}

impl DoubleSixProfile {
    pub fn of(g: &Perm, configs: &Configurations) -> Self {
        let mut p = DoubleSixProfile::default();
        for ds in &configs.double_sixes {
            match double_six_reality(ds, g) {
                DoubleSixReality::RealSixes([a, b]) => {
                    let key = if a == b {
                        format!("{} real + {} pairs", a.0, a.1)
                    } else {
                        format!("{} real + {} pairs / {} real + {} pairs", a.0, a.1, b.0, b.1)
                    };
                    *p.real_sixes.entry(key).or_insert(0) += 1;
                }
                DoubleSixReality::ConjugateSixes => p.conjugate_sixes += 1,
                DoubleSixReality::NotFixed => p.not_fixed += 1,
            }
        }
        p
    }

    pub fn real_double_sixes(&self) -> usize {
        self.real_sixes.values().sum()
    }
}

/// Everything an involution of the 27 labels says about reality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RealityProfile {
    pub real_lines: usize,
    pub real_tritangents: usize,
    pub double_sixes: DoubleSixProfile,
}

impl RealityProfile {
    pub fn of(g: &Perm, configs: &Configurations) -> Self {
        RealityProfile {
            real_lines: g.fixed_points(),
            real_tritangents: configs.tritangents.iter().filter(|t| trio_fixed(t, g)).count(),
            double_sixes: DoubleSixProfile::of(g, configs),
        }
    }
}

pub fn trio_fixed(t: &Trio, g: &Perm) -> bool {
    t.iter().all(|&l| t.contains(&g.apply(l)))
}

/// The five species: real lines, real tritangents, and the double-six profile.
pub fn species_table() -> Vec<(u8, RealityProfile)> {
    let p = |lines, tri, real: &[(&str, usize)], conj, not| RealityProfile {
        real_lines: lines,
        real_tritangents: tri,
        double_sixes: DoubleSixProfile {
            real_sixes: real.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            conjugate_sixes: conj,
            not_fixed: not,
        },
    };
    vec![
        (1, p(27, 45, &[("6 real + 0 pairs", 36)], 0, 0)),
        (2, p(15, 15, &[("4 real + 1 pairs", 15)], 1, 20)),
        (3, p(7, 5, &[("2 real + 2 pairs", 6)], 2, 28)),
        (4, p(3, 7, &[("0 real + 3 pairs", 1)], 3, 32)),
        // only "no real double-sixes" is stated here; 12 and 24 come from the involution census
        (5, p(3, 13, &[], 12, 24)),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct SpeciesReport {
    pub species: u8,
    pub profile: RealityProfile,
    /// Tritangent planes whose covector is fixed by conjugation.
    pub real_planes: usize,
    pub in_group: bool,
}

/// Match a profile against the table; the species is the one with equal
/// line and tritangent counts, and its double-six profile must agree.
pub fn species_of(profile: &RealityProfile) -> Result<u8> {
    let table = species_table();
    let (k, expected) = table
        .iter()
        .find(|(_, e)| (e.real_lines, e.real_tritangents) == (profile.real_lines, profile.real_tritangents))
        .ok_or_else(|| Error::UnknownProfile(format!("{} lines, {} tritangents", profile.real_lines, profile.real_tritangents)))?;
    let ds = &profile.double_sixes;
    if ds != &expected.double_sixes {
        return Err(Error::UnknownProfile(format!("double-six profile {ds:?} for species {k}")));
    }
    Ok(*k)
}

pub fn classify_species(
    action: &ConjugationAction,
    lines: &LabeledLines,
    configs: &Configurations,
    group: &AutomorphismGroup,
) -> Result<SpeciesReport> {
    let profile = RealityProfile::of(&action.perm, configs);
    let real_planes = configs
        .tritangents
        .iter()
        .map(|t| tritangent_plane(t, lines).map(|h| h.map(|x| action.conj(x)) == h))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    let species = species_of(&profile)?;
    Ok(SpeciesReport { species, profile, real_planes, in_group: group.contains(&action.perm) })
}

/// Six points over `Q(i)`, given as `(re, im)` pairs per coordinate.
fn gaussian_points(pts: &[[(i64, i64); 3]; 6]) -> SixPoints {
    let k = gaussian_field();
    SixPoints::new(
        pts.iter()
            .map(|p| ProjPoint::new(p.iter().map(|&(a, b)| gaussian(&k, a, b)).collect()).unwrap())
            .collect(),
    )
    .unwrap()
}

/// Six points whose surface has species `k`: `6 − 2(k−1)` rational points
/// and `k − 1` conjugate pairs.
pub fn construct_species_fixture(k: u8) -> Result<SixPoints> {
    let r = |a| (a, 0);
    let pts = match k {
        1 => return Ok(SixPoints::fixture()),
        2 => [
            [r(1), r(0), r(0)],
            [r(0), r(1), r(0)],
            [r(0), r(0), r(1)],
            [r(1), r(1), r(1)],
            [r(1), (1, 1), (-3, 2)],
            [r(1), (1, -1), (-3, -2)],
        ],
        3 => [
            [r(1), r(0), r(0)],
            [r(0), r(1), r(0)],
            [r(1), (1, 1), (-3, 1)],
            [r(1), (1, -1), (-3, -1)],
            [r(1), (1, 1), (-3, 2)],
            [r(1), (1, -1), (-3, -2)],
        ],
        4 => [
            [r(1), (1, 1), (-3, 1)],
            [r(1), (1, -1), (-3, -1)],
            [r(1), (1, 1), (-3, 2)],
            [r(1), (1, -1), (-3, -2)],
            [r(1), (1, 2), (-2, 1)],
            [r(1), (1, -2), (-2, -1)],
        ],
        _ => return Err(Error::InvalidInput(format!("no fixture for species {k}"))),
    };
    Ok(gaussian_points(&pts))
}

#[derive(Clone, Debug, Serialize)]
pub struct InvolutionCensus {
    /// Number of group elements `g` with `g² = 1` per profile, identity included.
    pub profiles: BTreeMap<RealityProfile, usize>,
    /// Species of each profile that matches the table; `None` for the rest.
    pub species: BTreeMap<RealityProfile, Option<u8>>,
}

pub fn involution_census(group: &AutomorphismGroup, configs: &Configurations) -> InvolutionCensus {
    let invs: Vec<&Perm> = group.elements.iter().filter(|g| g.compose(g).is_identity()).collect();
    let found: Vec<RealityProfile> = invs.par_iter().map(|g| RealityProfile::of(g, configs)).collect();
    let mut profiles = BTreeMap::new();
    for p in found {
        *profiles.entry(p).or_insert(0) += 1;
    }
    let species = profiles.keys().map(|p| (p.clone(), species_of(p).ok())).collect();
    InvolutionCensus { profiles, species }
}

impl InvolutionCensus {
    pub fn has_species(&self, k: u8) -> bool {
        self.species.values().any(|s| *s == Some(k))
    }
}

/// Pipeline from fixture points to the species report.
pub fn species_pipeline(k: u8, configs: &Configurations, group: &AutomorphismGroup) -> Result<SpeciesReport> {
    let surface = CubicSurface::from_points(construct_species_fixture(k)?)?;
    let lines = labeled_lines(&surface)?;
    let action = conjugation_action(&surface, &lines)?;
    classify_species(&action, &lines, configs, group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::check_general_position;
    use crate::config::labels::LineLabel;
    use std::sync::OnceLock;

    fn setup() -> &'static (Configurations, AutomorphismGroup) {
        static S: OnceLock<(Configurations, AutomorphismGroup)> = OnceLock::new();
        S.get_or_init(|| (Configurations::compute(), AutomorphismGroup::compute()))
    }

    #[test]
    fn fixtures_are_general_and_defined_over_q() {
        for k in 1..=4 {
            let pts = construct_species_fixture(k).unwrap();
            check_general_position(&pts).unwrap();
            let s = CubicSurface::from_points(pts).unwrap();
            assert!(s.f.terms().all(|(_, c)| c.as_rational().is_some()), "species {k}");
        }
        assert!(construct_species_fixture(5).is_err());
    }

    #[test]
    fn fixtures_classify() {
        let (configs, group) = setup();
        let expect = [(1, 27, 45), (2, 15, 15), (3, 7, 5), (4, 3, 7)];
        for (k, l, t) in expect {
            let r = species_pipeline(k, configs, group).unwrap();
            assert_eq!(r.species, k);
            assert_eq!((r.profile.real_lines, r.profile.real_tritangents), (l, t));
            assert_eq!(r.real_planes, t);
            assert!(r.in_group);
        }
    }

    #[test]
    fn one_pair_swaps_a5_a6() {
        let s = CubicSurface::from_points(construct_species_fixture(2).unwrap()).unwrap();
        let lines = labeled_lines(&s).unwrap();
        let a = conjugation_action(&s, &lines).unwrap();
        assert_eq!(a.point_perm, [0, 1, 2, 3, 5, 4]);
        let (a5, a6) = (LineLabel::A(5).index() as u8, LineLabel::A(6).index() as u8);
        assert_eq!(a.perm.apply(a5), a6);
        assert!(a.perm.compose(&a.perm).is_identity());
        let id = conjugation_action(&CubicSurface::fixture(), &labeled_lines(&CubicSurface::fixture()).unwrap()).unwrap();
        assert!(id.perm.is_identity());
    }

    #[test]
    fn unstable_points_rejected() {
        let k = gaussian_field();
        let mut pts = construct_species_fixture(2).unwrap().points;
        pts[5] = ProjPoint::new(vec![Fe::one(), gaussian(&k, 7, -1), gaussian(&k, -3, -2)]).unwrap();
        let s = CubicSurface::from_points(SixPoints::new(pts).unwrap()).unwrap();
        let lines = labeled_lines(&s).unwrap();
        assert_eq!(conjugation_action(&s, &lines).unwrap_err(), Error::NotStable);
    }

    #[test]
    fn census_has_all_species() {
        let (configs, group) = setup();
        let c = involution_census(group, configs);
        for k in 1..=5 {
            assert!(c.has_species(k), "species {k}");
        }
        let five: Vec<_> = c.species.iter().filter(|(_, s)| **s == Some(5)).map(|(p, _)| p).collect();
        assert!(five.iter().all(|p| p.double_sixes.real_double_sixes() == 0));
        assert_eq!(c.profiles.len(), 5);
        assert_eq!(c.profiles.values().sum::<usize>(), 1 + 36 + 270 + 540 + 45);
    }
}
