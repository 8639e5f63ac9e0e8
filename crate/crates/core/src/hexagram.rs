//! Cremona pairs of the planes `V(x_i + x_j)`, Pascal lines, and projected hexagons.

use rayon::prelude::*;

use crate::blowup::{sample_surface_points, CubicSurface, LabeledLines};
use crate::error::{Error, Result};
use crate::forms::{HexahedralForm, HexahedralLines, PairPartition};
use crate::matrix::ExactMatrix;
use crate::projgeom::{lines_meet, meet_lines, meet_planes, span_line_point, ProjLine, ProjPlane, ProjPoint};

/// The 15 index pairs `i < j`, in lexicographic order.
pub fn index_pairs() -> Vec<[usize; 2]> {
    (0..6).flat_map(|i| (i + 1..6).map(move |j| [i, j])).collect()
}

#[derive(Clone, Debug)]
pub struct CremonaPair {
    /// Plane indices into [`HexagramConfig::planes`]; the pairs share one index.
    pub planes: [usize; 2],
    pub shared: usize,
    /// `Π_ij ∩ Π_ik`.
    pub pascal: ProjLine,
}

#[derive(Clone, Debug)]
pub struct HexagramConfig {
    pub pairs: Vec<[usize; 2]>,
    pub planes: Vec<ProjPlane>,
    pub partitions: Vec<PairPartition>,
    pub lines: Vec<ProjLine>,
    /// Label of each of the 15 lines.
    pub labels: Vec<usize>,
    /// For each plane, the indices of the lines it contains.
    pub plane_lines: Vec<Vec<usize>>,
    pub cremona: Vec<CremonaPair>,
    /// Pairs of planes with disjoint indices whose meet is one of the 15 lines.
    pub disjoint_on_surface: usize,
}

impl HexagramConfig {
    pub fn plane_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = (i.min(j), i.max(j));
        self.pairs.iter().position(|p| *p == [i, j]).unwrap()
    }
}

pub fn hexagram_config(hex: &HexahedralForm, hl: &HexahedralLines, surface: &CubicSurface) -> Result<HexagramConfig> {
    let pairs = index_pairs();
    let planes: Vec<ProjPlane> = pairs.iter().map(|p| hex.plane(p[0], p[1])).collect::<Result<_>>()?;
    let lines = hl.lines.clone();
    let plane_lines: Vec<Vec<usize>> = planes
        .iter()
        .map(|h| (0..lines.len()).filter(|&k| h.contains_line(&lines[k])).collect())
        .collect();
    let mut cremona = Vec::new();
    let mut disjoint_on_surface = 0;
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            let (p, q) = (pairs[a], pairs[b]);
            let shared: Vec<usize> = p.iter().copied().filter(|i| q.contains(i)).collect();
            let l = meet_planes(&planes[a], &planes[b])?;
            match shared.as_slice() {
                [s] => {
                    if l.lies_on(&surface.f) {
                        return Err(Error::LineNotOnSurface);
                    }
                    cremona.push(CremonaPair { planes: [a, b], shared: *s, pascal: l });
                }
                _ => {
                    if lines.contains(&l) {
                        disjoint_on_surface += 1;
                    }
                }
            }
        }
    }
    Ok(HexagramConfig {
        pairs,
        planes,
        partitions: hl.partitions.clone(),
        lines,
        labels: hl.labels.clone(),
        plane_lines,
        cremona,
        disjoint_on_surface,
    })
}

/// Line `{ij,kl,mn}` lies in exactly the planes `Π_ij, Π_kl, Π_mn`.
pub fn incidence_matches_indices(cfg: &HexagramConfig) -> bool {
    (0..cfg.planes.len()).all(|h| {
        let expected: Vec<usize> = (0..cfg.partitions.len())
            .filter(|&k| cfg.partitions[k].contains(&cfg.pairs[h]))
            .collect();
        cfg.plane_lines[h] == expected
    })
}

#[derive(Clone, Debug)]
pub struct Pentahedron {
    pub index: usize,
    /// Plane indices of the faces `Π_ij`, `j ≠ i`.
    pub faces: Vec<usize>,
    pub edges: Vec<ProjLine>,
}

pub fn pentahedra(cfg: &HexagramConfig) -> Result<Vec<Pentahedron>> {
    (0..6)
        .map(|i| {
            let faces: Vec<usize> = (0..6).filter(|&j| j != i).map(|j| cfg.plane_index(i, j)).collect();
            let mut edges = Vec::new();
            for a in 0..faces.len() {
                for b in a + 1..faces.len() {
                    edges.push(meet_planes(&cfg.planes[faces[a]], &cfg.planes[faces[b]])?);
                }
            }
            Ok(Pentahedron { index: i, faces, edges })
        })
        .collect()
}

/// The edges of the pentahedra are exactly the Pascal lines, as sets.
pub fn edges_are_pascal_lines(cfg: &HexagramConfig, pents: &[Pentahedron]) -> bool {
    use std::collections::HashSet;
    let edges: HashSet<&ProjLine> = pents.iter().flat_map(|p| &p.edges).collect();
    let pascal: HashSet<&ProjLine> = cfg.cremona.iter().map(|c| &c.pascal).collect();
    edges.len() == 60 && edges == pascal
}

/// Order the six lines by the cycle of their skew graph.
pub fn skew_cycle(lines: &[ProjLine; 6]) -> Result<[usize; 6]> {
    let mut adj = [[false; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            adj[i][j] = i != j && !lines_meet(&lines[i], &lines[j])?;
        }
    }
    if (0..6).any(|i| adj[i].iter().filter(|&&b| b).count() != 2) {
        return Err(Error::NotAHexagon);
    }
    let mut order = [0usize; 6];
    let mut prev = usize::MAX;
    for k in 1..6 {
        let cur = order[k - 1];
        let next = (0..6).find(|&j| adj[cur][j] && j != prev && !order[..k].contains(&j)).ok_or(Error::NotAHexagon)?;
        prev = cur;
        order[k] = next;
    }
    if !adj[order[5]][order[0]] {
        return Err(Error::NotAHexagon);
    }
    Ok(order)
}

/// Central projection from `center` into the plane `screen`.
pub struct Projection<'a> {
    pub center: &'a ProjPoint,
    pub screen: &'a ProjPlane,
}

impl Projection<'_> {
    pub fn point(&self, p: &ProjPoint) -> Result<ProjPoint> {
        ProjLine::through(self.center, p)?
            .meet_plane(self.screen)
            .ok_or_else(|| Error::DegenerateCenter("projecting line lies in the screen".into()))
    }

    pub fn line(&self, l: &ProjLine) -> Result<ProjLine> {
        let h = span_line_point(l, self.center).map_err(|_| Error::DegenerateCenter("center on a side".into()))?;
        meet_planes(&h, self.screen).map_err(|_| Error::DegenerateCenter("side projects to the screen".into()))
    }
}

#[derive(Clone, Debug)]
pub struct HexagonRecord {
    pub pair: usize,
    pub center: ProjPoint,
    /// Line indices in cycle order.
    pub order: [usize; 6],
    /// Projected vertices, side `k` meets side `k+1`.
    pub vertices: Vec<ProjPoint>,
    pub diagonal_points: [ProjPoint; 3],
    pub collinearity_rank: usize,
    pub on_projected_pascal: bool,
}

pub fn project_hexagram(cfg: &HexagramConfig, pair: usize, center: &ProjPoint, screen: &ProjPlane, surface: &CubicSurface) -> Result<HexagonRecord> {
    let cp = &cfg.cremona[pair];
    if !surface.contains(center) {
        return Err(Error::DegenerateCenter("center is not on the surface".into()));
    }
    if screen.contains(center) {
        return Err(Error::DegenerateCenter("screen passes through the center".into()));
    }
    if cp.planes.iter().any(|&h| cfg.planes[h].contains(center)) {
        return Err(Error::DegenerateCenter("center lies on a plane of the pair".into()));
    }
    let idx: Vec<usize> = cp.planes.iter().flat_map(|&h| cfg.plane_lines[h].iter().copied()).collect();
    if idx.len() != 6 || cfg.lines.iter().any(|l| l.contains(center)) {
        return Err(Error::DegenerateCenter("center lies on a line".into()));
    }
    let six: [ProjLine; 6] = std::array::from_fn(|k| cfg.lines[idx[k]].clone());
    let order = skew_cycle(&six)?;
    let proj = Projection { center, screen };
    let sides: Vec<ProjLine> = order.iter().map(|&k| proj.line(&six[k])).collect::<Result<_>>()?;
    let meet = |a: &ProjLine, b: &ProjLine| -> Result<ProjPoint> {
        meet_lines(a, b)?.ok_or_else(|| Error::DegenerateCenter("projected sides coincide".into()))
    };
    let vertices: Vec<ProjPoint> = (0..6).map(|k| meet(&sides[k], &sides[(k + 1) % 6])).collect::<Result<_>>()?;
    let diagonal_points: [ProjPoint; 3] = [meet(&sides[0], &sides[3])?, meet(&sides[1], &sides[4])?, meet(&sides[2], &sides[5])?];
    let collinearity_rank = ExactMatrix::from_rows(diagonal_points.iter().map(|p| p.coords().to_vec()).collect()).rank();
    let pascal = proj.line(&cp.pascal)?;
    let on_projected_pascal = diagonal_points.iter().all(|p| pascal.contains(p));
    Ok(HexagonRecord {
        pair,
        center: center.clone(),
        order: order.map(|k| idx[k]),
        vertices,
        diagonal_points,
        collinearity_rank,
        on_projected_pascal,
    })
}

/// `n` surface points off the 15 lines and off every plane `Π_ij`, from `seed`.
pub fn generic_centers(cfg: &HexagramConfig, surface: &CubicSurface, n: usize, seed: u64) -> Vec<ProjPoint> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < n {
        for p in sample_surface_points(surface, n, s) {
            if out.len() < n && !cfg.planes.iter().any(|h| h.contains(&p)) && !out.contains(&p) {
                out.push(p);
            }
        }
        s = s.wrapping_add(0x9e37_79b9);
    }
    out
}

/// A fixed screen plane avoiding all `centers`.
pub fn screen_for(centers: &[ProjPoint]) -> ProjPlane {
    (1..)
        .map(|k: i64| ProjPlane::from_i64(&[1, k, k * k + 1, 2 * k + 3]))
        .find(|h| centers.iter().all(|c| !h.contains(c)))
        .unwrap()
}

/// Every Cremona pair projected from `centers_per_pair` centers.
pub fn verify_all_hexagrams(cfg: &HexagramConfig, surface: &CubicSurface, centers_per_pair: usize, seed: u64) -> Result<Vec<HexagonRecord>> {
    let centers = generic_centers(cfg, surface, centers_per_pair, seed);
    let screen = screen_for(&centers);
    let jobs: Vec<(usize, &ProjPoint)> = (0..cfg.cremona.len()).flat_map(|p| centers.iter().map(move |c| (p, c))).collect();
    jobs.into_par_iter().map(|(p, c)| project_hexagram(cfg, p, c, &screen, surface)).collect()
}

/// Restriction of `F` to each Pascal line; all nonzero means no Pascal line lies on X.
pub fn pascal_lines_off_surface(cfg: &HexagramConfig, surface: &CubicSurface) -> bool {
    cfg.cremona.iter().all(|c| !c.pascal.lies_on(&surface.f))
}

/// Labels of `hl`'s lines as found among the 27.
pub fn lines_on_surface(cfg: &HexagramConfig, lines: &LabeledLines) -> bool {
    cfg.labels.iter().zip(&cfg.lines).all(|(&k, l)| lines.line(k) == l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::labeled_lines;
    use crate::config::Configurations;
    use crate::forms::{cayley_salmon, hexahedral_from_cs, hexahedral_lines};
    use std::sync::OnceLock;

    struct Fx {
        surface: CubicSurface,
        lines: LabeledLines,
        cfg: HexagramConfig,
    }

    fn fx() -> &'static Fx {
        static F: OnceLock<Fx> = OnceLock::new();
        F.get_or_init(|| {
            let surface = CubicSurface::fixture();
            let lines = labeled_lines(&surface).unwrap();
            let configs = Configurations::compute();
            let hex = configs
                .trieder_pairs
                .iter()
                .find_map(|p| {
                    let cs = cayley_salmon(p, &surface, &lines).ok()?;
                    hexahedral_from_cs(&cs, false).ok()?.forms.into_iter().find(|h| h.field.depth() == 0)
                })
                .unwrap();
            let hl = hexahedral_lines(&hex, &surface, &lines, &configs).unwrap();
            let cfg = hexagram_config(&hex, &hl, &surface).unwrap();
            Fx { surface, lines, cfg }
        })
    }

    #[test]
    fn plane_incidences() {
        let f = fx();
        assert_eq!(f.cfg.planes.len(), 15);
        assert!(f.cfg.plane_lines.iter().all(|l| l.len() == 3));
        assert!(incidence_matches_indices(&f.cfg));
        assert!(lines_on_surface(&f.cfg, &f.lines));
        assert_eq!(f.cfg.cremona.len(), 60);
        assert_eq!(f.cfg.disjoint_on_surface, 45);
        assert!(pascal_lines_off_surface(&f.cfg, &f.surface));
    }

    #[test]
    fn pentahedra_edges() {
        let f = fx();
        let p = pentahedra(&f.cfg).unwrap();
        assert_eq!(p.len(), 6);
        for h in 0..15 {
            assert_eq!(p.iter().filter(|x| x.faces.contains(&h)).count(), 2);
        }
        assert!(edges_are_pascal_lines(&f.cfg, &p));
    }

    #[test]
    fn hexagons_have_collinear_diagonals() {
        let f = fx();
        let recs = verify_all_hexagrams(&f.cfg, &f.surface, 3, 0).unwrap();
        assert_eq!(recs.len(), 180);
        for r in &recs {
            assert_eq!(r.collinearity_rank, 2);
            assert!(r.on_projected_pascal);
            assert_eq!(r.vertices.len(), 6);
        }
    }

    #[test]
    fn degenerate_centers() {
        let f = fx();
        let cp = &f.cfg.cremona[0];
        let on_line = f.cfg.lines[f.cfg.plane_lines[cp.planes[0]][0]].points().0.clone();
        let screen = ProjPlane::from_i64(&[1, 1, 1, 7]);
        assert!(matches!(project_hexagram(&f.cfg, 0, &on_line, &screen, &f.surface), Err(Error::DegenerateCenter(_))));
        let off = ProjPoint::from_i64(&[1, 0, 0, 0]);
        if !f.surface.contains(&off) {
            assert!(matches!(project_hexagram(&f.cfg, 0, &off, &screen, &f.surface), Err(Error::DegenerateCenter(_))));
        }
    }

    #[test]
    fn skew_cycle_rejects_non_hexagon() {
        let f = fx();
        let h = &f.cfg.plane_lines[0];
        let h2 = &f.cfg.plane_lines[f.cfg.cremona[0].planes[1]];
        let six: [ProjLine; 6] = std::array::from_fn(|k| f.cfg.lines[if k < 3 { h[k] } else { h2[k - 3] }].clone());
        assert!(skew_cycle(&six).is_ok());
        // a1..a6 are pairwise skew
        let six_a: [ProjLine; 6] = std::array::from_fn(|k| f.lines.line(k).clone());
        assert_eq!(skew_cycle(&six_a), Err(Error::NotAHexagon));
    }
}
