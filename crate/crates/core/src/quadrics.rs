//! Residual quadrics of a tritangent plane, the six-line quadric census, the
//! Steinerian quartic of the web and its desmic tetrads.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blowup::{CubicSurface, LabeledLines};
use crate::config::{Configurations, Trio};
use crate::determinantal::det3_poly;
use crate::error::{Error, Result};
use crate::field::FieldElement as Fe;
use crate::matrix::{normalize_projective, ExactMatrix};
use crate::poly::{monomials, Monomial, MultiPoly};
use crate::projgeom::{meet_lines, span_plane, ProjPlane, ProjPoint};

/// A quadric `xᵀ S x` stored as its symmetric matrix, scaled so the first
/// nonzero upper-triangular entry (row-major) is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadricSurface {
    upper: Vec<Fe>,
}

impl QuadricSurface {
    pub fn from_form(q: &MultiPoly) -> Result<Self> {
        let half = Fe::from_ratio(1, 2);
        let mut upper = Vec::with_capacity(10);
        for i in 0..4 {
            for j in i..4 {
                let c = q.coeff(&Monomial::var(i).mul(&Monomial::var(j)));
                upper.push(if i == j { c } else { &c * &half });
            }
        }
        let upper = normalize_projective(&upper).ok_or_else(|| Error::InvalidInput("zero quadric".into()))?;
        Ok(QuadricSurface { upper })
    }

    pub fn entry(&self, i: usize, j: usize) -> &Fe {
        let (i, j) = (i.min(j), i.max(j));
        // offset of row i in the packed upper triangle
        let off = [0, 4, 7, 9][i];
        &self.upper[off + j - i]
    }

    pub fn matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows((0..4).map(|i| (0..4).map(|j| self.entry(i, j).clone()).collect()).collect())
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    pub fn form(&self) -> MultiPoly {
        let mut q = MultiPoly::zero(4);
        for i in 0..4 {
            for j in 0..4 {
                q = &q + &(&MultiPoly::var(4, i) * &MultiPoly::var(4, j)).scale(self.entry(i, j));
            }
        }
        q
    }

    pub fn packed(&self) -> &[Fe] {
        &self.upper
    }
}

/// The unique `(Q, α)` with `π₁π₂π₃ = π·Q + α·F`.
pub fn residual_quadric(pi: &ProjPlane, pis: [&ProjPlane; 3], f: &MultiPoly) -> Result<(MultiPoly, Fe)> {
    let lp = pi.linear_form();
    let rhs = pis.iter().fold(MultiPoly::constant(4, Fe::one()), |acc, p| &acc * &p.linear_form());
    let mons = monomials(4, 2);
    let mut cols: Vec<Vec<Fe>> = mons
        .iter()
        .map(|m| (&lp * &MultiPoly::from_terms(4, [(*m, Fe::one())])).coefficients(3))
        .collect();
    cols.push(f.coefficients(3));
    let sol = ExactMatrix::from_columns(cols)
        .solve_unique(&rhs.coefficients(3))
        .ok_or(Error::NoSolution)?;
    let q = MultiPoly::from_terms(4, mons.into_iter().zip(sol[..10].iter().cloned()));
    Ok((q, sol[10].clone()))
}


/// For each line of tritangent trio `t`, the indices of the other four tritangent planes through it.
pub fn planes_through_lines(t: usize, configs: &Configurations) -> [Vec<usize>; 3] {
    let trio = configs.tritangents[t];
    std::array::from_fn(|i| {
        (0..configs.tritangents.len())
            .filter(|&k| k != t && configs.tritangents[k].contains(&trio[i]))
            .collect()
    })
}

/// Linear span of residual quadrics over pencil parameters, as a basis.
#[derive(Clone, Debug)]
pub struct QuadricWeb {
    pub trio: Trio,
    pub basis: Vec<MultiPoly>,
}

impl QuadricWeb {
    pub fn contains(&self, q: &MultiPoly) -> bool {
        let mut rows: Vec<Vec<Fe>> = self.basis.iter().map(|b| b.coefficients(2)).collect();
        rows.push(q.coefficients(2));
        ExactMatrix::from_rows(rows).rank() == self.basis.len()
    }
}

/// Residual quadrics for `n` pseudorandom triples `π_i = a_i·π + b_i·σ_i`,
/// with `σ_i` the first other tritangent plane through `l_i`.
pub fn sample_residual_quadrics(
    t: usize,
    configs: &Configurations,
    planes: &[ProjPlane],
    surface: &CubicSurface,
    n: usize,
    seed: u64,
) -> Result<Vec<MultiPoly>> {
    let pi = &planes[t];
    let through = planes_through_lines(t, configs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let members: Vec<ProjPlane> = (0..3)
                .map(|i| loop {
                    let a = Fe::from_i64(rng.gen_range(-9..=9));
                    let b = Fe::from_i64(rng.gen_range(-9..=9));
                    let s = &planes[through[i][0]];
                    let v: Vec<Fe> = (0..4).map(|j| &(&a * &pi.coeffs()[j]) + &(&b * &s.coeffs()[j])).collect();
                    if let Ok(p) = ProjPlane::new(v) {
                        break p;
                    }
                })
                .collect();
            residual_quadric(pi, [&members[0], &members[1], &members[2]], &surface.f).map(|(q, _)| q)
        })
        .collect()
}

/// Basis of the span of `qs` (reduced row echelon rows).
pub fn quadric_span(qs: &[MultiPoly]) -> Vec<MultiPoly> {
    let (r, pivots) = ExactMatrix::from_rows(qs.iter().map(|q| q.coefficients(2)).collect()).rref();
    (0..pivots.len())
        .map(|i| MultiPoly::from_coefficients(4, 2, r.row(i)))
        .collect()
}

/// The web of tritangent plane `t`; fails unless the sampled span is 4-dimensional.
pub fn quadric_web(t: usize, configs: &Configurations, planes: &[ProjPlane], surface: &CubicSurface, seed: u64) -> Result<QuadricWeb> {
    let qs = sample_residual_quadrics(t, configs, planes, surface, 24, seed)?;
    let basis = quadric_span(&qs);
    if basis.len() != 4 {
        return Err(Error::WrongDimension(basis.len()));
    }
    Ok(QuadricWeb { trio: configs.tritangents[t], basis })
}

/// Residual quadrics of one tritangent plane over the 4×4×4 tritangent choices.
#[derive(Clone, Debug)]
pub struct SetCensus {
    pub plane: usize,
    /// Count of residual quadrics by rank.
    pub ranks: BTreeMap<usize, usize>,
    /// The nonsingular ones, in enumeration order.
    pub nonsingular: Vec<QuadricSurface>,
    /// Every nonsingular quadric contains the six residual lines.
    pub six_lines: bool,
}

pub fn quadric_set(t: usize, configs: &Configurations, planes: &[ProjPlane], lines: &LabeledLines, surface: &CubicSurface) -> Result<SetCensus> {
    let trio = configs.tritangents[t];
    let through = planes_through_lines(t, configs);
    let mut ranks = BTreeMap::new();
    let mut nonsingular = Vec::new();
    let mut six_lines = true;
    for &a in &through[0] {
        for &b in &through[1] {
            for &c in &through[2] {
                let (q, _) = residual_quadric(&planes[t], [&planes[a], &planes[b], &planes[c]], &surface.f)?;
                let qs = QuadricSurface::from_form(&q)?;
                let r = qs.rank();
                *ranks.entry(r).or_insert(0) += 1;
                if r == 4 {
                    let residual = [a, b, c].into_iter().enumerate().flat_map(|(i, k)| {
                        configs.tritangents[k].into_iter().filter(move |&l| l != trio[i])
                    });
                    six_lines &= residual.into_iter().all(|l| lines.line(l as usize).lies_on(&q));
                    nonsingular.push(qs);
                }
            }
        }
    }
    Ok(SetCensus { plane: t, ranks, nonsingular, six_lines })
}

#[derive(Clone, Debug)]
pub struct QuadricCensus {
    pub sets: Vec<SetCensus>,
    pub distinct: usize,
    /// Number of distinct quadrics by how many sets contain them.
    pub multiplicities: BTreeMap<usize, usize>,
}

pub fn six_line_quadric_census(configs: &Configurations, planes: &[ProjPlane], lines: &LabeledLines, surface: &CubicSurface) -> Result<QuadricCensus> {
    let sets: Vec<SetCensus> = (0..configs.tritangents.len())
        .into_par_iter()
        .map(|t| quadric_set(t, configs, planes, lines, surface))
        .collect::<Result<_>>()?;
    let mut seen: HashMap<&QuadricSurface, usize> = HashMap::new();
    for s in &sets {
        for q in &s.nonsingular {
            *seen.entry(q).or_insert(0) += 1;
        }
    }
    let mut multiplicities = BTreeMap::new();
    for &m in seen.values() {
        *multiplicities.entry(m).or_insert(0) += 1;
    }
    let distinct = seen.len();
    Ok(QuadricCensus { sets, distinct, multiplicities })
}

/// The 12 points `m ∩ m′` for the tritangent planes `l_i + m + m′` through the lines of plane `t`.
pub fn line_pair_nodes(t: usize, configs: &Configurations, lines: &LabeledLines) -> Result<Vec<ProjPoint>> {
    let trio = configs.tritangents[t];
    let through = planes_through_lines(t, configs);
    let mut out = Vec::new();
    for i in 0..3 {
        for &k in &through[i] {
            let pair: Vec<u8> = configs.tritangents[k].into_iter().filter(|&l| l != trio[i]).collect();
            let p = meet_lines(lines.line(pair[0] as usize), lines.line(pair[1] as usize))?
                .ok_or_else(|| Error::NodeVerificationFailed("line pair does not meet".into()))?;
            out.push(p);
        }
    }
    Ok(out)
}

/// `det[S_0x | S_1x | S_2x | S_3x]` for a web with symmetric matrices `S_k`.
pub fn steinerian_form(basis: &[MultiPoly]) -> Result<MultiPoly> {
    if basis.len() != 4 {
        return Err(Error::WrongDimension(basis.len()));
    }
    let s: Vec<QuadricSurface> = basis.iter().map(QuadricSurface::from_form).collect::<Result<_>>()?;
    let m: Vec<Vec<MultiPoly>> = (0..4)
        .map(|i| {
            (0..4)
                .map(|k| MultiPoly::linear(&(0..4).map(|j| s[k].entry(i, j).clone()).collect::<Vec<_>>()))
                .collect()
        })
        .collect();
    let mut k = MultiPoly::zero(4);
    for c in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&x| x != c).collect();
        let sub: [[MultiPoly; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| m[i + 1][cols[j]].clone()));
        let term = &m[0][c] * &det3_poly(&sub);
        k = if c % 2 == 0 { &k + &term } else { &k - &term };
    }
    Ok(k)
}

/// `K(p) = 0` and `∇K(p) = 0`.
pub fn is_singular_point(k: &MultiPoly, p: &ProjPoint) -> bool {
    k.eval(p.coords()).is_zero() && k.gradient().iter().all(|g| g.eval(p.coords()).is_zero())
}

#[derive(Clone, Debug)]
pub struct SteinerianQuartic {
    pub k: MultiPoly,
    pub nodes: Vec<ProjPoint>,
}

pub fn steinerian(web: &QuadricWeb, nodes: &[ProjPoint]) -> Result<SteinerianQuartic> {
    let k = steinerian_form(&web.basis)?;
    if k.total_degree() != Some(4) {
        return Err(Error::NodeVerificationFailed("Steinerian is not a quartic".into()));
    }
    if let Some(p) = nodes.iter().find(|p| !is_singular_point(&k, p)) {
        return Err(Error::NodeVerificationFailed(format!("{:?} is not a node", p.coords())));
    }
    Ok(SteinerianQuartic { k, nodes: nodes.to_vec() })
}

/// Product of the four face planes of a tetrahedron, or `None` if the points are coplanar.
pub fn face_product(pts: [&ProjPoint; 4]) -> Option<MultiPoly> {
    let m = ExactMatrix::from_rows(pts.iter().map(|p| p.coords().to_vec()).collect());
    if m.det().is_zero() {
        return None;
    }
    let mut acc = MultiPoly::constant(4, Fe::one());
    for skip in 0..4 {
        let f: Vec<&ProjPoint> = (0..4).filter(|&k| k != skip).map(|k| pts[k]).collect();
        acc = &acc * &span_plane(f[0], f[1], f[2]).ok()?.linear_form();
    }
    Some(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesmicPartition {
    pub tetrads: [[usize; 4]; 3],
    /// `Σ c_i T_i = 0` for the face products `T_i`, normalized.
    pub relation: [Fe; 3],
    pub rank: usize,
}

/// All partitions of `0..12` into three 4-sets, first set containing 0.
pub fn tetrad_partitions() -> Vec<[[usize; 4]; 3]> {
    let mut out = Vec::new();
    let combos = |set: &[usize], first: usize| -> Vec<Vec<usize>> {
        let rest: Vec<usize> = set.iter().copied().filter(|&x| x != first).collect();
        let mut v = Vec::new();
        for a in 0..rest.len() {
            for b in a + 1..rest.len() {
                for c in b + 1..rest.len() {
                    v.push(vec![first, rest[a], rest[b], rest[c]]);
                }
            }
        }
        v
    };
    let all: Vec<usize> = (0..12).collect();
    for t1 in combos(&all, 0) {
        let left: Vec<usize> = all.iter().copied().filter(|x| !t1.contains(x)).collect();
        for t2 in combos(&left, left[0]) {
            let t3: Vec<usize> = left.iter().copied().filter(|x| !t2.contains(x)).collect();
            out.push([t1.clone().try_into().unwrap(), t2.try_into().unwrap(), t3.try_into().unwrap()]);
        }
    }
    out
}

/// The unique partition of the 12 points into tetrahedra with dependent face products.
pub fn desmic_partition(nodes: &[ProjPoint]) -> Result<DesmicPartition> {
    assert_eq!(nodes.len(), 12);
    let mut cache: HashMap<[usize; 4], Option<Vec<Fe>>> = HashMap::new();
    let mut found = Vec::new();
    for part in tetrad_partitions() {
        let mut prods = Vec::new();
        for t in &part {
            let e = cache
                .entry(*t)
                .or_insert_with(|| face_product([&nodes[t[0]], &nodes[t[1]], &nodes[t[2]], &nodes[t[3]]]).map(|p| p.coefficients(4)));
            match e {
                Some(c) => prods.push(c.clone()),
                None => break,
            }
        }
        if prods.len() < 3 {
            continue;
        }
        let m = ExactMatrix::from_columns(prods);
        let rank = m.rank();
        if rank < 3 {
            let rel = normalize_projective(&m.kernel()[0]).unwrap();
            found.push(DesmicPartition { tetrads: part, relation: rel.try_into().unwrap(), rank });
        }
    }
    if found.len() != 1 {
        return Err(Error::NoDesmicPartition(found.len()));
    }
    Ok(found.pop().unwrap())
}

/// Basis of the quartic forms singular at every point of `pts`.
pub fn quartics_singular_at(pts: &[ProjPoint]) -> Vec<MultiPoly> {
    let mons = monomials(4, 4);
    let mut rows = Vec::new();
    for p in pts {
        for k in 0..4 {
            rows.push(
                mons.iter()
                    .map(|m| MultiPoly::from_terms(4, [(*m, Fe::one())]).derivative(k).eval(p.coords()))
                    .collect(),
            );
        }
    }
    ExactMatrix::from_rows(rows)
        .kernel()
        .into_iter()
        .map(|v| MultiPoly::from_coefficients(4, 4, &v))
        .collect()
}

/// The 135 meeting points of the 27 lines and the 45 groups of 12.
#[derive(Clone, Debug)]
pub struct IntersectionGrouping {
    pub points: Vec<ProjPoint>,
    /// Indices into `points`, one group per tritangent plane.
    pub groups: Vec<Vec<usize>>,
    /// Number of groups containing each point.
    pub multiplicity: Vec<usize>,
}

pub fn intersection_point_grouping(configs: &Configurations, lines: &LabeledLines) -> Result<IntersectionGrouping> {
    let mut index: HashMap<ProjPoint, usize> = HashMap::new();
    let mut points = Vec::new();
    for i in 0..lines.lines.len() {
        for j in i + 1..lines.lines.len() {
            if let Some(p) = meet_lines(lines.line(i), lines.line(j))? {
                index.entry(p.clone()).or_insert_with(|| {
                    points.push(p);
                    points.len() - 1
                });
            }
        }
    }
    let groups: Vec<Vec<usize>> = (0..configs.tritangents.len())
        .map(|t| {
            line_pair_nodes(t, configs, lines)?
                .iter()
                .map(|p| index.get(p).copied().ok_or_else(|| Error::NodeVerificationFailed("node is not a meeting point".into())))
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut multiplicity = vec![0; points.len()];
    for g in &groups {
        for &k in g {
            multiplicity[k] += 1;
        }
    }
    Ok(IntersectionGrouping { points, groups, multiplicity })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::labeled_lines;
    use crate::forms::tritangent_plane;
    use std::sync::OnceLock;

    struct Fx {
        surface: CubicSurface,
        lines: LabeledLines,
        configs: Configurations,
        planes: Vec<ProjPlane>,
    }

    fn fx() -> &'static Fx {
        static F: OnceLock<Fx> = OnceLock::new();
        F.get_or_init(|| {
            let surface = CubicSurface::fixture();
            let lines = labeled_lines(&surface).unwrap();
            let configs = Configurations::compute();
            let planes = configs.tritangents.iter().map(|t| tritangent_plane(t, &lines).unwrap()).collect();
            Fx { surface, lines, configs, planes }
        })
    }

    #[test]
    fn residual_of_pi_cubed() {
        let f = fx();
        let pi = &f.planes[0];
        let (q, a) = residual_quadric(pi, [pi, pi, pi], &f.surface.f).unwrap();
        assert_eq!(q, &pi.linear_form() * &pi.linear_form());
        assert!(a.is_zero());
    }

    #[test]
    fn residual_quadric_contains_conics() {
        let f = fx();
        let t = 0;
        let through = planes_through_lines(t, &f.configs);
        let samples = sample_residual_quadrics(t, &f.configs, &f.planes, &f.surface, 3, 9).unwrap();
        assert_eq!(samples.len(), 3);
        // tritangent choice: the residual conics are line pairs
        let (q, _) = residual_quadric(&f.planes[t], [&f.planes[through[0][1]], &f.planes[through[1][2]], &f.planes[through[2][3]]], &f.surface.f).unwrap();
        for (i, &k) in [through[0][1], through[1][2], through[2][3]].iter().enumerate() {
            for l in f.configs.tritangents[k] {
                if l != f.configs.tritangents[t][i] {
                    assert!(f.lines.line(l as usize).lies_on(&q));
                }
            }
        }
    }

    #[test]
    fn residual_span_is_eight_dimensional() {
        let f = fx();
        let qs = sample_residual_quadrics(0, &f.configs, &f.planes, &f.surface, 24, 1).unwrap();
        let span = quadric_span(&qs);
        assert_eq!(span.len(), 8);
        let pi = f.planes[0].linear_form();
        let web = QuadricWeb { trio: f.configs.tritangents[0], basis: span };
        assert!(web.contains(&(&pi * &pi)));
        for q in sample_residual_quadrics(0, &f.configs, &f.planes, &f.surface, 20, 2).unwrap() {
            assert!(web.contains(&q));
        }
        assert_eq!(quadric_web(0, &f.configs, &f.planes, &f.surface, 1).unwrap_err(), Error::WrongDimension(8));
    }

    #[test]
    fn census_counts() {
        let f = fx();
        let c = six_line_quadric_census(&f.configs, &f.planes, &f.lines, &f.surface).unwrap();
        for s in &c.sets {
            assert_eq!(s.nonsingular.len(), 48);
            assert_eq!(s.ranks.get(&2), Some(&16));
            assert!(s.six_lines);
        }
        assert_eq!(c.distinct, 360);
        assert_eq!(c.multiplicities, BTreeMap::from([(6, 360)]));
    }

    #[test]
    fn nodes_and_desmic_partition() {
        let f = fx();
        for t in [0, 17, 44] {
            let nodes = line_pair_nodes(t, &f.configs, &f.lines).unwrap();
            assert_eq!(nodes.len(), 12);
            assert_eq!(nodes.iter().collect::<std::collections::HashSet<_>>().len(), 12);
            assert!(nodes.iter().all(|p| f.surface.contains(p)));
            let d = desmic_partition(&nodes).unwrap();
            assert_eq!(d.rank, 2);
            assert!(d.relation.iter().all(|c| !c.is_zero()));
            let ks = quartics_singular_at(&nodes);
            assert_eq!(ks.len(), 2);
            for k in &ks {
                assert!(nodes.iter().all(|p| is_singular_point(k, p)));
            }
        }
        assert_eq!(tetrad_partitions().len(), 5775);
    }

    #[test]
    fn steinerian_of_a_coordinate_web() {
        // Σ λ_i x_i²: singular members have a vanishing λ_i, singular at e_i
        let sq = |i: usize| &MultiPoly::var(4, i) * &MultiPoly::var(4, i);
        let web = QuadricWeb { trio: [0, 0, 0], basis: (0..4).map(sq).collect() };
        let k = steinerian_form(&web.basis).unwrap();
        let x = |i| MultiPoly::var(4, i);
        assert_eq!(k, &(&x(0) * &x(1)) * &(&x(2) * &x(3)));
        let nodes: Vec<ProjPoint> = (0..4)
            .map(|i| ProjPoint::from_i64(&(0..4).map(|j| (i == j) as i64).collect::<Vec<_>>()))
            .collect();
        assert!(steinerian(&web, &nodes).is_ok());
        assert!(steinerian(&web, &[ProjPoint::from_i64(&[1, 1, 1, 0])]).is_err());
    }

    #[test]
    fn intersection_points() {
        let f = fx();
        let g = intersection_point_grouping(&f.configs, &f.lines).unwrap();
        assert_eq!(g.points.len(), 135);
        assert_eq!(g.groups.len(), 45);
        assert!(g.groups.iter().all(|x| x.len() == 12));
        assert!(g.multiplicity.iter().all(|&m| m == 4));
    }
}
