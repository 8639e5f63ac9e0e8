//! Cubic surfaces as images of the plane under cubics through six points,
//! together with their 27 labelled lines.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::binary::deflate_binary_form;
use crate::config::{enumerate_tritangents, LineLabel, NUM_LINES};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement as Fe};
use crate::matrix::{kernel_basis, normalize_projective, ExactMatrix};
use crate::poly::{monomials, Monomial, MultiPoly};
use crate::projgeom::{det3, lines_meet, meet_lines, ProjLine, ProjPoint};

/// Six points of the projective plane over a common field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SixPoints {
    pub points: Vec<ProjPoint>,
}

/// What the general-position check certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralPosition {
    /// The 20 triple determinants, in lexicographic order of the triples.
    pub triple_dets: Vec<Fe>,
    pub conic_det: Fe,
}

/// `Σ c_k m_k` over `x², xy, xz, y², yz, z²`.
pub fn conic_poly(c: &[Fe]) -> MultiPoly {
    const EXPS: [[u8; 3]; 6] = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]];
    MultiPoly::from_terms(3, EXPS.iter().zip(c).map(|(e, c)| (Monomial::from_exponents(e), c.clone())))
}

fn conic_row(p: &[Fe]) -> Vec<Fe> {
    let (x, y, z) = (&p[0], &p[1], &p[2]);
    vec![x * x, x * y, x * z, y * y, y * z, z * z]
}

impl SixPoints {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        if points.len() != 6 || points.iter().any(|p| p.dim() != 2) {
            return Err(Error::InvalidInput("expected six points of P²".into()));
        }
        Ok(SixPoints { points })
    }

    pub fn from_i64(pts: &[[i64; 3]; 6]) -> Self {
        SixPoints {
            points: pts.iter().map(|p| ProjPoint::from_i64(p)).collect(),
        }
    }

    /// `e1, e2, e3, (1:1:1), (1:2:3), (1:5:11)`.
    pub fn fixture() -> Self {
        SixPoints::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, 5, 11]])
    }

    pub fn field(&self) -> FieldDescriptor {
        self.points
            .iter()
            .flat_map(|p| p.coords().iter().map(Fe::field))
            .max_by_key(FieldDescriptor::depth)
            .unwrap_or_else(FieldDescriptor::rationals)
    }

    /// Conic through the five points other than `skip`, as 6 coefficients of
    /// `x², xy, xz, y², yz, z²`.
    pub fn conic_through_others(&self, skip: usize) -> Result<Vec<Fe>> {
        let rows: Vec<Vec<Fe>> = (0..6)
            .filter(|&k| k != skip)
            .map(|k| conic_row(self.points[k].coords()))
            .collect();
        let k = kernel_basis(&ExactMatrix::from_rows(rows));
        if k.len() != 1 {
            return Err(Error::DegeneratePoints(format!("conic through points other than {} not unique", skip + 1)));
        }
        Ok(normalize_projective(&k[0]).unwrap())
    }
}

pub fn check_general_position(pts: &SixPoints) -> Result<GeneralPosition> {
    let p = &pts.points;
    for i in 0..6 {
        for j in i + 1..6 {
            if p[i] == p[j] {
                return Err(Error::DegeneratePoints(format!("points {} and {} coincide", i + 1, j + 1)));
            }
        }
    }
    let mut triple_dets = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let d = det3(p[i].coords(), p[j].coords(), p[k].coords());
                if d.is_zero() {
                    return Err(Error::DegeneratePoints(format!(
                        "points {}, {}, {} are collinear",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
                triple_dets.push(d);
            }
        }
    }
    let conic_det = ExactMatrix::from_rows(p.iter().map(|q| conic_row(q.coords())).collect()).det();
    if conic_det.is_zero() {
        return Err(Error::DegeneratePoints("all six points lie on a conic".into()));
    }
    Ok(GeneralPosition { triple_dets, conic_det })
}

/// Basis of the plane cubics through the six points.
pub fn cubic_net(pts: &SixPoints) -> Result<[MultiPoly; 4]> {
    // six points on a conic still impose independent conditions on cubics,
    // so the kernel dimension alone does not detect them
    check_general_position(pts)?;
    let mons = monomials(3, 3);
    let rows: Vec<Vec<Fe>> = pts
        .points
        .iter()
        .map(|p| mons.iter().map(|m| MultiPoly::from_terms(3, [(*m, Fe::one())]).eval(p.coords())).collect())
        .collect();
    let k = kernel_basis(&ExactMatrix::from_rows(rows));
    if k.len() != 4 {
        return Err(Error::DegeneratePoints(format!("cubics through the points form a space of dimension {}", k.len())));
    }
    let basis: Vec<MultiPoly> = k.iter().map(|v| MultiPoly::from_coefficients(3, 3, v)).collect();
    Ok(basis.try_into().unwrap())
}

#[derive(Clone, Debug)]
pub struct CubicSurface {
    /// Cubic form in `t0..t3`.
    pub f: MultiPoly,
    /// Cubics `C_0..C_3` in `x0..x2` with `F(C_0, …, C_3) ≡ 0`.
    pub basis: [MultiPoly; 4],
    pub source: SixPoints,
}

/// The unique cubic relation among the four basis cubics, and its system rank.
pub fn implicit_relation(basis: &[MultiPoly; 4]) -> (usize, Vec<Vec<Fe>>) {
    let mons4 = monomials(4, 3);
    let mons9 = monomials(3, 9);
    let images: Vec<Vec<Fe>> = mons4
        .par_iter()
        .map(|m| {
            MultiPoly::from_terms(4, [(*m, Fe::one())])
                .compose(basis)
                .coefficients(9)
        })
        .collect();
    let rows: Vec<Vec<Fe>> = (0..mons9.len())
        .map(|r| images.iter().map(|col| col[r].clone()).collect())
        .collect();
    let m = ExactMatrix::from_rows(rows);
    let k = kernel_basis(&m);
    (m.rank(), k)
}

pub fn implicitize(basis: [MultiPoly; 4], source: SixPoints) -> Result<CubicSurface> {
    let (_, k) = implicit_relation(&basis);
    if k.len() != 1 {
        return Err(Error::NonUniqueImplicit(k.len()));
    }
    let coeffs = normalize_projective(&k[0]).unwrap();
    Ok(CubicSurface {
        f: MultiPoly::from_coefficients(4, 3, &coeffs),
        basis,
        source,
    })
}

impl CubicSurface {
    pub fn from_points(pts: SixPoints) -> Result<Self> {
        check_general_position(&pts)?;
        let basis = cubic_net(&pts)?;
        implicitize(basis, pts)
    }

    pub fn fixture() -> Self {
        CubicSurface::from_points(SixPoints::fixture()).expect("fixture points are general")
    }

    /// `γ(λ) = (C_0(λ) : … : C_3(λ))`, `None` at base points.
    pub fn gamma(&self, lambda: &[Fe]) -> Option<ProjPoint> {
        ProjPoint::new(self.basis.iter().map(|c| c.eval(lambda)).collect()).ok()
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        self.f.eval(x.coords()).is_zero()
    }

    pub fn field(&self) -> FieldDescriptor {
        self.source.field()
    }
}

/// The 27 lines indexed by [`LineLabel::index`].
#[derive(Clone, Debug)]
pub struct LabeledLines {
    pub lines: Vec<ProjLine>,
}

impl LabeledLines {
    pub fn get(&self, l: LineLabel) -> &ProjLine {
        &self.lines[l.index()]
    }

    pub fn line(&self, k: usize) -> &ProjLine {
        &self.lines[k]
    }
}

fn jacobian_line(basis: &[MultiPoly; 4], p: &ProjPoint) -> Result<ProjLine> {
    let grads: Vec<Vec<MultiPoly>> = basis.iter().map(MultiPoly::gradient).collect();
    let jac = ExactMatrix::from_rows(
        grads
            .iter()
            .map(|g| g.iter().map(|d| d.eval(p.coords())).collect())
            .collect(),
    );
    if jac.rank() != 2 {
        return Err(Error::EckardtOrSingular("Jacobian at a base point does not have rank 2".into()));
    }
    // first two coordinate directions independent of p
    let mut dirs = Vec::new();
    for a in 0..3 {
        for b in a + 1..3 {
            let e = |i: usize| -> Vec<Fe> { (0..3).map(|k| if k == i { Fe::one() } else { Fe::zero() }).collect() };
            if !det3(p.coords(), &e(a), &e(b)).is_zero() && dirs.is_empty() {
                dirs = vec![e(a), e(b)];
            }
        }
    }
    let u = ProjPoint::new(jac.mul_vec(&dirs[0]))?;
    let v = ProjPoint::new(jac.mul_vec(&dirs[1]))?;
    ProjLine::through(&u, &v).map_err(|_| Error::EckardtOrSingular("tangent images coincide".into()))
}

/// Image of a curve parametrized by `param` (forms in `(s, t)`) after removing known roots.
fn residual_line(basis: &[MultiPoly; 4], param: &[MultiPoly], roots: &[([Fe; 2], usize)]) -> Result<ProjLine> {
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for c in basis {
        let f = c.compose(param);
        let r = deflate_binary_form(&f, roots)
            .map_err(|_| Error::EckardtOrSingular("known parameter is not a root".into()))?;
        if r.total_degree().is_some_and(|d| d != 1) {
            return Err(Error::EckardtOrSingular("residual is not linear".into()));
        }
        let lc = if r.is_zero() { vec![Fe::zero(), Fe::zero()] } else { r.linear_coefficients() };
        alpha.push(lc[0].clone());
        beta.push(lc[1].clone());
    }
    let (u, v) = (ProjPoint::new(alpha), ProjPoint::new(beta));
    match (u, v) {
        (Ok(u), Ok(v)) => ProjLine::through(&u, &v).map_err(|_| Error::EckardtOrSingular("degenerate residual".into())),
        _ => Err(Error::EckardtOrSingular("degenerate residual".into())),
    }
}

fn line_c(basis: &[MultiPoly; 4], p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    // x = s·p + t·q
    let param: Vec<MultiPoly> = (0..3)
        .map(|k| MultiPoly::linear(&[p.coords()[k].clone(), q.coords()[k].clone()]))
        .collect();
    residual_line(basis, &param, &[([Fe::one(), Fe::zero()], 1), ([Fe::zero(), Fe::one()], 1)])
}

fn bilinear(conic: &[Fe], x: &[Fe], y: &[Fe]) -> Fe {
    // symmetric form of a x² + b xy + c xz + d y² + e yz + f z², doubled
    let [a, b, c, d, e, f] = [&conic[0], &conic[1], &conic[2], &conic[3], &conic[4], &conic[5]];
    let two = Fe::from_i64(2);
    let terms = [
        &(&two * a) * &(&x[0] * &y[0]),
        b * &(&(&x[0] * &y[1]) + &(&x[1] * &y[0])),
        c * &(&(&x[0] * &y[2]) + &(&x[2] * &y[0])),
        &(&two * d) * &(&x[1] * &y[1]),
        e * &(&(&x[1] * &y[2]) + &(&x[2] * &y[1])),
        &(&two * f) * &(&x[2] * &y[2]),
    ];
    terms.iter().fold(Fe::zero(), |acc, t| &acc + t)
}

fn line_b(basis: &[MultiPoly; 4], pts: &SixPoints, i: usize) -> Result<ProjLine> {
    let conic = pts.conic_through_others(i)?;
    let others: Vec<usize> = (0..6).filter(|&k| k != i).collect();
    let q = pts.points[others[0]].coords().to_vec();
    let e = |j: usize| -> Vec<Fe> { (0..3).map(|k| if k == j { Fe::one() } else { Fe::zero() }).collect() };
    let (u, v) = (0..3)
        .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
        .map(|(a, b)| (e(a), e(b)))
        .find(|(u, v)| !det3(&q, u, v).is_zero())
        .unwrap();
    // w = s·u + t·v; second intersection x = −Q(w)·q + B(q, w)·w, B the doubled polar form
    let w: Vec<MultiPoly> = (0..3).map(|k| MultiPoly::linear(&[u[k].clone(), v[k].clone()])).collect();
    let conic_poly = conic_poly(&conic);
    let qw = conic_poly.compose(&w);
    let bw = {
        let bu = bilinear(&conic, &q, &u);
        let bv = bilinear(&conic, &q, &v);
        MultiPoly::linear(&[bu, bv])
    };
    let param: Vec<MultiPoly> = (0..3)
        .map(|k| &qw.scale(&-&q[k]) + &(&bw * &w[k]))
        .collect();
    // parameters of the five base points: q itself at B(q, w) = 0, the others by solving p = a·q + s·u + t·v
    let mut roots = vec![([bilinear(&conic, &q, &v), -bilinear(&conic, &q, &u)], 1)];
    let frame = ExactMatrix::from_columns(vec![q.clone(), u.clone(), v.clone()]);
    for &k in &others[1..] {
        let sol = frame.solve_unique(pts.points[k].coords()).expect("frame is a basis");
        roots.push(([sol[1].clone(), sol[2].clone()], 1));
    }
    residual_line(basis, &param, &roots)
}

/// The 27 lines: `a_i` from the Jacobian at `p_i`, `c_ij` from the line `p_i p_j`,
/// `b_i` from the conic through the other five points.
pub fn labeled_lines(surface: &CubicSurface) -> Result<LabeledLines> {
    let pts = &surface.source;
    let basis = &surface.basis;
    let lines: Vec<Result<ProjLine>> = (0..NUM_LINES)
        .into_par_iter()
        .map(|k| match LineLabel::from_index(k) {
            LineLabel::A(i) => jacobian_line(basis, &pts.points[i as usize - 1]),
            LineLabel::B(i) => line_b(basis, pts, i as usize - 1),
            LineLabel::C(i, j) => line_c(basis, &pts.points[i as usize - 1], &pts.points[j as usize - 1]),
        })
        .collect();
    let lines: Vec<ProjLine> = lines.into_iter().collect::<Result<_>>()?;
    for i in 0..NUM_LINES {
        if !lines[i].lies_on(&surface.f) {
            return Err(Error::EckardtOrSingular(format!("line {} is not on the surface", LineLabel::from_index(i))));
        }
        for j in i + 1..NUM_LINES {
            if lines[i] == lines[j] {
                return Err(Error::EckardtOrSingular(format!(
                    "lines {} and {} coincide",
                    LineLabel::from_index(i),
                    LineLabel::from_index(j)
                )));
            }
        }
    }
    // an Eckardt point is a trio of lines through one point
    for t in enumerate_tritangents() {
        let [a, b, c] = t.map(|k| &lines[k as usize]);
        if lines_meet(a, b)? && lines_meet(a, c)? {
            let x = meet_lines(a, b)?;
            if x.is_some() && x == meet_lines(a, c)? {
                return Err(Error::EckardtOrSingular(format!(
                    "lines {}, {}, {} are concurrent",
                    LineLabel::from_index(t[0] as usize),
                    LineLabel::from_index(t[1] as usize),
                    LineLabel::from_index(t[2] as usize)
                )));
            }
        }
    }
    Ok(LabeledLines { lines })
}

/// Lines `p_i p_j` and conics through five of the points: the preimages of
/// the `c_ij` and `b_i`.
fn exceptional_curves(pts: &SixPoints) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let (p, q) = (pts.points[i].coords(), pts.points[j].coords());
            let cross = vec![
                &(&p[1] * &q[2]) - &(&p[2] * &q[1]),
                &(&p[2] * &q[0]) - &(&p[0] * &q[2]),
                &(&p[0] * &q[1]) - &(&p[1] * &q[0]),
            ];
            out.push(MultiPoly::linear(&cross));
        }
    }
    for i in 0..6 {
        if let Ok(c) = pts.conic_through_others(i) {
            out.push(conic_poly(&c));
        }
    }
    out
}

/// `n` points `γ(λ)` for pseudorandom rational `λ` off the base points and off
/// the preimages of the 27 lines; deterministic in `seed`.
pub fn sample_surface_points(surface: &CubicSurface, n: usize, seed: u64) -> Vec<ProjPoint> {
    sample_parameters(surface, n, seed)
        .into_iter()
        .map(|l| surface.gamma(&l).expect("sampled off base points"))
        .collect()
}

/// The parameters `λ` behind [`sample_surface_points`].
pub fn sample_parameters(surface: &CubicSurface, n: usize, seed: u64) -> Vec<Vec<Fe>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let avoid = exceptional_curves(&surface.source);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let lambda: Vec<Fe> = (0..3)
            .map(|_| Fe::from_ratio(rng.gen_range(-30..=30), rng.gen_range(1..=7)))
            .collect();
        if lambda.iter().all(Fe::is_zero) || avoid.iter().any(|c| c.eval(&lambda).is_zero()) {
            continue;
        }
        out.push(lambda);
    }
    out
}

/// Random rational points in P³ from a seed, used for generic probes.
pub fn random_points(n: usize, dim: usize, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let v: Vec<Fe> = (0..=dim).map(|_| Fe::from_i64(rng.gen_range(-9..=9))).collect();
            if let Ok(p) = ProjPoint::new(v) {
                break p;
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::meets_rule;
    use crate::config::labels::intersection_number;

    #[test]
    fn general_position_failures() {
        let collinear = SixPoints::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 1, 0], [1, 2, 3]]);
        assert!(matches!(check_general_position(&collinear), Err(Error::DegeneratePoints(_))));
        // x² + y² − z² = 0 through six rational points
        let conic = SixPoints::from_i64(&[[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1], [3, 4, 5], [4, 3, 5]]);
        assert!(matches!(check_general_position(&conic), Err(Error::DegeneratePoints(_))));
        assert!(matches!(cubic_net(&conic), Err(Error::DegeneratePoints(_))));
        assert!(check_general_position(&SixPoints::fixture()).is_ok());
        // the first candidate fixture passes the predicate but has an Eckardt point
        let eckardt = SixPoints::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [1, 5, 7]]);
        assert!(check_general_position(&eckardt).is_ok());
        let s = CubicSurface::from_points(eckardt).unwrap();
        assert!(matches!(labeled_lines(&s), Err(Error::EckardtOrSingular(_))));
    }

    #[test]
    fn cubic_net_vanishes_at_points() {
        let pts = SixPoints::fixture();
        let net = cubic_net(&pts).unwrap();
        for c in &net {
            for p in &pts.points {
                assert!(c.eval(p.coords()).is_zero());
            }
        }
        let m = ExactMatrix::from_rows(net.iter().map(|c| c.coefficients(3)).collect());
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn fixture_surface_and_lines() {
        let s = CubicSurface::fixture();
        assert_eq!(implicit_relation(&s.basis).0, 19);
        assert!(s.f.compose(&s.basis).is_zero());
        let lines = labeled_lines(&s).unwrap();
        assert_eq!(lines.lines.len(), 27);
        for i in 0..27 {
            for j in 0..27 {
                if i == j {
                    continue;
                }
                let (a, b) = (LineLabel::from_index(i), LineLabel::from_index(j));
                let oracle = intersection_number(&a.picard_class(), &b.picard_class()) == 1;
                assert_eq!(lines_meet(&lines.lines[i], &lines.lines[j]).unwrap(), oracle, "{a} {b}");
                assert_eq!(meets_rule(a, b), oracle);
            }
        }
    }

    #[test]
    fn samples_are_deterministic_and_on_surface() {
        let s = CubicSurface::fixture();
        let a = sample_surface_points(&s, 20, 7);
        assert_eq!(a, sample_surface_points(&s, 20, 7));
        let lines = labeled_lines(&s).unwrap();
        for x in &a {
            assert!(s.contains(x));
            assert!(lines.lines.iter().all(|l| !l.contains(x)));
        }
    }
}
