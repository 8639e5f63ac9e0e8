//! Tritangent planes, Cayley–Salmon forms `F = λ·PQR + μ·STU`, and Cremona
//! hexahedral forms `Σ x_i³ = c·F` with `Σ x_i = 0`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::binary::{solve_cubic, CubicRoot};
use crate::blowup::{sample_surface_points, CubicSurface, LabeledLines};
use crate::config::group::{AutomorphismGroup, Perm};
use crate::config::{Configurations, DoubleSix, TriederPair, Trio};
use crate::error::{Error, Result};
use crate::field::{rational_sqrt, FieldDescriptor, FieldElement as Fe};
use crate::matrix::{normalize_projective, scalar_multiple, ExactMatrix};
use crate::poly::MultiPoly;
use crate::projgeom::{meet_planes, span_line_point, ProjLine, ProjPlane};

/// The plane spanned by a coplanar trio of lines.
pub fn tritangent_plane(trio: &Trio, lines: &LabeledLines) -> Result<ProjPlane> {
    let l0 = lines.line(trio[0] as usize);
    let l1 = lines.line(trio[1] as usize);
    let (p, q) = l1.points();
    let x = if l0.contains(p) { q } else { p };
    let plane = span_line_point(l0, x).map_err(|_| Error::NotCoplanar)?;
    if trio.iter().all(|&k| plane.contains_line(lines.line(k as usize))) {
        Ok(plane)
    } else {
        Err(Error::NotCoplanar)
    }
}

/// Does `f` restricted to `plane` equal, up to a scalar, the product of the three
/// lines' equations inside the plane?
pub fn plane_section_factors(f: &MultiPoly, plane: &ProjPlane, trio: [&ProjLine; 3]) -> bool {
    let basis = ExactMatrix::from_rows(vec![plane.coeffs().to_vec()]).kernel();
    debug_assert_eq!(basis.len(), 3);
    let param: Vec<MultiPoly> = (0..4)
        .map(|j| MultiPoly::linear(&[basis[0][j].clone(), basis[1][j].clone(), basis[2][j].clone()]))
        .collect();
    let bt = ExactMatrix::from_columns(basis.clone());
    let in_plane = |l: &ProjLine| -> Option<MultiPoly> {
        let (p, q) = l.points();
        let yp = bt.solve_unique(p.coords())?;
        let yq = bt.solve_unique(q.coords())?;
        let cross = [
            &(&yp[1] * &yq[2]) - &(&yp[2] * &yq[1]),
            &(&yp[2] * &yq[0]) - &(&yp[0] * &yq[2]),
            &(&yp[0] * &yq[1]) - &(&yp[1] * &yq[0]),
        ];
        Some(MultiPoly::linear(&cross))
    };
    let Some(eqs) = trio.iter().map(|l| in_plane(l)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    let g = f.compose(&param);
    let Some(rest) = g.div_exact(&eqs[0]).and_then(|h| h.div_exact(&eqs[1])) else {
        return false;
    };
    scalar_multiple(&rest.coefficients(1), &eqs[2].coefficients(1)).is_some_and(|k| !k.is_zero())
}

/// `F = λ·PQR + μ·STU` with `P, Q, R` the planes of the pair's rows and
/// `S, T, U` those of its columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleySalmonForm {
    pub planes: [ProjPlane; 6],
    pub lambda: Fe,
    pub mu: Fe,
    pub pair: TriederPair,
}

impl CayleySalmonForm {
    /// Linear forms with the scalars absorbed into `P` and `S`, so `F = pqr + stu`.
    pub fn absorbed(&self) -> [MultiPoly; 6] {
        std::array::from_fn(|k| {
            let l = self.planes[k].linear_form();
            match k {
                0 => l.scale(&self.lambda),
                3 => l.scale(&self.mu),
                _ => l,
            }
        })
    }

    pub fn cubic(&self) -> MultiPoly {
        let [p, q, r, s, t, u] = self.absorbed();
        &(&(&p * &q) * &r) + &(&(&s * &t) * &u)
    }
}

/// Solve `[PQR | STU]·(λ, μ)ᵀ = F` for given planes.
pub fn cs_from_planes(planes: [ProjPlane; 6], pair: TriederPair, f: &MultiPoly) -> Result<CayleySalmonForm> {
    let forms: Vec<MultiPoly> = planes.iter().map(ProjPlane::linear_form).collect();
    let prod = |a: usize| &(&forms[a] * &forms[a + 1]) * &forms[a + 2];
    let cols = vec![prod(0).coefficients(3), prod(3).coefficients(3)];
    let sol = ExactMatrix::from_columns(cols)
        .solve_unique(&f.coefficients(3))
        .ok_or(Error::NoDecomposition)?;
    if sol.iter().any(Fe::is_zero) {
        return Err(Error::NoDecomposition);
    }
    let [lambda, mu]: [Fe; 2] = sol.try_into().unwrap();
    Ok(CayleySalmonForm { planes, lambda, mu, pair })
}

pub fn cayley_salmon(pair: &TriederPair, surface: &CubicSurface, lines: &LabeledLines) -> Result<CayleySalmonForm> {
    let rows = pair.rows();
    let cols = pair.columns();
    let planes: Vec<ProjPlane> = rows
        .iter()
        .chain(cols.iter())
        .map(|t| tritangent_plane(t, lines))
        .collect::<Result<_>>()?;
    cs_from_planes(planes.try_into().unwrap(), *pair, &surface.f)
}

/// Which displayed fifth constraint produced a valid hexahedral form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignConvention {
    /// `pqr − stu = 0`
    Minus,
    /// `pqr + stu = 0`
    Plus,
}

impl SignConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            SignConvention::Minus => "pqr-stu",
            SignConvention::Plus => "pqr+stu",
        }
    }
}

/// Six linear forms with `Σ x_i = 0` and `Σ x_i³ = c·F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexahedralForm {
    pub x: [MultiPoly; 6],
    pub c: Fe,
    /// Second relation `Σ a_i x_i = 0`, normalized with `a_6 = 0` and first nonzero entry 1.
    pub a: [Fe; 6],
    pub field: FieldDescriptor,
    pub sign: SignConvention,
    /// `P′, Q′, R′, S′, T′, U′` in the roles used by the derivation.
    pub primes: [MultiPoly; 6],
    /// Degree of the irreducible factor of the binary cubic this form came from.
    pub factor_degree: usize,
}

impl HexahedralForm {
    /// The 6×4 coefficient matrix.
    pub fn matrix(&self) -> Vec<Vec<Fe>> {
        self.x.iter().map(MultiPoly::linear_coefficients).collect()
    }

    pub fn sum_of_cubes(&self) -> MultiPoly {
        self.x.iter().fold(MultiPoly::zero(4), |acc, x| &acc + &x.pow(3))
    }

    pub fn plane(&self, i: usize, j: usize) -> Result<ProjPlane> {
        ProjPlane::from_linear_form(&(&self.x[i] + &self.x[j]))
    }
}

/// Result of running the derivation on one Cayley–Salmon form.
#[derive(Clone, Debug)]
pub struct HexahedralDerivation {
    pub forms: Vec<HexahedralForm>,
    pub sign: SignConvention,
    /// Number of roots of the binary cubic over the field of the CS form.
    pub base_count: usize,
    /// Number of roots over the splitting field (`Σ` factor degrees).
    pub split_count: usize,
}

fn relation_vector(x: &[MultiPoly; 6]) -> Result<[Fe; 6]> {
    let m = ExactMatrix::from_columns(x.iter().map(MultiPoly::linear_coefficients).collect());
    let ker = m.kernel();
    if ker.len() != 2 {
        return Err(Error::DependentForms);
    }
    let (k1, k2) = (&ker[0], &ker[1]);
    let v: Vec<Fe> = (0..6).map(|i| &(&k1[i] * &k2[5]) - &(&k2[i] * &k1[5])).collect();
    let v = normalize_projective(&v).ok_or(Error::DependentForms)?;
    Ok(v.try_into().unwrap())
}

/// One root `(t : u)` with the field it lives in.
#[derive(Clone, Debug)]
struct Root {
    t: Fe,
    u: Fe,
    field: FieldDescriptor,
    degree: usize,
}

fn roots_of(coeffs: &[Fe; 4], split: bool) -> Result<(Vec<Root>, usize)> {
    let found: Vec<CubicRoot> = solve_cubic(coeffs, "h")?;
    let base_count = found.iter().filter(|r| r.factor_degree == 1).count();
    let mut out = Vec::new();
    for r in found {
        let root = Root { t: r.t.clone(), u: r.u.clone(), field: r.field.clone(), degree: r.factor_degree };
        if !split || r.factor_degree == 1 {
            out.push(root);
            continue;
        }
        let (_, m) = r.field.tower().pop().unwrap();
        let theta = r.t.clone();
        let one = Fe::one();
        if r.factor_degree == 2 {
            let other = &(-&m[1]) - &theta;
            out.push(root);
            out.push(Root { t: other, u: one, field: r.field, degree: 2 });
            continue;
        }
        // cubic: deflate by (t − θ), leaving t² + q1 t + q0
        let q1 = &m[2] + &theta;
        let q0 = &m[1] + &(&theta * &q1);
        let disc = crate::binary::cubic_discriminant(&[m[0].clone(), m[1].clone(), m[2].clone(), one.clone()]);
        let square_root = disc.as_rational().and_then(rational_sqrt);
        let (field, r2, r3) = match square_root {
            Some(delta) => {
                // cyclic case: θ2 − θ3 = √D / m′(θ)
                let md = &(&(&Fe::from_i64(3) * &theta.pow(2)) + &(&Fe::from_i64(2) * &(&m[2] * &theta))) + &m[1];
                let diff = &Fe::from_rational(delta) * &md.inv();
                let half = Fe::from_ratio(1, 2);
                let r2 = &(&(-&q1) + &diff) * &half;
                let r3 = &(&(-&q1) - &diff) * &half;
                (r.field.clone(), r2, r3)
            }
            None => {
                let ext = r.field.extend(vec![q0.clone(), q1.clone(), one.clone()], "h2")?;
                let phi = ext.generator();
                let other = &(-&q1) - &phi;
                (ext, phi, other)
            }
        };
        out.push(Root { t: theta, u: one.clone(), field: field.clone(), degree: 3 });
        out.push(Root { t: r2, u: one.clone(), field: field.clone(), degree: 3 });
        out.push(Root { t: r3, u: one, field, degree: 3 });
    }
    Ok((out, base_count))
}

/// Role assignments `(P, Q, R, S, T, U)` respecting the two trieders.
fn role_orders() -> Vec<[usize; 6]> {
    let mut out = Vec::new();
    for (first, second) in [([0, 1, 2], [3, 4, 5]), ([3, 4, 5], [0, 1, 2])] {
        for s in 0..3 {
            let rest: Vec<usize> = (0..3).filter(|&k| k != s).map(|k| second[k]).collect();
            out.push([first[0], first[1], first[2], second[s], rest[0], rest[1]]);
        }
    }
    out
}

fn derive_with_sign(
    forms: &[MultiPoly; 6],
    f: &MultiPoly,
    sign: SignConvention,
    split: bool,
) -> Result<Option<(Vec<HexahedralForm>, usize, usize)>> {
    let coeff_vec: Vec<Vec<Fe>> = forms.iter().map(MultiPoly::linear_coefficients).collect();
    let mut chosen = None;
    for order in role_orders() {
        let basis = ExactMatrix::from_columns((0..4).map(|k| coeff_vec[order[k]].clone()).collect());
        if basis.rank() == 4 {
            chosen = Some((order, basis));
            break;
        }
    }
    let (order, basis) = chosen.ok_or(Error::DependentForms)?;
    // T = Σ α_k (P, Q, R, S)_k and likewise U = Σ β_k
    let alpha = basis.solve_unique(&coeff_vec[order[4]]).unwrap();
    let beta = basis.solve_unique(&coeff_vec[order[5]]).unwrap();
    // pP + qQ + rR + sS + tT + uU = 0 gives p_k = −(t α_k + u β_k)
    let lin = |k: usize| -> MultiPoly { MultiPoly::linear(&[-&alpha[k], -&beta[k]]) };
    let t = MultiPoly::var(2, 0);
    let u = MultiPoly::var(2, 1);
    let pqr = &(&lin(0) * &lin(1)) * &lin(2);
    let stu = &(&lin(3) * &t) * &u;
    let cubic = match sign {
        SignConvention::Minus => &pqr - &stu,
        SignConvention::Plus => &pqr + &stu,
    };
    // coefficient of t^k u^(3−k)
    let coeffs: [Fe; 4] = std::array::from_fn(|k| {
        cubic.coeff(&crate::poly::Monomial::from_exponents(&[k as u8, 3 - k as u8]))
    });
    let (roots, base_count) = roots_of(&coeffs, split)?;
    let split_count: usize = if split {
        roots.len()
    } else {
        roots.iter().map(|r| r.degree).sum()
    };
    let mut out = Vec::new();
    for root in roots {
        let tu = [root.t.clone(), root.u.clone()];
        let mut scal: Vec<Fe> = (0..4).map(|k| lin(k).eval(&tu)).collect();
        scal.push(root.t.clone());
        scal.push(root.u.clone());
        let primes: [MultiPoly; 6] = std::array::from_fn(|k| forms[order[k]].scale(&scal[k]));
        let [pp, qp, rp, sp, tp, up] = &primes;
        let x: [MultiPoly; 6] = [
            &(qp + rp) - pp,
            &(pp + rp) - qp,
            &(pp + qp) - rp,
            &(tp + up) - sp,
            &(sp + up) - tp,
            &(sp + tp) - up,
        ];
        let sum = x.iter().fold(MultiPoly::zero(4), |acc, xi| &acc + xi);
        debug_assert!(sum.is_zero());
        let cubes = x.iter().fold(MultiPoly::zero(4), |acc, xi| &acc + &xi.pow(3));
        let c = match scalar_multiple(&cubes.coefficients(3), &f.coefficients(3)) {
            Some(c) if !c.is_zero() && sum.is_zero() => c,
            _ => return Ok(None),
        };
        let a = relation_vector(&x)?;
        out.push(HexahedralForm { x, c, a, field: root.field, sign, primes, factor_degree: root.degree });
    }
    Ok(Some((out, base_count, split_count)))
}

/// The hexahedral forms derived from one Cayley–Salmon form.
///
/// Both candidate fifth constraints are tried; exactly one must give forms with
/// `Σ x_i³` a nonzero multiple of `F`.
pub fn hexahedral_from_cs(cs: &CayleySalmonForm, split: bool) -> Result<HexahedralDerivation> {
    let f = cs.cubic();
    let forms = cs.absorbed();
    let minus = derive_with_sign(&forms, &f, SignConvention::Minus, split);
    let plus = derive_with_sign(&forms, &f, SignConvention::Plus, split);
    match (minus, plus) {
        (Ok(Some(_)), Ok(Some(_))) => panic!("both sign conventions verified"),
        (Ok(Some((forms, b, s))), _) => Ok(HexahedralDerivation { forms, sign: SignConvention::Minus, base_count: b, split_count: s }),
        (_, Ok(Some((forms, b, s)))) => Ok(HexahedralDerivation { forms, sign: SignConvention::Plus, base_count: b, split_count: s }),
        (Err(e), _) => Err(e),
        (_, Err(e)) => Err(e),
        _ => Err(Error::NoDecomposition),
    }
}

/// Partition of `{0..5}` into three pairs, each pair ascending, pairs sorted.
pub type PairPartition = [[usize; 2]; 3];

pub fn pair_partitions() -> Vec<PairPartition> {
    let mut out = Vec::new();
    for j in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&k| k != j).collect();
        for m in 1..4 {
            let r: Vec<usize> = (1..4).filter(|&k| k != m).map(|k| rest[k]).collect();
            out.push([[0, j], [rest[0], rest[m]], [r[0], r[1]]]);
        }
    }
    out
}

/// Partition of `{0..5}` into two triples, the one containing 0 first.
pub type TriplePartition = [[usize; 3]; 2];

pub fn triple_partitions() -> Vec<TriplePartition> {
    let mut out = Vec::new();
    for a in 1..6 {
        for b in a + 1..6 {
            let rest: Vec<usize> = (1..6).filter(|&k| k != a && k != b).collect();
            out.push([[0, a, b], [rest[0], rest[1], rest[2]]]);
        }
    }
    out
}

/// The 15 lines of a hexahedral form and the double-six they leave out.
#[derive(Clone, Debug)]
pub struct HexahedralLines {
    pub partitions: Vec<PairPartition>,
    pub lines: Vec<ProjLine>,
    /// Label index of each line.
    pub labels: Vec<usize>,
    pub double_six: DoubleSix,
    pub double_six_index: usize,
}

impl HexahedralLines {
    /// Label index of the line `V(x_i + x_j) ∩ V(x_k + x_l) ∩ V(x_m + x_n)`.
    pub fn label_of(&self, p: &PairPartition) -> usize {
        self.labels[self.partitions.iter().position(|q| q == p).unwrap()]
    }
}

pub fn hexahedral_lines(
    hex: &HexahedralForm,
    surface: &CubicSurface,
    lines: &LabeledLines,
    configs: &Configurations,
) -> Result<HexahedralLines> {
    let lookup: HashMap<&ProjLine, usize> = lines.lines.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let partitions = pair_partitions();
    let mut out_lines = Vec::new();
    let mut labels = Vec::new();
    for p in &partitions {
        let h1 = hex.plane(p[0][0], p[0][1])?;
        let h2 = hex.plane(p[1][0], p[1][1])?;
        let l = meet_planes(&h1, &h2).map_err(|_| Error::LineNotOnSurface)?;
        if !l.lies_on(&surface.f) {
            return Err(Error::LineNotOnSurface);
        }
        let k = *lookup.get(&l).ok_or(Error::LineNotOnSurface)?;
        out_lines.push(l);
        labels.push(k);
    }
    let used: u32 = labels.iter().fold(0, |acc, &k| acc | 1 << k);
    let complement = !used & ((1 << 27) - 1);
    let (double_six_index, double_six) = configs
        .double_sixes
        .iter()
        .enumerate()
        .find(|(_, d)| d.lines() == complement)
        .map(|(k, d)| (k, *d))
        .ok_or(Error::LineNotOnSurface)?;
    Ok(HexahedralLines { partitions, lines: out_lines, labels, double_six, double_six_index })
}

/// `(x_{i2}+x_{i3})(x_{i1}+x_{i3})(x_{i1}+x_{i2})` for a triple of indices.
pub fn triple_product(hex: &HexahedralForm, t: &[usize; 3]) -> MultiPoly {
    let s = |i: usize, j: usize| &hex.x[i] + &hex.x[j];
    &(&s(t[1], t[2]) * &s(t[0], t[2])) * &s(t[0], t[1])
}

/// The ten Cayley–Salmon forms carried by a hexahedral form.
///
/// Each cubic `Π_I + Π_J` equals `−(c/3)·F`.
pub fn cs_from_hexahedral(
    hex: &HexahedralForm,
    hl: &HexahedralLines,
    surface: &CubicSurface,
    lines: &LabeledLines,
) -> Result<Vec<(TriplePartition, CayleySalmonForm)>> {
    let target = surface.f.scale(&(&(-&hex.c) * &Fe::from_ratio(1, 3)));
    let mut out = Vec::new();
    for tp in triple_partitions() {
        let cubic = &triple_product(hex, &tp[0]) + &triple_product(hex, &tp[1]);
        if cubic != target {
            return Err(Error::NoDecomposition);
        }
        // the trio in plane V(x_a + x_b): lines whose partition contains {a, b}
        let trio_of = |a: usize, b: usize| -> Trio {
            let pr = [a.min(b), a.max(b)];
            let mut t: Vec<u8> = hl
                .partitions
                .iter()
                .zip(&hl.labels)
                .filter(|(p, _)| p.contains(&pr))
                .map(|(_, &k)| k as u8)
                .collect();
            t.sort();
            t.try_into().unwrap()
        };
        let trieder = |t: &[usize; 3]| [trio_of(t[1], t[2]), trio_of(t[0], t[2]), trio_of(t[0], t[1])];
        let pair = TriederPair::from_trieders(trieder(&tp[0]), trieder(&tp[1]));
        let cs = cayley_salmon(&pair, surface, lines)?;
        out.push((tp, cs));
    }
    Ok(out)
}

/// A group element taking `ds` to the double-six `a_1..a_6 | b_1..b_6`.
pub fn relabel_to_ab(ds: &DoubleSix, group: &AutomorphismGroup) -> Option<Perm> {
    let ab = DoubleSix::canonical([0, 1, 2, 3, 4, 5], [6, 7, 8, 9, 10, 11]);
    group.elements.iter().find(|g| ds.map(g) == ab).copied()
}

#[derive(Clone, Debug)]
pub struct SegreCheck {
    pub a: [Fe; 6],
    pub relation_dim: usize,
    pub points_checked: usize,
    pub all_on_segre: bool,
}

/// Evaluate `(x_1 : … : x_6)` at sampled surface points and check both Segre equations.
pub fn segre_membership(hex: &HexahedralForm, surface: &CubicSurface, n: usize, seed: u64) -> SegreCheck {
    let m = ExactMatrix::from_columns(hex.x.iter().map(MultiPoly::linear_coefficients).collect());
    let relation_dim = m.kernel().len();
    let points = sample_surface_points(surface, n, seed);
    let all_on_segre = points.iter().all(|p| {
        let v: Vec<Fe> = hex.x.iter().map(|x| x.eval(p.coords())).collect();
        let s1 = v.iter().fold(Fe::zero(), |acc, y| &acc + y);
        let s3 = v.iter().fold(Fe::zero(), |acc, y| &acc + &y.pow(3));
        s1.is_zero() && s3.is_zero()
    });
    SegreCheck { a: hex.a.clone(), relation_dim, points_checked: points.len(), all_on_segre }
}

/// One deduplicated hexahedral form with its provenance.
#[derive(Clone, Debug)]
pub struct EnumeratedHexahedral {
    pub cs_index: usize,
    pub form: HexahedralForm,
    pub lines: HexahedralLines,
}

#[derive(Clone, Debug)]
pub struct HexahedralCensus {
    /// Deduplicated by complementary double-six, keyed by double-six index.
    pub forms: BTreeMap<usize, EnumeratedHexahedral>,
    pub cs_used: usize,
    pub base_counts: Vec<usize>,
    pub split_counts: Vec<usize>,
    pub signs: Vec<SignConvention>,
    /// Forms found before deduplication.
    pub raw: usize,
}

/// Hexahedral forms from the first `limit` Cayley–Salmon forms (all 120 when `None`).
pub fn enumerate_hexahedral(
    surface: &CubicSurface,
    lines: &LabeledLines,
    configs: &Configurations,
    limit: Option<usize>,
    split: bool,
) -> Result<HexahedralCensus> {
    let n = limit.unwrap_or(configs.trieder_pairs.len()).min(configs.trieder_pairs.len());
    let per_cs: Vec<(usize, HexahedralDerivation, Vec<HexahedralLines>)> = (0..n)
        .into_par_iter()
        .map(|k| {
            let cs = cayley_salmon(&configs.trieder_pairs[k], surface, lines)?;
            let d = hexahedral_from_cs(&cs, split)?;
            let hls = d
                .forms
                .iter()
                .map(|h| hexahedral_lines(h, surface, lines, configs))
                .collect::<Result<Vec<_>>>()?;
            Ok((k, d, hls))
        })
        .collect::<Result<_>>()?;
    let mut forms = BTreeMap::new();
    let mut raw = 0;
    let (mut base_counts, mut split_counts, mut signs) = (Vec::new(), Vec::new(), Vec::new());
    for (k, d, hls) in per_cs {
        base_counts.push(d.base_count);
        split_counts.push(d.split_count);
        signs.push(d.sign);
        for (form, hl) in d.forms.into_iter().zip(hls) {
            raw += 1;
            forms
                .entry(hl.double_six_index)
                .or_insert(EnumeratedHexahedral { cs_index: k, form, lines: hl });
        }
    }
    Ok(HexahedralCensus { forms, cs_used: n, base_counts, split_counts, signs, raw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::labeled_lines;
    use std::sync::OnceLock;

    struct Fixture {
        surface: CubicSurface,
        lines: LabeledLines,
        configs: Configurations,
    }

    fn fixture() -> &'static Fixture {
        static F: OnceLock<Fixture> = OnceLock::new();
        F.get_or_init(|| {
            let surface = CubicSurface::fixture();
            let lines = labeled_lines(&surface).unwrap();
            Fixture { surface, lines, configs: Configurations::compute() }
        })
    }

    #[test]
    fn tritangent_planes_are_distinct_and_factor() {
        let fx = fixture();
        let mut planes = std::collections::HashSet::new();
        for t in &fx.configs.tritangents {
            let h = tritangent_plane(t, &fx.lines).unwrap();
            let ls = t.map(|k| fx.lines.line(k as usize));
            assert!(plane_section_factors(&fx.surface.f, &h, [ls[0], ls[1], ls[2]]));
            planes.insert(h);
        }
        assert_eq!(planes.len(), 45);
    }

    #[test]
    fn non_coplanar_trio_is_rejected() {
        let fx = fixture();
        // a1, a2, a3 are pairwise skew
        assert_eq!(tritangent_plane(&[0, 1, 2], &fx.lines), Err(Error::NotCoplanar));
    }

    #[test]
    fn cayley_salmon_identity_for_all_pairs() {
        let fx = fixture();
        assert_eq!(fx.configs.trieder_pairs.len(), 120);
        fx.configs.trieder_pairs.par_iter().for_each(|pair| {
            let cs = cayley_salmon(pair, &fx.surface, &fx.lines).unwrap();
            assert_eq!(cs.cubic(), fx.surface.f);
            for k in pair.m.iter().flatten() {
                let l = fx.lines.line(*k as usize);
                let [p, q, r, s, t, u] = cs.absorbed();
                assert!(l.lies_on(&(&(&p * &q) * &r)));
                assert!(l.lies_on(&(&(&s * &t) * &u)));
            }
        });
    }

    #[test]
    fn partitions() {
        let p = pair_partitions();
        assert_eq!(p.len(), 15);
        assert_eq!(p.iter().collect::<std::collections::HashSet<_>>().len(), 15);
        assert_eq!(triple_partitions().len(), 10);
    }

    #[test]
    fn hexahedral_forms_of_one_cs() {
        let fx = fixture();
        let cs = cayley_salmon(&fx.configs.trieder_pairs[0], &fx.surface, &fx.lines).unwrap();
        let d = hexahedral_from_cs(&cs, false).unwrap();
        assert_eq!(d.sign, SignConvention::Minus);
        assert_eq!(d.split_count, 3);
        assert!(!d.forms.is_empty() && d.forms.len() <= 3);
        let group = AutomorphismGroup::compute();
        for h in &d.forms {
            assert!(h.x.iter().fold(MultiPoly::zero(4), |a, x| &a + x).is_zero());
            assert_eq!(h.sum_of_cubes(), fx.surface.f.scale(&h.c));
            assert!(!h.c.is_zero());
            // x_2 + x_3 = 2P′ and its companions
            let two = Fe::from_i64(2);
            assert_eq!(&h.x[1] + &h.x[2], h.primes[0].scale(&two));
            assert_eq!(&h.x[0] + &h.x[2], h.primes[1].scale(&two));
            assert_eq!(&h.x[0] + &h.x[1], h.primes[2].scale(&two));
            assert_eq!(&h.x[4] + &h.x[5], h.primes[3].scale(&two));

            let hl = hexahedral_lines(h, &fx.surface, &fx.lines, &fx.configs).unwrap();
            assert_eq!(hl.lines.len(), 15);
            assert!(hl.double_six.verify());
            let p = [[0, 1], [2, 3], [4, 5]];
            let l = &hl.lines[hl.partitions.iter().position(|q| *q == p).unwrap()];
            assert!(h.plane(0, 1).unwrap().contains_line(l));

            let css = cs_from_hexahedral(h, &hl, &fx.surface, &fx.lines).unwrap();
            assert_eq!(css.len(), 10);
            let g = relabel_to_ab(&hl.double_six, &group).unwrap();
            for (_, c) in &css {
                assert_eq!(c.cubic(), fx.surface.f);
                assert!(c.pair.m.iter().flatten().all(|&k| g.apply(k) >= 12));
                assert!(c.pair.m.iter().flatten().all(|k| hl.labels.contains(&(*k as usize))));
            }

            let seg = segre_membership(h, &fx.surface, 20, 7);
            assert_eq!(seg.relation_dim, 2);
            assert!(seg.all_on_segre);
            assert!(!crate::matrix::proportional(&seg.a, &vec![Fe::one(); 6]));
        }
    }

    #[test]
    fn full_enumeration_gives_36() {
        let fx = fixture();
        let census = enumerate_hexahedral(&fx.surface, &fx.lines, &fx.configs, None, false).unwrap();
        assert_eq!(census.forms.len(), 36);
        assert_eq!(census.raw, 360);
        assert!(census.split_counts.iter().all(|&s| s == 3));
        assert!(census.signs.iter().all(|&s| s == SignConvention::Minus));
    }

    fn random_cs(seed: i64) -> CayleySalmonForm {
        let pl = |a: [i64; 4]| ProjPlane::from_i64(&a);
        let planes = [
            pl([1, 0, 0, 0]),
            pl([0, 1, 0, 0]),
            pl([0, 0, 1, 0]),
            pl([0, 0, 0, 1]),
            pl([1, 2 + seed, -1, 3]),
            pl([2, -1, 5 + seed, 7]),
        ];
        let pair = fixture().configs.trieder_pairs[0];
        CayleySalmonForm { planes, lambda: Fe::one(), mu: Fe::from_i64(seed), pair }
    }

    #[test]
    fn split_mode_over_extensions() {
        for seed in 1..6 {
            let cs = random_cs(seed);
            let f = cs.cubic();
            let d = hexahedral_from_cs(&cs, false).unwrap();
            assert_eq!(d.split_count, 3);
            for h in &d.forms {
                assert_eq!(h.sum_of_cubes(), f.scale(&h.c));
            }
            let s = hexahedral_from_cs(&cs, true).unwrap();
            assert_eq!(s.forms.len(), 3, "seed {seed}");
            for h in &s.forms {
                assert_eq!(h.sum_of_cubes(), f.scale(&h.c));
            }
        }
    }
}
