//! Determinantal representations `det M = κ·F`, the Grassmann nets read off
//! from `M(t)·λ = A(λ)·t`, the resulting parametrization of the surface, and a
//! cubo-cubic transformation of P³ built from the same nets.

use crate::blowup::{random_points, sample_surface_points, CubicSurface};
use crate::error::{Error, Result};
use crate::field::FieldElement as Fe;
use crate::forms::CayleySalmonForm;
use crate::gcd::{common_cubic_factor, gcd};
use crate::matrix::{proportional, ExactMatrix};
use crate::poly::{monomials, MultiPoly};

pub type PolyMatrix3 = [[MultiPoly; 3]; 3];

/// Determinant of a 3×3 matrix of polynomials.
pub fn det3_poly(m: &[[MultiPoly; 3]; 3]) -> MultiPoly {
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    let t0 = &m[0][0] * &minor(1, 2, 2, 1);
    let t1 = &m[0][1] * &minor(0, 2, 2, 0);
    let t2 = &m[0][2] * &minor(0, 1, 1, 0);
    &(&t0 - &t1) + &t2
}

/// Signed maximal minors of a 3×4 matrix: `(−1)^k` times the minor without column `k`.
pub fn signed_minors(n: &[[MultiPoly; 4]; 3]) -> [MultiPoly; 4] {
    std::array::from_fn(|k| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != k).collect();
        let sub: PolyMatrix3 = std::array::from_fn(|i| std::array::from_fn(|j| n[i][cols[j]].clone()));
        let d = det3_poly(&sub);
        if k % 2 == 1 {
            -&d
        } else {
            d
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantalRep {
    /// Entries are linear forms in `t_0..t_3`.
    pub m: PolyMatrix3,
    pub kappa: Fe,
}

impl DeterminantalRep {
    pub fn det(&self) -> MultiPoly {
        det3_poly(&self.m)
    }

    /// Constant matrices `M_k` with `M(t) = Σ t_k M_k`.
    pub fn coefficient_matrices(&self) -> [ExactMatrix; 4] {
        std::array::from_fn(|k| {
            ExactMatrix::from_rows(
                (0..3)
                    .map(|i| (0..3).map(|j| self.m[i][j].linear_coefficients()[k].clone()).collect())
                    .collect(),
            )
        })
    }

    pub fn eval(&self, x: &[Fe]) -> ExactMatrix {
        ExactMatrix::from_rows(self.m.iter().map(|r| r.iter().map(|e| e.eval(x)).collect()).collect())
    }

    /// `G·M·H` for invertible constant `G` and `H`; `κ` picks up `det G · det H`.
    pub fn transform(&self, g: &ExactMatrix, h: &ExactMatrix) -> DeterminantalRep {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = MultiPoly::zero(4);
                for a in 0..3 {
                    for b in 0..3 {
                        let c = g.get(i, a) * h.get(b, j);
                        if !c.is_zero() {
                            acc = &acc + &self.m[a][b].scale(&c);
                        }
                    }
                }
                acc
            })
        });
        DeterminantalRep { m, kappa: &(&self.kappa * &g.det()) * &h.det() }
    }

    /// A fixed transform whose rows and columns are no longer pencils.
    pub fn mixed(&self) -> DeterminantalRep {
        let mat = |r: [[i64; 3]; 3]| ExactMatrix::from_rows(r.iter().map(|row| row.iter().map(|&v| Fe::from_i64(v)).collect()).collect());
        self.transform(&mat([[1, 1, 0], [0, 1, 1], [1, 0, 1]]), &mat([[1, 2, 0], [0, 1, 3], [1, 0, 1]]))
    }
}

/// `M = [[0, A₁, A₂], [B₂, 0, B₁], [C₁, C₂, 0]]` from the two trieders, with the
/// scalars absorbed so that `det M = F`.
pub fn det_rep(cs: &CayleySalmonForm) -> DeterminantalRep {
    let [a1, b1, c1, a2, b2, c2] = cs.absorbed();
    let z = MultiPoly::zero(4);
    DeterminantalRep {
        m: [[z.clone(), a1, a2], [b2, z.clone(), b1], [c1, c2, z]],
        kappa: Fe::one(),
    }
}

/// `A(λ)` with `M(t)·λ = A(λ)·t`; entries are linear forms in `λ_0..λ_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannNets {
    pub a: [[MultiPoly; 4]; 3],
}

impl GrassmannNets {
    pub fn eval(&self, lambda: &[Fe]) -> ExactMatrix {
        ExactMatrix::from_rows(self.a.iter().map(|r| r.iter().map(|e| e.eval(lambda)).collect()).collect())
    }

    /// Rank of the three λ-coefficient planes of each row.
    pub fn net_ranks(&self) -> [usize; 3] {
        std::array::from_fn(|i| {
            ExactMatrix::from_rows(
                (0..3)
                    .map(|j| (0..4).map(|k| self.a[i][k].linear_coefficients()[j].clone()).collect())
                    .collect(),
            )
            .rank()
        })
    }
}

pub fn grassmann_nets(rep: &DeterminantalRep) -> GrassmannNets {
    let mk = rep.coefficient_matrices();
    GrassmannNets {
        a: std::array::from_fn(|i| {
            std::array::from_fn(|k| MultiPoly::linear(&(0..3).map(|j| mk[k].get(i, j).clone()).collect::<Vec<_>>()))
        }),
    }
}

/// Check `M(t)·λ = A(λ)·t` as polynomials in the seven variables `(t, λ)`.
pub fn bilinear_identity(rep: &DeterminantalRep, nets: &GrassmannNets) -> bool {
    (0..3).all(|i| {
        let mut lhs = MultiPoly::zero(7);
        let mut rhs = MultiPoly::zero(7);
        for j in 0..3 {
            lhs = &lhs + &(&rep.m[i][j].embed(7, 0) * &MultiPoly::var(7, 4 + j));
        }
        for k in 0..4 {
            rhs = &rhs + &(&nets.a[i][k].embed(7, 4) * &MultiPoly::var(7, k));
        }
        lhs == rhs
    })
}

/// `γ_k(λ) = (−1)^k · det A(λ)` with column `k` removed.
pub fn grassmann_param(nets: &GrassmannNets) -> Result<[MultiPoly; 4]> {
    let gamma = signed_minors(&nets.a);
    let rows: Vec<Vec<Fe>> = gamma.iter().map(|g| g.coefficients(3)).collect();
    if gamma.iter().any(MultiPoly::is_zero) || ExactMatrix::from_rows(rows).rank() != 4 {
        return Err(Error::DegenerateNets);
    }
    Ok(gamma)
}

/// Rank of the 4×3 Jacobian of `γ` at `λ`.
pub fn jacobian_rank(gamma: &[MultiPoly; 4], lambda: &[Fe]) -> usize {
    ExactMatrix::from_rows(
        gamma
            .iter()
            .map(|g| g.gradient().iter().map(|d| d.eval(lambda)).collect())
            .collect(),
    )
    .rank()
}

/// A cubic transformation `T` of P³ with cubic inverse, given by the signed
/// maximal minors of a 3×4 matrix `N(x)` of linear forms.
#[derive(Clone, Debug)]
pub struct CuboCubicMap {
    pub n: [[MultiPoly; 4]; 3],
    pub components: [MultiPoly; 4],
    /// Common factor removed from the raw minors (constant when there is none).
    pub common_factor: MultiPoly,
    pub inverse: [MultiPoly; 4],
}

impl CuboCubicMap {
    pub fn apply(&self, x: &[Fe]) -> Vec<Fe> {
        self.components.iter().map(|c| c.eval(x)).collect()
    }

    pub fn apply_inverse(&self, y: &[Fe]) -> Vec<Fe> {
        self.inverse.iter().map(|c| c.eval(y)).collect()
    }
}

/// Row `i` of `N(x)` is the plane of net `i` at parameter `ψ_i(x) = (x_0, x_1, x_2) + x_3·e_i`.
///
/// On `x_3 = 0` all three parameters agree and `T` restricts to `γ`.
pub fn cubo_cubic(rep: &DeterminantalRep) -> Result<CuboCubicMap> {
    let mk = rep.coefficient_matrices();
    // N(x)_ik = Σ_l c[i][k][l] x_l
    let c: Vec<Vec<Vec<Fe>>> = (0..3)
        .map(|i| {
            (0..4)
                .map(|k| {
                    let mut v: Vec<Fe> = (0..3).map(|j| mk[k].get(i, j).clone()).collect();
                    v.push(mk[k].get(i, i).clone());
                    v
                })
                .collect()
        })
        .collect();
    let n: [[MultiPoly; 4]; 3] = std::array::from_fn(|i| std::array::from_fn(|k| MultiPoly::linear(&c[i][k])));
    let raw = signed_minors(&n);
    if raw.iter().any(MultiPoly::is_zero) {
        return Err(Error::DegenerateNets);
    }
    let (common_factor, components) = common_cubic_factor(&raw);
    let components: [MultiPoly; 4] = components.try_into().unwrap();
    // N(x)·y = N′(y)·x with N′(y)_il = Σ_k c[i][k][l] y_k
    let n_inv: [[MultiPoly; 4]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|l| MultiPoly::linear(&(0..4).map(|k| c[i][k][l].clone()).collect::<Vec<_>>()))
    });
    let inverse = signed_minors(&n_inv);
    Ok(CuboCubicMap { n, components, common_factor, inverse })
}

/// The vertex construction: row `i` is the net-`i` plane at the vertex
/// `λ^(i) = m_j(x) × m_k(x)` of the triangle cut out by the rows of `M(x)`.
/// Returns the quotient cubics when the four sextic minors share a cubic factor.
pub fn triangle_sextics(rep: &DeterminantalRep) -> Result<([MultiPoly; 4], MultiPoly)> {
    let mk = rep.coefficient_matrices();
    let row = |i: usize| &rep.m[i];
    let cross = |a: &[MultiPoly; 3], b: &[MultiPoly; 3]| -> [MultiPoly; 3] {
        std::array::from_fn(|s| {
            let (p, q) = ((s + 1) % 3, (s + 2) % 3);
            &(&a[p] * &b[q]) - &(&a[q] * &b[p])
        })
    };
    let c: [[MultiPoly; 4]; 3] = std::array::from_fn(|i| {
        let vertex = cross(row((i + 1) % 3), row((i + 2) % 3));
        std::array::from_fn(|k| {
            (0..3).fold(MultiPoly::zero(4), |acc, j| &acc + &vertex[j].scale(mk[k].get(i, j)))
        })
    });
    let sextics = signed_minors(&c);
    let (g, quotients) = common_cubic_factor(&sextics);
    let deg = g.total_degree().unwrap_or(0) as usize;
    if deg != 3 {
        return Err(Error::UnexpectedFactorDegree(deg));
    }
    Ok((quotients.try_into().unwrap(), g))
}

/// Number of `n` sampled surface points with `T(x) = x` projectively.
pub fn count_fixed_surface_points(map: &CuboCubicMap, surface: &CubicSurface, n: usize, seed: u64) -> usize {
    sample_surface_points(surface, n, seed)
        .iter()
        .filter(|p| proportional(&map.apply(p.coords()), p.coords()))
        .count()
}

/// Dimension of the space of cubics through the images of 25 points of a pseudorandom plane.
pub fn plane_image_cubic_dim(map: &CuboCubicMap, seed: u64) -> usize {
    let span = random_points(3, 3, seed);
    let mons = monomials(4, 3);
    let rows: Vec<Vec<Fe>> = random_points(25, 2, seed.wrapping_add(1))
        .iter()
        .filter_map(|w| {
            let x: Vec<Fe> = (0..4)
                .map(|j| (0..3).fold(Fe::zero(), |acc, s| &acc + &(&w.coords()[s] * &span[s].coords()[j])))
                .collect();
            let y = map.apply(&x);
            if y.iter().all(Fe::is_zero) {
                return None;
            }
            Some(mons.iter().map(|m| MultiPoly::from_terms(4, [(*m, Fe::one())]).eval(&y)).collect())
        })
        .collect();
    ExactMatrix::from_rows(rows).kernel().len()
}

/// `T(λ_0, λ_1, λ_2, 0) = γ(λ)` symbolically.
pub fn restricts_to_param(map: &CuboCubicMap, gamma: &[MultiPoly; 4]) -> bool {
    let subs: Vec<MultiPoly> = (0..3).map(|j| MultiPoly::var(3, j)).chain([MultiPoly::zero(3)]).collect();
    map.components.iter().zip(gamma).all(|(t, g)| &t.compose(&subs) == g)
}

/// Common factor of the four components (a constant means none).
pub fn components_gcd(map: &CuboCubicMap) -> MultiPoly {
    map.components[1..].iter().fold(map.components[0].clone(), |acc, c| gcd(&acc, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::labeled_lines;
    use crate::config::Configurations;
    use crate::forms::cayley_salmon;
    use std::sync::OnceLock;

    struct Fx {
        surface: CubicSurface,
        rep: DeterminantalRep,
    }

    fn fx() -> &'static Fx {
        static F: OnceLock<Fx> = OnceLock::new();
        F.get_or_init(|| {
            let surface = CubicSurface::fixture();
            let lines = labeled_lines(&surface).unwrap();
            let configs = Configurations::compute();
            let cs = cayley_salmon(&configs.trieder_pairs[0], &surface, &lines).unwrap();
            Fx { rep: det_rep(&cs), surface }
        })
    }

    #[test]
    fn segre_shape_determinant() {
        let f = fx();
        assert_eq!(f.rep.det(), f.surface.f.scale(&f.rep.kappa));
        for i in 0..3 {
            assert!(f.rep.m[i][i].is_zero());
        }
        let x = &sample_surface_points(&f.surface, 1, 3)[0];
        assert_eq!(f.rep.eval(x.coords()).rank(), 2);
        let mixed = f.rep.mixed();
        assert_eq!(mixed.det(), f.surface.f.scale(&mixed.kappa));
        assert_eq!(mixed.kappa, Fe::from_i64(14));
    }

    #[test]
    fn nets_and_parametrization() {
        let f = fx();
        for rep in [f.rep.clone(), f.rep.mixed()] {
            let nets = grassmann_nets(&rep);
            assert!(bilinear_identity(&rep, &nets));
            let gamma = grassmann_param(&nets).unwrap();
            assert!(f.surface.f.compose(&gamma).is_zero());
            let lam = [Fe::from_i64(2), Fe::from_i64(-3), Fe::from_i64(5)];
            assert_eq!(jacobian_rank(&gamma, &lam), 3);
            // A(e_1): coefficients of the first column of M
            let e1 = nets.eval(&[Fe::one(), Fe::zero(), Fe::zero()]);
            for i in 0..3 {
                assert_eq!(e1.row(i), rep.m[i][0].linear_coefficients().as_slice());
            }
        }
        // rows of the zero-diagonal shape are pencils; mixing makes them nets
        assert_eq!(grassmann_nets(&f.rep).net_ranks(), [2, 2, 2]);
        assert_eq!(grassmann_nets(&f.rep.mixed()).net_ranks(), [3, 3, 3]);
    }

    #[test]
    fn cubo_cubic_properties() {
        let f = fx();
        let rep = f.rep.mixed();
        let map = cubo_cubic(&rep).unwrap();
        assert!(map.common_factor.is_constant());
        assert!(map.components.iter().all(|c| c.total_degree() == Some(3)));
        assert!(components_gcd(&map).is_constant());
        let gamma = grassmann_param(&grassmann_nets(&rep)).unwrap();
        assert!(restricts_to_param(&map, &gamma));
        assert_eq!(plane_image_cubic_dim(&map, 11), 1);
        for p in random_points(10, 3, 5) {
            let y = map.apply(p.coords());
            if y.iter().all(Fe::is_zero) {
                continue;
            }
            assert!(proportional(&map.apply_inverse(&y), p.coords()));
        }
        for p in sample_surface_points(&f.surface, 5, 2) {
            let x = map.apply_inverse(p.coords());
            assert!(x[3].is_zero());
        }
        // the surface is not fixed pointwise
        assert!(count_fixed_surface_points(&map, &f.surface, 20, 0) < 20);
    }

    #[test]
    fn vertex_construction_has_no_cubic_factor() {
        let f = fx();
        assert!(matches!(triangle_sextics(&f.rep.mixed()), Err(Error::UnexpectedFactorDegree(d)) if d != 3));
    }
}
