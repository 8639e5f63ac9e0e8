//! Points, planes and lines of projective 2- and 3-space over a [`FieldElement`] field.

use crate::error::{Error, Result};
use crate::field::FieldElement as Fe;
use crate::matrix::{dot, kernel_basis, normalize_projective, ExactMatrix};
use crate::poly::MultiPoly;

/// Homogeneous coordinates, scaled so the first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint {
    coords: Vec<Fe>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Fe>) -> Result<Self> {
        normalize_projective(&coords)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| Error::InvalidInput("zero coordinate vector".into()))
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        ProjPoint::new(coords.iter().map(|&c| Fe::from_i64(c)).collect()).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Apply a field automorphism coordinatewise.
    pub fn map(&self, f: impl Fn(&Fe) -> Fe) -> ProjPoint {
        ProjPoint::new(self.coords.iter().map(f).collect()).expect("automorphism keeps nonzero")
    }
}

/// A plane `Σ c_i t_i = 0` of P³ (or a line of P²), canonically scaled.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPlane {
    coeffs: Vec<Fe>,
}

impl ProjPlane {
    pub fn new(coeffs: Vec<Fe>) -> Result<Self> {
        normalize_projective(&coeffs)
            .map(|coeffs| ProjPlane { coeffs })
            .ok_or_else(|| Error::InvalidInput("zero plane covector".into()))
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ProjPlane::new(coeffs.iter().map(|&c| Fe::from_i64(c)).collect()).expect("nonzero plane")
    }

    pub fn from_linear_form(form: &MultiPoly) -> Result<Self> {
        ProjPlane::new(form.linear_coefficients())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn eval(&self, p: &[Fe]) -> Fe {
        dot(&self.coeffs, p)
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p.coords()).is_zero()
    }

    pub fn contains_line(&self, l: &ProjLine) -> bool {
        self.contains(&l.p) && self.contains(&l.q)
    }

    pub fn linear_form(&self) -> MultiPoly {
        MultiPoly::linear(&self.coeffs)
    }

    pub fn map(&self, f: impl Fn(&Fe) -> Fe) -> ProjPlane {
        ProjPlane::new(self.coeffs.iter().map(f).collect()).expect("automorphism keeps nonzero")
    }
}

/// Line of P³ stored by two spanning points plus its canonical Plücker vector.
#[derive(Clone, Debug)]
pub struct ProjLine {
    p: ProjPoint,
    q: ProjPoint,
    plucker: [Fe; 6],
}

impl PartialEq for ProjLine {
    fn eq(&self, other: &Self) -> bool {
        self.plucker == other.plucker
    }
}

impl Eq for ProjLine {}

impl std::hash::Hash for ProjLine {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.plucker.hash(state);
    }
}

const PLUCKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn plucker_raw(p: &[Fe], q: &[Fe]) -> [Fe; 6] {
    PLUCKER_PAIRS.map(|(i, j)| &(&p[i] * &q[j]) - &(&p[j] * &q[i]))
}

/// `p01 q23 − p02 q13 + p03 q12 + p12 q03 − p13 q02 + p23 q01`.
pub fn plucker_pairing(a: &[Fe; 6], b: &[Fe; 6]) -> Fe {
    let t = |i: usize, j: usize| &a[i] * &b[j];
    &(&(&(&(&t(0, 5) - &t(1, 4)) + &t(2, 3)) + &t(3, 2)) - &t(4, 1)) + &t(5, 0)
}

impl ProjLine {
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Self> {
        assert_eq!(p.dim(), 3, "lines live in P³");
        let raw = plucker_raw(p.coords(), q.coords());
        let canon = normalize_projective(&raw).ok_or(Error::EqualLines)?;
        Ok(ProjLine {
            p: p.clone(),
            q: q.clone(),
            plucker: canon.try_into().expect("six coordinates"),
        })
    }

    pub fn points(&self) -> (&ProjPoint, &ProjPoint) {
        (&self.p, &self.q)
    }

    pub fn plucker(&self) -> &[Fe; 6] {
        &self.plucker
    }

    /// `s·p + t·q`.
    pub fn point_at(&self, s: &Fe, t: &Fe) -> Result<ProjPoint> {
        ProjPoint::new(
            self.p
                .coords()
                .iter()
                .zip(self.q.coords())
                .map(|(a, b)| &(s * a) + &(t * b))
                .collect(),
        )
    }

    /// Linear forms `s·p_i + t·q_i` in the two parameters, one per coordinate.
    pub fn parametrization(&self) -> Vec<MultiPoly> {
        self.p
            .coords()
            .iter()
            .zip(self.q.coords())
            .map(|(a, b)| MultiPoly::linear(&[a.clone(), b.clone()]))
            .collect()
    }

    /// Restriction of a form on P³ to the line, as a binary form in `(s, t)`.
    pub fn restrict(&self, form: &MultiPoly) -> MultiPoly {
        form.compose(&self.parametrization())
    }

    pub fn lies_on(&self, form: &MultiPoly) -> bool {
        self.restrict(form).is_zero()
    }

    pub fn contains(&self, x: &ProjPoint) -> bool {
        ExactMatrix::from_rows(vec![
            self.p.coords().to_vec(),
            self.q.coords().to_vec(),
            x.coords().to_vec(),
        ])
        .rank()
            == 2
    }

    /// Two independent planes containing the line.
    pub fn planes(&self) -> [ProjPlane; 2] {
        let m = ExactMatrix::from_rows(vec![self.p.coords().to_vec(), self.q.coords().to_vec()]);
        let k = kernel_basis(&m);
        debug_assert_eq!(k.len(), 2);
        let mut it = k.into_iter().map(|v| ProjPlane::new(v).expect("kernel vector"));
        [it.next().unwrap(), it.next().unwrap()]
    }

    /// Intersection with a plane; `None` if the line lies in it.
    pub fn meet_plane(&self, h: &ProjPlane) -> Option<ProjPoint> {
        let hp = h.eval(self.p.coords());
        let hq = h.eval(self.q.coords());
        if hp.is_zero() && hq.is_zero() {
            return None;
        }
        self.point_at(&hq, &-hp).ok()
    }

    pub fn map(&self, f: impl Fn(&Fe) -> Fe + Copy) -> ProjLine {
        ProjLine::through(&self.p.map(f), &self.q.map(f)).expect("automorphism keeps lines")
    }
}

pub fn span_plane(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Result<ProjPlane> {
    let m = ExactMatrix::from_rows(vec![
        a.coords().to_vec(),
        b.coords().to_vec(),
        c.coords().to_vec(),
    ]);
    let k = kernel_basis(&m);
    if k.len() != 1 {
        return Err(Error::Collinear);
    }
    ProjPlane::new(k.into_iter().next().unwrap())
}

/// Plane through a line and a point off it.
pub fn span_line_point(l: &ProjLine, x: &ProjPoint) -> Result<ProjPlane> {
    span_plane(&l.p, &l.q, x)
}

pub fn meet_planes(a: &ProjPlane, b: &ProjPlane) -> Result<ProjLine> {
    let m = ExactMatrix::from_rows(vec![a.coeffs().to_vec(), b.coeffs().to_vec()]);
    let k = kernel_basis(&m);
    if k.len() != 2 {
        return Err(Error::EqualPlanes);
    }
    let p = ProjPoint::new(k[0].clone())?;
    let q = ProjPoint::new(k[1].clone())?;
    ProjLine::through(&p, &q)
}

/// Meet of three planes, if it is a single point.
pub fn meet_three_planes(a: &ProjPlane, b: &ProjPlane, c: &ProjPlane) -> Option<ProjPoint> {
    let m = ExactMatrix::from_rows(vec![
        a.coeffs().to_vec(),
        b.coeffs().to_vec(),
        c.coeffs().to_vec(),
    ]);
    let k = kernel_basis(&m);
    (k.len() == 1).then(|| ProjPoint::new(k[0].clone()).unwrap())
}

pub fn lines_meet(a: &ProjLine, b: &ProjLine) -> Result<bool> {
    if a == b {
        return Err(Error::EqualLines);
    }
    Ok(plucker_pairing(&a.plucker, &b.plucker).is_zero())
}

/// Common point of two distinct meeting lines.
pub fn meet_lines(a: &ProjLine, b: &ProjLine) -> Result<Option<ProjPoint>> {
    if !lines_meet(a, b)? {
        return Ok(None);
    }
    // a.p, a.q, b.p, b.q span a plane; solve s·a.p + t·a.q = u·b.p + v·b.q
    let m = ExactMatrix::from_columns(vec![
        a.p.coords().to_vec(),
        a.q.coords().to_vec(),
        b.p.coords().iter().map(|x| -x).collect(),
        b.q.coords().iter().map(|x| -x).collect(),
    ]);
    let k = kernel_basis(&m);
    debug_assert_eq!(k.len(), 1);
    Ok(Some(a.point_at(&k[0][0], &k[0][1])?))
}

/// Rank-≤3 test on the 4×4 matrix of spanning coordinates.
pub fn coplanar_spans(a: &ProjLine, b: &ProjLine) -> bool {
    ExactMatrix::from_rows(vec![
        a.p.coords().to_vec(),
        a.q.coords().to_vec(),
        b.p.coords().to_vec(),
        b.q.coords().to_vec(),
    ])
    .rank()
        <= 3
}

/// `det` of three points of P² (or three covectors).
pub fn det3(a: &[Fe], b: &[Fe], c: &[Fe]) -> Fe {
    ExactMatrix::from_rows(vec![a.to_vec(), b.to_vec(), c.to_vec()]).det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize) -> ProjPoint {
        let mut v = [0i64; 4];
        v[i] = 1;
        ProjPoint::from_i64(&v)
    }

    #[test]
    fn span_of_coordinate_points() {
        let h = span_plane(&e(0), &e(1), &e(2)).unwrap();
        assert_eq!(h, ProjPlane::from_i64(&[0, 0, 0, 1]));
        let c = ProjPoint::from_i64(&[1, 1, 0, 0]);
        assert_eq!(span_plane(&e(0), &e(1), &c), Err(Error::Collinear));
    }

    #[test]
    fn meet_of_coordinate_planes() {
        let l = meet_planes(&ProjPlane::from_i64(&[1, 0, 0, 0]), &ProjPlane::from_i64(&[0, 1, 0, 0])).unwrap();
        assert_eq!(l, ProjLine::through(&e(2), &e(3)).unwrap());
        let h = ProjPlane::from_i64(&[1, 2, 3, 4]);
        assert_eq!(meet_planes(&h, &h).unwrap_err(), Error::EqualPlanes);
    }

    #[test]
    fn lines_sharing_a_point_meet() {
        let a = ProjLine::through(&e(0), &e(1)).unwrap();
        let b = ProjLine::through(&e(0), &e(2)).unwrap();
        let c = ProjLine::through(&e(2), &e(3)).unwrap();
        assert!(lines_meet(&a, &b).unwrap());
        assert!(!lines_meet(&a, &c).unwrap());
        assert_eq!(lines_meet(&a, &a), Err(Error::EqualLines));
        assert_eq!(meet_lines(&a, &b).unwrap(), Some(e(0)));
    }

    fn point() -> impl Strategy<Value = ProjPoint> {
        proptest::collection::vec(-3i64..4, 4)
            .prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
            .prop_map(|v| ProjPoint::from_i64(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn plucker_relation_and_incidence(a in point(), b in point(), c in point(), d in point()) {
            let (Ok(l1), Ok(l2)) = (ProjLine::through(&a, &b), ProjLine::through(&c, &d)) else {
                return Ok(());
            };
            prop_assert!(plucker_pairing(l1.plucker(), l1.plucker()).is_zero());
            if l1 != l2 {
                let m = lines_meet(&l1, &l2).unwrap();
                prop_assert_eq!(m, lines_meet(&l2, &l1).unwrap());
                prop_assert_eq!(m, coplanar_spans(&l1, &l2));
                if m {
                    let x = meet_lines(&l1, &l2).unwrap().unwrap();
                    prop_assert!(l1.contains(&x) && l2.contains(&x));
                }
            }
        }

        #[test]
        fn span_is_symmetric(a in point(), b in point(), c in point()) {
            if let Ok(h) = span_plane(&a, &b, &c) {
                prop_assert_eq!(span_plane(&c, &a, &b).unwrap(), h.clone());
                prop_assert_eq!(span_plane(&b, &c, &a).unwrap(), h.clone());
                prop_assert!(h.contains(&a) && h.contains(&b) && h.contains(&c));
            }
        }
    }
}
