//! Binary forms: deflation by known roots and exact cubic root extraction.
//!
//! A binary form lives in a two-variable [`MultiPoly`] in `(x0, x1)`; a root is a
//! point `(r0 : r1)` with `f(r0, r1) = 0`, corresponding to the linear factor
//! `r0·x1 − r1·x0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{rational_sqrt, FieldDescriptor, FieldElement as Fe};
use crate::poly::{Monomial, MultiPoly};

/// Linear factor vanishing at `(r0 : r1)`.
pub fn root_factor(root: &[Fe; 2]) -> MultiPoly {
    MultiPoly::linear(&[-&root[1], root[0].clone()])
}

/// Divide out `(root, multiplicity)` factors from a binary form.
pub fn deflate_binary_form(form: &MultiPoly, known_roots: &[([Fe; 2], usize)]) -> Result<MultiPoly> {
    assert_eq!(form.nvars(), 2, "binary form expected");
    let mut f = form.clone();
    for (root, mult) in known_roots {
        if root[0].is_zero() && root[1].is_zero() {
            return Err(Error::InvalidInput("zero root vector".into()));
        }
        let lin = root_factor(root);
        for _ in 0..*mult {
            if !f.eval(root).is_zero() {
                return Err(Error::NotARoot);
            }
            f = f.div_exact(&lin).ok_or(Error::NotARoot)?;
        }
    }
    Ok(f)
}

/// A root `(t : u)` of a binary cubic, one per irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicRoot {
    pub t: Fe,
    pub u: Fe,
    pub field: FieldDescriptor,
    /// Degree of the irreducible factor the root belongs to.
    pub factor_degree: usize,
}

/// Discriminant of `a t³ + b t²u + c tu² + d u³` with `coeffs = [d, c, b, a]`.
pub fn cubic_discriminant(coeffs: &[Fe; 4]) -> Fe {
    let [d, c, b, a] = coeffs;
    let k = |n: i64| Fe::from_i64(n);
    let bc = b * c;
    &(&(&(&(&bc * &bc) - &(&k(4) * &(a * &c.pow(3)))) - &(&k(4) * &(&b.pow(3) * d)))
        - &(&k(27) * &(&(a * a) * &(d * d))))
        + &(&k(18) * &(&(a * b) * &(c * d)))
}

/// Roots of the binary cubic `Σ coeffs[k] t^k u^(3−k)`, one per irreducible factor.
///
/// Rational roots stay in the field of the coefficients; an irreducible
/// quadratic or cubic factor is adjoined as a new extension level named `name`.
/// Roots are searched for only when all coefficients are rational; over a
/// proper extension the remaining factor is adjoined as if irreducible, and a
/// reducible modulus surfaces later as [`Error::ZeroDivisor`].
pub fn solve_cubic(coeffs: &[Fe; 4], name: &str) -> Result<Vec<CubicRoot>> {
    if coeffs.iter().all(Fe::is_zero) {
        return Err(Error::InvalidInput("zero binary cubic".into()));
    }
    if cubic_discriminant(coeffs).is_zero() {
        return Err(Error::MultipleRoot);
    }
    let base = common_field(coeffs);
    let mut roots = Vec::new();
    // univariate polynomial in t (u = 1), low-first
    let mut p: Vec<Fe> = coeffs.to_vec();
    while p.last().is_some_and(Fe::is_zero) {
        p.pop();
        roots.push(CubicRoot {
            t: Fe::one(),
            u: Fe::zero(),
            field: base.clone(),
            factor_degree: 1,
        });
    }
    let lead = p.last().unwrap().inv();
    let mut p: Vec<Fe> = p.iter().map(|c| c * &lead).collect();

    if p.iter().all(|c| c.as_rational().is_some()) {
        let q: Vec<BigRational> = p.iter().map(|c| c.as_rational().unwrap().clone()).collect();
        for r in rational_roots(&q) {
            let r = Fe::from_rational(r);
            p = synthetic_div(&p, &r);
            roots.push(CubicRoot {
                t: r,
                u: Fe::one(),
                field: base.clone(),
                factor_degree: 1,
            });
        }
    }
    let deg = p.len() - 1;
    match deg {
        0 => {}
        1 => roots.push(CubicRoot {
            t: -&p[0],
            u: Fe::one(),
            field: base.clone(),
            factor_degree: 1,
        }),
        _ => {
            let ext = base.extend(p, name)?;
            roots.push(CubicRoot {
                t: ext.generator(),
                u: Fe::one(),
                field: ext,
                factor_degree: deg,
            });
        }
    }
    Ok(roots)
}

/// Evaluate the binary cubic `Σ coeffs[k] t^k u^(3−k)` at `(t : u)`.
pub fn eval_binary_cubic(coeffs: &[Fe; 4], t: &Fe, u: &Fe) -> Fe {
    let mut acc = Fe::zero();
    for (k, c) in coeffs.iter().enumerate() {
        acc = &acc + &(&(c * &t.pow(k as u32)) * &u.pow(3 - k as u32));
    }
    acc
}

fn common_field(coeffs: &[Fe]) -> FieldDescriptor {
    coeffs
        .iter()
        .map(Fe::field)
        .max_by_key(FieldDescriptor::depth)
        .unwrap_or_else(FieldDescriptor::rationals)
}

/// Quotient of the monic low-first `p` by `(t − r)`; `r` must be a root.
fn synthetic_div(p: &[Fe], r: &Fe) -> Vec<Fe> {
    let n = p.len() - 1;
    let mut q = vec![Fe::zero(); n];
    let mut carry = Fe::zero();
    for k in (0..n).rev() {
        carry = &p[k + 1] + &(&carry * r);
        q[k] = carry.clone();
    }
    debug_assert!((&p[0] + &(&carry * r)).is_zero());
    q
}

/// Distinct rational roots of a monic polynomial of degree ≤ 3 (low-first), ascending.
fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    match p.len() - 1 {
        0 => vec![],
        1 => vec![-p[0].clone()],
        2 => {
            let (b, c) = (&p[1], &p[0]);
            let disc = b * b - BigRational::from_integer(4.into()) * c;
            match rational_sqrt(&disc) {
                None => vec![],
                Some(s) => {
                    let two = BigRational::from_integer(2.into());
                    let mut r = vec![(-b - &s) / &two, (-b + &s) / &two];
                    r.dedup();
                    r
                }
            }
        }
        3 => cubic_rational_roots(p),
        _ => unreachable!("degree above 3"),
    }
}

/// Rational roots of a monic rational cubic via integer roots of the monic
/// integer transform `g(y) = a³·p(y/a)`, with `a` the lcm of denominators.
fn cubic_rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let a = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    // p(t) = t³ + p2 t² + p1 t + p0; y = a t gives y³ + a p2 y² + a² p1 y + a³ p0
    let g: Vec<BigInt> = (0..4)
        .map(|k| {
            let scale = num_traits::pow(a.clone(), 3 - k);
            (&p[k] * BigRational::from_integer(scale)).to_integer()
        })
        .collect();
    integer_cubic_roots(&g)
        .into_iter()
        .map(|y| BigRational::new(y, a.clone()))
        .collect()
}

fn eval_int(g: &[BigInt], y: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c)
}

/// Integer roots of a monic integer cubic (low-first), ascending.
fn integer_cubic_roots(g: &[BigInt]) -> Vec<BigInt> {
    let bound = g[..3].iter().map(|c| c.abs()).max().unwrap() + 1u32;
    // g'(y) = 3y² + 2 g2 y + g1, critical points (−g2 ± √(g2² − 3 g1)) / 3
    let d = &g[2] * &g[2] - BigInt::from(3) * &g[1];
    let mut breaks = vec![-bound.clone()];
    let mut probes = Vec::new();
    if !d.is_negative() {
        let s = d.sqrt();
        for num in [-&g[2] - &s - 1u32, -&g[2] + &s] {
            let k = num.div_floor(&BigInt::from(3));
            for off in -2i32..=2 {
                probes.push(&k + off);
            }
            breaks.push(&k - 2);
            breaks.push(&k + 2);
        }
    }
    breaks.push(bound);
    let mut roots = Vec::new();
    for y in probes {
        if eval_int(g, &y).is_zero() {
            roots.push(y);
        }
    }
    // segments [breaks[0], breaks[1]], [breaks[2], breaks[3]], ... are monotone
    for seg in breaks.chunks(2) {
        if let [lo, hi] = seg {
            if lo <= hi {
                if let Some(y) = monotone_root(g, lo.clone(), hi.clone()) {
                    roots.push(y);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn monotone_root(g: &[BigInt], mut lo: BigInt, mut hi: BigInt) -> Option<BigInt> {
    let flo = eval_int(g, &lo);
    let fhi = eval_int(g, &hi);
    if flo.is_zero() {
        return Some(lo);
    }
    if fhi.is_zero() {
        return Some(hi);
    }
    if flo.sign() == fhi.sign() {
        return None;
    }
    let increasing = flo.is_negative();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        let fm = eval_int(g, &mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_negative() == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}

/// The cubic `Σ coeffs[k] t^k u^(3−k)` as a two-variable form in `(t, u)`.
pub fn binary_cubic_form(coeffs: &[Fe; 4]) -> MultiPoly {
    MultiPoly::from_terms(
        2,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::from_exponents(&[k as u8, 3 - k as u8]), c.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fe(n: i64) -> Fe {
        Fe::from_i64(n)
    }

    #[test]
    fn deflation_examples() {
        // x0²·x1 with root (1:0) leaves x0²
        let f = MultiPoly::from_terms(2, [(Monomial::from_exponents(&[2, 1]), fe(1))]);
        let q = deflate_binary_form(&f, &[([fe(1), fe(0)], 1)]).unwrap();
        assert_eq!(q, MultiPoly::from_terms(2, [(Monomial::from_exponents(&[2, 0]), fe(1))]));
        let q = deflate_binary_form(&f, &[([fe(0), fe(1)], 2)]).unwrap();
        assert_eq!(q, MultiPoly::var(2, 1));
        assert_eq!(
            deflate_binary_form(&f, &[([fe(1), fe(1)], 1)]),
            Err(Error::NotARoot)
        );
        assert_eq!(
            deflate_binary_form(&f, &[([fe(0), fe(1)], 3)]),
            Err(Error::NotARoot)
        );
    }

    #[test]
    fn cube_roots_of_unity() {
        let roots = solve_cubic(&[fe(-1), fe(0), fe(0), fe(1)], "w").unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!((roots[0].t.clone(), roots[0].factor_degree), (fe(1), 1));
        assert_eq!(roots[1].factor_degree, 2);
        assert_eq!(roots[1].field.degree(), 2);
        let c = [fe(-1), fe(0), fe(0), fe(1)];
        for r in &roots {
            assert!(eval_binary_cubic(&c, &r.t, &r.u).is_zero());
        }
    }

    #[test]
    fn three_rational_roots() {
        // t(t−u)(t−2u) = t³ − 3t²u + 2tu²
        let roots = solve_cubic(&[fe(0), fe(2), fe(-3), fe(1)], "r").unwrap();
        let ts: Vec<Fe> = roots.iter().map(|r| r.t.clone()).collect();
        assert_eq!(ts, vec![fe(0), fe(1), fe(2)]);
        assert!(roots.iter().all(|r| r.field.is_rationals()));
    }

    #[test]
    fn cube_root_of_two() {
        let c = [fe(-2), fe(0), fe(0), fe(1)];
        let roots = solve_cubic(&c, "c").unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].field.degree(), 3);
        assert!(eval_binary_cubic(&c, &roots[0].t, &roots[0].u).is_zero());
    }

    #[test]
    fn root_at_infinity_and_multiple_roots() {
        // t²u − tu² = tu(t − u): roots (1:0), 0, 1
        let roots = solve_cubic(&[fe(0), fe(-1), fe(1), fe(0)], "x").unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!((roots[0].t.clone(), roots[0].u.clone()), (fe(1), fe(0)));
        assert_eq!(solve_cubic(&[fe(0), fe(0), fe(-1), fe(1)], "x"), Err(Error::MultipleRoot));
        assert_eq!(solve_cubic(&[fe(1), fe(0), fe(0), fe(0)], "x"), Err(Error::MultipleRoot));
    }

    #[test]
    fn large_rational_roots() {
        // (t − 123456789/1000)(t + 987654321/7)(7t − 3)
        let r1 = Fe::from_ratio(123456789, 1000);
        let r2 = Fe::from_ratio(-987654321, 7);
        let r3 = Fe::from_ratio(3, 7);
        let lin = |r: &Fe| MultiPoly::linear(&[fe(1), -r]);
        let f = &(&lin(&r1) * &lin(&r2)) * &lin(&r3);
        let c: [Fe; 4] = std::array::from_fn(|k| {
            f.coeff(&Monomial::from_exponents(&[k as u8, 3 - k as u8]))
        });
        let ts: Vec<Fe> = solve_cubic(&c, "z").unwrap().into_iter().map(|r| r.t).collect();
        assert_eq!(ts, vec![r2, r3, r1]);
    }

    proptest! {
        #[test]
        fn roots_annihilate(c in proptest::collection::vec(-6i64..7, 4)) {
            let c: [Fe; 4] = std::array::from_fn(|k| fe(c[k]));
            match solve_cubic(&c, "p") {
                Ok(roots) => {
                    let total: usize = roots.iter().map(|r| r.factor_degree).sum();
                    prop_assert_eq!(total, 3);
                    for r in roots {
                        prop_assert!(eval_binary_cubic(&c, &r.t, &r.u).is_zero());
                    }
                }
                Err(e) => {
                    prop_assert!(matches!(e, Error::MultipleRoot | Error::InvalidInput(_)));
                    prop_assert!(cubic_discriminant(&c).is_zero());
                }
            }
        }

        #[test]
        fn deflate_then_multiply(a in -5i64..6, b in 1i64..6, c in proptest::collection::vec(-4i64..5, 3)) {
            let g = MultiPoly::from_coefficients(2, 2, &c.iter().map(|&x| fe(x)).collect::<Vec<_>>());
            let root = [fe(a), fe(b)];
            let f = &g * &root_factor(&root);
            let q = deflate_binary_form(&f, &[(root.clone(), 1)]).unwrap();
            prop_assert_eq!(&q * &root_factor(&root), f);
        }
    }
}
