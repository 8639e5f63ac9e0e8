//! Multivariate polynomial gcd over the coefficient field.
//!
//! Recursive on the highest variable: content extraction, then a primitive
//! pseudo-remainder sequence. Inputs in this crate have degree ≤ 6 in four
//! variables, so nothing smarter is needed.

use crate::field::FieldElement as Fe;
use crate::poly::MultiPoly;

/// Monic gcd of `f` and `g` (zero only if both are zero).
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert_eq!(f.nvars(), g.nvars());
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    if certified_coprime(f, g) {
        return one(f.nvars());
    }
    gcd_rec(f, g).monic()
}

/// Exact coprimality test for homogeneous forms: restrict to a few fixed lines
/// `s·p + q`. A common factor of degree `d` restricts to a binary form of degree
/// `d`, so a constant univariate gcd with no shared zero at `p` rules it out.
fn certified_coprime(f: &MultiPoly, g: &MultiPoly) -> bool {
    let n = f.nvars();
    if n < 2 || !f.is_homogeneous() || !g.is_homogeneous() {
        return false;
    }
    const PTS: [[i64; 6]; 3] = [[1, 3, -2, 5, 7, -4], [2, -1, 4, 3, -5, 6], [-3, 2, 1, -6, 4, 5]];
    (0..PTS.len()).any(|k| {
        let p: Vec<Fe> = (0..n).map(|i| Fe::from_i64(PTS[k][i])).collect();
        let q: Vec<Fe> = (0..n).map(|i| Fe::from_i64(PTS[(k + 1) % PTS.len()][(i + 2) % 6])).collect();
        if f.eval(&p).is_zero() && g.eval(&p).is_zero() {
            return false;
        }
        let line: Vec<MultiPoly> = (0..n)
            .map(|i| MultiPoly::from_univariate(&[MultiPoly::constant(1, q[i].clone()), MultiPoly::constant(1, p[i].clone())], 0, 1))
            .collect();
        let a = univariate(&f.compose(&line));
        let b = univariate(&g.compose(&line));
        if a.is_empty() || b.is_empty() {
            return false;
        }
        univariate_gcd_degree(a, b) == 0
    })
}

fn univariate(p: &MultiPoly) -> Vec<Fe> {
    let mut v: Vec<Fe> = p.as_univariate(0).iter().map(|c| c.coeff(&crate::poly::Monomial::one())).collect();
    while v.last().is_some_and(Fe::is_zero) {
        v.pop();
    }
    v
}

/// Degree of the gcd of two nonzero univariate polynomials (low-first) by Euclid.
fn univariate_gcd_degree(mut a: Vec<Fe>, mut b: Vec<Fe>) -> usize {
    while !b.is_empty() {
        let lb = b.last().unwrap().inv();
        while a.len() >= b.len() {
            let k = a.last().unwrap() * &lb;
            let shift = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[i + shift] = &a[i + shift] - &(&k * bi);
            }
            a.pop();
            while a.last().is_some_and(Fe::is_zero) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() - 1
}

fn one(n: usize) -> MultiPoly {
    MultiPoly::constant(n, Fe::one())
}

fn gcd_rec(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let n = f.nvars();
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let v = match (f.max_var(), g.max_var()) {
        (None, _) | (_, None) => return one(n),
        (Some(a), Some(b)) => a.max(b),
    };
    let fc = f.as_univariate(v);
    let gc = g.as_univariate(v);
    let cf = content(&fc);
    let cg = content(&gc);
    let c = gcd_rec(&cf, &cg);
    if fc.len() == 1 || gc.len() == 1 {
        // one side is free of v: gcd lives in the coefficient ring
        return c;
    }
    let mut a = primitive(&fc, &cf);
    let mut b = primitive(&gc, &cg);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.len() > 1 {
        let r = prem(&a, &b);
        a = b;
        if r.is_empty() {
            b = Vec::new();
            break;
        }
        let cr = content(&r);
        b = primitive(&r, &cr);
    }
    if !b.is_empty() {
        // b is a nonzero element of the coefficient ring: a and b coprime in v
        return c;
    }
    let h = MultiPoly::from_univariate(&a, v, n);
    &c * &h.monic()
}

fn content(coeffs: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::zero(coeffs[0].nvars());
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = if acc.is_zero() { c.clone() } else { gcd_rec(&acc, c) };
        if acc.is_constant() {
            return one(acc.nvars());
        }
    }
    acc.monic()
}

fn primitive(coeffs: &[MultiPoly], cont: &MultiPoly) -> Vec<MultiPoly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(cont).expect("content divides coefficients"))
        .collect()
}

/// Pseudo-remainder of `a` by `b` (coefficient vectors, low-first, `b` non-constant),
/// with trailing zeros trimmed; empty means zero.
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MultiPoly> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            let t = &lr * bk;
            r[k + shift] = &r[k + shift] - &t;
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(MultiPoly::is_zero) {
            r.pop();
        }
    }
    r
}

/// Common factor of a family of forms and the exact quotients.
pub fn common_cubic_factor(forms: &[MultiPoly]) -> (MultiPoly, Vec<MultiPoly>) {
    let n = forms[0].nvars();
    let mut g = MultiPoly::zero(n);
    for f in forms {
        g = gcd(&g, f);
        if g.is_constant() {
            break;
        }
    }
    let quotients = forms
        .iter()
        .map(|f| f.div_exact(&g).expect("gcd divides each form"))
        .collect();
    (g, quotients)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lin(c: &[i64]) -> MultiPoly {
        MultiPoly::linear(&c.iter().map(|&x| Fe::from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn cube_of_variable_is_extracted() {
        let x = MultiPoly::var(4, 0);
        let x3 = x.pow(3);
        let ls = [lin(&[1, 2, 0, 0]), lin(&[0, 1, 3, 0]), lin(&[1, 0, 0, 5]), lin(&[2, 1, 1, 1])];
        let forms: Vec<MultiPoly> = ls.iter().map(|l| &x3 * l).collect();
        let (g, q) = common_cubic_factor(&forms);
        assert_eq!(g, x3);
        for (a, b) in q.iter().zip(&ls) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn coprime_forms() {
        let forms = [lin(&[1, 0, 0, 0]), lin(&[0, 1, 0, 0]), lin(&[0, 0, 1, 0]), lin(&[0, 0, 0, 1])];
        let (g, _) = common_cubic_factor(&forms);
        assert!(g.is_constant());
    }

    #[test]
    fn shared_irreducible_quadric() {
        let q = &(&lin(&[1, 0, 0, 0]) * &lin(&[0, 1, 0, 0])) + &(&lin(&[0, 0, 1, 0]) * &lin(&[1, 1, 1, 1]));
        let f = &q * &lin(&[1, -1, 2, 0]).pow(2);
        let g = &q * &lin(&[3, 1, 0, 7]);
        assert_eq!(gcd(&f, &g), q.monic());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn gcd_divides_and_contains_common_factor(
            a in proptest::collection::vec(-3i64..4, 4),
            b in proptest::collection::vec(-3i64..4, 4),
            c in proptest::collection::vec(-3i64..4, 4),
        ) {
            let (la, lb, lc) = (lin(&a), lin(&b), lin(&c));
            prop_assume!(!la.is_zero() && !lb.is_zero() && !lc.is_zero());
            let f = &la * &lb;
            let g = &la * &lc;
            let d = gcd(&f, &g);
            prop_assert!(f.div_exact(&d).is_some());
            prop_assert!(g.div_exact(&d).is_some());
            prop_assert!(d.div_exact(&la.monic()).is_some());
        }
    }
}
