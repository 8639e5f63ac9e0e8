//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`] under graded
//! lexicographic order, so iteration order (and every derived output) is
//! deterministic. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::field::FieldElement as Fe;

pub const MAX_VARS: usize = 8;

/// Exponent vector; unused trailing slots are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u8; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u8]) -> Self {
        let mut e = [0; MAX_VARS];
        e[..exps.len()].copy_from_slice(exps);
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller checks divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All monomials of total degree `d` in `n` variables, ascending.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u8; MAX_VARS], out: &mut Vec<Monomial>) {
        if i == n - 1 {
            cur[i] = left as u8;
            out.push(Monomial(*cur));
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e as u8;
            rec(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    assert!((1..=MAX_VARS).contains(&n));
    let mut out = Vec::new();
    rec(n, 0, d, &mut [0; MAX_VARS], &mut out);
    out.sort();
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Fe>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Fe) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::var(i), Fe::one());
        p
    }

    /// `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[Fe]) -> Self {
        let mut p = MultiPoly::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i), c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Fe)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Inverse of [`MultiPoly::coefficients`].
    pub fn from_coefficients(nvars: usize, degree: u32, coeffs: &[Fe]) -> Self {
        let mons = monomials(nvars, degree);
        assert_eq!(mons.len(), coeffs.len());
        MultiPoly::from_terms(nvars, mons.into_iter().zip(coeffs.iter().cloned()))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Fe)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Fe) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Fe {
        self.terms.get(m).cloned().unwrap_or_else(Fe::zero)
    }

    /// Coefficient vector over `monomials(nvars, degree)`.
    pub fn coefficients(&self, degree: u32) -> Vec<Fe> {
        debug_assert!(self.terms.keys().all(|m| m.degree() == degree));
        monomials(self.nvars, degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Fe)> {
        self.terms.iter().next_back()
    }

    /// Highest variable index that occurs, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| (0..self.nvars).rev().find(|&i| m.0[i] > 0))
            .max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var] as u32).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Fe) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Fe) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::constant(self.nvars, Fe::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, point: &[Fe]) -> Fe {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Fe::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0[..self.nvars].iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitute `subs[i]` for variable `i`; all substitutes share a ring.
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .map(|s| vec![MultiPoly::constant(s.nvars, Fe::one()), s.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for i in 0..self.nvars {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            out = &out + &t;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[var] -= 1;
            out.add_term(d, c * &Fe::from_i64(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    /// Move variables into a ring with `nvars` variables, variable `i` going to `i + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(self.nvars + offset <= nvars && nvars <= MAX_VARS);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = [0u8; MAX_VARS];
            for i in 0..self.nvars {
                e[i + offset] = m.0[i];
            }
            (Monomial(e), c.clone())
        });
        MultiPoly::from_terms(nvars, terms)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, d.nvars);
        let (dm, dc) = d.leading_term()?;
        let (dm, dc_inv) = (*dm, dc.inv());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !dm.divides(m) {
                return None;
            }
            let qm = dm.quotient_of(m);
            let qc = c * &dc_inv;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to powers of `var`: `self = Σ out[k] var^k`.
    pub fn as_univariate(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut r = *m;
            r.0[var] = 0;
            out[k].add_term(r, c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[MultiPoly], var: usize, nvars: usize) -> Self {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            out = &out + &c.mul_monomial(&monomial_power(var, k as u8), &Fe::one());
        }
        out
    }

    /// Dot product of a covector with the variables, as a linear form.
    pub fn linear_coefficients(&self) -> Vec<Fe> {
        (0..self.nvars).map(|i| self.coeff(&Monomial::var(i))).collect()
    }
}

fn monomial_power(var: usize, e: u8) -> Monomial {
    let mut m = [0u8; MAX_VARS];
    m[var] = e;
    Monomial(m)
}

impl std::ops::Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl std::ops::Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Fe::from_i64(-1))
    }
}

impl std::ops::Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for i in 0..self.nvars {
                match m.0[i] {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    e => write!(f, "*x{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Fe {
        Fe::from_i64(n)
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(4, 3).len(), 20);
        assert_eq!(monomials(3, 9).len(), 55);
        assert_eq!(monomials(4, 4).len(), 35);
        let m = monomials(4, 2);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn compose_and_eval_agree() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let f = &(&x * &x) - &(&y * &q_poly(2, 3));
        let s = &x + &y;
        let t = &x - &y;
        let g = f.compose(&[s.clone(), t.clone()]);
        let pt = [q(5), q(-2)];
        let direct = f.eval(&[s.eval(&pt), t.eval(&pt)]);
        assert_eq!(g.eval(&pt), direct);
    }

    fn q_poly(n: usize, c: i64) -> MultiPoly {
        MultiPoly::constant(n, q(c))
    }

    #[test]
    fn exact_division() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let a = &(&x + &y) - &z;
        let b = &(&x * &y) + &(&z * &z);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        assert_eq!((&p + &x).div_exact(&a), None);
    }

    #[test]
    fn univariate_round_trip() {
        let x = MultiPoly::var(3, 0);
        let z = MultiPoly::var(3, 2);
        let p = &(&(&x * &z) * &z) + &(&x + &q_poly(3, 7));
        let u = p.as_univariate(2);
        assert_eq!(u.len(), 3);
        assert_eq!(MultiPoly::from_univariate(&u, 2, 3), p);
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((0u8..3, 0u8..3, 0u8..3, -5i64..6), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(
                3,
                ts.into_iter()
                    .map(|(a, b, c, k)| (Monomial::from_exponents(&[a, b, c]), Fe::from_i64(k))),
            )
        })
    }

    proptest! {
        #[test]
        fn multiply_then_divide(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b), Some(a));
        }

        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&(&(&a + &b) - &b) - &a).is_zero());
        }
    }
}
