//! Exact scalars: rationals and towers of simple algebraic extensions.
//!
//! A [`FieldDescriptor`] is either `Q` or `K[θ]/(m(θ))` for a monic `m` over a
//! lower descriptor `K`. A [`FieldElement`] is stored in canonical form: an
//! element that happens to lie in a lower level of the tower is always stored
//! at that lower level, so structural equality is field equality.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FieldDescriptor(Option<Arc<Level>>);

struct Level {
    base: FieldDescriptor,
    /// Monic defining polynomial, lowest coefficient first.
    modulus: Vec<FieldElement>,
    depth: usize,
    name: String,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor(None)
    }

    /// Adjoin a root `name` of the monic polynomial `modulus` (lowest
    /// coefficient first) whose coefficients lie in `self`.
    pub fn extend(&self, modulus: Vec<FieldElement>, name: &str) -> Result<Self> {
        if modulus.len() < 3 {
            return Err(Error::InvalidInput(
                "defining polynomial must have degree at least 2".into(),
            ));
        }
        if !modulus.last().unwrap().is_one() {
            return Err(Error::InvalidInput("defining polynomial must be monic".into()));
        }
        for c in &modulus {
            if !self.contains(&c.field()) {
                return Err(Error::InvalidInput(
                    "modulus coefficient outside the base field".into(),
                ));
            }
        }
        Ok(FieldDescriptor(Some(Arc::new(Level {
            base: self.clone(),
            modulus,
            depth: self.depth() + 1,
            name: name.to_string(),
        }))))
    }

    pub fn is_rationals(&self) -> bool {
        self.0.is_none()
    }

    pub fn depth(&self) -> usize {
        self.0.as_ref().map_or(0, |l| l.depth)
    }

    /// Degree of the top level over its base.
    pub fn level_degree(&self) -> usize {
        self.0.as_ref().map_or(1, |l| l.modulus.len() - 1)
    }

    /// Degree over Q.
    pub fn degree(&self) -> usize {
        match &self.0 {
            None => 1,
            Some(l) => (l.modulus.len() - 1) * l.base.degree(),
        }
    }

    pub fn base(&self) -> Option<&FieldDescriptor> {
        self.0.as_ref().map(|l| &l.base)
    }

    pub fn modulus(&self) -> Option<&[FieldElement]> {
        self.0.as_ref().map(|l| l.modulus.as_slice())
    }

    pub fn name(&self) -> &str {
        self.0.as_ref().map_or("Q", |l| l.name.as_str())
    }

    /// The adjoined root of the top level.
    pub fn generator(&self) -> FieldElement {
        match &self.0 {
            None => FieldElement::one(),
            Some(_) => FieldElement::from_coeffs(
                self,
                vec![FieldElement::zero(), FieldElement::one()],
            ),
        }
    }

    /// True if `other` is this field or one of the levels below it.
    pub fn contains(&self, other: &FieldDescriptor) -> bool {
        let mut cur = self;
        loop {
            if cur.depth() < other.depth() {
                return false;
            }
            if cur == other {
                return true;
            }
            match cur.base() {
                Some(b) => cur = b,
                None => return other.is_rationals(),
            }
        }
    }

    /// Defining polynomials from the bottom of the tower upward.
    pub fn tower(&self) -> Vec<(String, Vec<FieldElement>)> {
        let mut out = Vec::new();
        let mut cur = self;
        while let Some(l) = &cur.0 {
            out.push((l.name.clone(), l.modulus.clone()));
            cur = &l.base;
        }
        out.reverse();
        out
    }

    fn level(&self) -> &Level {
        self.0.as_ref().expect("extension level")
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.depth == b.depth && a.modulus == b.modulus && a.base == b.base)
            }
            _ => false,
        }
    }
}

impl Eq for FieldDescriptor {}

impl Hash for FieldDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.depth().hash(state);
        if let Some(l) = &self.0 {
            l.modulus.hash(state);
        }
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => write!(f, "Q"),
            Some(l) => {
                write!(f, "{:?}[{}]/(", l.base, l.name)?;
                write_upoly(f, &l.modulus, &l.name)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Exact element of a [`FieldDescriptor`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Ext(Arc<ExtValue>),
}

#[derive(PartialEq, Eq, Hash)]
pub struct ExtValue {
    field: FieldDescriptor,
    /// Residue coefficients in the base field, lowest first; trimmed, at least
    /// two entries.
    coeffs: Vec<FieldElement>,
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::Rat(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        FieldElement::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        FieldElement::Rat(q)
    }

    /// Build `Σ coeffs[i] θ^i` in `field`, reducing modulo the defining polynomial.
    pub fn from_coeffs(field: &FieldDescriptor, coeffs: Vec<FieldElement>) -> Self {
        if field.is_rationals() {
            assert!(coeffs.len() <= 1, "rationals take a single coefficient");
            return coeffs.into_iter().next().unwrap_or_else(FieldElement::zero);
        }
        let reduced = upoly::rem_monic(coeffs, &field.level().modulus);
        normalize(field, reduced)
    }

    /// Parse `"p"` or `"p/q"`.
    pub fn parse_rational(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
        let q = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(FieldElement::Rat(q))
    }

    pub fn field(&self) -> FieldDescriptor {
        match self {
            FieldElement::Rat(_) => FieldDescriptor::rationals(),
            FieldElement::Ext(v) => v.field.clone(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            FieldElement::Rat(_) => 0,
            FieldElement::Ext(v) => v.field.depth(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, FieldElement::Rat(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldElement::Rat(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rat(q) => Some(q),
            FieldElement::Ext(_) => None,
        }
    }

    /// Residue coefficients with respect to `field` (which must contain `self`).
    pub fn coeffs_in(&self, field: &FieldDescriptor) -> Vec<FieldElement> {
        if field.is_rationals() {
            return vec![self.clone()];
        }
        let n = field.level_degree();
        let mut out = vec![FieldElement::zero(); n];
        match self {
            FieldElement::Ext(v) if v.field == *field => {
                for (i, c) in v.coeffs.iter().enumerate() {
                    out[i] = c.clone();
                }
            }
            _ => {
                assert!(field.contains(&self.field()), "element outside field");
                out[0] = self.clone();
            }
        }
        out
    }

    pub fn try_inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rat(q) => {
                if q.is_zero() {
                    Err(Error::ZeroDivisor {
                        field: "Q".into(),
                        detail: "inverse of zero".into(),
                    })
                } else {
                    Ok(FieldElement::Rat(q.recip()))
                }
            }
            FieldElement::Ext(v) => {
                let level = v.field.level();
                let (g, s) = upoly::ext_gcd(v.coeffs.clone(), level.modulus.clone())?;
                if g.len() != 1 {
                    return Err(Error::ZeroDivisor {
                        field: format!("{:?}", v.field),
                        detail: format!(
                            "element {self} shares a factor of degree {} with the modulus",
                            g.len() - 1
                        ),
                    });
                }
                let ginv = g[0].try_inv()?;
                let s: Vec<_> = s.into_iter().map(|c| &c * &ginv).collect();
                Ok(FieldElement::from_coeffs(&v.field, s))
            }
        }
    }

    pub fn inv(&self) -> Self {
        self.try_inv().unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.try_inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = FieldElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Apply the nontrivial automorphism of the quadratic level `level`
    /// (`θ ↦ -b - θ` for modulus `θ² + bθ + c`); identity below that level.
    pub fn conjugate(&self, level: &FieldDescriptor) -> Self {
        match self {
            FieldElement::Rat(_) => self.clone(),
            FieldElement::Ext(v) => {
                assert!(
                    level.contains(&v.field),
                    "conjugation level must contain the element"
                );
                if v.field != *level {
                    return self.clone();
                }
                assert_eq!(level.level_degree(), 2, "conjugation needs a quadratic level");
                let b = &level.level().modulus[1];
                let a0 = &v.coeffs[0];
                let a1 = &v.coeffs[1];
                FieldElement::from_coeffs(level, vec![a0 - &(a1 * b), -a1])
            }
        }
    }

    fn binop(a: &Self, b: &Self, op: Op) -> Self {
        match (a, b) {
            (FieldElement::Rat(x), FieldElement::Rat(y)) => FieldElement::Rat(match op {
                Op::Add => x + y,
                Op::Sub => x - y,
                Op::Mul => x * y,
            }),
            _ => {
                let (da, db) = (a.depth(), b.depth());
                if da == db {
                    let (FieldElement::Ext(va), FieldElement::Ext(vb)) = (a, b) else {
                        unreachable!()
                    };
                    assert!(va.field == vb.field, "arithmetic across unrelated fields");
                    let field = &va.field;
                    match op {
                        Op::Add => normalize(field, upoly::add(&va.coeffs, &vb.coeffs)),
                        Op::Sub => normalize(field, upoly::sub(&va.coeffs, &vb.coeffs)),
                        Op::Mul => {
                            let prod = upoly::mul(&va.coeffs, &vb.coeffs);
                            normalize(field, upoly::rem_monic(prod, &field.level().modulus))
                        }
                    }
                } else if da > db {
                    let FieldElement::Ext(va) = a else { unreachable!() };
                    assert!(va.field.contains(&b.field()), "arithmetic across unrelated fields");
                    scalar_op(va, b, op, false)
                } else {
                    let FieldElement::Ext(vb) = b else { unreachable!() };
                    assert!(vb.field.contains(&a.field()), "arithmetic across unrelated fields");
                    scalar_op(vb, a, op, true)
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

/// `v op s` (or `s op v` when `swapped`) with `s` in a strictly lower level.
fn scalar_op(v: &ExtValue, s: &FieldElement, op: Op, swapped: bool) -> FieldElement {
    let mut coeffs = v.coeffs.clone();
    match op {
        Op::Add => coeffs[0] = &coeffs[0] + s,
        Op::Sub => {
            if swapped {
                coeffs = coeffs.iter().map(|c| -c).collect();
                coeffs[0] = &coeffs[0] + s;
            } else {
                coeffs[0] = &coeffs[0] - s;
            }
        }
        Op::Mul => coeffs = coeffs.iter().map(|c| c * s).collect(),
    }
    normalize(&v.field, coeffs)
}

fn normalize(field: &FieldDescriptor, mut coeffs: Vec<FieldElement>) -> FieldElement {
    upoly::trim(&mut coeffs);
    match coeffs.len() {
        0 => FieldElement::zero(),
        1 => coeffs.pop().unwrap(),
        _ => FieldElement::Ext(Arc::new(ExtValue {
            field: field.clone(),
            coeffs,
        })),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $op:expr) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::binop(self, rhs, $op)
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                FieldElement::binop(&self, &rhs, $op)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::binop(&self, rhs, $op)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                FieldElement::binop(self, &rhs, $op)
            }
        }
    };
}

forward_binop!(Add, add, Op::Add);
forward_binop!(Sub, sub, Op::Sub);
forward_binop!(Mul, mul, Op::Mul);

impl std::ops::Div<&FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.try_div(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Div<FieldElement> for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        &self / &rhs
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rat(q) => FieldElement::Rat(-q),
            FieldElement::Ext(v) => FieldElement::Ext(Arc::new(ExtValue {
                field: v.field.clone(),
                coeffs: v.coeffs.iter().map(|c| -c).collect(),
            })),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_i64(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(q) => write!(f, "{q}"),
            FieldElement::Ext(v) => {
                write!(f, "(")?;
                write_upoly(f, &v.coeffs, v.field.name())?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_upoly(f: &mut fmt::Formatter<'_>, coeffs: &[FieldElement], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match i {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}*{var}")?,
            _ => write!(f, "{c}*{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Integer square root test for rationals: `Some(r)` with `r² = q`, `r ≥ 0`.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Dense univariate polynomials over a field level, lowest coefficient first.
pub(crate) mod upoly {
    use super::FieldElement;
    use crate::error::Result;

    pub fn trim(p: &mut Vec<FieldElement>) {
        while p.last().is_some_and(FieldElement::is_zero) {
            p.pop();
        }
    }

    pub fn add(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    }

    pub fn sub(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x - y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => -y,
                (None, None) => unreachable!(),
            })
            .collect()
    }

    pub fn mul(a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![FieldElement::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
        out
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(mut p: Vec<FieldElement>, m: &[FieldElement]) -> Vec<FieldElement> {
        let dm = m.len() - 1;
        trim(&mut p);
        while p.len() > dm {
            let lead = p.pop().unwrap();
            let shift = p.len() - dm;
            for j in 0..dm {
                p[shift + j] = &p[shift + j] - &(&lead * &m[j]);
            }
            trim(&mut p);
        }
        p
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(
        a: &[FieldElement],
        b: &[FieldElement],
    ) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let inv_lead = b[db].try_inv()?;
        if r.len() < b.len() {
            return Ok((Vec::new(), r));
        }
        let mut q = vec![FieldElement::zero(); r.len() - db];
        while r.len() > db {
            let coef = r.last().unwrap() * &inv_lead;
            let shift = r.len() - 1 - db;
            for j in 0..=db {
                r[shift + j] = &r[shift + j] - &(&coef * &b[j]);
            }
            q[shift] = coef;
            r.pop();
            trim(&mut r);
        }
        Ok((q, r))
    }

    /// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g = gcd(a, m)` up to a unit.
    pub fn ext_gcd(
        a: Vec<FieldElement>,
        m: Vec<FieldElement>,
    ) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        let (mut r0, mut r1) = (m, a);
        trim(&mut r1);
        let (mut s0, mut s1) = (Vec::new(), vec![FieldElement::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1)?;
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            trim(&mut s1);
        }
        trim(&mut s0);
        Ok((r0, s0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElement {
        FieldElement::from_i64(n)
    }

    fn gaussian() -> FieldDescriptor {
        FieldDescriptor::rationals()
            .extend(vec![q(1), q(0), q(1)], "i")
            .unwrap()
    }

    #[test]
    fn rationals_are_canonical() {
        let a = FieldElement::from_ratio(2, -4);
        assert_eq!(a, FieldElement::from_ratio(-1, 2));
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(FieldElement::parse_rational("6/4").unwrap(), FieldElement::from_ratio(3, 2));
        assert!(FieldElement::parse_rational("1/0").is_err());
        assert!(FieldElement::parse_rational("abc").is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = gaussian();
        let i = k.generator();
        assert_eq!(&i * &i, q(-1));
        let z = &q(3) + &(&q(4) * &i);
        let w = z.inv();
        assert_eq!(&z * &w, q(1));
        assert_eq!(z.conjugate(&k), &q(3) - &(&q(4) * &i));
        // (3+4i)(3-4i) = 25 collapses to the rational level
        assert!((&z * &z.conjugate(&k)).as_rational().is_some());
    }

    #[test]
    fn tower_arithmetic() {
        let k = gaussian();
        let i = k.generator();
        // adjoin a cube root of i: θ³ - i
        let l = k.extend(vec![-&i, q(0), q(0), q(1)], "t").unwrap();
        let t = l.generator();
        assert_eq!(t.pow(3), i);
        assert_eq!(t.pow(12), q(1));
        assert_eq!(l.degree(), 6);
        let x = &(&t * &i) + &q(2);
        assert_eq!(&x * &x.inv(), q(1));
        assert!(l.contains(&k));
        assert!(!k.contains(&l));
    }

    #[test]
    fn reducible_modulus_detects_zero_divisor() {
        // θ² - 1 = (θ-1)(θ+1)
        let k = FieldDescriptor::rationals()
            .extend(vec![q(-1), q(0), q(1)], "r")
            .unwrap();
        let r = k.generator();
        let e = &r - &q(1);
        assert!(matches!(e.try_inv(), Err(Error::ZeroDivisor { .. })));
    }

    #[test]
    fn extend_rejects_bad_moduli() {
        let qf = FieldDescriptor::rationals();
        assert!(qf.extend(vec![q(1), q(1)], "x").is_err());
        assert!(qf.extend(vec![q(1), q(0), q(2)], "x").is_err());
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(
            rational_sqrt(&BigRational::new(9.into(), 4.into())),
            Some(BigRational::new(3.into(), 2.into()))
        );
        assert_eq!(rational_sqrt(&BigRational::new(2.into(), 1.into())), None);
        assert_eq!(rational_sqrt(&BigRational::new((-4).into(), 1.into())), None);
    }
}
