//! Schläfli labels of the 27 lines and their incidence rule.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const NUM_LINES: usize = 27;

/// Line label with 1-based indices; `C(i, j)` always has `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum LineLabel {
    A(u8),
    B(u8),
    C(u8, u8),
}

/// Index of `c_ij` among the 15 pairs in lexicographic order.
fn pair_index(i: u8, j: u8) -> usize {
    let mut k = 0;
    for a in 1..=6u8 {
        for b in a + 1..=6 {
            if (a, b) == (i, j) {
                return k;
            }
            k += 1;
        }
    }
    unreachable!("invalid pair ({i}, {j})")
}

pub const PAIRS: [(u8, u8); 15] = {
    let mut out = [(0u8, 0u8); 15];
    let mut k = 0;
    let mut a = 1;
    while a <= 6 {
        let mut b = a + 1;
        while b <= 6 {
            out[k] = (a, b);
            k += 1;
            b += 1;
        }
        a += 1;
    }
    out
};

impl LineLabel {
    /// `a1..a6` are 0..5, `b1..b6` 6..11, `c12..c56` 12..26.
    pub fn index(self) -> usize {
        match self {
            LineLabel::A(i) => i as usize - 1,
            LineLabel::B(i) => 5 + i as usize,
            LineLabel::C(i, j) => 12 + pair_index(i, j),
        }
    }

    pub fn from_index(k: usize) -> Self {
        match k {
            0..=5 => LineLabel::A(k as u8 + 1),
            6..=11 => LineLabel::B(k as u8 - 5),
            12..=26 => {
                let (i, j) = PAIRS[k - 12];
                LineLabel::C(i, j)
            }
            _ => panic!("line index {k} out of range"),
        }
    }

    pub fn c(i: u8, j: u8) -> Self {
        assert!(i != j && (1..=6).contains(&i) && (1..=6).contains(&j));
        LineLabel::C(i.min(j), i.max(j))
    }

    pub fn all() -> impl Iterator<Item = LineLabel> {
        (0..NUM_LINES).map(LineLabel::from_index)
    }

    /// Divisor class `d·L − Σ m_i E_i` as `[d, m_1, …, m_6]` on the blow-up of six points.
    pub fn picard_class(self) -> [i64; 7] {
        let mut v = [0i64; 7];
        match self {
            LineLabel::A(i) => v[i as usize] = -1,
            LineLabel::B(i) => {
                v[0] = 2;
                for j in 1..=6 {
                    if j != i as usize {
                        v[j] = 1;
                    }
                }
            }
            LineLabel::C(i, j) => {
                v[0] = 1;
                v[i as usize] = 1;
                v[j as usize] = 1;
            }
        }
        v
    }

    pub fn kind(self) -> char {
        match self {
            LineLabel::A(_) => 'a',
            LineLabel::B(_) => 'b',
            LineLabel::C(..) => 'c',
        }
    }

    /// Relabel subscripts by `sigma` (0-based images of 1..6).
    pub fn permute(self, sigma: &[u8; 6]) -> LineLabel {
        let s = |i: u8| sigma[i as usize - 1] + 1;
        match self {
            LineLabel::A(i) => LineLabel::A(s(i)),
            LineLabel::B(i) => LineLabel::B(s(i)),
            LineLabel::C(i, j) => LineLabel::c(s(i), s(j)),
        }
    }
}

/// Intersection number of two classes `[d, m_1..m_6]`: `d d' − Σ m_i m_i'`.
pub fn intersection_number(x: &[i64; 7], y: &[i64; 7]) -> i64 {
    x[0] * y[0] - (1..7).map(|i| x[i] * y[i]).sum::<i64>()
}

/// The incidence rule for two distinct lines.
pub fn meets_rule(l1: LineLabel, l2: LineLabel) -> bool {
    use LineLabel::*;
    assert_ne!(l1, l2, "incidence of a line with itself");
    let has = |i: u8, j: u8, k: u8| i == j || i == k;
    match (l1, l2) {
        (A(_), A(_)) | (B(_), B(_)) => false,
        (A(i), B(j)) | (B(j), A(i)) => i != j,
        (A(i), C(j, k)) | (C(j, k), A(i)) | (B(i), C(j, k)) | (C(j, k), B(i)) => has(i, j, k),
        (C(i, j), C(k, l)) => i != k && i != l && j != k && j != l,
    }
}

/// Incidence as a 27×27 table of bitmasks: bit `j` of `row[i]` set iff `i` meets `j`.
pub fn meet_masks() -> [u32; NUM_LINES] {
    let mut out = [0u32; NUM_LINES];
    for i in 0..NUM_LINES {
        for j in 0..NUM_LINES {
            if i != j && meets_rule(LineLabel::from_index(i), LineLabel::from_index(j)) {
                out[i] |= 1 << j;
            }
        }
    }
    out
}

impl fmt::Display for LineLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineLabel::A(i) => write!(f, "a{i}"),
            LineLabel::B(i) => write!(f, "b{i}"),
            LineLabel::C(i, j) => write!(f, "c{i}{j}"),
        }
    }
}

impl FromStr for LineLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("not a line label: {s:?}"));
        let digits: Vec<u8> = s
            .get(1..)
            .ok_or_else(bad)?
            .bytes()
            .map(|b| b.wrapping_sub(b'0'))
            .collect();
        if digits.iter().any(|&d| !(1..=6).contains(&d)) {
            return Err(bad());
        }
        match (s.as_bytes().first(), digits.as_slice()) {
            (Some(b'a'), [i]) => Ok(LineLabel::A(*i)),
            (Some(b'b'), [i]) => Ok(LineLabel::B(*i)),
            (Some(b'c'), [i, j]) if i < j => Ok(LineLabel::C(*i, *j)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        for k in 0..NUM_LINES {
            let l = LineLabel::from_index(k);
            assert_eq!(l.index(), k);
            assert_eq!(l.to_string().parse::<LineLabel>().unwrap(), l);
        }
        assert!("c21".parse::<LineLabel>().is_err());
        assert!("a7".parse::<LineLabel>().is_err());
    }

    #[test]
    fn rule_matches_picard_lattice() {
        for l in LineLabel::all() {
            let c = l.picard_class();
            assert_eq!(intersection_number(&c, &c), -1);
            // anticanonical degree 1: (3L − ΣE)·l = 1
            assert_eq!(intersection_number(&[3, 1, 1, 1, 1, 1, 1], &c), 1);
            for m in LineLabel::all() {
                if l != m {
                    let k = intersection_number(&c, &m.picard_class());
                    assert!(k == 0 || k == 1);
                    assert_eq!(meets_rule(l, m), k == 1, "{l} {m}");
                }
            }
        }
    }

    #[test]
    fn rule_examples() {
        use LineLabel::*;
        assert!(!meets_rule(A(1), A(2)));
        assert!(meets_rule(C(1, 2), C(3, 4)));
        assert!(!meets_rule(A(1), B(1)));
        assert!(meets_rule(A(1), C(1, 2)));
    }
}
