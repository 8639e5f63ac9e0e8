//! Dense exact matrices and Gauss-Jordan elimination.
//!
//! Pivoting always takes the first nonzero entry of the column, so ranks,
//! kernels and solutions are reproducible bit for bit.

use std::fmt;

use crate::field::FieldElement as Fe;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Fe::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<Fe>>) -> Self {
        ExactMatrix::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Fe {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Fe::zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * other.get(k, c));
                    }
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&f * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Fe::zero(); self.cols];
                v[f] = Fe::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Basis of the left null space (vectors `w` with `wᵀ·m = 0`).
    pub fn left_kernel(&self) -> Vec<Vec<Fe>> {
        self.transpose().kernel()
    }

    pub fn det(&self) -> Fe {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Fe::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Fe::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m.get(col, col).clone();
            det = &det * &piv;
            let inv = piv.inv();
            for r in col + 1..n {
                let f = m.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.get(r, c) - &(&f * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    /// Some solution of `m·x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fe::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Solution of `m·x = b` when it exists and is unique.
    pub fn solve_unique(&self, b: &[Fe]) -> Option<Vec<Fe>> {
        if self.rank() != self.cols {
            return None;
        }
        self.solve(b)
    }
}

/// Null-space basis of `m`: independent vectors spanning `{v : m·v = 0}`.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Fe>> {
    m.kernel()
}

pub fn dot(a: &[Fe], b: &[Fe]) -> Fe {
    assert_eq!(a.len(), b.len());
    let mut acc = Fe::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Scale a nonzero vector so that its first nonzero entry is 1.
pub fn normalize_projective(v: &[Fe]) -> Option<Vec<Fe>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = lead.inv();
    Some(v.iter().map(|x| x * &inv).collect())
}

/// True if `a` and `b` are nonzero multiples of each other.
pub fn proportional(a: &[Fe], b: &[Fe]) -> bool {
    match (normalize_projective(a), normalize_projective(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// `Some(k)` with `a = k·b`, `b` nonzero.
pub fn scalar_multiple(a: &[Fe], b: &[Fe]) -> Option<Fe> {
    let i = b.iter().position(|x| !x.is_zero())?;
    let k = &a[i] / &b[i];
    a.iter()
        .zip(b)
        .all(|(x, y)| *x == &k * y)
        .then_some(k)
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Fe::from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_has_trivial_kernel() {
        assert!(kernel_basis(&ExactMatrix::identity(4)).is_empty());
    }

    #[test]
    fn zero_row_has_full_kernel() {
        let k = kernel_basis(&ExactMatrix::zeros(1, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(ExactMatrix::from_rows(k).rank(), 3);
    }

    #[test]
    fn determinant_and_solve() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), Fe::from_i64(18));
        let b = [Fe::from_i64(1), Fe::from_i64(2), Fe::from_i64(3)];
        let x = a.solve_unique(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b.to_vec());
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), Fe::zero());
        assert!(singular.solve(&[Fe::from_i64(1), Fe::from_i64(3)]).is_none());
    }

    #[test]
    fn swap_changes_determinant_sign() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.det(), Fe::from_i64(-1));
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            entries in proptest::collection::vec(-3i64..4, 12),
            shape in 0usize..4,
        ) {
            let (r, c) = [(3, 4), (2, 6), (4, 3), (1, 12)][shape];
            let a = ExactMatrix::from_rows(
                entries.chunks(c).take(r).map(|ch| ch.iter().map(|&x| Fe::from_i64(x)).collect()).collect(),
            );
            let k = kernel_basis(&a);
            prop_assert_eq!(k.len() + a.rank(), a.cols());
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(Fe::is_zero));
            }
            if !k.is_empty() {
                prop_assert_eq!(ExactMatrix::from_rows(k.clone()).rank(), k.len());
            }
        }
    }
}
