use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rat;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from equal-length rows. An empty row list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        RatMatrix { rows: nrows, cols, data }
    }

    /// Builds a `nrows x columns.len()` matrix from columns.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RatMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        RatMatrix { rows: self.rows, cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Clears denominators row by row. Returns the integer rows and the
/// per-row scale factors.
fn integer_rows(m: &RatMatrix) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.rows);
    let mut scales = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(row.iter().map(|x| (x * &lcm).to_integer()).collect());
        scales.push(lcm);
    }
    (rows, scales)
}

/// Fraction-free (Bareiss) forward elimination in place. Pivot is the first
/// nonzero entry in the current column. Returns the pivot columns and the
/// parity of the row swaps.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, bool) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut odd = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd = !odd;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                // Exact by Sylvester's determinant identity.
                row[j] = (&pivot_row[c] * &row[j] - &row[c] * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot_row[c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

/// Rank over Q by fraction-free elimination.
pub fn rank_exact(m: &RatMatrix) -> usize {
    let (mut rows, _) = integer_rows(m);
    bareiss(&mut rows, m.cols).0.len()
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn determinant(m: &RatMatrix) -> Rat {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Rat::one();
    }
    let (mut rows, scales) = integer_rows(m);
    let (pivots, odd) = bareiss(&mut rows, n);
    if pivots.len() < n {
        return Rat::zero();
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let det = Rat::new(rows[n - 1][n - 1].clone(), scale);
    if odd {
        -det
    } else {
        det
    }
}

/// Reduced row echelon form over Q with its pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..m.cols {
                row[j] -= &f * &pivot_row[j];
            }
        }
        pivots.push(c);
        r += 1;
    }
    (RatMatrix::from_vec(m.rows, m.cols, a.concat()), pivots)
}

/// Nonzero rows of the reduced row echelon form.
pub fn row_space_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Basis of the right null space, itself in reduced echelon form
/// (leading entry of every vector is 1). Its length is `cols - rank`.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return Vec::new();
    }
    let raw: Vec<Vec<Rat>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); m.cols];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        })
        .collect();
    row_space_basis(&RatMatrix::from_rows(raw))
}

/// One exact solution of `m x = rhs` (free variables set to zero), or
/// `None` when the system is inconsistent.
pub fn solve(m: &RatMatrix, rhs: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(rhs.len(), m.rows);
    let columns: Vec<Vec<Rat>> = vec![rhs.to_vec()];
    let aug = m.hstack(&RatMatrix::from_columns(m.rows, &columns));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[(i, m.cols)].clone();
    }
    Some(x)
}
