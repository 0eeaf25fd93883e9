//! Fraction-free linear algebra over Z[tau].
//!
//! Z[tau] admits exact division, so Bareiss elimination applies verbatim:
//! every intermediate entry is a minor of the input matrix and all divisions
//! are exact. This gives determinants, ranks and span tests with no
//! fraction-field blowup.

use crate::scalar::{GoldenInt, GoldenRational, ONE, ZERO};

/// Dense row-major matrix over Z[tau].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GoldenInt>,
}

impl GoldenMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        GoldenMat { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<GoldenInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        GoldenMat { rows: r, cols: c, data: rows.concat() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GoldenMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn row(&self, i: usize) -> &[GoldenInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// Bareiss elimination with full pivoting. Returns (rank, det-of-leading-
    /// square-part-if-square). The matrix is consumed by value internally.
    fn bareiss(mut self) -> (usize, GoldenInt) {
        let n = self.rows.min(self.cols);
        let mut prev = ONE;
        let mut sign = 1i64;
        let mut rank = 0;
        for k in 0..n {
            // Find any nonzero pivot in the remaining submatrix.
            let mut pivot = None;
            'search: for i in k..self.rows {
                for j in k..self.cols {
                    if !self[(i, j)].is_zero() {
                        pivot = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            if pi != k {
                self.swap_rows(pi, k);
                sign = -sign;
            }
            if pj != k {
                self.swap_cols(pj, k);
                sign = -sign;
            }
            rank += 1;
            let pk = self[(k, k)];
            for i in k + 1..self.rows {
                for j in k + 1..self.cols {
                    let num = pk * self[(i, j)] - self[(i, k)] * self[(k, j)];
                    self[(i, j)] = num
                        .div_exact(prev)
                        .expect("Bareiss division is exact over an integral domain");
                }
                self[(i, k)] = ZERO;
            }
            prev = pk;
        }
        let det = if self.rows == self.cols && rank == self.rows {
            prev * sign
        } else {
            ZERO
        };
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss().0
    }

    pub fn det(&self) -> GoldenInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return ONE;
        }
        self.clone().bareiss().1
    }

    /// Solves `self * x = rhs` by Cramer's rule; `None` if singular.
    pub fn solve(&self, rhs: &[GoldenInt]) -> Option<Vec<GoldenRational>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.rows);
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let dn = d.norm();
        let dc = d.conj();
        let mut x = Vec::with_capacity(self.cols);
        for i in 0..self.cols {
            let mut m = self.clone();
            for r in 0..self.rows {
                m[(r, i)] = rhs[r];
            }
            // det(m)/d as an element of Q(tau)
            x.push(GoldenRational::new(m.det() * dc, dn));
        }
        Some(x)
    }

    /// Column `j` of the adjugate, i.e. the solution of `self * x = det * e_j`
    /// as a vector over Z[tau]. Entries are signed minors, so they stay in
    /// the ring.
    pub fn adjugate_col(&self, j: usize) -> Vec<GoldenInt> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut col = Vec::with_capacity(n);
        for i in 0..n {
            let mut m = self.clone();
            for r in 0..n {
                m[(r, i)] = if r == j { ONE } else { ZERO };
            }
            col.push(m.det());
        }
        col
    }
}

impl std::ops::Index<(usize, usize)> for GoldenMat {
    type Output = GoldenInt;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &GoldenInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for GoldenMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GoldenInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Whether `target` lies in the row span of `rows` over Q(tau).
pub fn in_span(rows: &[Vec<GoldenInt>], target: &[GoldenInt]) -> bool {
    if target.iter().all(|c| c.is_zero()) {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    let base = GoldenMat::from_rows(rows);
    let mut aug = rows.to_vec();
    aug.push(target.to_vec());
    base.rank() == GoldenMat::from_rows(&aug).rank()
}

/// Whether the given vectors are linearly independent over Q(tau).
pub fn independent(rows: &[Vec<GoldenInt>]) -> bool {
    if rows.is_empty() {
        return true;
    }
    GoldenMat::from_rows(rows).rank() == rows.len()
}
