//! Dense exact linear algebra over the rationals.
//!
//! Everything here is Gaussian elimination on `Vec<Vec<Q>>`; the matrices in
//! this crate are at most a few thousand entries per side.

use num_traits::{One, Zero};

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Q>>,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Q>),
    /// Consistent with a nontrivial kernel; one particular solution plus the
    /// kernel dimension.
    Underdetermined(Vec<Q>, usize),
    Inconsistent,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn from_rows(data: Vec<Vec<Q>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        RatMatrix { rows, cols, data }
    }

    pub fn from_i64(data: &[Vec<i64>]) -> Self {
        Self::from_rows(
            data.iter()
                .map(|r| r.iter().map(|&x| crate::rational::q(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c][r] = self.data[r][c].clone();
            }
        }
        t
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.data[r][col].is_zero()) else {
                continue;
            };
            m.data.swap(row, p);
            let inv = Q::one() / &m.data[row][col];
            for c in col..m.cols {
                let v = &m.data[row][c] * &inv;
                m.data[row][c] = v;
            }
            let pivot_row = m.data[row].clone();
            for r in 0..m.rows {
                if r == row || m.data[r][col].is_zero() {
                    continue;
                }
                let f = m.data[r][col].clone();
                for c in col..m.cols {
                    if !pivot_row[c].is_zero() {
                        let v = &m.data[r][c] - &f * &pivot_row[c];
                        m.data[r][c] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.data[i][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn solve(&self, b: &[Q]) -> Solution {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.clone();
        for (r, row) in aug.data.iter_mut().enumerate() {
            row.push(b[r].clone());
        }
        aug.cols += 1;
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solution::Inconsistent;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = m.data[i][self.cols].clone();
        }
        let nullity = self.cols - pivots.len();
        if nullity == 0 {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined(x, nullity)
        }
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            det *= &m[col][col];
            let inv = Q::one() / &m[col][col];
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] * &inv;
                for c in col..n {
                    let v = &m[r][c] - &f * &m[col][c];
                    m[r][c] = v;
                }
            }
        }
        det
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        self.data
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn rank_kernel_det() {
        let m = RatMatrix::from_i64(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(m.det(), q(0));
        let u = RatMatrix::from_i64(&[vec![1, 1], vec![1, 0]]);
        assert_eq!(u.det(), q(-1));
    }

    #[test]
    fn solve_cases() {
        let m = RatMatrix::from_i64(&[vec![2, 0], vec![0, 4], vec![2, 4]]);
        assert_eq!(
            m.solve(&[q(1), q(1), q(2)]),
            Solution::Unique(vec![qf(1, 2), qf(1, 4)])
        );
        assert_eq!(m.solve(&[q(1), q(1), q(3)]), Solution::Inconsistent);
        let w = RatMatrix::from_i64(&[vec![1, 1]]);
        assert!(matches!(w.solve(&[q(1)]), Solution::Underdetermined(_, 1)));
    }
}
