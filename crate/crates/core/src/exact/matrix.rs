//! Dense exact matrices and Gauss-Jordan elimination.

use num_traits::{One, Zero};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
        }
        ExactMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    /// Reduced row-echelon form. Pivots are the first nonzero column of each
    /// row and are normalized to 1; zero rows sink to the bottom.
    pub fn rref(&self) -> Rref {
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = Rational::one() / &a[r][c];
            for x in a[r].iter_mut().skip(c) {
                *x *= &inv;
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                data: a,
            },
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel, one vector per free column, in reduced form.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.data[row][f].clone();
                }
                v
            })
            .collect()
    }

    /// Determinant of a square matrix by fraction-exact elimination.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let pivot_row = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] / &pivot_row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    /// Some solution of `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = ExactMatrix {
            rows: self.rows,
            cols: self.cols + 1,
            data: self
                .data
                .iter()
                .zip(b)
                .map(|(r, x)| {
                    let mut r = r.clone();
                    r.push(x.clone());
                    r
                })
                .collect(),
        };
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = matrix.data[row][self.cols].clone();
        }
        Some(x)
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rational>], len: usize) -> usize {
    ExactMatrix::from_rows(len, vectors.to_vec()).rank()
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<Rational>], v: &[Rational]) -> bool {
    let len = v.len();
    let r = rank_of(vectors, len);
    let mut ext = vectors.to_vec();
    ext.push(v.to_vec());
    rank_of(&ext, len) == r
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
